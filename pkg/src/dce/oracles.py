"""Slow reference implementations used only by the test suite.

Everything here trades speed for transparency: plain bisection, plain
trapezoid sums, plain power series, no caching and no vectorization.
The optimized modules are tested against these references, never the
other way around, so this file was written first and is left alone.
"""

from __future__ import annotations

import math

from .trajectory import MirrorLaw, position

__all__ = ["oracle_moore_R", "oracle_beta", "oracle_alpha", "oracle_elliptic"]


def _bisect_reflection(law: MirrorLaw, z: float, tol: float) -> float:
    # Solve t + L(t) = z.  Since |L - L0| <= a the root lies inside
    # [z - L0 - a, z - L0 + a], and t + L(t) is strictly increasing.
    lo = z - law.L0 - law.a
    hi = z - law.L0 + law.a
    if lo + position(law, lo) - z > 0.0 or hi + position(law, hi) - z < 0.0:
        raise RuntimeError("reflection bracket failed")  # unreachable for valid laws
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid + position(law, mid) - z < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def oracle_moore_R(law: MirrorLaw, z: float, tol: float = 1e-14) -> float:
    """Field phase function R(z) by direct backward unfolding.

    A null ray at coordinate z is bounced off the moving mirror, each
    bounce replacing z by z - 2*L(t) with t the reflection instant and
    adding 2 to R, until the ray enters the static zone z <= L0 where
    R(z) = z/L0.  Every bounce shrinks z by at least 2*(L0 - a), so the
    loop terminates.
    """
    z = float(z)
    count = 0
    while z > law.L0:
        t = _bisect_reflection(law, z, tol)
        z = z - 2.0 * position(law, t)
        count += 1
    return 2.0 * count + z / law.L0


def _oracle_coefficient(law, r, s, t_eval, n_nodes, x_sign):
    if r < 1 or s < 1:
        raise ValueError("mode indices are positive integers")
    if n_nodes < 1000:
        raise ValueError("reference rule needs at least 1000 nodes")
    x_lo = t_eval / law.L0 - 1.0
    h = 2.0 / (n_nodes - 1)
    acc = 0.0 + 0.0j
    for k in range(n_nodes):
        x = x_lo + k * h
        phase = -math.pi * (s * oracle_moore_R(law, law.L0 * x) + x_sign * r * x)
        weight = 1.0 if 0 < k < n_nodes - 1 else 0.5
        acc += weight * complex(math.cos(phase), math.sin(phase))
    return 0.5 * math.sqrt(r / s) * h * acc


def oracle_beta(law: MirrorLaw, r: int, s: int, t_eval: float,
                n_nodes: int = 20001) -> complex:
    """Trapezoid-rule value of -(1/2)sqrt(r/s) * integral of
    exp(-i*pi*(s*R(L0*x) + r*x)) for x over [t_eval/L0 - 1, t_eval/L0 + 1]."""
    return -_oracle_coefficient(law, r, s, t_eval, n_nodes, +1.0)


def oracle_alpha(law: MirrorLaw, r: int, s: int, t_eval: float,
                 n_nodes: int = 20001) -> complex:
    """Same quadrature as oracle_beta for the partner coefficient
    +(1/2)sqrt(r/s) * integral of exp(-i*pi*(s*R(L0*x) - r*x))."""
    return _oracle_coefficient(law, r, s, t_eval, n_nodes, -1.0)


def oracle_elliptic(kappa: float, max_terms: int = 500) -> tuple[float, float]:
    """(K, E) complete elliptic integrals by the power series in kappa**2.

    Terms are accumulated until they stop mattering at double precision,
    which takes about 150 of them at kappa = 0.9.  Beyond 0.9 the tail
    decays too slowly to certify the result, so that is the domain edge.
    """
    if not 0.0 <= kappa <= 0.9:
        raise ValueError("series reference is restricted to 0 <= kappa <= 0.9")
    m = kappa * kappa
    k_sum = 1.0
    e_sum = 1.0
    term = 1.0  # ((2n-1)!!/(2n)!!)**2 * m**n
    for n in range(1, max_terms + 1):
        term *= m * ((2 * n - 1) / (2 * n)) ** 2
        k_sum += term
        e_sum -= term / (2 * n - 1)
        if term < 1e-17 * k_sum:
            break
    else:
        raise RuntimeError("series failed to converge")  # unreachable for kappa<=0.9
    return 0.5 * math.pi * k_sum, 0.5 * math.pi * e_sum
