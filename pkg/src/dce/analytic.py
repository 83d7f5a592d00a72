"""Perturbative closed-form baselines for the resonantly driven cavity.

For the resonant law of motion (oscillation frequency twice the fundamental,
l0 = L0) the weakly driven cavity has closed-form estimates for the total
particle number and the fundamental-mode occupation in terms of complete
elliptic integrals of a time-dependent modulus.  These serve as independent
cross-checks of the exact Bogoliubov computation at small epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EllipticModulus",
    "elliptic_K",
    "elliptic_E",
    "elliptic_KE",
    "resonance_modulus",
    "n_app_total",
    "n_app_mode1",
]

_AGM_REL_TOL = 1e-15
_AGM_MAX_ITER = 64


def elliptic_KE(kappa: float) -> tuple[float, float]:
    """Complete elliptic integrals (K, E) by the arithmetic-geometric mean.

    The argument is the modulus kappa, not the parameter m = kappa**2, so
    K(0) = E(0) = pi/2.  This convention matters: the particle-number
    formulas below vanish at T = 0 only in the modulus convention.

    AGM iteration: a <- (a+b)/2, b <- sqrt(a*b) starting from a = 1,
    b = sqrt(1 - kappa^2), with c_n = (a_n - b_n)/2.  Then K = pi/(2*a_inf)
    and E = K*(1 - sum_n 2^(n-1)*c_n^2), the n = 0 term being kappa^2/2.
    Convergence is quadratic; the c_n^2 tail is far below double precision
    by the time successive means agree to 1e-15.
    """
    if not 0.0 <= kappa < 1.0:
        raise ValueError(f"kappa must lie in [0, 1), got {kappa}")
    a = 1.0
    b = math.sqrt((1.0 - kappa) * (1.0 + kappa))
    c_sum = 0.5 * kappa * kappa
    weight = 0.5
    for _ in range(_AGM_MAX_ITER):
        c = 0.5 * (a - b)
        if c <= _AGM_REL_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        c_sum += weight * c * c
    k_val = math.pi / (2.0 * a)
    e_val = k_val * (1.0 - c_sum)
    return k_val, e_val


def elliptic_K(kappa: float) -> float:
    """K(kappa) in the modulus convention; see elliptic_KE."""
    return elliptic_KE(kappa)[0]


def elliptic_E(kappa: float) -> float:
    """E(kappa) in the modulus convention; see elliptic_KE."""
    return elliptic_KE(kappa)[1]


def resonance_modulus(epsilon: float, T: float, L0: float = 1.0) -> float:
    """Elliptic modulus kappa = sqrt(1 - exp(-4*pi*epsilon*T/L0)).

    Grows from 0 at T = 0 toward 1 as the drive accumulates; always < 1
    for finite T.
    """
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if T < 0.0:
        raise ValueError(f"T must be non-negative, got {T}")
    if L0 <= 0.0:
        raise ValueError(f"L0 must be positive, got {L0}")
    # -expm1(x) = 1 - e^x without cancellation for small arguments.
    kappa = math.sqrt(-math.expm1(-4.0 * math.pi * epsilon * T / L0))
    # kappa < 1 for every finite T; keep that true in floats as well, so
    # the elliptic integrals downstream stay finite.
    return min(kappa, math.nextafter(1.0, 0.0))


@dataclass(frozen=True)
class EllipticModulus:
    """Validated modulus of the perturbative solution, kappa in [0, 1)."""

    kappa: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.kappa < 1.0:
            raise ValueError(f"kappa must lie in [0, 1), got {self.kappa}")

    @classmethod
    def from_drive(cls, epsilon: float, T: float, L0: float = 1.0) -> EllipticModulus:
        return cls(resonance_modulus(epsilon, T, L0))

    @property
    def complement(self) -> float:
        """Complementary modulus kappa' = sqrt(1 - kappa^2)."""
        return math.sqrt((1.0 - self.kappa) * (1.0 + self.kappa))

    def integrals(self) -> tuple[float, float]:
        return elliptic_KE(self.kappa)


def n_app_total(epsilon: float, T: float, L0: float = 1.0) -> float:
    """Perturbative total particle number for the resonant drive.

    N_app = (1/pi^2) * [(1 - kappa^2/2) K(kappa)^2 - E(kappa) K(kappa)]
    with kappa = resonance_modulus(epsilon, T, L0).  Zero at T = 0.
    """
    kappa = resonance_modulus(epsilon, T, L0)
    k_val, e_val = elliptic_KE(kappa)
    return ((1.0 - 0.5 * kappa * kappa) * k_val * k_val - e_val * k_val) / (math.pi * math.pi)


def n_app_mode1(epsilon: float, T: float, L0: float = 1.0) -> float:
    """Perturbative fundamental-mode occupation for the resonant drive.

    N1_app = (2/pi^2) K(kappa) E(kappa) - 1/2, zero at T = 0.
    """
    kappa = resonance_modulus(epsilon, T, L0)
    k_val, e_val = elliptic_KE(kappa)
    return (2.0 / (math.pi * math.pi)) * k_val * e_val - 0.5
