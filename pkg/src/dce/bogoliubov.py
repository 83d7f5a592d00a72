"""Mode-mixing coefficients and particle spectra by oscillatory quadrature.

For mirror law L(t) and its phase function R(z), the coefficients at
evaluation time t are integrals over the null window x in
[t/L0 - 1, t/L0 + 1]:

    alpha[r,s] = +(1/2) sqrt(r/s) * integral exp(-i*pi*(s*R(L0*x) - r*x)) dx
    beta[r,s]  = -(1/2) sqrt(r/s) * integral exp(-i*pi*(s*R(L0*x) + r*x)) dx

The occupation of mode r is sum_s |beta[r,s]|^2 and each row must satisfy
sum_s (|alpha[r,s]|^2 - |beta[r,s]|^2) = 1, which doubles as the
truncation/quadrature health metric.

Quadrature strategy.  The integrands oscillate with local frequency
(s*L0*R'(L0*x) + r)/2 cycles per unit x, and at resonance R' grows
exponentially with the motion duration, so any uniform grid keyed to
max R' is hopeless.  But R climbs by exactly 2 over the window (a
consequence of R(z + 2*L0) = R(z) + 2 once the motion has stopped), so
the total cycle count of the fastest integrand is just s_cap + r_cap.
Panels are therefore equidistributed in the accumulated phase
u(x) = (s_cap*R(L0*x) + r_cap*x)/2: every panel spans the same fraction
of a worst-case cycle no matter how steep R gets, and the node count
scales with s_cap + r_cap alone.  Panels never straddle the derivative
kinks of R (forward images of the instants where the mirror starts or
stops), keeping each panel analytic for Gauss-Legendre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .moore import MooreCache, build_cache, moore_R_many
from .trajectory import MirrorLaw, position

__all__ = [
    "QuadratureSpec",
    "CoefficientGrid",
    "BogoliubovRow",
    "SpectrumResult",
    "UndefinedRatioError",
    "SPECTRUM_FLOOR",
    "kink_breakpoints",
    "build_grid",
    "coefficient_pair",
    "coefficient_row",
    "coefficient_matrices",
    "mode_occupation",
    "unitarity_defect",
    "spectrum",
    "total_particles",
    "band_ratio",
    "write_spectrum_csv",
    "write_coefficients_csv",
]

# Occupations below this are quadrature noise, not physics.
SPECTRUM_FLOOR = 1e-12

# Fixed node-chunk size for the matrix assembly; the accumulation order is
# part of the deterministic-output contract, so never tune this per run.
_CHUNK = 2048


class UndefinedRatioError(ArithmeticError):
    """Raised when a spectral ratio divides by an occupation below floor."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution knobs for the coefficient integrals.

    panels_per_unit_frequency: panels spent per cycle of the fastest
        integrand; the effective sampling is this times points_per_panel
        nodes per cycle, so the default 8*8 = 64 is already conservative.
    points_per_panel: Gauss-Legendre order within each panel.
    t_eval: evaluation instant; None means the end of motion T, and
        values before T are rejected (the window would straddle motion
        still in progress).
    """

    panels_per_unit_frequency: float = 8.0
    points_per_panel: int = 8
    t_eval: float | None = None

    def __post_init__(self):
        if not self.panels_per_unit_frequency > 0.0:
            raise ValueError("panels_per_unit_frequency must be positive")
        if int(self.points_per_panel) != self.points_per_panel or self.points_per_panel < 2:
            raise ValueError("points_per_panel must be an integer >= 2")


@dataclass(frozen=True)
class BogoliubovRow:
    """Coefficients for a fixed output mode across input modes 1..s_max."""

    out_mode: int
    alphas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        if self.alphas.shape != self.betas.shape or self.alphas.ndim != 1:
            raise ValueError("alpha/beta rows must be 1D and equally long")
        if not (np.all(np.isfinite(self.alphas.view(float)))
                and np.all(np.isfinite(self.betas.view(float)))):
            raise ValueError("non-finite coefficient; quadrature is broken")

    @property
    def s_max(self) -> int:
        return int(self.alphas.size)


@dataclass(frozen=True)
class CoefficientGrid:
    """Shared quadrature state: nodes, weights and cached R values.

    Built once per (law, t_eval, caps) and reused by every (r, s) pair
    with r <= r_cap and s <= s_cap; the panel layout resolves the fastest
    of those integrands, so every slower one is oversampled.
    """

    law: MirrorLaw
    t_eval: float
    spec: QuadratureSpec
    r_cap: int
    s_cap: int
    x: np.ndarray
    weights: np.ndarray
    cache: MooreCache
    panel_bounds: np.ndarray

    @property
    def R(self) -> np.ndarray:
        return self.cache.R

    @property
    def window(self) -> tuple[float, float]:
        return self.t_eval / self.law.L0 - 1.0, self.t_eval / self.law.L0 + 1.0


@lru_cache(maxsize=None)
def _leggauss(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _forward_images(law: MirrorLaw, w: np.ndarray, tol_t: float) -> np.ndarray:
    """Next derivative-kink coordinate: solve t - L(t) = w, return w + 2*L(t).

    A feature of R at coordinate w (a ray leaving the mirror there) shows
    up again at the coordinate of the ray's next reflection.  t - L(t) is
    strictly increasing, bracketed by [w + L0 - a, w + L0 + a].
    """
    if law.a == 0.0:
        return w + 2.0 * law.L0
    lo = w + law.L0 - law.a
    hi = w + law.L0 + law.a
    steps = max(int(math.ceil(math.log2(8.0 * law.a / tol_t))), 4)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        high = mid - position(law, mid) >= w
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    f_lo = lo - position(law, lo) - w
    f_hi = hi - position(law, hi) - w
    span = f_hi - f_lo
    safe = span > 0.0
    t = np.where(safe, lo - f_lo * (hi - lo) / np.where(safe, span, 1.0),
                 0.5 * (lo + hi))
    t = np.clip(t, lo, hi)
    return w + 2.0 * position(law, t)


def kink_breakpoints(law: MirrorLaw, z_lo: float, z_hi: float,
                     tol_t: float = 1e-12) -> np.ndarray:
    """Coordinates inside (z_lo, z_hi) where R' can jump.

    R' jumps where some reflection in the backward chase lands exactly on
    the start or stop of the motion, i.e. on the forward orbits of the
    outgoing coordinates t* + L(t*) for t* in {0, T}.  The mirror's
    turning instants are included as well: R is smooth there, but they
    cost a handful of extra panels and make the panel layout insensitive
    to near-kink curvature spikes.
    """
    if law.a == 0.0:
        return np.empty(0)
    seeds = [0.0, law.T]
    k = 0
    while True:
        t_turn = law.l0 * (0.25 + 0.5 * k)
        if t_turn >= law.T:
            break
        seeds.append(t_turn)
        k += 1
    cur = np.array([t + position(law, t) for t in seeds], dtype=float)
    collected = []
    guard = int(math.ceil(max(z_hi, 0.0) / (2.0 * (law.L0 - law.a)))) + 8
    for _ in range(guard):
        inside = (cur > z_lo) & (cur < z_hi)
        collected.append(cur[inside])
        cur = cur[cur < z_hi]
        if cur.size == 0:
            break
        cur = _forward_images(law, cur, tol_t)
    pts = np.unique(np.concatenate(collected)) if collected else np.empty(0)
    if pts.size:
        edge = 1e-10
        pts = pts[(pts > z_lo + edge) & (pts < z_hi - edge)]
        if pts.size:
            pts = pts[np.concatenate(([True], np.diff(pts) > edge))]
    return pts


def build_grid(law: MirrorLaw, r_cap: int, s_cap: int,
               spec: QuadratureSpec | None = None,
               tol_t: float = 1e-12) -> CoefficientGrid:
    """Panel layout plus one R evaluation per node, shared by all pairs.

    Panels equidistribute the accumulated worst-case phase
    u(x) = (s_cap*R(L0*x) + r_cap*x)/2.  u is only available by evaluating
    R, so each kink-free cell is probed on a grid refined (by bisection of
    offending intervals) until no probe step spans more than a quarter of
    the per-panel phase budget; inverting the piecewise-linear u then
    places panel edges within about half a budget of their ideal spot,
    keeping the guaranteed per-panel span below 1.5 budgets.
    """
    if spec is None:
        spec = QuadratureSpec()
    if r_cap < 1 or s_cap < 1:
        raise ValueError("mode caps must be positive")
    t_eval = law.T if spec.t_eval is None else float(spec.t_eval)
    if t_eval < law.T:
        raise ValueError(
            f"t_eval={t_eval} is before the end of motion T={law.T}; "
            "coefficients are defined here only once the mirror is at rest"
        )
    L0 = law.L0
    x_lo = t_eval / L0 - 1.0
    x_hi = t_eval / L0 + 1.0
    breaks = kink_breakpoints(law, L0 * x_lo, L0 * x_hi, tol_t) / L0
    cell_bounds = np.concatenate(([x_lo], breaks, [x_hi]))

    def u(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (s_cap * moore_R_many(law, L0 * x, tol_t) + r_cap * x)

    target = 1.0 / spec.panels_per_unit_frequency

    parts = [np.linspace(cell_bounds[i], cell_bounds[i + 1], 17)
             for i in range(cell_bounds.size - 1)]
    xs = np.unique(np.concatenate(parts))
    us = u(xs)
    while True:
        bad = np.nonzero(np.diff(us) > 0.25 * target)[0]
        if bad.size == 0:
            break
        if xs.size > 2_000_000:
            raise RuntimeError("phase probe refinement exploded; R may be corrupt")
        mids = 0.5 * (xs[bad] + xs[bad + 1])
        ums = u(mids)
        where = np.searchsorted(xs, mids)
        xs = np.insert(xs, where, mids)
        us = np.insert(us, where, ums)

    cell_idx = np.searchsorted(xs, cell_bounds)
    bounds = [np.array([x_lo])]
    for i in range(cell_bounds.size - 1):
        sl = slice(cell_idx[i], cell_idx[i + 1] + 1)
        xs_c, us_c = xs[sl], us[sl]
        n_pan = max(1, int(math.ceil((us_c[-1] - us_c[0]) / target)))
        levels = np.linspace(us_c[0], us_c[-1], n_pan + 1)
        edges = np.interp(levels, us_c, xs_c)
        edges[0], edges[-1] = xs_c[0], xs_c[-1]
        bounds.append(edges[1:])
    panel_bounds = np.concatenate(bounds)

    gl_x, gl_w = _leggauss(int(spec.points_per_panel))
    half = 0.5 * np.diff(panel_bounds)
    mid = 0.5 * (panel_bounds[1:] + panel_bounds[:-1])
    x_nodes = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    w_nodes = (half[:, None] * gl_w[None, :]).ravel()
    cache = build_cache(law, L0 * x_nodes, tol_t)
    return CoefficientGrid(law=law, t_eval=t_eval, spec=spec,
                           r_cap=int(r_cap), s_cap=int(s_cap),
                           x=x_nodes, weights=w_nodes, cache=cache,
                           panel_bounds=panel_bounds)


def _check_pair(grid: CoefficientGrid, r: int, s: int) -> None:
    if not 1 <= r <= grid.r_cap:
        raise ValueError(f"r={r} outside the grid's resolved range 1..{grid.r_cap}")
    if not 1 <= s <= grid.s_cap:
        raise ValueError(f"s={s} outside the grid's resolved range 1..{grid.s_cap}")


def coefficient_pair(grid: CoefficientGrid, r: int, s: int) -> tuple[complex, complex]:
    """(alpha, beta) for one mode pair on the shared grid."""
    _check_pair(grid, r, s)
    # exp(-i*pi*s*R) is invariant under R -> R mod 2 for integer s; the
    # reduction keeps the phase argument small regardless of t_eval.
    ph_R = s * np.mod(grid.R, 2.0)
    ph_x = r * np.mod(grid.x, 2.0)
    fac = 0.5 * math.sqrt(r / s)
    beta = -fac * np.sum(grid.weights * np.exp((-1j * math.pi) * (ph_R + ph_x)))
    alpha = fac * np.sum(grid.weights * np.exp((-1j * math.pi) * (ph_R - ph_x)))
    return complex(alpha), complex(beta)


def coefficient_matrices(grid: CoefficientGrid, r_max: int | None = None,
                         s_max: int | None = None):
    """Dense (alpha, beta) arrays of shape (r_max, s_max), index base 1.

    The node sum is blocked into fixed-size chunks accumulated in index
    order, so results are bit-reproducible for a given grid.
    """
    r_max = grid.r_cap if r_max is None else int(r_max)
    s_max = grid.s_cap if s_max is None else int(s_max)
    _check_pair(grid, r_max, s_max)
    r = np.arange(1, r_max + 1, dtype=float)
    s = np.arange(1, s_max + 1, dtype=float)
    Rm = np.mod(grid.R, 2.0)
    xm = np.mod(grid.x, 2.0)
    ib = np.zeros((s_max, r_max), dtype=complex)
    ia = np.zeros((s_max, r_max), dtype=complex)
    for j0 in range(0, grid.x.size, _CHUNK):
        sl = slice(j0, min(j0 + _CHUNK, grid.x.size))
        a_blk = np.exp((-1j * np.pi) * (s[:, None] * Rm[None, sl]))
        b_blk = grid.weights[sl, None] * np.exp((-1j * np.pi) * (xm[sl, None] * r[None, :]))
        ib += a_blk @ b_blk
        ia += a_blk @ b_blk.conj()
    fac = 0.5 * np.sqrt(r[:, None] / s[None, :])
    return fac * ia.T, -fac * ib.T


def coefficient_row(grid: CoefficientGrid, r: int,
                    s_max: int | None = None) -> BogoliubovRow:
    """Coefficients for output mode r against input modes 1..s_max."""
    s_max = grid.s_cap if s_max is None else int(s_max)
    alpha, beta = coefficient_matrices(grid, r_max=r, s_max=s_max)
    return BogoliubovRow(out_mode=int(r), alphas=alpha[-1], betas=beta[-1])


def mode_occupation(grid: CoefficientGrid, r: int, s_max: int | None = None) -> float:
    """Created particles in mode r: sum_s |beta[r,s]|^2."""
    row = coefficient_row(grid, r, s_max)
    return float(np.sum(np.abs(row.betas) ** 2))


def unitarity_defect(grid: CoefficientGrid, r: int, s_max: int | None = None) -> float:
    """|sum_s (|alpha|^2 - |beta|^2) - 1| for one row; zero when exact."""
    row = coefficient_row(grid, r, s_max)
    return float(abs(np.sum(np.abs(row.alphas) ** 2 - np.abs(row.betas) ** 2) - 1.0))


@dataclass(frozen=True)
class SpectrumResult:
    """Per-mode occupations with their convergence evidence attached."""

    law: MirrorLaw
    occupations: np.ndarray
    total: float
    unitarity_defect: float
    row_defects: np.ndarray
    n_max: int
    s_max: int
    spec: QuadratureSpec
    converged: bool
    escalations: int
    nodes: int

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.n_max + 1)


def _default_n_max(law: MirrorLaw) -> int:
    # Wider cavities push the band structure to higher mode numbers.
    return 40 if law.L0 <= 2.0 else 80


def spectrum(law: MirrorLaw, n_max: int | None = None, s_max: int | None = None,
             spec: QuadratureSpec | None = None, tol_t: float = 1e-12,
             defect_tol: float = 1e-3, occ_rel_tol: float = 1e-3,
             occ_abs_tol: float = 1e-15, max_escalations: int = 4) -> SpectrumResult:
    """Occupations for modes 1..n_max with automatic truncation escalation.

    The input-mode cutoff starts at max(64, 8*n_max) and doubles until
    every row passes the unitarity test and dropping the top half of the
    summed modes moves no occupation by more than occ_rel_tol (or
    occ_abs_tol for occupations at the noise floor).  Failure to converge
    within max_escalations is reported, never hidden.
    """
    if spec is None:
        spec = QuadratureSpec()
    n_max = _default_n_max(law) if n_max is None else int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    s_cur = max(64, 8 * n_max) if s_max is None else int(s_max)
    if s_cur < 2:
        raise ValueError("s_max must be at least 2")
    escalations = 0
    while True:
        grid = build_grid(law, n_max, s_cur, spec, tol_t)
        alpha, beta = coefficient_matrices(grid)
        beta_sq = np.abs(beta) ** 2
        occ = beta_sq.sum(axis=1)
        head = beta_sq[:, : s_cur // 2].sum(axis=1)
        row_defects = np.abs((np.abs(alpha) ** 2 - beta_sq).sum(axis=1) - 1.0)
        defect = float(row_defects.max())
        tails_ok = bool(np.all(np.abs(occ - head)
                               <= np.maximum(occ_rel_tol * occ, occ_abs_tol)))
        converged = defect < defect_tol and tails_ok
        if converged or escalations >= max_escalations:
            break
        s_cur *= 2
        escalations += 1
    return SpectrumResult(law=law, occupations=occ, total=float(occ.sum()),
                          unitarity_defect=defect, row_defects=row_defects,
                          n_max=n_max, s_max=s_cur, spec=spec,
                          converged=converged, escalations=escalations,
                          nodes=int(grid.x.size))


def total_particles(law: MirrorLaw, n_max: int | None = None,
                    s_max: int | None = None, spec: QuadratureSpec | None = None,
                    **kwargs) -> float:
    """Total created particles: sum of the spectrum's occupations."""
    return spectrum(law, n_max=n_max, s_max=s_max, spec=spec, **kwargs).total


def band_ratio(law: MirrorLaw, spec: QuadratureSpec | None = None,
               **kwargs) -> float:
    """Occupation ratio mode 3 over mode 1 at the no-re-interaction
    duration T = 2*L0 (each ray meets the moving mirror at most once)."""
    if abs(law.T - 2.0 * law.L0) > 1e-12:
        raise ValueError(f"ratio requires T = 2*L0, got T={law.T}, L0={law.L0}")
    result = spectrum(law, n_max=3, spec=spec, **kwargs)
    n1 = float(result.occupations[0])
    n3 = float(result.occupations[2])
    if n1 < SPECTRUM_FLOOR:
        raise UndefinedRatioError(
            f"fundamental occupation {n1:.3e} is below the noise floor"
        )
    return n3 / n1


def write_spectrum_csv(result: SpectrumResult, path) -> None:
    """Spectrum CSV: one row per mode, convergence evidence in a footer."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("n,omega_over_pi_L0,N_n\n")
        for n, occ in zip(result.modes, result.occupations):
            fh.write(f"{n},{float(n):.17g},{occ:.17g}\n")
        fh.write(f"# n_max={result.n_max},s_max={result.s_max},"
                 f"unitarity_defect={result.unitarity_defect:.17g},"
                 f"converged={result.converged}\n")


def write_coefficients_csv(alpha: np.ndarray, beta: np.ndarray, path) -> None:
    """Debug dump of coefficient matrices, one row per (r, s) pair."""
    if alpha.shape != beta.shape or alpha.ndim != 2:
        raise ValueError("alpha/beta must be equally shaped 2D arrays")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("r,s,re_alpha,im_alpha,re_beta,im_beta\n")
        for i in range(alpha.shape[0]):
            for j in range(alpha.shape[1]):
                a, b = alpha[i, j], beta[i, j]
                fh.write(f"{i + 1},{j + 1},{a.real:.17g},{a.imag:.17g},"
                         f"{b.real:.17g},{b.imag:.17g}\n")
