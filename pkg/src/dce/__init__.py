"""Exact particle creation in a 1D cavity with an oscillating mirror.

The field in a cavity with one moving boundary is determined by a single
monotone function R satisfying the functional equation
R(t + L(t)) - R(t - L(t)) = 2.  This package solves that equation exactly by
backward ray tracing, evaluates the Bogoliubov coefficients of the motion by
oscillatory quadrature, and compares the resulting particle spectra against
closed-form perturbative baselines.

Layout:
  trajectory  mirror laws of motion and their invariants
  moore       exact solution of the functional equation
  bogoliubov  coefficient quadrature, spectra, unitarity accounting
  analytic    elliptic-integral baselines for the resonant drive
  scenarios   config-driven sweeps, CSV output, property checks
  oracles     slow independent reference implementations (test-only)
"""

from __future__ import annotations

from .analytic import (
    EllipticModulus,
    elliptic_E,
    elliptic_K,
    elliptic_KE,
    n_app_mode1,
    n_app_total,
    resonance_modulus,
)
from .bogoliubov import (
    SPECTRUM_FLOOR,
    BogoliubovRow,
    CoefficientGrid,
    QuadratureSpec,
    SpectrumResult,
    UndefinedRatioError,
    band_ratio,
    build_grid,
    coefficient_matrices,
    coefficient_pair,
    coefficient_row,
    kink_breakpoints,
    mode_occupation,
    spectrum,
    total_particles,
    unitarity_defect,
    write_coefficients_csv,
    write_spectrum_csv,
)
from .moore import (
    MooreCache,
    ReflectionTrace,
    build_cache,
    dump_moore_csv,
    functional_residuals,
    moore_R,
    moore_R_many,
    reflect_back,
    trace,
)
from .scenarios import (
    KINDS,
    PRESET_LAWS,
    CheckResult,
    PointResult,
    RunReport,
    ScenarioConfig,
    load_config,
    parse_config,
    run_checks,
    run_ratio_sweep,
    run_scenario,
    run_spectrum,
    run_total_vs_T,
)
from .trajectory import MirrorLaw, max_velocity, position, velocity

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # trajectory
    "MirrorLaw",
    "position",
    "velocity",
    "max_velocity",
    # moore
    "MooreCache",
    "ReflectionTrace",
    "reflect_back",
    "moore_R",
    "moore_R_many",
    "trace",
    "build_cache",
    "functional_residuals",
    "dump_moore_csv",
    # bogoliubov
    "SPECTRUM_FLOOR",
    "QuadratureSpec",
    "CoefficientGrid",
    "BogoliubovRow",
    "SpectrumResult",
    "UndefinedRatioError",
    "build_grid",
    "kink_breakpoints",
    "coefficient_pair",
    "coefficient_matrices",
    "coefficient_row",
    "mode_occupation",
    "unitarity_defect",
    "spectrum",
    "total_particles",
    "band_ratio",
    "write_spectrum_csv",
    "write_coefficients_csv",
    # analytic
    "EllipticModulus",
    "elliptic_K",
    "elliptic_E",
    "elliptic_KE",
    "resonance_modulus",
    "n_app_total",
    "n_app_mode1",
    # scenarios
    "KINDS",
    "PRESET_LAWS",
    "ScenarioConfig",
    "PointResult",
    "RunReport",
    "CheckResult",
    "parse_config",
    "load_config",
    "run_total_vs_T",
    "run_spectrum",
    "run_ratio_sweep",
    "run_scenario",
    "run_checks",
]
