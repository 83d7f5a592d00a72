"""Acceptance gate: end-to-end checks of the headline physics numbers.

Each test prints one `[criterion N] PASS/FAIL` line so the suite output
doubles as a checklist.  Criterion 3 is a known failure and is kept red
on purpose: the even-mode occupations at a = 0.1 are small but sit a few
parts in a thousand of the fundamental, not below the 1e-3 bound the
criterion demands.  The value is confirmed by the reference quadrature in
dce.oracles to machine precision, so the bound, not the computation, is
what does not hold.  Details in the assertion message of criterion 3.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from dce import (
    MirrorLaw,
    ScenarioConfig,
    band_ratio,
    elliptic_KE,
    n_app_mode1,
    run_checks,
    run_total_vs_T,
)
from dce.bogoliubov import build_grid, coefficient_pair
from dce.moore import moore_R
from dce.oracles import oracle_alpha, oracle_beta, oracle_elliptic, oracle_moore_R


def _verdict(num: int, ok: bool, detail: str) -> str:
    line = f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    return line


def test_criterion_1_fundamental_mode(spectrum_fig_small):
    n1 = float(spectrum_fig_small.occupations[0])
    n1_app = n_app_mode1(0.01, 2.0, 1.0)
    rel = abs(n1 - n1_app) / n1_app
    ok = 0.0008 <= n1 <= 0.0012 and rel < 0.05
    line = _verdict(
        1, ok, f"N1={n1:.6e} in [8e-4, 1.2e-3], vs N1_app={n1_app:.6e} rel dev {rel:.2%}"
    )
    assert ok, line


def test_criterion_2_band_ratio_table():
    # (amplitude, expected N3/N1); v = 2*pi*a/l0 with l0 = 1
    targets = (
        (1e-3, 7.4e-6),
        (1e-2, 7.4e-4),
        (0.1 / (2.0 * math.pi), 1.9e-3),
        (0.3 / (2.0 * math.pi), 1.6e-2),
        (1e-1, 6.3e-2),
    )
    parts = []
    worst = 0.0
    for a, expected in targets:
        ratio = band_ratio(MirrorLaw(L0=1.0, a=a, l0=1.0, T=2.0))
        dev = abs(ratio - expected) / expected
        worst = max(worst, dev)
        parts.append(f"v={2.0 * math.pi * a:.3g}: {ratio:.3g} (dev {dev:.1%})")
    ok = worst <= 0.10
    line = _verdict(2, ok, "; ".join(parts) + f"; worst dev {worst:.1%} (tol 10%)")
    assert ok, line


def test_criterion_3_odd_even_structure(spectrum_fig_big):
    occ = spectrum_fig_big.occupations
    n1, n2, n3, n4, n5 = (float(occ[i]) for i in range(5))
    odd_ok = n3 > 0.0 and n5 > 0.0
    even_ok = n2 < 1e-3 * n1 and n4 < 1e-3 * n1
    ok = odd_ok and even_ok
    line = _verdict(
        3,
        ok,
        f"N3={n3:.3e}>0 N5={n5:.3e}>0; N2/N1={n2 / n1:.2e}, N4/N1={n4 / n1:.2e} "
        f"(bound 1e-3)",
    )
    assert ok, (
        line + " -- the even modes do not vanish at a = 0.1: beta(2,2) is zero "
        "exactly, but the cross term beta(2,4) = -0.01426 makes "
        "N2 = 4.08e-4 = 3.8e-3 * N1, an O(a^3) effect confirmed against "
        "dce.oracles.oracle_beta to 2e-16.  Criterion 5 tolerates 1e-2 for the "
        "numerically identical quantity N8 at L0 = 4.  Kept red rather than "
        "loosening the bound in code."
    )


def test_criterion_4_no_higher_frequency_creation(spectrum_fig_small):
    occ = spectrum_fig_small.occupations
    n1 = float(occ[0])
    tail = float(occ[1:].sum())
    ok = tail < 1e-3 * n1
    line = _verdict(
        4, ok, f"sum(N_n, n>=2)={tail:.3e} vs 1e-3*N1={1e-3 * n1:.3e}"
    )
    assert ok, line


def test_criterion_5_band_limit(spectrum_band_small, spectrum_band_big):
    small = spectrum_band_small.occupations
    peak_mode = int(np.argmax(small)) + 1
    n4 = float(small[3])
    beyond = float(small[8:].max(initial=0.0))  # modes n > 8
    small_ok = peak_mode == 4 and beyond < 1e-3 * n4

    big = spectrum_band_big.occupations
    peak = float(big.max())
    n8, n16 = float(big[7]), float(big[15])
    arch = float(big[8:15].max(initial=0.0))  # modes 9..15
    big_ok = n8 < 1e-2 * peak and n16 < 1e-2 * peak and arch > 0.0

    ok = small_ok and big_ok
    line = _verdict(
        5,
        ok,
        f"a=0.01: argmax n={peak_mode}, max(N_n, n>8)={beyond:.3e} vs "
        f"1e-3*N4={1e-3 * n4:.3e}; a=0.1: N8/peak={n8 / peak:.2e}, "
        f"N16/peak={n16 / peak:.2e} (bound 1e-2), arch max={arch:.3e}",
    )
    assert ok, line


def test_criterion_6_total_vs_duration(tmp_path):
    # Sampled at multiples of 2*L0, where the start and stop velocity kinks
    # cancel between the two window endpoints; in between, the kinks radiate
    # a slowly decaying high-mode tail and any truncated total is
    # cutoff-dependent, so those durations are not meaningful samples for a
    # mode-sum comparison.
    weak = run_total_vs_T(
        ScenarioConfig(
            kind="total_vs_T",
            a=0.01,
            T_grid=(0.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0),
            out_dir=str(tmp_path / "weak"),
        )
    )
    weak_dev = 0.0
    for p in weak.points:
        denom = max(p.values["N_approx"], 1e-3)
        weak_dev = max(weak_dev, p.values["abs_diff"] / denom)
    weak_ok = weak.passed and weak_dev < 0.1

    strong = run_total_vs_T(
        ScenarioConfig(
            kind="total_vs_T",
            a=0.1,
            T_grid=(2.0, 4.0, 6.0),
            out_dir=str(tmp_path / "strong"),
        )
    )
    gaps = [p.values["N_exact"] - p.values["N_approx"] for p in strong.points]
    strong_ok = (
        strong.passed
        and all(g > 0.0 for g in gaps)
        and all(b >= a for a, b in zip(gaps, gaps[1:]))
    )

    ok = weak_ok and strong_ok
    line = _verdict(
        6,
        ok,
        f"a=0.01 over T=0..20: max rel dev {weak_dev:.2%} (tol 10%); "
        f"a=0.1 over T=2,4,6: N_exact-N_app = "
        + ", ".join(f"{g:.4f}" for g in gaps)
        + " (positive, non-decreasing)",
    )
    assert ok, line


def test_criterion_7_property_suite():
    results = run_checks(fast=False)
    failed = [r.name for r in results if not r.passed]
    ok = not failed
    detail = f"{len(results)} checks passed"
    if failed:
        detail = f"failed: {', '.join(failed)}"
    line = _verdict(7, ok, detail)
    assert ok, line


def test_criterion_8_oracle_equivalence():
    law = MirrorLaw(L0=1.0, a=1e-1, l0=1.0, T=2.0)

    moore_dev = max(
        abs(moore_R(law, z) - oracle_moore_R(law, z))
        for z in (1.5, 2.456, 3.7, 4.999)
    )

    grid = build_grid(law, r_cap=3, s_cap=64)
    coeff_dev = 0.0
    for r, s in ((1, 1), (1, 3), (3, 1)):
        alpha, beta = coefficient_pair(grid, r, s)
        coeff_dev = max(
            coeff_dev,
            abs(alpha - oracle_alpha(law, r, s, law.T, n_nodes=4001)),
            abs(beta - oracle_beta(law, r, s, law.T, n_nodes=4001)),
        )

    elliptic_dev = 0.0
    for kappa in (0.0, 0.3, 0.5, 0.7, 0.9):
        k_fast, e_fast = elliptic_KE(kappa)
        k_ref, e_ref = oracle_elliptic(kappa)
        elliptic_dev = max(elliptic_dev, abs(k_fast - k_ref), abs(e_fast - e_ref))

    ok = moore_dev < 1e-10 and coeff_dev < 1e-8 and elliptic_dev < 1e-12
    line = _verdict(
        8,
        ok,
        f"max |moore - oracle|={moore_dev:.2e} (tol 1e-10), "
        f"|coeff - oracle|={coeff_dev:.2e} (tol 1e-8), "
        f"|elliptic - oracle|={elliptic_dev:.2e} (tol 1e-12)",
    )
    assert ok, line
