"""Command-line entry points.

  dce run <config>      run a scenario config file (any kind)
  dce spectrum ...      one discrete spectrum straight to CSV
  dce ratio-sweep ...   relativistic-band ratio over an amplitude grid
  dce check             property suite (functional equation, unitarity, ...)

Exit status is nonzero whenever a report fails its gate or a check fails.
"""

from __future__ import annotations

import argparse
import sys

from .bogoliubov import QuadratureSpec, spectrum, write_spectrum_csv
from .scenarios import (
    RunReport,
    ScenarioConfig,
    load_config,
    run_checks,
    run_ratio_sweep,
    run_scenario,
)
from .trajectory import MirrorLaw


def _parse_grid(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dce",
        description="Exact particle creation in a cavity with an oscillating mirror.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config file")
    p_run.add_argument("config", help="path to a flat key=value scenario config")

    p_spec = sub.add_parser("spectrum", help="compute one discrete spectrum")
    p_spec.add_argument("--L0", type=float, default=1.0, help="static cavity length")
    p_spec.add_argument("--l0", type=float, default=1.0, help="oscillation period")
    p_spec.add_argument("--a", type=float, required=True, help="oscillation amplitude")
    p_spec.add_argument("--T", type=float, default=None,
                        help="oscillation duration (default 2*L0)")
    p_spec.add_argument("--nmax", type=int, default=None,
                        help="highest reported mode (default 40, or 80 for L0 > 2)")
    p_spec.add_argument("--smax", type=int, default=None,
                        help="initial summation truncation (default 8*nmax)")
    p_spec.add_argument("--ppuf", type=float, default=8.0,
                        help="quadrature panels per unit frequency")
    p_spec.add_argument("--out", required=True, help="output CSV path")

    p_ratio = sub.add_parser("ratio-sweep", help="N3/N1 ratio over an amplitude grid")
    p_ratio.add_argument("--L0", type=float, default=1.0,
                         help="static cavity length (= oscillation period)")
    p_ratio.add_argument("--a-grid", type=_parse_grid, required=True,
                         help="comma-separated amplitudes")
    p_ratio.add_argument("--out-dir", default=".", help="directory for ratio_sweep.csv")
    p_ratio.add_argument("--label", default="", help="optional CSV filename prefix")

    p_check = sub.add_parser("check", help="run the property suite")
    p_check.add_argument("--fast", action="store_true",
                         help="skip the large-cavity presets")
    return parser


def _print_report(report: RunReport) -> int:
    for line in report.summary_lines():
        print(line)
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _cmd_run(args: argparse.Namespace) -> int:
    return _print_report(run_scenario(load_config(args.config)))


def _cmd_spectrum(args: argparse.Namespace) -> int:
    T = 2.0 * args.L0 if args.T is None else args.T
    law = MirrorLaw(L0=args.L0, a=args.a, l0=args.l0, T=T)
    res = spectrum(law, n_max=args.nmax, s_max=args.smax,
                   spec=QuadratureSpec(panels_per_unit_frequency=args.ppuf))
    write_spectrum_csv(res, args.out)
    print(f"wrote {args.out}: n_max={res.n_max} s_max={res.s_max} "
          f"total={res.total:.8g} unitarity_defect={res.unitarity_defect:.3g} "
          f"converged={res.converged}")
    ok = res.converged and res.unitarity_defect < 1e-3
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_ratio_sweep(args: argparse.Namespace) -> int:
    config = ScenarioConfig(
        kind="ratio_sweep",
        L0=args.L0,
        l0=args.L0,
        a_grid=args.a_grid,
        out_dir=args.out_dir,
        label=args.label,
    )
    return _print_report(run_ratio_sweep(config))


def _cmd_check(args: argparse.Namespace) -> int:
    results = run_checks(fast=args.fast)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        ok = ok and res.passed
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "spectrum": _cmd_spectrum,
        "ratio-sweep": _cmd_ratio_sweep,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"dce: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
