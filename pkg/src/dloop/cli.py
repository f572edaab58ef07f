"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds a failing check, 2 on a
usage or domain error.  Tables go to stdout unless ``--out`` is given or
``DLOOP_OUTPUT_DIR`` names a directory, in which case they are written there
as ``<name>.<format>``.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .beamline import LoopSettings
from .errors import DoubleLoopError
from .figures import FIGURE_IDS, SWEEP_VARIABLES, SweepSpec, format_number, render_figure, run_sweep
from .intensity import QuadratureConfig, Spectrum, k0_closed, kg_closed
from .verify import DEFAULT_SEED, run_verify
from .visibility import AbsorptionMode, solve_balance_absorber, solve_unit_visibility_phase

OUTPUT_DIR_ENV = "DLOOP_OUTPUT_DIR"


def _real(text: str) -> float:
    """Float parser that also accepts ``inf`` and ``pi`` multiples like ``2pi/3``."""
    t = text.strip().lower()
    if "pi" in t:
        num, _, den = t.partition("/")
        coef = num.replace("pi", "").replace("*", "") or "1"
        if coef == "-":
            coef = "-1"
        value = float(coef) * math.pi
        return value / float(den) if den else value
    return float(t)


def _emit(text: str, name: str, fmt: str, out: str | None) -> None:
    target = None
    if out:
        target = Path(out)
    elif os.environ.get(OUTPUT_DIR_ENV):
        target = Path(os.environ[OUTPUT_DIR_ENV]) / f"{name}.{fmt}"
    if target is None:
        sys.stdout.write(text)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    print(f"wrote {target}", file=sys.stderr)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_settings(p: argparse.ArgumentParser, background: bool = True) -> None:
    p.add_argument("--chi-d", type=_real, default=0.0, help="phase in beam (d), rad")
    p.add_argument("--chi-f", type=_real, default=0.0, help="phase in beam (f), rad")
    p.add_argument("--alpha-d", type=_real, default=0.0, help="absorption in beam (d)")
    p.add_argument("--alpha-f", type=_real, default=0.0, help="absorption in beam (f)")
    p.add_argument("--eps", type=_real, default=0.01, help="relative bandwidth dk/k0")
    if background:
        p.add_argument("--background", type=_real, default=0.0,
                       help="incoherent background (monochromatic fringe units)")
        p.add_argument("--mode", choices=("sto", "det"), default="sto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dloop", description="Double-loop neutron interferometer intensities and visibilities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("figure", help="data table behind a published figure")
    p.add_argument("--id", required=True, choices=FIGURE_IDS)
    _add_output(p)

    p = sub.add_parser("sweep", help="sweep one parameter")
    p.add_argument("--var", required=True, choices=SWEEP_VARIABLES)
    p.add_argument("--from", dest="start", type=_real, required=True)
    p.add_argument("--to", dest="stop", type=_real, required=True)
    p.add_argument("--steps", type=int, required=True)
    _add_settings(p)
    _add_output(p)

    p = sub.add_parser("intensity", help="forward and diffracted intensity")
    _add_settings(p, background=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("solve", help="matching conditions")
    solve = p.add_subparsers(dest="which", required=True)
    b = solve.add_parser("balance", help="absorber in (f) for equal mean K0 and KG")
    b.add_argument("--alpha-d", type=_real, default=0.0)
    b.add_argument("--chi-d", type=_real, default=0.0)
    b.add_argument("--eps", type=_real, default=0.01)
    u = solve.add_parser("unit-visibility", help="phase in (f) for unit visibility")
    u.add_argument("--t", type=_real, required=True, help="transmission of beam (d)")

    p = sub.add_parser("verify", help="run the oracle and invariant checks")
    p.add_argument("--tol", type=_real, default=1e-5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--phase-samples", type=int, default=QuadratureConfig.phase_samples)
    p.add_argument("--y-nodes", type=int, default=QuadratureConfig.y_nodes)
    p.add_argument("--k-nodes", type=int, default=QuadratureConfig.k_nodes)
    return parser


def _settings(args) -> LoopSettings:
    return LoopSettings(args.chi_d, args.chi_f, args.alpha_d, args.alpha_f)


def _print_record(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record))
    else:
        print(",".join(record))
        print(",".join(format_number(v) for v in record.values()))


def _run(args) -> int:
    if args.command == "figure":
        table = render_figure(args.id)
        _emit(table.render(args.format), args.id, args.format, args.out)
    elif args.command == "sweep":
        spec = SweepSpec(args.var, args.start, args.stop, args.steps, _settings(args),
                         args.eps, args.background, AbsorptionMode.parse(args.mode))
        table = run_sweep(spec)
        _emit(table.render(args.format), table.name, args.format, args.out)
    elif args.command == "intensity":
        s, spec = _settings(args), Spectrum(args.eps)
        _print_record({"K0": k0_closed(s, spec), "KG": kg_closed(s, spec)}, args.format)
    elif args.command == "solve" and args.which == "balance":
        alpha_f = solve_balance_absorber(args.alpha_d, args.chi_d, args.eps)
        print(format_number(alpha_f))
    elif args.command == "solve":
        print(format_number(solve_unit_visibility_phase(args.t)))
    elif args.command == "verify":
        q = QuadratureConfig(args.phase_samples, args.y_nodes, args.k_nodes)
        report = run_verify(args.tol, args.samples, args.seed, q)
        for line in report.lines():
            print(line)
        return 0 if report.passed else 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except DoubleLoopError as exc:
        print(f"dloop: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
