"""Command-line interface: analyze, gen, verify, sweep.

Exit codes: 0 success, 1 invalid/unphysical input or failed verification,
2 numerical failure.  All reports are JSON (CSV for sweeps); repeated runs
with the same inputs and seeds are byte-identical.
"""

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .analysis import analyze_matrix
from .errors import InvalidInput, NumericalFailure
from .families import Family, FamilySpec, randomize_cm, sample_params
from .indicators import indicator_report
from .io import ORDERINGS, cm_from_dict, cm_to_dict, params_to_dict
from .standard_form_ii import solve_standard_form_ii
from .symplectic import StandardFormParams, spectrum, validate
from .tolerances import DEFAULT
from .verify import FAULTS, run_suite

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def _default_seed() -> int:
    return int(os.environ.get("EPRSEP_SEED", "0"))


def _print_json(obj, pretty=True):
    print(json.dumps(obj, indent=2 if pretty else None, sort_keys=False))


def _tolerances(args):
    tol = DEFAULT
    overrides = {}
    if getattr(args, "eps_phys", None) is not None:
        overrides["eps_phys"] = args.eps_phys
    if getattr(args, "identity_tol", None) is not None:
        overrides["identity_rel"] = args.identity_tol
    if getattr(args, "oracle_tol", None) is not None:
        overrides["closed_vs_oracle_rel"] = args.oracle_tol
    return tol.with_(**overrides) if overrides else tol


def cmd_analyze(args) -> int:
    if args.path == "-":
        raw = sys.stdin.read()
    else:
        raw = Path(args.path).read_text()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        _print_json({"error": f"invalid JSON: {exc}"})
        return EXIT_INVALID
    tol = _tolerances(args)
    try:
        cm = cm_from_dict(obj, args.ordering)
        report = validate(cm, args.eps_phys, tol)
        if not report.ok:
            _print_json(
                {
                    "error": "unphysical covariance matrix",
                    "physicality": dataclasses.asdict(report),
                }
            )
            return EXIT_INVALID
        _print_json(analyze_matrix(cm, args.eps_phys, tol).to_dict())
        return EXIT_OK
    except InvalidInput as exc:
        _print_json({"error": str(exc)})
        return EXIT_INVALID
    except NumericalFailure as exc:
        _print_json({"error": str(exc), "kind": "numerical"})
        return EXIT_NUMERICAL


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spec = FamilySpec(
        family=Family(args.family),
        b_max=args.b_max,
        seed=seed,
        bias_entangled=args.bias_entangled,
        negative_d=args.negative_d,
    )
    rng = np.random.default_rng(seed)
    lines = []
    for i in range(args.count):
        p = sample_params(spec, rng)
        if args.randomize:
            obj = cm_to_dict(randomize_cm(p, seed + 104729 * i))
        else:
            obj = params_to_dict(p)
        lines.append(obj)
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, obj in enumerate(lines):
            (out / f"state_{i:04d}.json").write_text(json.dumps(obj, indent=2) + "\n")
    else:
        for obj in lines:
            print(json.dumps(obj))
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    tol = _tolerances(args)
    try:
        summary = run_suite(n=args.n, seed=seed, tol=tol, fault=args.inject_fault)
    except NumericalFailure as exc:
        _print_json({"error": str(exc), "kind": "numerical"})
        return EXIT_NUMERICAL
    if args.report_path:
        Path(args.report_path).write_text(json.dumps(summary, indent=2) + "\n")
    _print_json(summary)
    return EXIT_OK if summary["all_passed"] else EXIT_INVALID


def _sweep_params(family: str, axis: str, value: float, base_b: float, base_c: float):
    if family == "sts" and axis == "r":
        b = 0.5 * math.cosh(2.0 * value)
        c = 0.5 * math.sinh(2.0 * value)
        return StandardFormParams(b, b, c, -c)
    if family in ("sts", "symmetric") and axis == "c":
        return StandardFormParams(base_b, base_b, value, -value)
    if family == "symmetric" and axis == "d":
        return StandardFormParams(base_b, base_b, base_c, value)
    if family == "symmetric" and axis == "b":
        return StandardFormParams(value, value, base_c, -base_c)
    if family == "thermal" and axis == "b":
        return StandardFormParams(value, value, 0.0, 0.0)
    if family == "mts" and axis == "c":
        return StandardFormParams(base_b, base_b, value, value)
    raise InvalidInput(f"axis {axis!r} is not supported for family {family!r}")


def cmd_sweep(args) -> int:
    try:
        lo_s, hi_s, steps_s = args.range.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError:
        print(f"invalid --range {args.range!r}, expected lo:hi:steps", file=sys.stderr)
        return EXIT_INVALID
    if steps < 2 or not hi > lo:
        print("degenerate sweep range", file=sys.stderr)
        return EXIT_INVALID
    rows = []
    try:
        for i in range(steps):
            value = lo + i * (hi - lo) / (steps - 1)
            p = _sweep_params(args.family, args.axis, value, args.b, args.c)
            rep = validate_params_row(p)
            rows.append((value,) + rep)
    except InvalidInput as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NUMERICAL
    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(
            ["parameter", "d_pt", "kappa_minus_pt", "e_m", "f_m", "g_m", "f_tilde", "verdict"]
        )
        for row in rows:
            writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def validate_params_row(p: StandardFormParams):
    """One sweep row: invariants, indicator values and the verdict."""
    sp = spectrum(p)
    ind = indicator_report(p)
    sol = solve_standard_form_ii(p)
    return (
        sp.d_pt,
        sp.kappa_minus_pt,
        ind.e_m,
        ind.f_m,
        ind.g_m,
        sol.f_tilde,
        ind.verdict,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eprsep",
        description="Separability analysis of two-mode Gaussian states "
        "from their covariance matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full separability report for one matrix")
    pa.add_argument("path", help="covariance-matrix JSON file, or - for stdin")
    pa.add_argument("--ordering", choices=ORDERINGS, default=None,
                    help="override the ordering declared in the file")
    pa.add_argument("--eps-phys", type=float, default=None,
                    help=f"physicality slack (default {DEFAULT.eps_phys})")
    pa.add_argument("--identity-tol", type=float, default=None,
                    help=f"identity-residual tolerance (default {DEFAULT.identity_rel})")
    pa.set_defaults(func=cmd_analyze)

    pg = sub.add_parser("gen", help="generate valid states")
    pg.add_argument("--family", choices=[f.value for f in Family], default="generic")
    pg.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: EPRSEP_SEED or 0)")
    pg.add_argument("--count", type=int, default=1)
    pg.add_argument("--b-max", type=float, default=5.0)
    pg.add_argument("--randomize", action="store_true",
                    help="emit de-standardized covariance matrices instead of parameters")
    pg.add_argument("--bias-entangled", action="store_true")
    pg.add_argument("--negative-d", action="store_true")
    pg.add_argument("--output-dir", default=None,
                    help="write one JSON file per state instead of stdout lines")
    pg.set_defaults(func=cmd_gen)

    pv = sub.add_parser("verify", help="run the verification suite over random states")
    pv.add_argument("--n", type=int, default=100)
    pv.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: EPRSEP_SEED or 0)")
    pv.add_argument("--report-path", default=None)
    pv.add_argument("--identity-tol", type=float, default=None)
    pv.add_argument("--oracle-tol", type=float, default=None)
    pv.add_argument("--inject-fault", choices=FAULTS, default=None,
                    help="corrupt one closed form (harness negative control)")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sweep", help="tabulate indicators along a family axis (CSV)")
    ps.add_argument("--family", choices=["sts", "mts", "thermal", "symmetric"], required=True)
    ps.add_argument("--axis", choices=["b", "c", "d", "r"], required=True)
    ps.add_argument("--range", required=True, help="lo:hi:steps")
    ps.add_argument("--b", type=float, default=1.0, help="fixed b for c/d sweeps")
    ps.add_argument("--c", type=float, default=0.5, help="fixed c for d/b sweeps")
    ps.add_argument("--output", default="-", help="CSV path, or - for stdout")
    ps.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
