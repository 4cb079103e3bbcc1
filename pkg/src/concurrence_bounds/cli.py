"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 unreadable or malformed state file. Errors go to stderr as a single
``CODE: message`` line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import family as fam
from .bounds import DEFAULT_GRID, DETECTION_TOL, bound_report
from .errors import BoundsError, DimMismatch, NotBijection, StateFormatError
from .maps import GeneralizedMap, Permutation, parse_permutation
from .states import read_state
from .verification import (
    convex_roof_upper,
    positivity_probe,
    run_theorem_suite,
    wootters_concurrence,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    code = "E_USAGE"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _report_output(report, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = report.to_dict() if extra is None else {"report": report.to_dict(), **extra}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return report.to_csv()
    text = report.to_text()
    for key, value in (extra or {}).items():
        if isinstance(value, list):
            value = " ".join(f"{v:.12g}" for v in value)
        elif isinstance(value, dict):
            value = " ".join(f"{k}={v:.12g}" for k, v in value.items())
        text += f"{key}: {value}\n"
    return text


def _load(path: str):
    try:
        return read_state(path)
    except OSError as exc:
        raise StateFormatError(f"cannot read {path}: {exc.strerror}") from None
    except BoundsError as exc:
        if isinstance(exc, StateFormatError):
            raise
        # anything wrong with the file contents is a parse/validation error
        raise StateFormatError(f"{path}: {exc.code}: {exc}") from None


def _t_and_grid(args) -> tuple[float | None, int]:
    if args.t_grid is not None:
        return None, args.t_grid
    return (1.0 if args.t is None else args.t), DEFAULT_GRID


def cmd_bounds(args) -> int:
    rho = _load(args.state)
    t, grid = _t_and_grid(args)
    try:
        perm = parse_permutation(args.perm, rho.dims.n2)
    except (NotBijection, DimMismatch) as exc:
        raise UsageError(str(exc)) from None
    if t is None:
        # best grid value becomes the reported map bound
        t = bound_report(rho, 1.0, perm, grid, args.detection_tol).best_t
    report = bound_report(rho, t, perm, grid, args.detection_tol)
    sys.stdout.write(_report_output(report, args.format))
    return EXIT_OK


def cmd_family(args) -> int:
    t = 0.5 if args.t is None else args.t
    rho = fam.family_state(args.x, args.y)
    report = bound_report(rho, t, detection_tol=args.detection_tol)
    h, i, j, k = fam.printed_bound_curves(args.x, args.y, t)
    extra = {
        "closed_form_eigs": fam.mapped_closed_form_eigs(args.x, args.y, t).tolist(),
        "numeric_eigs": fam.mapped_spectrum(args.x, args.y, t).tolist(),
        "printed_curves": {"h": h, "i": i, "j": j, "k": k},
    }
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(_report_output(report, args.format, extra))
    return EXIT_OK


def cmd_figure(args) -> int:
    text = fam.figure_data(args.which, args.resolution, numeric=args.numeric)
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise StateFormatError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = (args.n,) if args.n is not None else (2, 3, 4, 5, 6)
    suite = run_theorem_suite(ns, args.trials, args.seed)
    out = [suite.to_text().rstrip("\n")]
    ok = suite.passed
    for n in ns:
        for t in (0.0, 0.5, 1.0):
            min_eig, _ = positivity_probe(GeneralizedMap.cyclic(n, t), args.trials, args.seed)
            good = min_eig >= -1e-9
            ok &= good
            out.append(f"{'PASS' if good else 'FAIL'} positivity n={n} t={t:g}        min eig {min_eig:+.3e}")
    out.append("ALL PASS" if ok else "FAILURES PRESENT")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    rho = _load(args.state)
    doc = {"dims": list(rho.dims)}
    if tuple(rho.dims) == (2, 2):
        doc["wootters"] = wootters_concurrence(rho)
    doc["convex_roof_upper"] = convex_roof_upper(rho, args.samples, args.seed)
    doc["samples"] = args.samples
    doc["seed"] = args.seed
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("".join(f"{k}: {v}\n" for k, v in doc.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="concurrence-bounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="all lower bounds for a state file")
    b.add_argument("--state", required=True)
    tg = b.add_mutually_exclusive_group()
    tg.add_argument("--t", type=float)
    tg.add_argument("--t-grid", type=int, dest="t_grid")
    b.add_argument("--perm", default="cyclic")
    b.add_argument("--format", choices=("json", "csv", "text"), default="text")
    b.add_argument("--detection-tol", type=float, default=DETECTION_TOL)
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("family", help="bounds and spectra for the example family rho(x, y)")
    f.add_argument("--x", type=float, required=True)
    f.add_argument("--y", type=float, required=True)
    f.add_argument("--t", type=float)
    f.add_argument("--format", choices=("json", "csv", "text"), default="text")
    f.add_argument("--detection-tol", type=float, default=DETECTION_TOL)
    f.set_defaults(func=cmd_family)

    g = sub.add_parser("figure", help="write figure data as CSV")
    g.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    g.add_argument("--resolution", type=int, default=fam.DEFAULT_RESOLUTION)
    g.add_argument("--out", required=True)
    g.add_argument("--numeric", action="store_true", help="append directly computed f columns")
    g.set_defaults(func=cmd_figure)

    v = sub.add_parser("verify", help="bulk proof checks and positivity probe")
    v.add_argument("--n", type=int)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact (2x2) and sampled convex-roof concurrence")
    o.add_argument("--state", required=True)
    o.add_argument("--samples", type=int, default=200)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--format", choices=("json", "text"), default="json")
    o.set_defaults(func=cmd_oracle)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", None) is not None and args.n < 2:
            raise UsageError("--n must be at least 2")
        return args.func(args)
    except UsageError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateFormatError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BoundsError, ValueError) as exc:
        code = getattr(exc, "code", "E_VALUE")
        print(f"{code}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
