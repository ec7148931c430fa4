"""Command line front end: ``freepoly <subcommand> [expression] [options]``."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import pipeline
from .cones import compatible_order, standard_blowup_cone
from .exceptions import FreePolyError, ParseError
from .parsing import ParsedInput, parse_input, parse_rational, split_jobs
from .preparation import orthant_order
from .report import emit_payload

__all__ = ["main", "build_parser", "run_job", "resolve_job"]

SUBCOMMANDS = ("analyze", "prepare", "blowup", "root-expand", "semigroup", "approx-root",
               "certify-free")

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """A job that cannot be turned into a computation."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


def resolve_job(job: ParsedInput, cone_mode: str | None):
    """(f, root, mode) with f built in the right order and cone."""
    if job.poly is None:
        raise InputError("the job has no polynomial", job.line)
    e = job.dimension()
    mode = cone_mode or ("custom" if job.cone is not None else "orthant")
    if mode == "orthant":
        order, cone = orthant_order(e), None
    elif mode == "blowup":
        cone = standard_blowup_cone(e)
        order = compatible_order(cone)
    elif mode == "custom":
        if job.cone is None:
            raise InputError("--cone custom needs a cone{...} line in the job", job.line)
        cone = job.cone
        if cone.dim != e:
            raise InputError(f"cone dimension {cone.dim} differs from e={e}", job.line)
        order = compatible_order(cone)
    else:
        raise InputError(f"unknown cone mode {mode!r}")
    try:
        f = job.poly.to_seriespoly(e, order, cone)
        root = job.series.to_series(order, cone) if job.series is not None else None
    except ValueError as exc:
        raise InputError(str(exc), job.line) from None
    if f.degree < 1 or not f.is_monic():
        raise InputError("the polynomial must be monic in y of degree >= 1", job.line)
    if root is not None and root.dim != e:
        raise InputError("series dimension differs from the polynomial's", job.line)
    return f, root, mode


def _precision(job: ParsedInput, cli_value, f):
    text = job.options.get("precision", cli_value)
    if text is None:
        return pipeline.default_precision(f)
    T = parse_rational(text) if isinstance(text, str) else Fraction(text)
    if T <= 0:
        raise InputError("precision must be positive", job.line)
    return T


def _as_list(v):
    if v is None:
        return []
    return v if isinstance(v, list) else [v]


def _dispatch(command, f, root, mode, T, job):
    if command == "analyze":
        report = pipeline.analyze(f, T, mode=mode, root=root)
        return report.to_dict(), report.passed
    if command == "prepare":
        return pipeline.run_prepare(f)
    if command == "blowup":
        return pipeline.run_blowup(f)
    if command == "root-expand":
        return pipeline.run_root_expand(f, T, mode)
    if command == "semigroup":
        return pipeline.run_semigroup(f, T, _as_list(job.options.get("value")), mode, root)
    if command == "approx-root":
        d = job.options.get("d")
        return pipeline.run_approx_root(f, T, int(d) if d is not None else None, mode)
    if command == "certify-free":
        return pipeline.run_certify(f, T, mode, root)
    raise InputError(f"unknown subcommand {command!r}")


def run_job(command: str, body: str, first_line: int = 1, *, cone_mode=None, precision=None,
            fmt: str = "json") -> tuple[int, str, str | None]:
    """Run one job; returns (exit code, rendered output, diagnostic for stderr)."""
    try:
        job = parse_input(body, first_line)
        f, root, mode = resolve_job(job, cone_mode)
        T = _precision(job, precision, f)
    except ParseError as exc:
        payload = {"error": str(exc), "line": exc.line, "column": exc.column,
                   "expected": list(exc.expected or [])}
        return EXIT_INPUT, emit_payload(payload, fmt), f"input error: {exc}"
    except (InputError, ValueError) as exc:
        line = getattr(exc, "line", None)
        payload = {"error": str(exc), "line": line}
        return EXIT_INPUT, emit_payload(payload, fmt), f"input error: {exc}"
    try:
        payload, ok = _dispatch(command, f, root, mode, T, job)
    except (FreePolyError, ValueError) as exc:
        payload = {"error": f"{type(exc).__name__}: {exc}", "line": job.line}
        return EXIT_CHECK, emit_payload(payload, fmt), f"line {job.line}: {type(exc).__name__}: {exc}"
    return (EXIT_OK if ok else EXIT_CHECK), emit_payload(payload, fmt), None


def _run_packed(args):
    command, body, line, cone_mode, precision, fmt = args
    return run_job(command, body, line, cone_mode=cone_mode, precision=precision, fmt=fmt)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("expression", nargs="*",
                        help="job lines: the polynomial, then optional series, cone and key = value lines")
    common.add_argument("--input", metavar="FILE",
                        help="read jobs from FILE ('-' for stdin); jobs are separated by '---'")
    common.add_argument("--precision", metavar="P/Q", help="weight bound T for truncated roots")
    common.add_argument("--cone", choices=("orthant", "blowup", "custom"),
                        help="where exponents live (default: orthant, or custom when a cone is given)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for batch input")
    parser = argparse.ArgumentParser(prog="freepoly",
                                     description="Invariants of free polynomials over cone power series.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _read_jobs(args) -> list[tuple[str, int]]:
    if args.expression and args.input is not None:
        raise InputError("give either an expression or --input, not both")
    if args.expression:
        return [("\n".join(args.expression), 1)]
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return split_jobs(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision is not None:
        try:
            if parse_rational(args.precision) <= 0:
                raise ValueError
        except (ParseError, ValueError, ZeroDivisionError):
            parser.error(f"--precision expects a positive rational, got {args.precision!r}")
    try:
        jobs = _read_jobs(args)
    except InputError as exc:
        print(f"freepoly: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not jobs:
        print("freepoly: no jobs in input", file=sys.stderr)
        return EXIT_INPUT
    packed = [(args.command, body, line, args.cone, args.precision, args.format)
              for body, line in jobs]
    if args.jobs > 1 and len(packed) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_packed, packed))
    else:
        results = [_run_packed(p) for p in packed]
    status = EXIT_OK
    sep = "\n" if args.format == "json" else "\n---\n"
    print(sep.join(out for _, out, _ in results))
    for code, _, diag in results:
        if diag:
            print(f"freepoly: {diag}", file=sys.stderr)
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
