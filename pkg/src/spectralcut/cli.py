"""Command-line front end: ``spectralcut cluster`` and ``spectralcut verify``."""
from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .errors import ParseError, SpectralError, all_error_types
from .kernels import KernelSpec
from .matrixio import parse_matrix, parse_vector
from .graph import Objective
from .pipeline import GRAPH_KINDS, cluster
from .rounding import RoundingConfig

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

FILE_KIND_COMPAT = {
    "unipartite": ("uni",),
    "directed": ("dir",),
    "bipartite": ("bi", "bi-direct", "bi-augmented"),
    "dense": GRAPH_KINDS,
}

KERNEL_PARAMS = {
    "poly": ("c", "d"),
    "gauss": ("alpha",),
    "sigmoid": ("c", "theta"),
}


class UsageError(Exception):
    pass


def _exit_code_table() -> str:
    lines = [
        "exit codes:",
        f"  {EXIT_OK:>3}  success",
        f"  {EXIT_VERIFY_FAILED:>3}  verification check failed",
        f"  {EXIT_USAGE:>3}  bad or conflicting command-line flags",
        f"  {EXIT_IO:>3}  input/output file could not be read or written",
    ]
    for cls in all_error_types():
        lines.append(f"  {cls.exit_code:>3}  {cls.__name__}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectralcut",
        description="K-way spectral clustering of unipartite, bipartite and directed graphs.",
        epilog=_exit_code_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser(
        "cluster",
        help="cluster a matrix file",
        epilog=_exit_code_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    c.add_argument("--input", required=True, help="matrix file")
    c.add_argument("--kind", required=True, choices=GRAPH_KINDS)
    c.add_argument("--objective", default="nassoc", choices=[o.value for o in Objective])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--phi", help="custom vertex weights (gwassoc/gwcuts only)")
    c.add_argument("--kernel", choices=sorted(KERNEL_PARAMS), help="cluster items on a kernel-built graph")
    c.add_argument("--kernel-params", default="", help="comma-separated key=value, e.g. alpha=1.5 or c=1,d=2")
    c.add_argument("--regularize-degrees", action="store_true", help="add 1e-10 to zero vertex weights")
    c.add_argument("--clamp-negative-kernel", action="store_true", help="clamp negative kernel values to 0")
    c.add_argument("--symmetric-completion", action="store_true", help="mirror one-triangle coo entries")
    c.add_argument("--restarts", type=int, default=8)
    c.add_argument("--max-iters", type=int, default=100)
    c.add_argument("--timings", action="store_true", help="include per-stage wall times (breaks byte-identical output)")
    c.add_argument("--output", help="report path (default: stdout)")
    c.add_argument("--format", choices=("json", "tsv"), default="json")

    v = sub.add_parser(
        "verify",
        help="run the seeded self-verification suites",
        epilog=_exit_code_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--trials", type=int, default=1000, help="random competitors per trace check")
    v.add_argument("--instances", type=int, default=20, help="random instances per suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=8, help="largest graph for brute force (<= 12)")
    return parser


def parse_kernel(kind: str | None, params: str) -> KernelSpec | None:
    if kind is None:
        if params:
            raise UsageError("--kernel-params given without --kernel")
        return None
    allowed = KERNEL_PARAMS[kind]
    values: dict[str, float] = {}
    for item in filter(None, (p.strip() for p in params.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise UsageError(f"bad kernel parameter {item!r}; {kind} takes {', '.join(allowed)}")
        try:
            values[key] = float(raw)
        except ValueError:
            raise UsageError(f"kernel parameter {key} is not a number: {raw!r}") from None
    if kind == "poly":
        d = values.get("d", 1.0)
        if d != int(d):
            raise UsageError("polynomial degree d must be an integer")
        return KernelSpec.polynomial(values.get("c", 0.0), int(d))
    if kind == "gauss":
        return KernelSpec.gaussian(values.get("alpha", 1.0))
    return KernelSpec.sigmoid(values.get("c", 1.0), values.get("theta", 0.0))


def cmd_cluster(args) -> int:
    objective = Objective(args.objective)
    if args.kernel and args.kind in ("dir", "uni"):
        raise UsageError(f"--kernel needs a bipartite data matrix; it conflicts with --kind {args.kind}")
    if args.phi and not objective.needs_custom_phi:
        raise UsageError(f"--phi only applies to gwassoc/gwcuts, not {objective.value}")
    if objective.needs_custom_phi and not args.phi:
        raise UsageError(f"{objective.value} requires --phi")
    kernel = parse_kernel(args.kernel, args.kernel_params)
    meta, matrix = parse_matrix(args.input, symmetric_completion=args.symmetric_completion)
    if args.kind not in FILE_KIND_COMPAT[meta.kind]:
        raise UsageError(f"file kind {meta.kind!r} conflicts with --kind {args.kind}")
    phi = parse_vector(args.phi) if args.phi else None
    report = cluster(
        matrix,
        args.kind,
        objective.value,
        args.k,
        seed=args.seed,
        phi=phi,
        kernel=kernel,
        regularize=args.regularize_degrees,
        clamp_negative_kernel=args.clamp_negative_kernel,
        rounding=RoundingConfig(seed=args.seed, max_iters=args.max_iters, restarts=args.restarts),
        timings=args.timings,
    )
    text = report.to_json() if args.format == "json" else report.to_tsv()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run(args.suite, seed=args.seed, trials=args.trials, instances=args.instances, max_n=args.max_n)
    for check in checks:
        print(check.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY_FAILED


def _fail(code: int, kind: str, message: str, line: int | None = None) -> int:
    payload = {"error": kind, "exit_code": code, "message": message}
    if line is not None:
        payload["line"] = line
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cluster":
            return cmd_cluster(args)
        return cmd_verify(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "UsageError", str(exc))
    except SpectralError as exc:
        line = exc.line if isinstance(exc, ParseError) else None
        return _fail(exc.exit_code, type(exc).__name__, str(exc), line)
    except ValueError as exc:
        return _fail(EXIT_USAGE, "UsageError", str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, "IOError", str(exc))


if __name__ == "__main__":
    sys.exit(main())
