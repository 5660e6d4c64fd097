"""Command line entry point: ``circulant-total <command> ...``.

Exit status: 0 success, 2 bad arguments, 3 verification failure (or no
colouring exists for the requested palette), 4 solver limit reached, 5 I/O
failure. Solver defaults can be set with CIRCULANT_TOTAL_NODE_LIMIT and
CIRCULANT_TOTAL_WORKERS.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .colouring import ColouringFormatError, TotalColouring, parse, verify
from .constructive import TYPE_II_ORDERS, TypeII, construct
from .graph import CirculantGraph, InvalidGraphError, build
from .solver import (
    DEFAULT_NODE_LIMIT,
    Certificate,
    InconclusiveError,
    SearchConfig,
    Status,
    SymmetryLevel,
    chi_total_with_method,
    prove_type2,
    search_total_colouring,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_INCONCLUSIVE = 4
EXIT_IO = 5

log = logging.getLogger("circulant_total")


class _Exit(Exception):
    def __init__(self, code: int, message: str = "") -> None:
        super().__init__(message)
        self.code = code
        self.message = message


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 7:
        raise argparse.ArgumentTypeError("n must be at least 7")
    return n


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise _Exit(EXIT_USAGE, f"{name} must be an integer, got {raw!r}")


def colouring_to_dot(g: CirculantGraph, c: TotalColouring) -> str:
    lines = [f'graph "C{g.n}({g.d1},{g.d2})" {{']
    lines += [f'  v{i} [label="v{i}:{col}"];' for i, col in enumerate(c.vertex)]
    lines += [f'  v{a} -- v{b} [label="{col}"];' for (a, b), col in zip(g.edges(), c.e1 + c.e3)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render(c: TotalColouring, fmt: str) -> str:
    if fmt == "json":
        return c.to_json()
    if fmt == "dot":
        return colouring_to_dot(build(c.n), c)
    return c.to_compact()


def _search_options(args) -> dict:
    return {
        "node_limit": args.node_limit,
        "worker_count": args.workers,
        "symmetry_level": args.symmetry,
    }


def _colouring_for(n: int, k: int | None, args) -> TotalColouring:
    if k in (None, 5) and n not in TYPE_II_ORDERS:
        c = construct(n)
        assert not isinstance(c, TypeII)
        return c
    cfg = SearchConfig(k or 6, **_search_options(args))
    outcome = search_total_colouring(build(n), cfg)
    if outcome.status is Status.LIMIT:
        raise _Exit(EXIT_INCONCLUSIVE, f"search limit reached after {outcome.nodes_visited} nodes")
    if outcome.status is Status.EXHAUSTED:
        raise _Exit(EXIT_VERIFY, f"C_{n}(1,3) has no total {cfg.k}-colouring")
    return outcome.colouring


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {path}: {exc}")


def cmd_colour(args, out) -> int:
    out.write(_render(_colouring_for(args.n, args.k, args), args.format))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        text = Path(args.path).read_text() if args.path != "-" else sys.stdin.read()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {args.path}: {exc}")
    try:
        c = parse(text, k=args.k)
        g = build(c.n)
    except (ColouringFormatError, InvalidGraphError) as exc:
        raise _Exit(EXIT_VERIFY, f"invalid colouring: {exc}")
    report = verify(g, c)
    out.write(f"{report}\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_chi(args, out) -> int:
    value, _ = chi_total_with_method(args.n, **_search_options(args))
    out.write(f"{value}\n")
    return EXIT_OK


def cmd_prove_type2(args, out) -> int:
    if args.n not in TYPE_II_ORDERS:
        raise _Exit(EXIT_USAGE, f"n={args.n} is Type I; use 'colour' (Type II orders: {sorted(TYPE_II_ORDERS)})")
    certs = prove_type2(args.n, **_search_options(args))
    outdir = Path(args.out)
    for cert in certs:
        path = outdir / f"C{args.n}_k{cert.k}.json"
        _write(path, cert.to_json())
        log.info("C_%d k=%d %s in %.2fs", args.n, cert.k, cert.status.value, cert.wall_time)
        out.write(f"{path}\t{cert.status.value}\tnodes={cert.nodes_visited}\n")
    if any(cert.status is Status.LIMIT for cert in certs):
        raise _Exit(EXIT_INCONCLUSIVE, "search limit reached; certificates are inconclusive")
    return EXIT_OK


def cmd_recheck(args, out) -> int:
    try:
        cert = Certificate.from_json(Path(args.path).read_text())
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {args.path}: {exc}")
    except (ValueError, KeyError, TypeError) as exc:
        raise _Exit(EXIT_VERIFY, f"malformed certificate: {exc}")
    problems = cert.problems() if args.static else cert.recheck(worker_count=args.workers)
    for problem in problems:
        out.write(f"FAIL {problem}\n")
    if problems:
        return EXIT_VERIFY
    out.write(f"OK C_{cert.n}(1,3) k={cert.k} {cert.status.value}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    if args.n_max < 7:
        raise _Exit(EXIT_USAGE, "n_max must be at least 7")
    out.write("n\tchi\tmethod\n")
    code = EXIT_OK
    for n in range(7, args.n_max + 1):
        try:
            value, method = chi_total_with_method(n, **_search_options(args))
        except InconclusiveError:
            out.write(f"{n}\t-\tinconclusive\n")
            code = EXIT_INCONCLUSIVE
            continue
        out.write(f"{n}\t{value}\t{method}\n")
    return code


def cmd_export(args, out) -> int:
    if args.format == "dot" and args.k is None:
        text = build(args.n).to_dot()
    else:
        text = _render(_colouring_for(args.n, args.k, args), args.format)
    if args.output:
        _write(Path(args.output), text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circulant-total", description="Total chromatic numbers of the circulant graphs C_n(1,3)."
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    solver_flags = argparse.ArgumentParser(add_help=False)
    solver_flags.add_argument(
        "--node-limit",
        type=int,
        default=None,
        help=f"decision-node budget, 0 = unlimited (default {DEFAULT_NODE_LIMIT})",
    )
    solver_flags.add_argument("--workers", type=_positive, default=None)
    solver_flags.add_argument(
        "--symmetry", choices=[s.value for s in SymmetryLevel], default=SymmetryLevel.COLOUR_PERM.value
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colour", aliases=["color"], parents=[solver_flags], help="print a total colouring")
    p.add_argument("n", type=_order)
    p.add_argument("--k", type=_positive, default=None, help="palette size (default: 5, or 6 for Type II)")
    p.add_argument("--format", choices=["compact", "json", "dot"], default="compact")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("verify", help="check a colouring file (compact or JSON; '-' for stdin)")
    p.add_argument("path")
    p.add_argument("--k", type=_positive, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chi", parents=[solver_flags], help="print the total chromatic number")
    p.add_argument("n", type=_order)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser(
        "prove-type2", aliases=["prove_type2"], parents=[solver_flags], help="write k=5 and k=6 certificates"
    )
    p.add_argument("n", type=_order)
    p.add_argument("--out", default="certificates")
    p.set_defaults(func=cmd_prove_type2)

    p = sub.add_parser("recheck", help="replay a certificate and compare the outcome")
    p.add_argument("path")
    p.add_argument("--static", action="store_true", help="only check digest, flags and witness")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_recheck)

    p = sub.add_parser("table", parents=[solver_flags], help="tab-separated n, chi, method for 7..n_max")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("export", parents=[solver_flags], help="write the graph (dot) or a colouring")
    p.add_argument("n", type=_order)
    p.add_argument("--format", choices=["compact", "json", "dot"], default="dot")
    p.add_argument("--k", type=_positive, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if hasattr(args, "node_limit"):
            if args.node_limit is None:
                args.node_limit = _env_int("CIRCULANT_TOTAL_NODE_LIMIT", DEFAULT_NODE_LIMIT)
            if args.workers is None:
                args.workers = _env_int("CIRCULANT_TOTAL_WORKERS", 1)
            if args.node_limit < 0 or args.workers < 1:
                raise _Exit(EXIT_USAGE, "node limit must be >= 0 and workers >= 1")
        return args.func(args, out)
    except _Exit as exc:
        if exc.message:
            print(f"circulant-total: {exc.message}", file=sys.stderr)
        return exc.code
    except InconclusiveError as exc:
        print(f"circulant-total: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
