"""
nzflow command line.

Exit status: 0 ok, 1 verification found a violation, 2 malformed input,
3 precondition failure. Artifacts go to stdout (or -o files); logs go to stderr.
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from __version__ import __title__, __version__
from core.exceptions import InvalidParameterError, NZFlowError
from core.formats import read_graph, read_orientation, write_flow, write_orientation
from core.graph import CostFunction, Graph, KValue
from core.models import GenerateRequest, parse_k, schema_json
from mcp_tools.helpers import setup_logging
from mcp_tools.tools.generate import generate
from mcp_tools.tools.solve import solve_graph
from mcp_tools.tools.verify import verify_text
from solvers.approx import ApproxCertificate
from solvers.bench import export_bench_excel, format_bench_table, run_bench
from solvers.nz6 import brute_force_min_nzk
from solvers.verify import brute_force_min_cbo, completion_exists_brute

logger = logging.getLogger(__name__)

SEPARATOR = "---"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_MALFORMED = 2


# ========== I/O ==========


def _read_input(path: str) -> str:
    """File contents, or stdin for '-'."""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidParameterError("path", path, f"a readable file ({e.strerror})")


def _load_graph(path: str):
    return read_graph(_read_input(path), source=path)


def _emit(parts: List[str], output: Optional[str]) -> None:
    """Write the first part to output (or stdout); the rest follow on stdout after a separator."""
    first, rest = parts[0], parts[1:]
    if output:
        Path(output).write_text(first, encoding="utf-8")
        chunks = rest
    else:
        chunks = parts
    for i, chunk in enumerate(chunks):
        if i:
            sys.stdout.write(SEPARATOR + "\n")
        sys.stdout.write(chunk if chunk.endswith("\n") else chunk + "\n")


# ========== Subcommands ==========


def _oracle_value(problem: str, g: Graph, c: CostFunction, k: KValue) -> Optional[int]:
    if problem == "wcbo":
        found_cbo = brute_force_min_cbo(g, c, k)  # type: ignore[arg-type]
        return found_cbo[1] if found_cbo else None
    found = brute_force_min_nzk(g, c, 6 if problem == "swnzf" else k)
    return found[1] if found else None


def cmd_solve(args: argparse.Namespace) -> int:
    g, c = _load_graph(args.graph)
    k = parse_k(args.k)
    solution, cert = solve_graph(args.problem, g, c, k)
    parts = [solution]
    if cert is not None:
        if args.with_oracle:
            cert = dataclasses.replace(cert, oracle_value=_oracle_value(args.problem, g, c, k))
        parts.append(cert.to_json())
    _emit(parts, args.output)
    return EXIT_OK


def cmd_nz6(args: argparse.Namespace) -> int:
    g, c = _load_graph(args.graph)
    solution, _ = solve_graph("nz6", g, c, 6)
    _emit([solution], args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g, c = _load_graph(args.graph)
    violation = verify_text(args.kind, g, c, _read_input(args.solution), parse_k(args.k), args.method)
    if violation is None:
        sys.stdout.write("ok\n")
        return EXIT_OK
    sys.stdout.write(violation.to_json() + "\n")
    return EXIT_VIOLATION


def cmd_gen(args: argparse.Namespace) -> int:
    spec: Dict[str, object] = {"kind": args.kind, "seed": args.seed}
    if args.kind == "cycle":
        spec["n"] = args.n
    elif args.kind == "random":
        spec.update(n=args.n, m=args.m, max_cost=args.max_cost, symmetric=args.symmetric)
    else:
        spec["dimacs"] = _read_input(args.formula)
        if args.kind == "sat-completion":
            spec["k"] = args.k
    result = generate(GenerateRequest(**spec))
    parts = [result["graph"]]
    if "partial" in result:
        parts.append(result["partial"])
    if "target" in result:
        parts.append(f"target {result['target']}")
    _emit(parts, args.output)
    return EXIT_OK


def cmd_brute(args: argparse.Namespace) -> int:
    g, c = _load_graph(args.graph)
    if args.oracle == "min-nzk":
        found = brute_force_min_nzk(g, c, parse_k(args.k), value_cap=args.value_cap)
        if found is None:
            sys.stdout.write("infeasible\n")
            return EXIT_OK
        flow, cost = found
        _emit([write_flow(flow), f"cost {cost}"], args.output)
        return EXIT_OK
    if not args.partial:
        raise InvalidParameterError("--partial", None, "a partial orientation file for cbo-check")
    po = read_orientation(_read_input(args.partial), g.m, source=args.partial)
    k = parse_k(args.k)
    if not isinstance(k, int):
        raise InvalidParameterError("k", args.k, "a finite integer >= 2")
    o = completion_exists_brute(g, po, k)
    if o is None:
        sys.stdout.write("none\n")
        return EXIT_OK
    _emit([write_orientation(o.to_partial())], args.output)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = run_bench(args.corpus_dir, args.workers)
    sys.stdout.write(format_bench_table(rows))
    if args.xlsx:
        result = export_bench_excel(rows, args.xlsx)
        if not result["success"]:
            logger.error(result["error"])
            return EXIT_MALFORMED
    return EXIT_OK


def cmd_schema(args: argparse.Namespace) -> int:
    sys.stdout.write(schema_json(args.name) + "\n")
    return EXIT_OK


# ========== Parser ==========


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=__title__, description="Nowhere-zero flows and cut-balanced orientations")
    parser.add_argument("--version", action="version", version=f"{__title__} {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from config)")
    parser.add_argument("-v", "--verbose", action="store_true", help="shorthand for --log-level DEBUG")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized generators")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("-o", "--output", help="write the primary artifact here instead of stdout")
        return p

    solve = with_output(sub.add_parser("solve", help="run an approximation algorithm"))
    solve.add_argument("problem", choices=["wnzf", "wcbo", "swnzf"])
    solve.add_argument("graph", nargs="?", default="-", help="nzg file, or - for stdin (default)")
    solve.add_argument("--k", default="6", help="flow bound: integer or inf")
    solve.add_argument("--with-oracle", action="store_true", help="record the brute-force optimum (small graphs)")
    solve.set_defaults(handler=cmd_solve)

    nz6 = with_output(sub.add_parser("nz6", help="construct a nowhere-zero 6-flow"))
    nz6.add_argument("graph", nargs="?", default="-", help="nzg file, or - for stdin (default)")
    nz6.set_defaults(handler=cmd_nz6)

    verify = sub.add_parser("verify", help="check a solution; exit 1 with a violation")
    verify.add_argument("kind", choices=["flow", "cbo", "partial-cbo", "local-opt"])
    verify.add_argument("graph")
    verify.add_argument("solution")
    verify.add_argument("--k", default="6")
    verify.add_argument("--method", choices=["hoffman", "brute"], default="hoffman")
    verify.set_defaults(handler=cmd_verify)

    gen = with_output(sub.add_parser("gen", help="generate an instance"))
    gen.add_argument("kind", choices=["cycle", "random", "sat-completion", "nae3sat"])
    gen.add_argument("positional", nargs="?", help="cycle length, or DIMACS file (- for stdin)")
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--k", type=int, default=4)
    gen.add_argument("--max-cost", type=int, default=20)
    gen.add_argument("--symmetric", action="store_true")
    gen.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized generators")
    gen.set_defaults(handler=cmd_gen)

    brute = with_output(sub.add_parser("brute", help="exhaustive oracles for small instances"))
    brute.add_argument("oracle", choices=["min-nzk", "cbo-check"])
    brute.add_argument("graph")
    brute.add_argument("--k", default="4")
    brute.add_argument("--partial", help="nzo file with '?' for cbo-check")
    brute.add_argument("--value-cap", type=int, default=None)
    brute.set_defaults(handler=cmd_brute)

    bench = sub.add_parser("bench", help="benchmark a directory of nzg files")
    bench.add_argument("corpus_dir")
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--xlsx", default=None, help="also save the table under the output directory")
    bench.set_defaults(handler=cmd_bench)

    schema = sub.add_parser("schema", help="print a JSON schema")
    schema.add_argument("name", choices=["certificate", "violation", "bench"])
    schema.set_defaults(handler=cmd_schema)
    return parser


def _normalize_gen(args: argparse.Namespace) -> None:
    if args.command != "gen":
        return
    if args.kind == "cycle":
        args.n = args.n if args.n is not None else int(args.positional or 3)
    elif args.kind == "random":
        args.n = args.n if args.n is not None else 8
    else:
        args.formula = args.positional or "-"


def command_surface(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the subcommand and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging("DEBUG" if args.verbose else args.log_level, log_file=False)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        _normalize_gen(args)
        return handler(args)
    except NZFlowError as e:
        logger.error(str(e))
        return e.exit_code
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(command_surface())


if __name__ == "__main__":
    main()
