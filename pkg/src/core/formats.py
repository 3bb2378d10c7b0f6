"""
Text formats for graphs, flows, orientations and LP solutions.

    nzg n m             graph header, then m lines "u v c_plus c_minus" (X = FORBIDDEN)
    nzf m               flow header, then "edge_index value" lines (missing edges are 0)
    nzo m               orientation header, then "edge_index d" lines, d in {+, -, ?}
    nzl m objective q   LP header, then "edge_index {+|-} num/den" lines

Lines starting with '#' are comments; blank lines are skipped.
"""

from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .exceptions import FormatError, IndexOutOfRangeError, SelfLoopError
from .flow import Flow
from .graph import (
    FORBIDDEN,
    ArcRef,
    Cost,
    CostFunction,
    Direction,
    Graph,
    PartialOrientation,
    build_graph,
)

_DIRECTION_SYMBOLS = {"+": Direction.FORWARD, "-": Direction.BACKWARD}


def iter_data_lines(text: str, source: str, comment: str = "#") -> Iterator[Tuple[int, List[str]]]:
    """Yield (line_number, tokens) for every non-comment, non-blank line."""
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(comment):
            continue
        yield line_number, line.split()


def _int(token: str, source: str, line_number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(source, line_number, f"{what} must be an integer, got '{token}'")


def parse_fraction(token: str, source: str = "<fraction>", line_number: int = 0) -> Fraction:
    """Parse 'num/den' or an integer into an exact Fraction."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(source, line_number, f"bad rational '{token}'")


def format_fraction(q: Fraction) -> str:
    """Render a Fraction as 'num/den' (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _header(lines: Iterator[Tuple[int, List[str]]], tag: str, source: str) -> Tuple[int, List[str]]:
    try:
        line_number, tokens = next(lines)
    except StopIteration:
        raise FormatError(source, 0, f"missing '{tag}' header")
    if tokens[0] != tag:
        raise FormatError(source, line_number, f"expected '{tag}' header, got '{tokens[0]}'")
    return line_number, tokens


# ========== Graph ==========


def _cost(token: str, source: str, line_number: int) -> Cost:
    if token.upper() == "X":
        return FORBIDDEN
    value = _int(token, source, line_number, "cost")
    if value < 0:
        raise FormatError(source, line_number, f"cost must be nonnegative, got {value}")
    return value


def read_graph(text: str, source: str = "<graph>") -> Tuple[Graph, CostFunction]:
    """Parse an ``nzg`` document into a graph and its arc costs."""
    lines = iter_data_lines(text, source)
    line_number, header = _header(lines, "nzg", source)
    if len(header) != 3:
        raise FormatError(source, line_number, "header must be 'nzg <n> <m>'")
    n = _int(header[1], source, line_number, "n")
    m = _int(header[2], source, line_number, "m")

    pairs: List[Tuple[int, int]] = []
    costs: List[Tuple[Cost, Cost]] = []
    for line_number, tokens in lines:
        if len(tokens) != 4:
            raise FormatError(source, line_number, "edge line must be 'u v c_plus c_minus'")
        u = _int(tokens[0], source, line_number, "u")
        v = _int(tokens[1], source, line_number, "v")
        pairs.append((u, v))
        costs.append((_cost(tokens[2], source, line_number), _cost(tokens[3], source, line_number)))
    if len(pairs) != m:
        raise FormatError(source, 0, f"header announces {m} edges, found {len(pairs)}")
    try:
        g = build_graph(n, pairs)
    except (IndexOutOfRangeError, SelfLoopError) as e:
        raise FormatError(source, 0, str(e))
    return g, CostFunction(tuple(costs))


def write_graph(g: Graph, c: Optional[CostFunction] = None, comment: str = "") -> str:
    """Render a graph (unit costs when none are given) as an ``nzg`` document."""
    c = c or CostFunction.unit(g)
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"nzg {g.n} {g.m}")
    for (u, v), pair in zip(g.edges, c.costs):
        fwd, bwd = ("X" if x is FORBIDDEN else str(x) for x in pair)
        out.append(f"{u} {v} {fwd} {bwd}")
    return "\n".join(out) + "\n"


# ========== Flow ==========


def read_flow(text: str, g: Graph, source: str = "<flow>") -> Flow:
    """Parse an ``nzf`` document against a graph (no conservation check)."""
    lines = iter_data_lines(text, source)
    line_number, header = _header(lines, "nzf", source)
    m = _int(header[1], source, line_number, "m") if len(header) > 1 else -1
    if m != g.m:
        raise FormatError(source, line_number, f"flow is for {m} edges, graph has {g.m}")
    values = [0] * m
    for line_number, tokens in lines:
        if len(tokens) != 2:
            raise FormatError(source, line_number, "flow line must be 'edge_index value'")
        i = _int(tokens[0], source, line_number, "edge_index")
        if not 0 <= i < m:
            raise FormatError(source, line_number, f"edge index {i} out of range")
        values[i] = _int(tokens[1], source, line_number, "value")
    return Flow(g, tuple(values))


def write_flow(f: Flow) -> str:
    lines = [f"nzf {f.graph.m}"]
    lines.extend(f"{i} {x}" for i, x in enumerate(f.values))
    return "\n".join(lines) + "\n"


# ========== Orientation ==========


def read_orientation(text: str, m: int, source: str = "<orientation>") -> PartialOrientation:
    """Parse an ``nzo`` document; unlisted edges are undecided."""
    lines = iter_data_lines(text, source)
    line_number, header = _header(lines, "nzo", source)
    declared = _int(header[1], source, line_number, "m") if len(header) > 1 else -1
    if declared != m:
        raise FormatError(source, line_number, f"orientation is for {declared} edges, graph has {m}")
    dirs: List[Optional[Direction]] = [None] * m
    for line_number, tokens in lines:
        if len(tokens) != 2 or tokens[1] not in ("+", "-", "?"):
            raise FormatError(source, line_number, "orientation line must be 'edge_index {+|-|?}'")
        i = _int(tokens[0], source, line_number, "edge_index")
        if not 0 <= i < m:
            raise FormatError(source, line_number, f"edge index {i} out of range")
        dirs[i] = _DIRECTION_SYMBOLS.get(tokens[1])
    return PartialOrientation(tuple(dirs))


def write_orientation(po: PartialOrientation) -> str:
    lines = [f"nzo {len(po)}"]
    lines.extend(f"{i} {'?' if d is None else d.symbol}" for i, d in enumerate(po.dirs))
    return "\n".join(lines) + "\n"


# ========== LP Solution ==========


def read_lp_solution(text: str, source: str = "<lp>") -> Tuple[int, Fraction, Dict[ArcRef, Fraction]]:
    """Parse an ``nzl`` document into (m, objective, per-arc values)."""
    lines = iter_data_lines(text, source)
    line_number, header = _header(lines, "nzl", source)
    if len(header) != 4 or header[2] != "objective":
        raise FormatError(source, line_number, "header must be 'nzl <m> objective <num/den>'")
    m = _int(header[1], source, line_number, "m")
    objective = parse_fraction(header[3], source, line_number)
    values: Dict[ArcRef, Fraction] = {}
    for line_number, tokens in lines:
        if len(tokens) != 3 or tokens[1] not in _DIRECTION_SYMBOLS:
            raise FormatError(source, line_number, "line must be 'edge_index {+|-} num/den'")
        i = _int(tokens[0], source, line_number, "edge_index")
        if not 0 <= i < m:
            raise FormatError(source, line_number, f"edge index {i} out of range")
        values[ArcRef(i, _DIRECTION_SYMBOLS[tokens[1]])] = parse_fraction(tokens[2], source, line_number)
    return m, objective, values


def write_lp_solution(m: int, objective: Fraction, values: Mapping[ArcRef, Fraction]) -> str:
    lines = [f"nzl {m} objective {format_fraction(objective)}"]
    for i in range(m):
        for d in (Direction.FORWARD, Direction.BACKWARD):
            q = values.get(ArcRef(i, d), Fraction(0))
            lines.append(f"{i} {d.symbol} {format_fraction(q)}")
    return "\n".join(lines) + "\n"
