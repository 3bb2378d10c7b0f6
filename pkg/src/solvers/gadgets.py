"""
Instance generators built from CNF formulas, plus small formula oracles.

- gen_completion_hardness: partial orientation completable into a
  k-cut-balanced orientation iff a restricted SAT formula is satisfiable.
- gen_nae3sat_instance: unit-cost graph whose cheapest nowhere-zero flow
  reaches |E| + sum(d_i) iff an NAE3SAT formula is NAE-satisfiable.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from core.exceptions import (
    AssignmentNotNaeSatisfyingError,
    FormatError,
    InvalidParameterError,
    KTooSmallError,
    NotNae3SatError,
    NotRestrictedSatError,
)
from core.flow import Flow
from core.graph import (
    FORBIDDEN,
    CostFunction,
    Cost,
    Direction,
    Graph,
    Orientation,
    PartialOrientation,
    build_graph,
)

logger = logging.getLogger(__name__)

Assignment = Mapping[int, bool]


# ========== Formulas ==========


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables 1..variable_count; literal -v negates v."""

    variable_count: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.variable_count < 0:
            raise InvalidParameterError("variable_count", self.variable_count, "a nonnegative integer")
        for j, clause in enumerate(self.clauses):
            if not clause:
                raise InvalidParameterError(f"clauses[{j}]", clause, "a nonempty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise InvalidParameterError(
                        f"clauses[{j}]", lit, f"literals in +/-[1, {self.variable_count}]"
                    )

    @classmethod
    def of(cls, variable_count: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        return cls(variable_count, tuple(tuple(c) for c in clauses))

    def occurrences(self, variable: int) -> Tuple[int, int]:
        """(positive, negative) literal occurrences of a variable."""
        pos = sum(1 for clause in self.clauses for lit in clause if lit == variable)
        neg = sum(1 for clause in self.clauses for lit in clause if lit == -variable)
        return pos, neg

    def check_restricted(self) -> None:
        """Raise NotRestrictedSatError if a variable occurs more than three times."""
        for v in range(1, self.variable_count + 1):
            total = sum(self.occurrences(v))
            if total > 3:
                raise NotRestrictedSatError(v, total)

    def check_nae3sat(self) -> None:
        for j, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise NotNae3SatError(j, len(clause))

    def satisfies(self, assignment: Assignment) -> bool:
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in self.clauses)

    def first_non_nae_clause(self, assignment: Assignment) -> Optional[int]:
        """Index of the first clause whose literals are all equal, or None."""
        for j, clause in enumerate(self.clauses):
            truths = {assignment[abs(lit)] == (lit > 0) for lit in clause}
            if len(truths) < 2:
                return j
        return None


def _assignments(n: int) -> Iterator[Dict[int, bool]]:
    for bits in itertools.product((False, True), repeat=n):
        yield {v + 1: b for v, b in enumerate(bits)}


def is_satisfiable_brute(phi: CnfFormula) -> Optional[Dict[int, bool]]:
    """Truth-table search for a satisfying assignment."""
    return next((a for a in _assignments(phi.variable_count) if phi.satisfies(a)), None)


def nae_satisfiable_brute(phi: CnfFormula) -> Optional[Dict[int, bool]]:
    """Truth-table search for an NAE-satisfying assignment."""
    return next(
        (a for a in _assignments(phi.variable_count) if phi.first_non_nae_clause(a) is None), None
    )


def parse_dimacs(text: str, source: str = "<dimacs>") -> CnfFormula:
    """Parse DIMACS CNF ('c' comments, 'p cnf n m', clauses ended by 0)."""
    header: Optional[Tuple[int, int]] = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise FormatError(source, line_number, "header must be 'p cnf <variables> <clauses>'")
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise FormatError(source, line_number, "header counts must be integers")
            continue
        if header is None:
            raise FormatError(source, line_number, "clause before 'p cnf' header")
        for token in tokens:
            try:
                lit = int(token)
            except ValueError:
                raise FormatError(source, line_number, f"literal must be an integer, got '{token}'")
            if lit == 0:
                if not current:
                    raise FormatError(source, line_number, "empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise FormatError(source, line_number, f"literal {lit} exceeds {header[0]} variables")
                current.append(lit)
    if header is None:
        raise FormatError(source, 0, "missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != header[1]:
        raise FormatError(source, 0, f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def to_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.variable_count} {len(phi.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in phi.clauses)
    return "\n".join(lines) + "\n"


# ========== Completion Gadget ==========


@dataclass(frozen=True)
class CompletionGadget:
    """Graph and partial orientation for a restricted SAT formula.

    Attributes:
        graph: The multigraph; vertex 0 is the root.
        partial: Every edge oriented except one (u_i, u'_i) edge per variable.
        forced: Values fixed while removing one-sided variables.
        variable_edges: Surviving variable -> its undecided edge; FORWARD
            (u_i -> u'_i) encodes False, BACKWARD encodes True.
    """

    graph: Graph
    partial: PartialOrientation
    forced: Dict[int, bool] = field(default_factory=dict)
    variable_edges: Dict[int, int] = field(default_factory=dict)

    def __iter__(self) -> Iterator:
        yield self.graph
        yield self.partial

    def completion(self, assignment: Assignment) -> Orientation:
        """Orientation encoding an assignment of the surviving variables."""
        choices = [
            (edge, Direction.BACKWARD if assignment[v] else Direction.FORWARD)
            for v, edge in self.variable_edges.items()
        ]
        return self.partial.with_choices(choices).to_full()

    def assignment(self, o: Orientation) -> Dict[int, bool]:
        """Read an assignment (including forced values) back from an orientation."""
        values = dict(self.forced)
        for v, edge in self.variable_edges.items():
            values[v] = o.dirs[edge] is Direction.BACKWARD
        return values


def _strip_one_sided(phi: CnfFormula) -> Tuple[List[Tuple[int, ...]], Dict[int, bool]]:
    """Fix variables that occur with one sign only and drop their clauses, to a fixpoint."""
    clauses = [tuple(dict.fromkeys(c)) for c in phi.clauses]
    forced: Dict[int, bool] = {}
    changed = True
    while changed:
        changed = False
        for v in range(1, phi.variable_count + 1):
            if v in forced:
                continue
            pos = any(v in c for c in clauses)
            neg = any(-v in c for c in clauses)
            if pos and neg:
                continue
            if pos or neg:
                forced[v] = pos
                clauses = [c for c in clauses if (v if pos else -v) not in c]
                changed = True
    return clauses, forced


def gen_completion_hardness(phi: CnfFormula, k: int) -> CompletionGadget:
    """Build the restricted SAT completion instance.

    Vertices: root r, then u_i and u'_i per surviving variable, then v_j per
    surviving clause. Oriented edges: u_i -> v_j for positive and u'_i -> v_j
    for negative occurrences; r -> u_i once and k - a_i - 2 copies of u_i -> r
    (likewise for u'_i with a'_i); |C_j| + 1 copies of v_j -> r.

    Raises:
        NotRestrictedSatError: If a variable occurs more than three times.
        KTooSmallError: If k < 4.
    """
    if k < 4:
        raise KTooSmallError(k, 4)
    phi.check_restricted()
    clauses, forced = _strip_one_sided(phi)
    survivors = sorted({abs(lit) for c in clauses for lit in c})
    logger.debug(
        f"Completion gadget: {len(forced)} variables fixed, {len(survivors)} variables and "
        f"{len(clauses)} clauses remain"
    )

    root = 0
    u = {v: 1 + 2 * idx for idx, v in enumerate(survivors)}
    u_bar = {v: 2 + 2 * idx for idx, v in enumerate(survivors)}
    clause_node = [1 + 2 * len(survivors) + j for j in range(len(clauses))]
    n = 1 + 2 * len(survivors) + len(clauses)

    edges: List[Tuple[int, int]] = []
    dirs: List[Optional[Direction]] = []

    def arc(a: int, b: int, times: int = 1) -> None:
        for _ in range(times):
            edges.append((a, b))
            dirs.append(Direction.FORWARD)

    for j, clause in enumerate(clauses):
        for lit in clause:
            arc(u[lit] if lit > 0 else u_bar[-lit], clause_node[j])
    for v in survivors:
        pos = sum(1 for c in clauses if v in c)
        neg = sum(1 for c in clauses if -v in c)
        arc(root, u[v])
        arc(u[v], root, k - pos - 2)
        arc(root, u_bar[v])
        arc(u_bar[v], root, k - neg - 2)
    for j, clause in enumerate(clauses):
        arc(clause_node[j], root, len(clause) + 1)

    variable_edges: Dict[int, int] = {}
    for v in survivors:
        variable_edges[v] = len(edges)
        edges.append((u[v], u_bar[v]))
        dirs.append(None)

    return CompletionGadget(
        graph=build_graph(n, edges),
        partial=PartialOrientation(tuple(dirs)),
        forced=forced,
        variable_edges=variable_edges,
    )


# ========== NAE3SAT Gadget ==========


@dataclass(frozen=True)
class NaeGadget:
    """Unit-cost graph for an NAE3SAT formula.

    Attributes:
        graph: Vertex 0 is v_0, vertices 1..m the clause nodes v_j, then the
            cycle nodes of each variable in cyclic order.
        costs: Unit symmetric costs.
        formula: Source formula.
        target: |E| + sum of d_i.
        cycles: Variable -> its cycle nodes u_1..u_{2d}.
        slots: (clause index, literal position) -> cycle node.
        cycle_edges: Variable -> edge ids of u_t -> u_{t+1} (t = 1..2d).
        spoke_edges: Cycle node -> edge id of its edge to v_j or v_0.
        anchor_edges: Clause index -> edge id of (v_j, v_0).
    """

    graph: Graph
    costs: CostFunction
    formula: CnfFormula
    target: int
    cycles: Dict[int, Tuple[int, ...]]
    slots: Dict[Tuple[int, int], int]
    cycle_edges: Dict[int, Tuple[int, ...]]
    spoke_edges: Dict[int, int]
    anchor_edges: Dict[int, int]

    def __iter__(self) -> Iterator:
        yield self.graph
        yield self.costs


def gen_nae3sat_instance(phi: CnfFormula) -> NaeGadget:
    """Build the NAE3SAT instance graph with unit costs.

    Raises:
        NotNae3SatError: If a clause does not have exactly three literals.
    """
    phi.check_nae3sat()
    m = len(phi.clauses)
    hub = 0
    edges: List[Tuple[int, int]] = []
    cycles: Dict[int, Tuple[int, ...]] = {}
    cycle_edges: Dict[int, Tuple[int, ...]] = {}
    next_vertex = 1 + m
    total_d = 0

    for v in range(1, phi.variable_count + 1):
        d = max(phi.occurrences(v))
        if d == 0:
            continue
        total_d += d
        nodes = tuple(range(next_vertex, next_vertex + 2 * d))
        next_vertex += 2 * d
        cycles[v] = nodes
        ids = []
        for t in range(2 * d):
            ids.append(len(edges))
            edges.append((nodes[t], nodes[(t + 1) % (2 * d)]))
        cycle_edges[v] = tuple(ids)

    # first-come slots: positive literals on odd positions, negative on even (1-based)
    slots: Dict[Tuple[int, int], int] = {}
    used_odd: Dict[int, int] = {v: 0 for v in cycles}
    used_even: Dict[int, int] = {v: 0 for v in cycles}
    spoke_edges: Dict[int, int] = {}
    for j, clause in enumerate(phi.clauses):
        for pos, lit in enumerate(clause):
            v = abs(lit)
            if lit > 0:
                node = cycles[v][2 * used_odd[v]]
                used_odd[v] += 1
            else:
                node = cycles[v][2 * used_even[v] + 1]
                used_even[v] += 1
            slots[(j, pos)] = node
            spoke_edges[node] = len(edges)
            edges.append((node, 1 + j))
    for v, nodes in cycles.items():
        for node in nodes:
            if node not in spoke_edges:
                spoke_edges[node] = len(edges)
                edges.append((node, hub))
    anchor_edges: Dict[int, int] = {}
    for j in range(m):
        anchor_edges[j] = len(edges)
        edges.append((1 + j, hub))

    g = build_graph(next_vertex, edges)
    return NaeGadget(
        graph=g,
        costs=CostFunction.unit(g),
        formula=phi,
        target=g.m + total_d,
        cycles=cycles,
        slots=slots,
        cycle_edges=cycle_edges,
        spoke_edges=spoke_edges,
        anchor_edges=anchor_edges,
    )


def witness_flow_from_assignment(instance: NaeGadget, assignment: Assignment) -> Flow:
    """Nowhere-zero 3-flow of total value ``instance.target`` for an NAE-satisfying assignment.

    Raises:
        AssignmentNotNaeSatisfyingError: If some clause has all literals equal.
    """
    phi = instance.formula
    bad = phi.first_non_nae_clause(assignment)
    if bad is not None:
        raise AssignmentNotNaeSatisfyingError(bad)

    g = instance.graph
    values = [0] * g.m

    def set_arc(edge: int, tail: int, head: int, x: int) -> None:
        values[edge] = x if g.edges[edge] == (tail, head) else -x

    for v, nodes in instance.cycles.items():
        truth = assignment[v]
        for t, node in enumerate(nodes):
            odd = t % 2 == 0  # positions are 1-based in the construction
            nxt = nodes[(t + 1) % len(nodes)]
            # True: odd->even arcs carry 1, even->odd carry 2; False swaps them
            set_arc(instance.cycle_edges[v][t], node, nxt, 1 if odd == truth else 2)
            spoke = instance.spoke_edges[node]
            other = g.edges[spoke][1]
            if odd == truth:
                set_arc(spoke, node, other, 1)
            else:
                set_arc(spoke, other, node, 1)

    hub = 0
    for j, clause in enumerate(phi.clauses):
        true_count = sum(1 for lit in clause if assignment[abs(lit)] == (lit > 0))
        if true_count >= 2:
            set_arc(instance.anchor_edges[j], 1 + j, hub, 1)
        else:
            set_arc(instance.anchor_edges[j], hub, 1 + j, 1)
    return Flow(g, tuple(values))


# ========== Other Generators ==========


def zero_infinity_costs(g: Graph, po: PartialOrientation) -> CostFunction:
    """Cost 0 on po's arcs, FORBIDDEN on their reverses, 0 both ways on undecided edges."""
    g.check_same(len(po))
    costs: List[Tuple[Cost, Cost]] = []
    for d in po.dirs:
        if d is None:
            costs.append((0, 0))
        elif d is Direction.FORWARD:
            costs.append((0, FORBIDDEN))
        else:
            costs.append((FORBIDDEN, 0))
    return CostFunction(tuple(costs))


def gen_cycle(n: int) -> Tuple[Graph, CostFunction]:
    """Cycle 0 -> 1 -> ... -> n-1 -> 0 with unit costs; n = 2 gives a digon."""
    if n < 2:
        raise InvalidParameterError("n", n, "an integer >= 2")
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    return g, CostFunction.unit(g)
