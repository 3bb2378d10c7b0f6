"""
Exact LP relaxations for weighted nowhere-zero flows and cut-balanced orientations.

Flow relaxation (system "P"), one variable per arc:
    minimize   sum c(a) z(a)
    subject to conservation at every vertex,
               1 <= z(e+) + z(e-) <= k-1 per edge (upper row dropped for k = inf),
               z >= 0.

Orientation relaxation (system "Q"):
    minimize   sum c(a) y(a)
    subject to y(e+) + y(e-) = 1 per edge, y >= 0,
               y(out(U)) <= (k-1)/k * |cut(U)| for every nonempty proper U.

The cut family is exponential; it is handled by cutting planes with an
exact min-cut separation oracle.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, List, Literal, Mapping, Optional, Set, Tuple

import networkx as nx

from core.config import get_config
from core.exceptions import (
    BudgetExceededError,
    ConservationViolatedError,
    InfeasibleError,
    InvalidParameterError,
    NotTwoEdgeConnectedError,
    StructureViolationError,
)
from core.flow import Flow, check_conservation
from core.formats import read_lp_solution, write_lp_solution
from core.graph import (
    UNBOUNDED,
    ArcRef,
    CostFunction,
    Direction,
    Graph,
    KValue,
    find_bridge,
    is_two_edge_connected,
    mask_members,
)

from .simplex import LinearProgram, solve

logger = logging.getLogger(__name__)

System = Literal["P", "Q"]
ArcValues = Tuple[Tuple[Fraction, Fraction], ...]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LpSolution:
    """Per-edge (forward, backward) arc values with the objective they attain."""

    system: System
    k: KValue
    values: ArcValues
    objective: Fraction
    extreme: bool = True
    cut_rounds: int = 0

    def arc_value(self, arc: ArcRef) -> Fraction:
        fwd, bwd = self.values[arc.edge_index]
        return fwd if arc.direction is Direction.FORWARD else bwd

    def arc_values(self) -> Dict[ArcRef, Fraction]:
        result: Dict[ArcRef, Fraction] = {}
        for i, (fwd, bwd) in enumerate(self.values):
            result[ArcRef(i, Direction.FORWARD)] = fwd
            result[ArcRef(i, Direction.BACKWARD)] = bwd
        return result

    def to_text(self) -> str:
        return write_lp_solution(len(self.values), self.objective, self.arc_values())

    @classmethod
    def from_text(cls, text: str, system: System, k: KValue) -> "LpSolution":
        """Rebuild a solution from its text form; extremality is not recorded there."""
        m, objective, arcs = read_lp_solution(text)
        values = tuple(
            (arcs.get(ArcRef(i, Direction.FORWARD), Fraction(0)), arcs.get(ArcRef(i, Direction.BACKWARD), Fraction(0)))
            for i in range(m)
        )
        return cls(system, k, values, objective, extreme=False)


@dataclass(frozen=True)
class FlowLpClassification:
    """Split of a flow-relaxation extreme point into its integral and half parts."""

    integral_flow: Flow
    fractional_edges: FrozenSet[int]


# ========== Shared Helpers ==========


def _require_two_edge_connected(g: Graph) -> None:
    if not is_two_edge_connected(g):
        raise NotTwoEdgeConnectedError(find_bridge(g), reason="graph is disconnected or empty")


def _columns(g: Graph, c: CostFunction) -> Tuple[List[ArcRef], Dict[ArcRef, int]]:
    """Variable per non-FORBIDDEN arc."""
    arcs = [arc for arc in g.arcs() if not c.is_forbidden(arc)]
    return arcs, {arc: j for j, arc in enumerate(arcs)}


def _values_from_columns(g: Graph, index: Mapping[ArcRef, int], x: Tuple[Fraction, ...]) -> ArcValues:
    zero = Fraction(0)
    return tuple(
        (
            x[index[ArcRef(i, Direction.FORWARD)]] if ArcRef(i, Direction.FORWARD) in index else zero,
            x[index[ArcRef(i, Direction.BACKWARD)]] if ArcRef(i, Direction.BACKWARD) in index else zero,
        )
        for i in range(g.m)
    )


def _check_k(k: KValue, allow_unbounded: bool) -> None:
    if k is UNBOUNDED:
        if not allow_unbounded:
            raise InvalidParameterError("k", k, "a finite integer >= 2")
        return
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError("k", k, "an integer >= 2")


# ========== Flow Relaxation ==========


def solve_wnzf_lp(g: Graph, c: CostFunction, k: KValue) -> LpSolution:
    """Optimal extreme point of the flow relaxation.

    Ties between optimal vertices are broken by minimizing sum z, so that no
    edge keeps a removable two-sided circulation.

    Args:
        g: 2-edge-connected graph.
        c: Arc costs; FORBIDDEN arcs are fixed to 0.
        k: Flow bound, integer >= 2 or UNBOUNDED.

    Returns:
        LpSolution with exact rational arc values.

    Raises:
        NotTwoEdgeConnectedError: If g has a bridge or is disconnected.
        InfeasibleError: If FORBIDDEN arcs leave no feasible point.
    """
    _check_k(k, allow_unbounded=True)
    g.check_same(len(c))
    _require_two_edge_connected(g)

    arcs, index = _columns(g, c)
    program = LinearProgram(
        num_vars=len(arcs),
        objective=[Fraction(c.finite(a)) for a in arcs],
        secondary=[Fraction(1)] * len(arcs),
    )
    for v in range(g.n):
        row: Dict[int, int] = {}
        for i, _, d in g.incidence[v]:
            leaving, entering = ArcRef(i, d), ArcRef(i, d.flip())
            if leaving in index:
                row[index[leaving]] = row.get(index[leaving], 0) + 1
            if entering in index:
                row[index[entering]] = row.get(index[entering], 0) - 1
        if row:
            program.add_constraint(row, "==", 0)
    for i in range(g.m):
        row = {index[a]: 1 for a in (ArcRef(i, Direction.FORWARD), ArcRef(i, Direction.BACKWARD)) if a in index}
        program.add_constraint(row, ">=", 1)
        if k is not UNBOUNDED:
            program.add_constraint(row, "<=", k - 1)  # type: ignore[operator]

    result = solve(program)
    if not result.is_optimal:
        raise InfeasibleError("solve_wnzf_lp", f"flow relaxation is {result.status}")
    solution = LpSolution("P", k, _values_from_columns(g, index, result.values), result.objective)
    logger.debug(
        f"Flow LP on n={g.n}, m={g.m}, k={k}: objective {result.objective} after {result.pivots} pivots"
    )
    return solution


def classify_flow_extreme_point(g: Graph, z: LpSolution, k: KValue) -> FlowLpClassification:
    """Split an optimal extreme point into an integral k-flow and half-valued edges.

    Raises:
        StructureViolationError: If an edge is neither (1/2, 1/2) nor integral
            with at most one positive arc, or an integral value exceeds k-1.
        ConservationViolatedError: If the integral arcs are not a circulation.
    """
    g.check_same(len(z.values))
    signed: List[int] = []
    fractional: Set[int] = set()
    for i, (fwd, bwd) in enumerate(z.values):
        if fwd == _HALF and bwd == _HALF:
            fractional.add(i)
            signed.append(0)
            continue
        if fwd.denominator != 1 or bwd.denominator != 1:
            raise StructureViolationError(i, f"z(e+)={fwd}, z(e-)={bwd} is neither integral nor (1/2, 1/2)")
        if fwd > 0 and bwd > 0:
            raise StructureViolationError(i, f"both arcs carry flow: z(e+)={fwd}, z(e-)={bwd}")
        value = int(fwd - bwd)
        if k is not UNBOUNDED and abs(value) > k - 1:  # type: ignore[operator]
            raise StructureViolationError(i, f"|{value}| exceeds k-1 for k={k}")
        signed.append(value)

    bad = check_conservation(g, signed)
    if bad is not None:
        raise ConservationViolatedError(*bad)
    return FlowLpClassification(Flow(g, tuple(signed)), frozenset(fractional))


def project_flow_lp_point(z: LpSolution, c: CostFunction) -> LpSolution:
    """Normalize every edge of a flow-relaxation point to total 1.

    A feasible flow-relaxation point maps to a feasible point of the
    orientation relaxation with the same k. Every edge of z carries at least
    1 in total, so no arc value grows and the cost under c is at most that of z.
    """
    if z.system != "P":
        raise InvalidParameterError("z.system", z.system, "'P'")
    values = []
    for fwd, bwd in z.values:
        total = fwd + bwd
        values.append((fwd / total, bwd / total))
    return with_objective(LpSolution("Q", z.k, tuple(values), Fraction(0), extreme=False), c)


# ========== Orientation Relaxation ==========


def cut_out_value(g: Graph, y: ArcValues, mask: int) -> Tuple[Fraction, int]:
    """Return (y of arcs leaving U, number of cut edges)."""
    leaving = Fraction(0)
    size = 0
    for (u, v), (fwd, bwd) in zip(g.edges, y):
        u_in, v_in = (mask >> u) & 1, (mask >> v) & 1
        if u_in and not v_in:
            leaving += fwd
            size += 1
        elif v_in and not u_in:
            leaving += bwd
            size += 1
    return leaving, size


def _cut_slack(g: Graph, y: ArcValues, mask: int, k: int) -> Fraction:
    """(k-1)|cut(U)| - k*y(out(U)); negative iff U is violated."""
    leaving, size = cut_out_value(g, y, mask)
    return (k - 1) * size - k * leaving


def separate_cut_constraint(
    g: Graph, y: ArcValues, k: int, cross_check: bool = False
) -> Optional[FrozenSet[int]]:
    """Find U with y(out(U)) > (k-1)/k * |cut(U)|, or None.

    Minimizes sum over cut edges of (k-1) - k*y(exit arc). Writing each
    edge's two exit weights as s +/- d_e with s = (k-2)/2, the objective is
    s*|cut(U)| + sum_{x in U} p(x), where p(x) is the signed sum of d over
    edges at x. This is an s-t min cut; nonemptiness and properness are
    forced by pinning vertex 0 against every other vertex on both sides.

    Args:
        g: Graph.
        y: Per-edge (forward, backward) values with y(e+) + y(e-) = 1.
        k: Finite k >= 2.
        cross_check: Compare against subset enumeration on small graphs.

    Returns:
        Most violated vertex set found, or None when every cut holds.
    """
    g.check_same(len(y))
    n = g.n
    if n < 2:
        return None

    half_gap = Fraction(k - 2, 2)
    potential = [Fraction(0)] * n
    for (u, v), (fwd, bwd) in zip(g.edges, y):
        exit_fwd = (k - 1) - k * fwd
        exit_bwd = (k - 1) - k * bwd
        d = (exit_fwd - exit_bwd) / 2
        potential[u] += d
        potential[v] -= d

    scale = lcm(half_gap.denominator, *(p.denominator for p in potential))
    pin = 1 + int(abs(half_gap) * scale) * (2 * g.m + 1) + sum(int(abs(p) * scale) for p in potential)
    source, sink = n, n + 1

    base = nx.DiGraph()
    base.add_nodes_from(range(n + 2))
    for x, p in enumerate(potential):
        w = int(abs(p) * scale)
        if p > 0:
            base.add_edge(x, sink, capacity=w)
        elif p < 0:
            base.add_edge(source, x, capacity=w)
    gap = int(half_gap * scale)
    if gap:
        for u, v in g.edges:
            for a, b in ((u, v), (v, u)):
                if base.has_edge(a, b):
                    base[a][b]["capacity"] += gap
                else:
                    base.add_edge(a, b, capacity=gap)

    best_mask: Optional[int] = None
    best_slack = Fraction(0)
    for j in range(1, n):
        for inside, outside in ((0, j), (j, 0)):
            network = base.copy()
            for a, b in ((source, inside), (outside, sink)):
                if network.has_edge(a, b):
                    network[a][b]["capacity"] += pin
                else:
                    network.add_edge(a, b, capacity=pin)
            _, (source_side, _) = nx.minimum_cut(network, source, sink)
            mask = 0
            for x in source_side:
                if x < n:
                    mask |= 1 << x
            slack = _cut_slack(g, y, mask, k)
            if slack < best_slack:
                best_mask, best_slack = mask, slack

    found = None if best_mask is None else frozenset(mask_members(best_mask))
    if cross_check and n <= get_config().lp.separation_brute_max_vertices:
        brute = separate_cut_constraint_brute(g, y, k)
        if (brute is None) != (found is None):
            raise AssertionError(f"min-cut separation disagrees with enumeration: {found} vs {brute}")
    return found


def separate_cut_constraint_brute(g: Graph, y: ArcValues, k: int) -> Optional[FrozenSet[int]]:
    """Enumerate every nonempty proper subset; return the most violated one."""
    g.check_same(len(y))
    n = g.n
    best_mask: Optional[int] = None
    best_slack = Fraction(0)
    for mask in range(1, (1 << n) - 1):
        slack = _cut_slack(g, y, mask, k)
        if slack < best_slack:
            best_mask, best_slack = mask, slack
    return None if best_mask is None else frozenset(mask_members(best_mask))


def solve_wcbo_lp(g: Graph, c: CostFunction, k: int) -> LpSolution:
    """Optimal extreme point of the orientation relaxation by cutting planes.

    Args:
        g: 2-edge-connected graph.
        c: Arc costs; FORBIDDEN arcs are fixed to 0.
        k: Finite k >= 2.

    Returns:
        LpSolution of system "Q"; every value is a multiple of 1/k.

    Raises:
        NotTwoEdgeConnectedError: If g has a bridge or is disconnected.
        InfeasibleError: If no fractional k-cut-balanced orientation exists.
        BudgetExceededError: If separation does not converge within lp.max_cut_rounds.
    """
    _check_k(k, allow_unbounded=False)
    g.check_same(len(c))
    _require_two_edge_connected(g)
    settings = get_config()

    arcs, index = _columns(g, c)
    objective = [Fraction(c.finite(a)) for a in arcs]
    base_rows: List[Dict[int, int]] = []
    for i in range(g.m):
        row = {index[a]: 1 for a in (ArcRef(i, Direction.FORWARD), ArcRef(i, Direction.BACKWARD)) if a in index}
        if not row:
            raise InfeasibleError("solve_wcbo_lp", f"both arcs of edge {i} are FORBIDDEN")
        base_rows.append(row)

    cuts: List[int] = []
    seen: Set[int] = set()
    if settings.lp.seed_singleton_cuts and g.n >= 2:
        full = (1 << g.n) - 1
        for v in range(g.n):
            for mask in (1 << v, full ^ (1 << v)):
                if mask not in seen:
                    seen.add(mask)
                    cuts.append(mask)

    for rounds in range(1, settings.lp.max_cut_rounds + 1):
        program = LinearProgram(num_vars=len(arcs), objective=objective)
        for row in base_rows:
            program.add_constraint(row, "==", 1)
        for mask in cuts:
            row = {}
            size = 0
            for i, (u, v) in enumerate(g.edges):
                u_in, v_in = (mask >> u) & 1, (mask >> v) & 1
                if u_in == v_in:
                    continue
                size += 1
                exit_arc = ArcRef(i, Direction.FORWARD if u_in else Direction.BACKWARD)
                if exit_arc in index:
                    row[index[exit_arc]] = k
            program.add_constraint(row, "<=", (k - 1) * size)

        result = solve(program)
        if not result.is_optimal:
            raise InfeasibleError(
                "solve_wcbo_lp", f"orientation relaxation is {result.status} for k={k}"
            )
        y = _values_from_columns(g, index, result.values)
        violated = separate_cut_constraint(g, y, k, cross_check=settings.debug)
        if violated is None:
            logger.debug(
                f"Orientation LP on n={g.n}, m={g.m}, k={k}: objective {result.objective}, "
                f"{len(cuts)} cuts, {rounds} rounds"
            )
            return LpSolution("Q", k, y, result.objective, cut_rounds=rounds)
        mask = sum(1 << v for v in violated)
        if mask in seen:
            raise AssertionError(f"separation returned an already enforced cut {sorted(violated)}")
        seen.add(mask)
        cuts.append(mask)
        logger.debug(f"Cut round {rounds}: adding U={sorted(violated)}")

    raise BudgetExceededError("solve_wcbo_lp", settings.lp.max_cut_rounds)


# ========== Feasibility Re-check ==========


def lp_solution_feasible(g: Graph, sol: LpSolution, c: Optional[CostFunction] = None) -> bool:
    """Re-check every constraint of the solution's system in exact arithmetic."""
    if len(sol.values) != g.m:
        return False
    for i, (fwd, bwd) in enumerate(sol.values):
        if fwd < 0 or bwd < 0:
            return False
        if c is not None:
            for arc, val in ((ArcRef(i, Direction.FORWARD), fwd), (ArcRef(i, Direction.BACKWARD), bwd)):
                if val and c.is_forbidden(arc):
                    return False

    if sol.system == "P":
        excess = [Fraction(0)] * g.n
        for (u, v), (fwd, bwd) in zip(g.edges, sol.values):
            excess[u] += fwd - bwd
            excess[v] -= fwd - bwd
            if fwd + bwd < 1:
                return False
            if sol.k is not UNBOUNDED and fwd + bwd > sol.k - 1:  # type: ignore[operator]
                return False
        return all(x == 0 for x in excess)

    if any(fwd + bwd != 1 for fwd, bwd in sol.values):
        return False
    assert isinstance(sol.k, int)
    return separate_cut_constraint(g, sol.values, sol.k) is None


def with_objective(sol: LpSolution, c: CostFunction) -> LpSolution:
    """Recompute the objective of a solution under costs c."""
    total = Fraction(0)
    for i, (fwd, bwd) in enumerate(sol.values):
        if fwd:
            total += fwd * c.finite(ArcRef(i, Direction.FORWARD))
        if bwd:
            total += bwd * c.finite(ArcRef(i, Direction.BACKWARD))
    return replace(sol, objective=total)
