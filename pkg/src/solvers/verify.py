"""
Independent checkers for nowhere-zero flows and cut-balanced orientations.

Every checker returns None when the object is valid and a Violation
witness otherwise. Cut witnesses name the starved side U of the cut:
k * |out(U)| < |cut(U)|; equivalently more than (k-1)/k of the cut
leaves the complement. Conservation and cut sums are recomputed here
from the edge list and never borrowed from the constructors being checked.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from core.config import get_config
from core.exceptions import BudgetExceededError, InvalidParameterError, NotNZ6FlowError
from core.flow import Flow
from core.graph import (
    UNBOUNDED,
    AnyOrientation,
    ArcRef,
    CostFunction,
    Direction,
    Graph,
    KValue,
    Orientation,
    PartialOrientation,
    as_mask,
)
from core.models import Violation, ViolationKind
from engines.circulation import BoundedDigraph, ViolatingSet, feasible_circulation, find_negative_cycle

logger = logging.getLogger(__name__)

BRUTE_MAX_VERTICES = 20


def _finite_k(k: KValue, operation: str) -> int:
    if k is UNBOUNDED or not isinstance(k, int) or k < 2:
        raise InvalidParameterError("k", k, f"a finite integer >= 2 for {operation}")
    return k


# ========== Flows ==========


def verify_nowhere_zero_k_flow(g: Graph, f: Flow, k: KValue) -> Optional[Violation]:
    """Check conservation, nowhere-zero and |v_e| <= k-1 (no range check for k = inf)."""
    g.check_same(len(f.values))
    balance = [0] * g.n
    for (u, v), x in zip(g.edges, f.values):
        balance[u] += x
        balance[v] -= x
    for vertex, excess in enumerate(balance):
        if excess:
            return Violation.conservation(vertex, excess)
    for i, x in enumerate(f.values):
        if x == 0:
            return Violation.zero_edge(i)
    if k is not UNBOUNDED:
        for i, x in enumerate(f.values):
            if abs(x) > k - 1:  # type: ignore[operator]
                return Violation.range_exceeded(i, x, k)
    return None


# ========== Cut Balance ==========


def _oriented_pairs(g: Graph, o: AnyOrientation) -> List[Tuple[int, int]]:
    """(tail, head) of each decided edge."""
    pairs = []
    for i, d in enumerate(o.dirs):
        if d is None:
            continue
        u, v = g.edges[i]
        pairs.append((u, v) if d is Direction.FORWARD else (v, u))
    return pairs


def _cut_counts(pairs: Sequence[Tuple[int, int]], mask: int) -> Tuple[int, int]:
    """(arcs leaving U, edges crossing U)."""
    leaving = size = 0
    for t, h in pairs:
        t_in, h_in = (mask >> t) & 1, (mask >> h) & 1
        if t_in != h_in:
            size += 1
            leaving += t_in
    return leaving, size


def _subsets_by_size(n: int) -> Iterator[int]:
    for size in range(1, n):
        for combo in itertools.combinations(range(n), size):
            yield as_mask(combo)


def _brute_starved(g: Graph, pairs: Sequence[Tuple[int, int]], k: int) -> Optional[Violation]:
    if g.n > BRUTE_MAX_VERTICES:
        raise InvalidParameterError("n", g.n, f"at most {BRUTE_MAX_VERTICES} vertices for brute force")
    for mask in _subsets_by_size(g.n):
        leaving, size = _cut_counts(pairs, mask)
        if k * leaving < size:
            return Violation.cut_unbalanced(mask, leaving, size, k)
    return None


def _hoffman_starved(g: Graph, pairs: Sequence[Tuple[int, int]], k: int) -> Optional[Violation]:
    d = BoundedDigraph.build(g.n, [(t, h, 1, k - 1) for t, h in pairs])
    result = feasible_circulation(d)
    if not isinstance(result, ViolatingSet):
        return None
    leaving, size = _cut_counts(pairs, result.mask)
    assert k * leaving < size, "Hoffman certificate is not a starved cut"
    return Violation.cut_unbalanced(result.mask, leaving, size, k)


def brute_force_cut_balanced_check(g: Graph, o: AnyOrientation, k: int) -> Optional[Violation]:
    """Enumerate all nonempty proper U, smallest first; return the first starved one."""
    _finite_k(k, "brute_force_cut_balanced_check")
    g.check_same(len(o))
    return _brute_starved(g, _oriented_pairs(g, o), k)


def verify_cut_balanced(g: Graph, o: AnyOrientation, k: KValue, method: str = "hoffman") -> Optional[Violation]:
    """Check |out(U)| >= |cut(U)|/k for every nonempty proper U.

    Args:
        g: Graph.
        o: Full orientation (a PartialOrientation must have every edge decided).
        k: Finite k >= 2.
        method: "hoffman" (circulation with bounds [1, k-1]) or "brute" (n <= 20).

    Returns:
        None when k-cut-balanced, else a CUT_UNBALANCED Violation.
    """
    k = _finite_k(k, "verify_cut_balanced")
    g.check_same(len(o))
    if isinstance(o, PartialOrientation) and not o.is_full():
        raise InvalidParameterError("o", o.undecided_edges(), "every edge oriented")
    pairs = _oriented_pairs(g, o)
    if method == "brute":
        return _brute_starved(g, pairs, k)
    if method != "hoffman":
        raise InvalidParameterError("method", method, "'hoffman' or 'brute'")
    return _hoffman_starved(g, pairs, k)


def verify_partial_cut_balanced(
    g: Graph, po: PartialOrientation, k: KValue, method: str = "hoffman"
) -> Optional[Violation]:
    """Check |out_F(U)| <= (k-1)/k * |cut_F(U)| for every U, F the oriented edges.

    The witness is the starved side W relative to F: k * |out_F(W)| < |cut_F(W)|.
    """
    k = _finite_k(k, "verify_partial_cut_balanced")
    g.check_same(len(po))
    pairs = _oriented_pairs(g, po)
    if method == "brute":
        return _brute_starved(g, pairs, k)
    if method != "hoffman":
        raise InvalidParameterError("method", method, "'hoffman' or 'brute'")
    violation = _hoffman_starved(g, pairs, k)
    if violation is None and g.n <= BRUTE_MAX_VERTICES and get_config().debug:
        assert _brute_starved(g, pairs, k) is None
    return violation


# ========== Local Optimality ==========


def verify_locally_optimal(g: Graph, c: CostFunction, f: Flow) -> Optional[Violation]:
    """Look for a directed cycle C in supp+(f) with sum c(e)(3 - |f(e)|) < 0.

    Raises:
        NotNZ6FlowError: If f is not a nowhere-zero 6-flow.
        AsymmetricCostError: If c differs between the arcs of an edge.
    """
    failure = verify_nowhere_zero_k_flow(g, f, 6)
    if failure is not None:
        raise NotNZ6FlowError(failure)
    c.require_symmetric()

    arcs: List[Tuple[int, int, int]] = []
    refs: List[ArcRef] = []
    for i, ((u, v), x) in enumerate(zip(g.edges, f.values)):
        weight = c.edge_cost(i) * (3 - abs(x))
        if x > 0:
            arcs.append((u, v, weight))
            refs.append(ArcRef(i, Direction.FORWARD))
        else:
            arcs.append((v, u, weight))
            refs.append(ArcRef(i, Direction.BACKWARD))
    cycle = find_negative_cycle(g.n, arcs)
    if cycle is None:
        return None
    return Violation.negative_cycle([refs[j] for j in cycle.arcs], cycle.weight)


# ========== Exhaustive Oracles ==========


def _cut_table(g: Graph) -> List[Tuple[int, int, int]]:
    """Per nonempty proper U, smallest first: (edges whose forward arc leaves U,
    edges whose backward arc leaves U, cut size) as edge bit masks."""
    table = []
    for mask in _subsets_by_size(g.n):
        fwd = bwd = 0
        for i, (u, v) in enumerate(g.edges):
            u_in, v_in = (mask >> u) & 1, (mask >> v) & 1
            if u_in and not v_in:
                fwd |= 1 << i
            elif v_in and not u_in:
                bwd |= 1 << i
        table.append((fwd, bwd, (fwd | bwd).bit_count()))
    return table


def _bits_balanced(table: Sequence[Tuple[int, int, int]], backward_bits: int, k: int) -> bool:
    for fwd, bwd, size in table:
        leaving = (fwd & ~backward_bits).bit_count() + (bwd & backward_bits).bit_count()
        if k * leaving < size:
            return False
    return True


def _check_brute_size(g: Graph, free_edges: int, operation: str) -> None:
    if g.n > BRUTE_MAX_VERTICES:
        raise InvalidParameterError("n", g.n, f"at most {BRUTE_MAX_VERTICES} vertices for {operation}")
    limits = get_config().brute_force
    if free_edges > limits.recommended_max_edges:
        logger.warning(f"{operation}: enumerating 2^{free_edges} orientations")
    if (1 << free_edges) > limits.max_nodes:
        raise BudgetExceededError(operation, limits.max_nodes)


def brute_force_min_cbo(g: Graph, c: CostFunction, k: int) -> Optional[Tuple[Orientation, int]]:
    """Exact minimum-cost k-cut-balanced orientation by enumerating all 2^m orientations."""
    _finite_k(k, "brute_force_min_cbo")
    g.check_same(len(c))
    _check_brute_size(g, g.m, "brute_force_min_cbo")
    table = _cut_table(g)
    arc_costs = [
        (c.arc_cost(ArcRef(i, Direction.FORWARD)), c.arc_cost(ArcRef(i, Direction.BACKWARD)))
        for i in range(g.m)
    ]

    best: Optional[Tuple[Orientation, int]] = None
    for bits in range(1 << g.m):
        cost = 0
        for i, (fwd, bwd) in enumerate(arc_costs):
            chosen = bwd if (bits >> i) & 1 else fwd
            if not isinstance(chosen, int):
                cost = -1
                break
            cost += chosen
        if cost < 0 or (best is not None and cost >= best[1]):
            continue
        if _bits_balanced(table, bits, k):
            best = (Orientation.from_bits(g.m, bits), cost)
    return best


def completion_exists_brute(g: Graph, po: PartialOrientation, k: int) -> Optional[Orientation]:
    """First k-cut-balanced completion of po (undecided edges enumerated), or None."""
    _finite_k(k, "completion_exists_brute")
    g.check_same(len(po))
    free = po.undecided_edges()
    _check_brute_size(g, len(free), "completion_exists_brute")
    table = _cut_table(g)
    fixed = 0
    for i, d in enumerate(po.dirs):
        if d is Direction.BACKWARD:
            fixed |= 1 << i
    for choice in range(1 << len(free)):
        bits = fixed
        for j, i in enumerate(free):
            if (choice >> j) & 1:
                bits |= 1 << i
        if _bits_balanced(table, bits, k):
            return Orientation.from_bits(g.m, bits)
    return None


# ========== Witness Re-validation ==========


def violation_rechecks(
    g: Graph,
    violation: Violation,
    *,
    flow: Optional[Flow] = None,
    orientation: Optional[AnyOrientation] = None,
    k: Optional[KValue] = None,
    costs: Optional[CostFunction] = None,
) -> bool:
    """Re-evaluate a witness from the definitions; True when it really is a violation."""
    kind = violation.kind
    if kind is ViolationKind.CONSERVATION:
        if flow is None or violation.vertex is None:
            return False
        v = violation.vertex
        excess = sum(x for (a, _), x in zip(g.edges, flow.values) if a == v) - sum(
            x for (_, b), x in zip(g.edges, flow.values) if b == v
        )
        return excess != 0 and excess == violation.value

    if kind is ViolationKind.ZERO_EDGE:
        return flow is not None and violation.edge is not None and flow.values[violation.edge] == 0

    if kind is ViolationKind.RANGE_EXCEEDED:
        if flow is None or violation.edge is None or k is None or k is UNBOUNDED:
            return False
        return abs(flow.values[violation.edge]) > k - 1  # type: ignore[operator]

    if kind is ViolationKind.CUT_UNBALANCED:
        if orientation is None or k is None or k is UNBOUNDED or not violation.vertices:
            return False
        members = set(violation.vertices)
        if len(members) >= g.n:
            return False
        leaving, size = _cut_counts(_oriented_pairs(g, orientation), as_mask(members))
        return k * leaving < size  # type: ignore[operator]

    if kind is ViolationKind.NEGATIVE_CYCLE:
        if flow is None or costs is None or not violation.arcs:
            return False
        refs = violation.arc_refs()
        weight = 0
        for ref in refs:
            x = flow.values[ref.edge_index]
            if x == 0 or (x > 0) != (ref.direction is Direction.FORWARD):
                return False
            weight += costs.edge_cost(ref.edge_index) * (3 - abs(x))
        for here, there in zip(refs, refs[1:] + refs[:1]):
            if g.arc_endpoints(here)[1] != g.arc_endpoints(there)[0]:
                return False
        return weight < 0 and weight == violation.weight

    return False
