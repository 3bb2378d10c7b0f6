"""
Integral circulation engines.

- feasible_circulation: Hoffman feasibility through the lower-bound
  elimination max-flow reduction; infeasibility yields a violating set U
  with lower(into U) > upper(out of U).
- min_cost_circulation: saturation of negative-cost arcs followed by
  successive shortest paths (Dijkstra with vertex potentials).
- cycle_canceling_min_cost: negative residual cycle canceling, kept as an
  independent engine for cross-checks and pseudo-polynomial local search.
- find_negative_cycle: Bellman-Ford from a virtual source.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from core.exceptions import InfeasibleError, InvalidParameterError

logger = logging.getLogger(__name__)

_INT_GUARD = 1 << 62


@dataclass(frozen=True)
class BoundedArc:
    """Arc with integral bounds lower <= flow <= upper and a signed cost."""

    tail: int
    head: int
    lower: int
    upper: int
    cost: int = 0


@dataclass(frozen=True)
class BoundedDigraph:
    """Digraph whose arcs carry lower/upper bounds and optional costs."""

    vertex_count: int
    arcs: Tuple[BoundedArc, ...]

    def __post_init__(self) -> None:
        m = max(len(self.arcs), 1)
        for i, a in enumerate(self.arcs):
            for w in (a.tail, a.head):
                if not 0 <= w < self.vertex_count:
                    raise InvalidParameterError(f"arcs[{i}]", (a.tail, a.head), f"endpoints in [0, {self.vertex_count})")
            if not 0 <= a.lower <= a.upper:
                raise InvalidParameterError(f"arcs[{i}]", (a.lower, a.upper), "0 <= lower <= upper")
            if abs(a.cost) * max(a.upper, 1) * m >= _INT_GUARD:
                raise InvalidParameterError(f"arcs[{i}]", a.cost, "|cost| * capacity * m below 2^62")

    @classmethod
    def build(cls, vertex_count: int, rows: Sequence[Tuple[int, ...]]) -> "BoundedDigraph":
        """Build from (tail, head, lower, upper[, cost]) tuples."""
        return cls(vertex_count, tuple(BoundedArc(*row) for row in rows))

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Circulation:
    """Per-arc integral flow."""

    flow: Tuple[int, ...]

    def cost(self, d: BoundedDigraph) -> int:
        return sum(a.cost * x for a, x in zip(d.arcs, self.flow))


@dataclass(frozen=True)
class ViolatingSet:
    """Hoffman certificate: lower bounds entering U exceed upper bounds leaving U."""

    mask: int
    lower_into: int
    upper_out: int

    def members(self) -> List[int]:
        return [v for v in range(self.mask.bit_length()) if (self.mask >> v) & 1]


@dataclass(frozen=True)
class NegativeCycle:
    """Directed cycle given by arc indices in traversal order."""

    arcs: Tuple[int, ...]
    weight: int


def is_circulation(d: BoundedDigraph, flow: Sequence[int]) -> bool:
    """Bounds and conservation hold."""
    if len(flow) != len(d.arcs):
        return False
    balance = [0] * d.vertex_count
    for a, x in zip(d.arcs, flow):
        if not a.lower <= x <= a.upper:
            return False
        balance[a.tail] -= x
        balance[a.head] += x
    return all(b == 0 for b in balance)


def hoffman_bounds(d: BoundedDigraph, mask: int) -> Tuple[int, int]:
    """Return (lower bounds into U, upper bounds out of U)."""
    lower_into = upper_out = 0
    for a in d.arcs:
        t_in = (mask >> a.tail) & 1
        h_in = (mask >> a.head) & 1
        if h_in and not t_in:
            lower_into += a.lower
        elif t_in and not h_in:
            upper_out += a.upper
    return lower_into, upper_out


def _lower_bound_supplies(d: BoundedDigraph) -> List[int]:
    # net outflow the residual flow must create at each vertex once every arc carries its lower bound
    supply = [0] * d.vertex_count
    for a in d.arcs:
        supply[a.head] += a.lower
        supply[a.tail] -= a.lower
    return supply


# ========== Feasibility ==========


def feasible_circulation(d: BoundedDigraph) -> Union[Circulation, ViolatingSet]:
    """Find an integral circulation within bounds, or a Hoffman violating set.

    Args:
        d: Digraph with bounds (costs ignored).

    Returns:
        Circulation respecting all bounds, or ViolatingSet U with
        sum of lower bounds into U > sum of upper bounds out of U.
    """
    n = d.vertex_count
    source, sink = n, n + 1
    supply = _lower_bound_supplies(d)
    demand_total = sum(s for s in supply if s > 0)

    network = nx.DiGraph()
    network.add_nodes_from(range(n + 2))
    for v, s in enumerate(supply):
        if s > 0:
            network.add_edge(source, v, capacity=s)
        elif s < 0:
            network.add_edge(v, sink, capacity=-s)
    slack: Dict[Tuple[int, int], List[int]] = {}
    for i, a in enumerate(d.arcs):
        if a.upper > a.lower:
            slack.setdefault((a.tail, a.head), []).append(i)
            if network.has_edge(a.tail, a.head):
                network[a.tail][a.head]["capacity"] += a.upper - a.lower
            else:
                network.add_edge(a.tail, a.head, capacity=a.upper - a.lower)

    if demand_total == 0:
        return Circulation(tuple(a.lower for a in d.arcs))

    value, flow_dict = nx.maximum_flow(network, source, sink)
    if value < demand_total:
        _, (source_side, _) = nx.minimum_cut(network, source, sink)
        mask = 0
        for v in source_side:
            if v < n:
                mask |= 1 << v
        lower_into, upper_out = hoffman_bounds(d, mask)
        assert lower_into > upper_out, "min cut did not certify infeasibility"
        logger.debug(f"Circulation infeasible: U={mask:b}, lower in {lower_into} > upper out {upper_out}")
        return ViolatingSet(mask, lower_into, upper_out)

    result = [a.lower for a in d.arcs]
    for (u, v), indices in slack.items():
        remaining = flow_dict[u][v]
        for i in indices:
            take = min(remaining, d.arcs[i].upper - d.arcs[i].lower)
            result[i] += take
            remaining -= take
        assert remaining == 0
    circ = Circulation(tuple(result))
    assert is_circulation(d, circ.flow)
    return circ


# ========== Min-Cost Circulation (successive shortest paths) ==========


class _Residual:
    """Adjacency-list residual network; edges stored in pairs (e, e ^ 1)."""

    def __init__(self, vertex_count: int):
        self.n = vertex_count
        self.head: List[int] = []
        self.cap: List[int] = []
        self.cost: List[int] = []
        self.adj: List[List[int]] = [[] for _ in range(vertex_count)]

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        idx = len(self.head)
        for a, b, c, w in ((u, v, cap, cost), (v, u, 0, -cost)):
            self.head.append(b)
            self.cap.append(c)
            self.cost.append(w)
            self.adj[a].append(len(self.head) - 1)
        return idx

    def push(self, e: int, amount: int) -> None:
        self.cap[e] -= amount
        self.cap[e ^ 1] += amount


def min_cost_circulation(d: BoundedDigraph) -> Circulation:
    """Compute an integral circulation of minimum total cost.

    Args:
        d: Digraph with bounds and integer costs.

    Returns:
        Optimal integral circulation.

    Raises:
        InfeasibleError: If no circulation satisfies the bounds.
    """
    n = d.vertex_count
    source, sink = n, n + 1
    res = _Residual(n + 2)
    supply = _lower_bound_supplies(d)
    arc_edges: List[int] = []

    for a in d.arcs:
        width = a.upper - a.lower
        e = res.add(a.tail, a.head, width, a.cost)
        arc_edges.append(e)
        if a.cost < 0 and width > 0:
            # saturate so every residual edge starts with nonnegative cost
            res.push(e, width)
            supply[a.tail] += width
            supply[a.head] -= width

    demand_total = 0
    for v, s in enumerate(supply):
        if s > 0:
            res.add(source, v, s, 0)
            demand_total += s
        elif s < 0:
            res.add(v, sink, -s, 0)

    pushed = _successive_shortest_paths(res, source, sink, demand_total)
    if pushed < demand_total:
        raise InfeasibleError("min_cost_circulation", f"only {pushed} of {demand_total} units routable")

    flow = tuple(a.lower + res.cap[e ^ 1] for a, e in zip(d.arcs, arc_edges))
    circ = Circulation(flow)
    assert is_circulation(d, circ.flow)
    logger.debug(f"Min-cost circulation on {len(d.arcs)} arcs: cost {circ.cost(d)}")
    return circ


def _successive_shortest_paths(res: _Residual, source: int, sink: int, target: int) -> int:
    potential = [0] * res.n
    pushed = 0
    while pushed < target:
        dist: List[Optional[int]] = [None] * res.n
        parent_edge = [-1] * res.n
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            du, u = heapq.heappop(heap)
            if du != dist[u]:
                continue
            for e in res.adj[u]:
                if res.cap[e] <= 0:
                    continue
                v = res.head[e]
                nd = du + res.cost[e] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:  # type: ignore[operator]
                    dist[v] = nd
                    parent_edge[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[sink] is None:
            break
        reach_max = max(x for x in dist if x is not None)
        for v in range(res.n):
            dv = dist[v]
            potential[v] += dv if dv is not None else reach_max

        amount = target - pushed
        v = sink
        while v != source:
            e = parent_edge[v]
            amount = min(amount, res.cap[e])
            v = res.head[e ^ 1]
        v = sink
        while v != source:
            e = parent_edge[v]
            res.push(e, amount)
            v = res.head[e ^ 1]
        pushed += amount
    return pushed


# ========== Negative Cycles ==========


def find_negative_cycle(
    vertex_count: int, arcs: Sequence[Tuple[int, int, int]]
) -> Optional[NegativeCycle]:
    """Find a simple directed cycle of negative total weight.

    Args:
        vertex_count: Number of vertices.
        arcs: (tail, head, weight) triples; parallel arcs allowed.

    Returns:
        NegativeCycle with arc indices in traversal order, or None.
    """
    for i, (u, v, w) in enumerate(arcs):
        if u == v and w < 0:
            return NegativeCycle((i,), w)
    if vertex_count == 0 or not arcs:
        return None

    # virtual source: every vertex starts at distance 0
    dist = [0] * vertex_count
    pred: List[int] = [-1] * vertex_count
    updated = -1
    for _ in range(vertex_count):
        updated = -1
        for i, (u, v, w) in enumerate(arcs):
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                pred[v] = i
                updated = v
        if updated < 0:
            return None

    # walk back n steps to land on the predecessor cycle
    x = updated
    for _ in range(vertex_count):
        x = arcs[pred[x]][0]
    cycle: List[int] = []
    v = x
    while True:
        i = pred[v]
        cycle.append(i)
        v = arcs[i][0]
        if v == x:
            break
    cycle.reverse()
    weight = sum(arcs[i][2] for i in cycle)
    assert weight < 0, "predecessor cycle is not negative"
    return NegativeCycle(tuple(cycle), weight)


def residual_arcs(d: BoundedDigraph, circ: Circulation) -> Tuple[List[Tuple[int, int, int]], List[Tuple[int, int]]]:
    """Residual arcs (tail, head, cost) and their origin (arc index, +1 forward / -1 backward)."""
    arcs: List[Tuple[int, int, int]] = []
    origin: List[Tuple[int, int]] = []
    for i, (a, x) in enumerate(zip(d.arcs, circ.flow)):
        if x < a.upper:
            arcs.append((a.tail, a.head, a.cost))
            origin.append((i, 1))
        if x > a.lower:
            arcs.append((a.head, a.tail, -a.cost))
            origin.append((i, -1))
    return arcs, origin


def residual_negative_cycle(d: BoundedDigraph, circ: Circulation) -> Optional[List[Tuple[int, int]]]:
    """Return a negative residual cycle as (arc index, sign) pairs, or None when optimal."""
    arcs, origin = residual_arcs(d, circ)
    found = find_negative_cycle(d.vertex_count, arcs)
    if found is None:
        return None
    return [origin[i] for i in found.arcs]


def cycle_canceling_min_cost(d: BoundedDigraph) -> Circulation:
    """Min-cost circulation by canceling negative residual cycles.

    Raises:
        InfeasibleError: If no circulation satisfies the bounds.
    """
    start = feasible_circulation(d)
    if isinstance(start, ViolatingSet):
        raise InfeasibleError("cycle_canceling_min_cost", "bounds are infeasible", start)
    flow = list(start.flow)
    rounds = 0
    while True:
        cycle = residual_negative_cycle(d, Circulation(tuple(flow)))
        if cycle is None:
            break
        amount = min(
            d.arcs[i].upper - flow[i] if sign > 0 else flow[i] - d.arcs[i].lower
            for i, sign in cycle
        )
        for i, sign in cycle:
            flow[i] += sign * amount
        rounds += 1
    logger.debug(f"Cycle canceling finished after {rounds} cancellations")
    return Circulation(tuple(flow))


def enumerate_circulations(d: BoundedDigraph) -> Iterator[Circulation]:
    """Yield every integral circulation (exhaustive; tiny instances only)."""
    ranges = [range(a.lower, a.upper + 1) for a in d.arcs]
    for flow in itertools.product(*ranges):
        if is_circulation(d, flow):
            yield Circulation(tuple(flow))
