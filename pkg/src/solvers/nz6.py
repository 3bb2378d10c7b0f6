"""
Nowhere-zero 6-flows and exhaustive nowhere-zero flow oracles.

nz6_flow builds a nowhere-zero Z6-flow by repeatedly simplifying a working
multigraph whose vertices are groups of original vertices and whose links
are chains of original edges:

- a link whose ends fall into one group is set aside (any nonzero value fits);
- a group with exactly two links is suppressed, joining the links into one chain;
- a cycle of at most five links is contracted into one group.

Undoing the steps in reverse assigns values: a contracted cycle admits a
one-parameter family of completions and at most four of the five nonzero
shifts hit a zero. A residual core without short cycles is solved by
backtracking. The Z6-flow then splits into a Z2-flow and a Z3-flow, each
lifted to an integer flow, and the two are composed into an integer
nowhere-zero 6-flow.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from core.config import get_config
from core.exceptions import (
    BudgetExceededError,
    ConservationViolatedError,
    InvalidParameterError,
    NotTwoEdgeConnectedError,
    SolverOperationError,
)
from core.flow import Flow, compose_nowhere_zero
from core.graph import (
    UNBOUNDED,
    ArcRef,
    CostFunction,
    Direction,
    Graph,
    KValue,
    find_bridge,
    is_two_edge_connected,
)

from .verify import verify_nowhere_zero_k_flow

logger = logging.getLogger(__name__)

_Z = 6


# ========== Modular to Integer ==========


def integer_flow_from_modular(g: Graph, values: Sequence[int], k: int) -> Flow:
    """Turn a Z_k-flow into an integer flow with the same support and |v| <= k-1.

    Starts from representatives in 1..k-1 and, while some vertex has positive
    excess, reverses every arc of a path of positive arcs from it to a vertex
    of negative excess (v -> v - k*sign(v)).

    Args:
        g: Graph.
        values: Per-edge residues (relative to the stored edge direction).
        k: Modulus >= 2.

    Returns:
        Integer Flow congruent to ``values`` modulo k.

    Raises:
        ConservationViolatedError: If ``values`` is not a Z_k-flow.
    """
    if k < 2:
        raise InvalidParameterError("k", k, "an integer >= 2")
    g.check_same(len(values))
    val = [x % k for x in values]
    excess = [0] * g.n
    for (u, v), x in zip(g.edges, val):
        excess[u] += x
        excess[v] -= x
    for vertex, ex in enumerate(excess):
        if ex % k:
            raise ConservationViolatedError(vertex, ex % k)

    while True:
        start = next((v for v, ex in enumerate(excess) if ex > 0), None)
        if start is None:
            break
        parent: Dict[int, Tuple[int, int]] = {start: (-1, -1)}
        queue = deque([start])
        target = -1
        while queue and target < 0:
            x = queue.popleft()
            for i, other, d in g.incidence[x]:
                flows_out = val[i] * int(d) > 0
                if flows_out and other not in parent:
                    parent[other] = (x, i)
                    if excess[other] < 0:
                        target = other
                        break
                    queue.append(other)
        assert target >= 0, "no path from a positive to a negative excess vertex"
        v = target
        while v != start:
            prev, i = parent[v]
            val[i] -= k if val[i] > 0 else -k
            v = prev
        excess[start] -= k
        excess[target] += k

    return Flow(g, tuple(val))


# ========== Z6 Construction ==========


@dataclass
class _Link:
    start: int
    end: int
    edge: Optional[int] = None
    parts: Tuple[Tuple[int, int], ...] = ()


class _Z6Builder:
    """Working state for the reduce-then-undo construction."""

    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.parent = list(range(g.n))
        self.links: List[_Link] = [_Link(u, v, edge=i) for i, (u, v) in enumerate(g.edges)]
        self.alive: Set[int] = set(range(g.m))
        self.steps: List[Tuple] = []
        self.values = [0] * g.m
        self.excess = [0] * g.n
        self.suppressed = 0

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def ends(self, lid: int) -> Tuple[int, int]:
        link = self.links[lid]
        return self.find(link.start), self.find(link.end)

    # ---------- reduction ----------

    def _adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {}
        for lid in sorted(self.alive):
            a, b = self.ends(lid)
            adj.setdefault(a, []).append(lid)
            adj.setdefault(b, []).append(lid)
        return adj

    def _drop_loops(self) -> bool:
        loops = [lid for lid in sorted(self.alive) if len(set(self.ends(lid))) == 1]
        for lid in loops:
            self.alive.discard(lid)
            self.steps.append(("loop", lid))
        return bool(loops)

    def _suppress(self, adj: Dict[int, List[int]]) -> bool:
        for s, incident in adj.items():
            if len(incident) != 2:
                continue
            a, b = incident
            sa = 1 if self.find(self.links[a].end) == s else -1
            sb = 1 if self.find(self.links[b].start) == s else -1
            start = self.links[a].start if sa > 0 else self.links[a].end
            end = self.links[b].end if sb > 0 else self.links[b].start
            self.links.append(_Link(start, end, parts=((a, sa), (b, sb))))
            self.alive -= {a, b}
            self.alive.add(len(self.links) - 1)
            self.suppressed += 1
            return True
        return False

    def _short_cycle(self, adj: Dict[int, List[int]]) -> Optional[List[Tuple[int, int]]]:
        """A cycle of at most five links as (link, +1 start->end / -1) in traversal order."""
        seen_pairs: Dict[Tuple[int, int], int] = {}
        for lid in sorted(self.alive):
            a, b = self.ends(lid)
            key = (min(a, b), max(a, b))
            if key in seen_pairs:
                other = seen_pairs[key]
                oa, _ = self.ends(other)
                return [(other, 1 if oa == a else -1), (lid, -1)]
            seen_pairs[key] = lid

        for root in sorted(adj):
            dist = {root: 0}
            via: Dict[int, Tuple[int, int]] = {}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                if dist[x] >= 2:
                    continue
                for lid in adj[x]:
                    a, b = self.ends(lid)
                    y = b if a == x else a
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        via[y] = (x, lid)
                        queue.append(y)
            tree = {lid for _, lid in via.values()}
            for lid in sorted(self.alive):
                if lid in tree:
                    continue
                a, b = self.ends(lid)
                if a in dist and b in dist:
                    return self._tree_cycle(lid, a, b, via)
        return None

    def _tree_cycle(
        self, lid: int, a: int, b: int, via: Dict[int, Tuple[int, int]]
    ) -> List[Tuple[int, int]]:
        def path_up(x: int) -> List[int]:
            nodes = [x]
            while x in via:
                x = via[x][0]
                nodes.append(x)
            return nodes

        up_a, up_b = path_up(a), path_up(b)
        common = set(up_a) & set(up_b)
        lca = next(x for x in up_a if x in common)
        down = up_b[: up_b.index(lca)]
        # walk: lca -> ... -> a (reverse of up_a prefix), a -> b via lid, b -> ... -> lca
        cycle: List[Tuple[int, int]] = []
        for x in reversed(up_a[: up_a.index(lca)]):
            parent, tl = via[x]
            cycle.append((tl, self._direction(tl, parent)))
        cycle.append((lid, self._direction(lid, a)))
        for x in down:
            parent, tl = via[x]
            cycle.append((tl, self._direction(tl, x)))
        return cycle

    def _direction(self, lid: int, tail_group: int) -> int:
        return 1 if self.find(self.links[lid].start) == tail_group else -1

    def _contract(self, cycle: List[Tuple[int, int]]) -> None:
        groups: Dict[int, List[int]] = {}
        for v in range(self.g.n):
            groups.setdefault(self.find(v), []).append(v)
        tails = []
        for lid, d in cycle:
            a, b = self.ends(lid)
            tails.append(a if d > 0 else b)
        self.steps.append(("contract", tuple(cycle), tuple(tuple(groups[t]) for t in tails)))
        for lid, _ in cycle:
            self.alive.discard(lid)
        root = tails[0]
        for t in tails[1:]:
            self.parent[self.find(t)] = root

    def reduce(self) -> None:
        contractions = 0
        while self.alive:
            if self._drop_loops():
                continue
            adj = self._adjacency()
            if self._suppress(adj):
                continue
            cycle = self._short_cycle(adj)
            if cycle is None:
                logger.debug(f"nz6: residual core with {len(self.alive)} links")
                self._solve_core(adj)
                break
            self._contract(cycle)
            contractions += 1
        logger.debug(
            f"nz6: {contractions} contractions, {self.suppressed} suppressions, "
            f"{len(self.steps)} steps to undo"
        )

    # ---------- value assignment ----------

    def assign(self, lid: int, x: int) -> None:
        stack = [(lid, x)]
        while stack:
            current, value = stack.pop()
            link = self.links[current]
            if link.edge is not None:
                u, v = self.g.edges[link.edge]
                r = value % _Z
                self.values[link.edge] = r
                self.excess[u] = (self.excess[u] + r) % _Z
                self.excess[v] = (self.excess[v] - r) % _Z
            else:
                for child, sign in link.parts:
                    stack.append((child, sign * value))

    def _solve_core(self, adj: Dict[int, List[int]]) -> None:
        order_vertices: List[int] = []
        seen: Set[int] = set()
        for s in sorted(adj):
            if s in seen:
                continue
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                order_vertices.append(x)
                for lid in adj[x]:
                    for y in self.ends(lid):
                        if y not in seen:
                            seen.add(y)
                            queue.append(y)
        order: List[int] = []
        placed: Set[int] = set()
        for x in order_vertices:
            for lid in adj[x]:
                if lid not in placed:
                    placed.add(lid)
                    order.append(lid)
        remaining = {x: len(adj[x]) for x in adj}
        closes: List[List[int]] = []
        for lid in order:
            closing = []
            for y in self.ends(lid):
                remaining[y] -= 1
                if remaining[y] == 0:
                    closing.append(y)
            closes.append(closing)

        ends = [self.ends(lid) for lid in order]
        balance = {x: 0 for x in adj}
        chosen = [0] * len(order)
        nodes = 0

        def search(pos: int) -> bool:
            nonlocal nodes
            if pos == len(order):
                return True
            nodes += 1
            if nodes > self.budget:
                raise BudgetExceededError("nz6_flow", self.budget)
            a, b = ends[pos]
            closing = closes[pos]
            if closing:
                v = closing[0]
                forced = (-balance[a]) % _Z if v == a else balance[b] % _Z
                candidates = [forced] if forced else []
            else:
                candidates = [1, 2, 3, 4, 5]
            for x in candidates:
                balance[a] = (balance[a] + x) % _Z
                balance[b] = (balance[b] - x) % _Z
                if all(balance[w] == 0 for w in closing):
                    chosen[pos] = x
                    if search(pos + 1):
                        return True
                balance[a] = (balance[a] - x) % _Z
                balance[b] = (balance[b] + x) % _Z
            return False

        if not search(0):
            raise SolverOperationError("nz6_flow", "residual core has no nowhere-zero Z6-flow")
        for lid, x in zip(order, chosen):
            self.assign(lid, x)
        self.alive.clear()

    def undo(self) -> List[int]:
        for step in reversed(self.steps):
            if step[0] == "loop":
                self.assign(step[1], 1)
                continue
            _, cycle, groups = step
            running = 0
            forbidden = set()
            prefix = []
            for members in groups:
                running = (running + sum(self.excess[v] for v in members)) % _Z
                prefix.append(running)
            # link j carries alpha - (D_1 + ... + D_j); the last link carries alpha
            forbidden = {p for p in prefix[:-1]}
            alpha = next(a for a in range(1, _Z) if a not in forbidden)
            for (lid, d), p in zip(cycle, prefix):
                self.assign(lid, d * (alpha - p))
        return self.values


def _z6_flow(g: Graph, budget: int) -> List[int]:
    builder = _Z6Builder(g, budget)
    builder.reduce()
    values = builder.undo()
    if any(x == 0 for x in values) or any(builder.excess):
        raise SolverOperationError("nz6_flow", "reverse pass produced an invalid Z6-flow")
    return values


def nz6_flow(g: Graph) -> Flow:
    """Construct a nowhere-zero 6-flow on a 2-edge-connected graph.

    Raises:
        NotTwoEdgeConnectedError: If g has a bridge or is disconnected.
    """
    if not is_two_edge_connected(g):
        raise NotTwoEdgeConnectedError(find_bridge(g), reason="graph is disconnected or empty")
    if g.m == 0:
        return Flow.zero(g)
    settings = get_config().nz6

    try:
        z6 = _z6_flow(g, settings.core_search_budget)
        f2 = integer_flow_from_modular(g, [x % 2 for x in z6], 2)
        f3 = integer_flow_from_modular(g, [x % 3 for x in z6], 3)
        flow = compose_nowhere_zero(f2, 2, f3, 3)
    except (BudgetExceededError, SolverOperationError) as e:
        if g.m > settings.brute_fallback_max_edges:
            raise
        logger.warning(f"nz6: constructive path failed ({e}); falling back to exhaustive search")
        found = brute_force_min_nzk(g, CostFunction.zeros(g), 6)
        if found is None:
            raise SolverOperationError("nz6_flow", "no nowhere-zero 6-flow found")
        flow = found[0]

    violation = verify_nowhere_zero_k_flow(g, flow, 6)
    if violation is not None:
        raise SolverOperationError("nz6_flow", f"output failed verification: {violation.detail}")
    return flow


def nz2_or_none(g: Graph) -> Optional[Flow]:
    """All-(+/-1) flow along Eulerian circuits when every degree is even, else None."""
    if any(g.degree(v) % 2 for v in range(g.n)):
        return None
    values = [0] * g.m
    mg = g.to_networkx()
    for component in nx.connected_components(mg):
        if len(component) < 2:
            continue
        for u, v, key in nx.eulerian_circuit(mg.subgraph(component), keys=True):
            values[key] = 1 if g.edges[key] == (u, v) else -1
    return Flow(g, tuple(values))


# ========== Exhaustive Oracle ==========


def _search_order(g: Graph) -> List[int]:
    """Edges grouped by BFS order of vertices so vertices close early."""
    order: List[int] = []
    placed: Set[int] = set()
    visited: Set[int] = set()
    for s in range(g.n):
        if s in visited:
            continue
        visited.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for i, y, _ in g.incidence[x]:
                if i not in placed:
                    placed.add(i)
                    order.append(i)
                if y not in visited:
                    visited.add(y)
                    queue.append(y)
    return order


def brute_force_min_nzk(
    g: Graph,
    c: CostFunction,
    k: KValue,
    value_cap: Optional[int] = None,
    max_nodes: Optional[int] = None,
    exclude_forbidden: bool = True,
) -> Optional[Tuple[Flow, int]]:
    """Exact minimum-cost nowhere-zero k-flow by depth-first search.

    Each edge takes a signed value in +/-1..+/-cap; the last edge at a vertex
    is forced by conservation and a cost bound prunes the rest.

    Args:
        g: Graph.
        c: Arc costs; FORBIDDEN arcs are never used when exclude_forbidden.
        k: Flow bound, integer >= 2 or UNBOUNDED.
        value_cap: Largest |value| tried; defaults to k-1, or m for UNBOUNDED.
        max_nodes: Search-node budget; defaults to brute_force.max_nodes.
        exclude_forbidden: Skip values on FORBIDDEN arcs.

    Returns:
        (Flow, cost) of a cheapest flow, or None if none exists.

    Raises:
        BudgetExceededError: If the search visits more than max_nodes nodes.
    """
    g.check_same(len(c))
    limits = get_config().brute_force
    budget = max_nodes if max_nodes is not None else limits.max_nodes
    if k is UNBOUNDED:
        cap = value_cap if value_cap is not None else max(g.m, 1)
    else:
        if not isinstance(k, int) or k < 2:
            raise InvalidParameterError("k", k, "an integer >= 2 or UNBOUNDED")
        cap = min(k - 1, value_cap) if value_cap is not None else k - 1
    if g.m > limits.recommended_max_edges:
        logger.warning(f"brute_force_min_nzk on m={g.m} edges may be slow")

    order = _search_order(g)
    remaining = [g.degree(v) for v in range(g.n)]
    closes: List[List[int]] = []
    for i in order:
        closing = []
        for v in g.edges[i]:
            remaining[v] -= 1
            if remaining[v] == 0:
                closing.append(v)
        closes.append(closing)

    def arc_price(i: int, d: Direction) -> Optional[int]:
        cost = c.arc_cost(ArcRef(i, d))
        if isinstance(cost, int):
            return cost
        return None if exclude_forbidden else 0

    prices = [(arc_price(i, Direction.FORWARD), arc_price(i, Direction.BACKWARD)) for i in order]
    cheapest = [min((p for p in pair if p is not None), default=None) for pair in prices]
    if any(p is None for p in cheapest):
        return None
    tail_bound = [0] * (len(order) + 1)
    for pos in range(len(order) - 1, -1, -1):
        tail_bound[pos] = tail_bound[pos + 1] + cheapest[pos]  # type: ignore[operator]

    candidates: List[List[Tuple[int, int]]] = []
    for fwd, bwd in prices:
        options = []
        for x in range(1, cap + 1):
            if fwd is not None:
                options.append((fwd * x, x))
            if bwd is not None:
                options.append((bwd * x, -x))
        options.sort(key=lambda t: (t[0], abs(t[1]), -t[1]))
        candidates.append(options)

    balance = [0] * g.n
    current = [0] * g.m
    best_values: Optional[List[int]] = None
    best_cost = 0
    nodes = 0

    def search(pos: int, cost: int) -> None:
        nonlocal best_values, best_cost, nodes
        if best_values is not None and cost + tail_bound[pos] >= best_cost:
            return
        if pos == len(order):
            best_values, best_cost = list(current), cost
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("brute_force_min_nzk", budget)
        i = order[pos]
        u, v = g.edges[i]
        closing = closes[pos]
        if closing:
            forced = -balance[u] if closing[0] == u else balance[v]
            price = prices[pos][0] if forced > 0 else prices[pos][1]
            if forced == 0 or abs(forced) > cap or price is None:
                return
            options = [(price * abs(forced), forced)]
        else:
            options = candidates[pos]
        for step_cost, x in options:
            balance[u] += x
            balance[v] -= x
            if all(balance[w] == 0 for w in closing):
                current[i] = x
                search(pos + 1, cost + step_cost)
                current[i] = 0
            balance[u] -= x
            balance[v] += x

    search(0, 0)
    if best_values is None:
        return None
    return Flow(g, tuple(best_values)), best_cost
