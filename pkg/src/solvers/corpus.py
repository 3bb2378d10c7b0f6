"""
Seeded instance corpora: named graphs, random 2-edge-connected graphs,
random costs and random formulas. Every generator is deterministic in its seed.
"""

import itertools
import random
from typing import Iterator, List, Optional, Set, Tuple

from core.exceptions import InvalidParameterError
from core.graph import Cost, CostFunction, Graph, build_graph

from .gadgets import CnfFormula


def gen_petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, edges)


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise InvalidParameterError("n", n, "an integer >= 2")
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def gen_random_two_edge_connected(n: int, m: int, seed: int = 0) -> Graph:
    """Random 2-edge-connected multigraph: a random Hamiltonian cycle plus m - n chords.

    Chords avoid parallel edges while simple pairs remain.
    """
    if n < 2:
        raise InvalidParameterError("n", n, "an integer >= 2")
    if m < n:
        raise InvalidParameterError("m", m, f"at least n={n} edges")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[(i + 1) % n]) for i in range(n)]
    present: Set[Tuple[int, int]] = {(min(u, v), max(u, v)) for u, v in edges}
    simple_capacity = n * (n - 1) // 2
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        key = (min(u, v), max(u, v))
        if key in present and len(present) < simple_capacity:
            continue
        present.add(key)
        edges.append((u, v))
    return build_graph(n, edges)


def random_costs(
    g: Graph, max_cost: int = 20, seed: int = 0, symmetric: bool = False
) -> CostFunction:
    """Uniform integer costs in [0, max_cost] per arc (or per edge when symmetric)."""
    rng = random.Random(seed)
    costs: List[Tuple[Cost, Cost]] = []
    for _ in range(g.m):
        fwd = rng.randint(0, max_cost)
        bwd = fwd if symmetric else rng.randint(0, max_cost)
        costs.append((fwd, bwd))
    return CostFunction(tuple(costs))


def gen_random_restricted_sat(n: int, m: int, seed: int = 0, max_clause_size: int = 3) -> CnfFormula:
    """Random formula where every variable occurs at most three times.

    Clause sizes range over 1..max_clause_size and may shrink when the
    occurrence budget runs out.
    """
    if n < 1 or m < 1:
        raise InvalidParameterError("n, m", (n, m), "positive counts")
    if m > 3 * n:
        raise InvalidParameterError("m", m, f"at most 3n={3 * n} clauses")
    rng = random.Random(seed)
    budget = {v: 3 for v in range(1, n + 1)}
    clauses: List[Tuple[int, ...]] = []
    for _ in range(m):
        open_vars = [v for v, b in budget.items() if b > 0]
        size = min(rng.randint(1, max_clause_size), len(open_vars))
        chosen = rng.sample(open_vars, size)
        for v in chosen:
            budget[v] -= 1
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return CnfFormula(n, tuple(clauses))


def gen_random_nae3sat(n: int, m: int, seed: int = 0) -> CnfFormula:
    """Random NAE3SAT formula with three distinct variables per clause."""
    if n < 3:
        raise InvalidParameterError("n", n, "at least 3 variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        chosen = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return CnfFormula(n, tuple(clauses))


def restricted_sat_templates(
    max_vars: int = 3, max_clauses: int = 3, limit: Optional[int] = None
) -> Iterator[CnfFormula]:
    """Enumerate restricted SAT formulas over clauses of 1..3 distinct variables.

    Clause lists are taken as multisets in a canonical order, so each formula
    appears once per variable count.
    """
    count = 0
    for n in range(1, max_vars + 1):
        literals = [v for v in range(1, n + 1)] + [-v for v in range(1, n + 1)]
        clause_pool = []
        for size in range(1, 4):
            for combo in itertools.combinations(literals, size):
                if len({abs(lit) for lit in combo}) == size:
                    clause_pool.append(combo)
        for m in range(1, max_clauses + 1):
            for chosen in itertools.combinations_with_replacement(clause_pool, m):
                used = {abs(lit) for c in chosen for lit in c}
                if used != set(range(1, n + 1)):
                    continue
                phi = CnfFormula(n, tuple(chosen))
                if any(sum(phi.occurrences(v)) > 3 for v in used):
                    continue
                yield phi
                count += 1
                if limit is not None and count >= limit:
                    return
