"""
Signed-extension flows and their algebra.

A Flow stores one signed integer per edge: value v on edge e means
f(e+) = v and f(e-) = -v, so antisymmetry holds by construction.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .config import get_config
from .exceptions import (
    BoundViolatedError,
    ConservationViolatedError,
    GraphMismatchError,
    InvalidParameterError,
    NonpositiveValueError,
    SupportNotCoveringError,
)
from .graph import ArcRef, CostFunction, Direction, Graph, PartialOrientation

logger = logging.getLogger(__name__)


def vertex_excess(g: Graph, values: Sequence[int]) -> List[int]:
    """Outflow minus inflow at every vertex."""
    excess = [0] * g.vertex_count
    for (u, v), x in zip(g.edges, values):
        excess[u] += x
        excess[v] -= x
    return excess


def check_conservation(g: Graph, values: Sequence[int]) -> Optional[Tuple[int, int]]:
    """Return (vertex, excess) for the first unbalanced vertex, or None."""
    for v, ex in enumerate(vertex_excess(g, values)):
        if ex != 0:
            return v, ex
    return None


@dataclass(frozen=True)
class Flow:
    """Per-edge signed values on a fixed graph.

    Construction does not enforce conservation so that checkers can inspect
    broken inputs; every operation in this module produces conserving flows.
    """

    graph: Graph
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        self.graph.check_same(len(self.values))

    @classmethod
    def zero(cls, g: Graph) -> "Flow":
        return cls(g, (0,) * g.m)

    @classmethod
    def of(cls, g: Graph, values: Iterable[int]) -> "Flow":
        return cls(g, tuple(int(x) for x in values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, edge_index: int) -> int:
        return self.values[edge_index]

    def value_on_arc(self, arc: ArcRef) -> int:
        """f(arc) under the extension convention."""
        return int(arc.direction) * self.values[arc.edge_index]

    def excess(self, v: int) -> int:
        return vertex_excess(self.graph, self.values)[v]

    def is_conserving(self) -> bool:
        return check_conservation(self.graph, self.values) is None

    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, x in enumerate(self.values) if x != 0)

    def positive_arcs(self) -> List[ArcRef]:
        """supp+(f): arcs carrying positive value."""
        return [
            ArcRef(i, Direction.FORWARD if x > 0 else Direction.BACKWARD)
            for i, x in enumerate(self.values)
            if x != 0
        ]

    def max_abs(self) -> int:
        return max((abs(x) for x in self.values), default=0)

    def is_nowhere_zero(self) -> bool:
        return all(x != 0 for x in self.values)


def _postcheck(f: Flow) -> Flow:
    if __debug__ or get_config().debug:
        bad = check_conservation(f.graph, f.values)
        if bad is not None:
            raise ConservationViolatedError(*bad)
    return f


# ========== Operations ==========


def extend(
    g: Graph,
    po: PartialOrientation,
    values: Union[Mapping[int, int], Sequence[int]],
) -> Flow:
    """Extend a partial k-flow on oriented edges to a signed Flow.

    Args:
        g: Underlying graph.
        po: Partial orientation; undecided edges receive 0.
        values: Positive value per oriented edge, either as a mapping
            edge_index -> value or as a length-m sequence (entries of
            undecided edges must be 0).

    Returns:
        Flow with +value on forward edges and -value on backward edges.

    Raises:
        NonpositiveValueError: If an oriented edge has a value below 1.
        ConservationViolatedError: If the result is not a circulation.
    """
    g.check_same(len(po))
    if isinstance(values, Mapping):
        lookup: Dict[int, int] = dict(values)
    else:
        g.check_same(len(values))
        lookup = {i: x for i, x in enumerate(values) if po.dirs[i] is not None or x != 0}

    signed = [0] * g.m
    for i, d in enumerate(po.dirs):
        if d is None:
            if lookup.get(i, 0) != 0:
                raise InvalidParameterError(f"values[{i}]", lookup[i], "no value on an undecided edge")
            continue
        if i not in lookup:
            raise InvalidParameterError(f"values[{i}]", None, "a value on every oriented edge")
        x = lookup[i]
        if x < 1:
            raise NonpositiveValueError(i, x)
        signed[i] = int(d) * x

    bad = check_conservation(g, signed)
    if bad is not None:
        raise ConservationViolatedError(*bad)
    return Flow(g, tuple(signed))


def negate(f: Flow) -> Flow:
    """Return -f."""
    return Flow(f.graph, tuple(-x for x in f.values))


def scale_add(a: int, f1: Flow, b: int, f2: Flow) -> Flow:
    """Return a*f1 + b*f2.

    Raises:
        GraphMismatchError: If the flows live on different graphs.
    """
    if f1.graph != f2.graph:
        raise GraphMismatchError(f1.graph.m, f2.graph.m)
    return _postcheck(Flow(f1.graph, tuple(a * x + b * y for x, y in zip(f1.values, f2.values))))


def compose_nowhere_zero(f1: Flow, k1: int, f2: Flow, k2: int) -> Flow:
    """Combine a k1-flow and a k2-flow with covering supports into a nowhere-zero k1*k2-flow.

    The result is k2*f1 + f2. Its orientation follows f1 wherever f1 is
    nonzero and f2 elsewhere.

    Raises:
        BoundViolatedError: If an input value does not fit its k.
        SupportNotCoveringError: If both inputs vanish on some edge.
    """
    if f1.graph != f2.graph:
        raise GraphMismatchError(f1.graph.m, f2.graph.m)
    for f, k in ((f1, k1), (f2, k2)):
        for i, x in enumerate(f.values):
            if abs(x) > k - 1:
                raise BoundViolatedError(i, x, k)
    for i, (x, y) in enumerate(zip(f1.values, f2.values)):
        if x == 0 and y == 0:
            raise SupportNotCoveringError(i)

    result = scale_add(k2, f1, 1, f2)
    assert all(1 <= abs(x) <= k1 * k2 - 1 for x in result.values)
    return result


def support_orientation(f: Flow) -> Tuple[FrozenSet[int], PartialOrientation]:
    """Edges with nonzero value, oriented by the sign of their value."""
    dirs = tuple(
        None if x == 0 else (Direction.FORWARD if x > 0 else Direction.BACKWARD)
        for x in f.values
    )
    return f.support(), PartialOrientation(dirs)


def flow_cost(f: Flow, c: CostFunction) -> int:
    """Sum over edges of c(chosen arc) * |v_e|.

    Raises:
        ForbiddenArcUsedError: If a positive arc is FORBIDDEN.
    """
    f.graph.check_same(len(c))
    return sum(c.finite(arc) * abs(f.values[arc.edge_index]) for arc in f.positive_arcs())
