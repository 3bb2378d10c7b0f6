"""
Multigraph representation underlying every solver.

Edges have stable integer ids (the i-th entry of the edge list) and every
edge carries two opposite arcs: ``e+`` (tail to head, FORWARD) and ``e-``
(head to tail, BACKWARD). Vertex subsets are accepted either as bit masks
or as iterables of vertex indices.
"""

import logging
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from .exceptions import (
    AsymmetricCostError,
    ForbiddenArcUsedError,
    GraphMismatchError,
    IndexOutOfRangeError,
    SelfLoopError,
)

logger = logging.getLogger(__name__)


class Marker(Enum):
    """Non-numeric markers for costs and flow bounds."""

    FORBIDDEN = "X"
    UNBOUNDED = "inf"

    def __repr__(self) -> str:
        return self.name


FORBIDDEN = Marker.FORBIDDEN
UNBOUNDED = Marker.UNBOUNDED

Cost = Union[int, Marker]
KValue = Union[int, Marker]
VertexSet = Union[int, Iterable[int]]


class Direction(IntEnum):
    """Arc direction relative to the stored edge (sign of the extension)."""

    FORWARD = 1
    BACKWARD = -1

    @property
    def symbol(self) -> str:
        return "+" if self is Direction.FORWARD else "-"

    def flip(self) -> "Direction":
        return Direction(-int(self))


class ArcRef(NamedTuple):
    """One of the two arcs of an edge."""

    edge_index: int
    direction: Direction

    def reverse(self) -> "ArcRef":
        """Return the opposite arc of the same edge."""
        return ArcRef(self.edge_index, self.direction.flip())

    def __str__(self) -> str:
        return f"{self.edge_index}{self.direction.symbol}"


def as_mask(u_set: VertexSet) -> int:
    """Normalize a vertex subset to a bit mask."""
    if isinstance(u_set, int):
        return u_set
    mask = 0
    for v in u_set:
        mask |= 1 << v
    return mask


def mask_members(mask: int) -> List[int]:
    """List the vertices of a bit mask in increasing order."""
    members = []
    v = 0
    while mask:
        if mask & 1:
            members.append(v)
        mask >>= 1
        v += 1
    return members


# ========== Graph ==========


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph with stable edge ids; self-loops are rejected."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise IndexOutOfRangeError(self.vertex_count, 0)
        for i, (u, v) in enumerate(self.edges):
            for w in (u, v):
                if not 0 <= w < self.vertex_count:
                    raise IndexOutOfRangeError(w, self.vertex_count)
            if u == v:
                raise SelfLoopError(i, u)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> Tuple[Tuple[Tuple[int, int, Direction], ...], ...]:
        """Per vertex: (edge_index, other endpoint, direction of the arc leaving the vertex)."""
        table: List[List[Tuple[int, int, Direction]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            table[u].append((i, v, Direction.FORWARD))
            table[v].append((i, u, Direction.BACKWARD))
        return tuple(tuple(row) for row in table)

    def arc_endpoints(self, arc: ArcRef) -> Tuple[int, int]:
        """Return (tail, head) of an arc."""
        u, v = self.edges[arc.edge_index]
        return (u, v) if arc.direction is Direction.FORWARD else (v, u)

    def arcs(self) -> Iterator[ArcRef]:
        """Iterate over all 2m arcs, forward arc first for each edge."""
        for i in range(self.m):
            yield ArcRef(i, Direction.FORWARD)
            yield ArcRef(i, Direction.BACKWARD)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def incident(self, v: int) -> List[int]:
        """Edge indices incident to v."""
        return [i for i, _, _ in self.incidence[v]]

    def to_networkx(self) -> nx.MultiGraph:
        """Return an equivalent networkx MultiGraph keyed by edge index."""
        mg = nx.MultiGraph()
        mg.add_nodes_from(range(self.vertex_count))
        for i, (u, v) in enumerate(self.edges):
            mg.add_edge(u, v, key=i)
        return mg

    def check_same(self, size: int) -> None:
        """Raise GraphMismatchError unless ``size`` equals the edge count."""
        if size != self.m:
            raise GraphMismatchError(self.m, size)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from a vertex count and a list of vertex pairs.

    Args:
        n: Number of vertices.
        edge_list: Pairs (tail, head); edge i is the i-th pair.

    Returns:
        Graph with stable edge ids.

    Raises:
        IndexOutOfRangeError: If an endpoint is outside [0, n).
        SelfLoopError: If an edge has identical endpoints.
    """
    return Graph(n, tuple((int(u), int(v)) for u, v in edge_list))


# ========== Connectivity and Cuts ==========


def find_bridge(g: Graph) -> Optional[int]:
    """Return the index of some bridge of g, or None if there is none."""
    mg = g.to_networkx()
    for u, v in nx.bridges(mg):
        # a bridge is the unique edge between its endpoints
        return next(iter(mg[u][v]))
    return None


def is_two_edge_connected(g: Graph) -> bool:
    """True iff g is connected, nonempty and has no bridge.

    A single vertex without edges counts as 2-edge-connected.
    """
    if g.vertex_count == 0:
        return False
    if g.vertex_count == 1:
        return True
    mg = g.to_networkx()
    if not nx.is_connected(mg):
        return False
    return not nx.has_bridges(mg)


def cut_edges(g: Graph, u_set: VertexSet) -> FrozenSet[int]:
    """Edges with exactly one endpoint in ``u_set`` (the cut of U)."""
    mask = as_mask(u_set)
    return frozenset(
        i for i, (u, v) in enumerate(g.edges) if ((mask >> u) & 1) != ((mask >> v) & 1)
    )


# ========== Orientations ==========


@dataclass(frozen=True)
class PartialOrientation:
    """Per-edge direction, None meaning undecided."""

    dirs: Tuple[Optional[Direction], ...]

    @classmethod
    def empty(cls, m: int) -> "PartialOrientation":
        return cls((None,) * m)

    @classmethod
    def from_arcs(cls, m: int, arcs: Iterable[ArcRef]) -> "PartialOrientation":
        dirs: List[Optional[Direction]] = [None] * m
        for arc in arcs:
            dirs[arc.edge_index] = arc.direction
        return cls(tuple(dirs))

    def __len__(self) -> int:
        return len(self.dirs)

    def arcs(self) -> Iterator[ArcRef]:
        """Chosen arcs of the oriented edges."""
        for i, d in enumerate(self.dirs):
            if d is not None:
                yield ArcRef(i, d)

    def oriented_edges(self) -> FrozenSet[int]:
        return frozenset(i for i, d in enumerate(self.dirs) if d is not None)

    def undecided_edges(self) -> List[int]:
        return [i for i, d in enumerate(self.dirs) if d is None]

    def is_full(self) -> bool:
        return all(d is not None for d in self.dirs)

    def reversed(self) -> "PartialOrientation":
        return PartialOrientation(tuple(None if d is None else d.flip() for d in self.dirs))

    def to_full(self) -> "Orientation":
        """Convert to a full orientation; every edge must be decided."""
        if not self.is_full():
            raise ValueError(f"edges {self.undecided_edges()} are undecided")
        return Orientation(tuple(d for d in self.dirs if d is not None))

    def with_choices(self, choices: Iterable[Tuple[int, Direction]]) -> "PartialOrientation":
        """Return a copy with some edges decided."""
        dirs = list(self.dirs)
        for i, d in choices:
            dirs[i] = d
        return PartialOrientation(tuple(dirs))


@dataclass(frozen=True)
class Orientation:
    """Per-edge direction bit, one entry per edge."""

    dirs: Tuple[Direction, ...]

    @classmethod
    def from_bits(cls, m: int, bits: int) -> "Orientation":
        """Bit i set means edge i is BACKWARD."""
        return cls(
            tuple(Direction.BACKWARD if (bits >> i) & 1 else Direction.FORWARD for i in range(m))
        )

    def __len__(self) -> int:
        return len(self.dirs)

    def arcs(self) -> Iterator[ArcRef]:
        for i, d in enumerate(self.dirs):
            yield ArcRef(i, d)

    def to_partial(self) -> PartialOrientation:
        return PartialOrientation(tuple(self.dirs))

    def reversed(self) -> "Orientation":
        return Orientation(tuple(d.flip() for d in self.dirs))


AnyOrientation = Union[Orientation, PartialOrientation]


def out_arcs(g: Graph, o: AnyOrientation, u_set: VertexSet) -> FrozenSet[ArcRef]:
    """Oriented arcs leaving ``u_set``; undecided edges are skipped."""
    mask = as_mask(u_set)
    result = set()
    for arc in o.arcs():
        tail, head = g.arc_endpoints(arc)
        if (mask >> tail) & 1 and not (mask >> head) & 1:
            result.add(arc)
    return frozenset(result)


# ========== Costs ==========


@dataclass(frozen=True)
class CostFunction:
    """Per-arc costs: (forward, backward) for each edge; entries may be FORBIDDEN."""

    costs: Tuple[Tuple[Cost, Cost], ...]

    def __post_init__(self) -> None:
        for i, pair in enumerate(self.costs):
            for c in pair:
                if c is not FORBIDDEN and (not isinstance(c, int) or c < 0):
                    raise ValueError(f"edge {i}: cost {c!r} must be a nonnegative int or FORBIDDEN")

    @classmethod
    def unit(cls, g: Graph) -> "CostFunction":
        return cls(((1, 1),) * g.m)

    @classmethod
    def zeros(cls, g: Graph) -> "CostFunction":
        return cls(((0, 0),) * g.m)

    @classmethod
    def symmetric(cls, values: Iterable[int]) -> "CostFunction":
        return cls(tuple((c, c) for c in values))

    def __len__(self) -> int:
        return len(self.costs)

    def arc_cost(self, arc: ArcRef) -> Cost:
        fwd, bwd = self.costs[arc.edge_index]
        return fwd if arc.direction is Direction.FORWARD else bwd

    def is_forbidden(self, arc: ArcRef) -> bool:
        return self.arc_cost(arc) is FORBIDDEN

    def finite(self, arc: ArcRef) -> int:
        """Cost of an arc that must not be FORBIDDEN."""
        c = self.arc_cost(arc)
        if c is FORBIDDEN:
            raise ForbiddenArcUsedError(arc)
        assert isinstance(c, int)
        return c

    def is_symmetric(self) -> bool:
        """Forward equals backward everywhere and nothing is FORBIDDEN."""
        return all(f == b and f is not FORBIDDEN for f, b in self.costs)

    def require_symmetric(self) -> None:
        for i, (f, b) in enumerate(self.costs):
            if f != b or f is FORBIDDEN:
                raise AsymmetricCostError(i)

    def edge_cost(self, i: int) -> int:
        """Cost of edge i under symmetric costs."""
        return self.finite(ArcRef(i, Direction.FORWARD))

    def max_finite(self) -> int:
        return max((c for pair in self.costs for c in pair if isinstance(c, int)), default=0)


def orientation_cost(o: AnyOrientation, c: CostFunction) -> int:
    """Sum of the chosen arcs' costs.

    Raises:
        ForbiddenArcUsedError: If a chosen arc is FORBIDDEN.
    """
    return sum(c.finite(arc) for arc in o.arcs())
