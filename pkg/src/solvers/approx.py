"""
Approximation algorithms with checkable certificates.

- wnzf_bicriteria: nowhere-zero 6k-flow of cost <= 6 * LP value.
- wcbo_bicriteria: 6k-cut-balanced orientation of cost <= k * LP value.
- swnzf_local_search / swnzf_cycle_canceling: locally optimal nowhere-zero
  6-flow under symmetric costs, cost <= 3 * sum of edge costs.
- wcbo_via_wnzf: orientation read off the bicriteria flow.

Every output is re-verified before it is returned.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from core.exceptions import (
    BudgetExceededError,
    InvalidParameterError,
    KTooSmallError,
    NotCutBalancedError,
    NotNZ6FlowError,
    SolverOperationError,
)
from core.flow import Flow, flow_cost, scale_add, support_orientation
from core.formats import format_fraction, parse_fraction
from core.graph import (
    UNBOUNDED,
    AnyOrientation,
    CostFunction,
    Direction,
    Graph,
    KValue,
    Orientation,
    PartialOrientation,
    as_mask,
    mask_members,
    orientation_cost,
)
from core.models import CertificateModel, Violation
from engines.circulation import (
    BoundedDigraph,
    ViolatingSet,
    feasible_circulation,
    find_negative_cycle,
    min_cost_circulation,
)
from engines.lp import classify_flow_extreme_point, solve_wcbo_lp, solve_wnzf_lp

from .nz6 import nz6_flow
from .verify import verify_cut_balanced, verify_locally_optimal, verify_nowhere_zero_k_flow

logger = logging.getLogger(__name__)


# ========== Certificates ==========


@dataclass(frozen=True)
class ApproxCertificate:
    """Claim output_cost <= claimed_ratio * lp_value, with the bound the output was verified at."""

    algorithm: str
    lp_value: Fraction
    output_cost: int
    claimed_ratio: Fraction
    flow_bound: int
    lp_source: str = "lp"
    oracle_value: Optional[int] = None

    def check(self) -> bool:
        """Re-evaluate the cost inequality exactly."""
        return self.output_cost <= self.claimed_ratio * self.lp_value

    @property
    def ratio(self) -> Optional[Fraction]:
        """Achieved output_cost / lp_value (None when lp_value is 0)."""
        return Fraction(self.output_cost) / self.lp_value if self.lp_value else None

    def to_model(self) -> CertificateModel:
        return CertificateModel(
            algorithm=self.algorithm,
            lp_value=format_fraction(self.lp_value),
            lp_source=self.lp_source,  # type: ignore[arg-type]
            output_cost=self.output_cost,
            claimed_ratio=format_fraction(self.claimed_ratio),
            flow_bound=self.flow_bound,
            oracle_value=self.oracle_value,
        )

    def to_json(self) -> str:
        return self.to_model().to_json()

    @classmethod
    def from_model(cls, model: CertificateModel) -> "ApproxCertificate":
        return cls(
            algorithm=model.algorithm,
            lp_value=parse_fraction(model.lp_value),
            output_cost=model.output_cost,
            claimed_ratio=parse_fraction(model.claimed_ratio),
            flow_bound=model.flow_bound,
            lp_source=model.lp_source,
            oracle_value=model.oracle_value,
        )


def _certify(cert: ApproxCertificate) -> ApproxCertificate:
    if not cert.check():
        raise SolverOperationError(
            cert.algorithm,
            f"cost {cert.output_cost} exceeds {cert.claimed_ratio} * {cert.lp_value}",
        )
    return cert


# ========== Cut-Balanced Orientations and Flows ==========


@dataclass(frozen=True)
class ExtensionObstruction:
    """Vertex set X where the fixed arcs alone overload the cut.

    Attributes:
        vertices: X, sorted.
        fixed_out: Number of fixed arcs leaving X.
        cut_size: Number of edges (decided or not) crossing X.
    """

    vertices: Tuple[int, ...]
    fixed_out: int
    cut_size: int

    def violates(self, k: int) -> bool:
        """k * fixed_out > (k-1) * cut_size."""
        return k * self.fixed_out > (k - 1) * self.cut_size


def flow_from_cut_balanced(g: Graph, o: AnyOrientation, k: int) -> Flow:
    """Nowhere-zero k-flow on the oriented edges whose support orientation is o.

    Undecided edges of a partial orientation receive 0.

    Raises:
        NotCutBalancedError: With a CUT_UNBALANCED Violation naming the starved side.
    """
    if k is UNBOUNDED or not isinstance(k, int) or k < 2:
        raise InvalidParameterError("k", k, "a finite integer >= 2")
    g.check_same(len(o))
    arcs = list(o.arcs())
    rows = []
    for arc in arcs:
        tail, head = g.arc_endpoints(arc)
        rows.append((tail, head, 1, k - 1))
    result = feasible_circulation(BoundedDigraph.build(g.n, rows))
    if isinstance(result, ViolatingSet):
        leaving = sum(1 for t, h, _, _ in rows if (result.mask >> t) & 1 and not (result.mask >> h) & 1)
        size = sum(1 for t, h, _, _ in rows if ((result.mask >> t) & 1) != ((result.mask >> h) & 1))
        raise NotCutBalancedError(Violation.cut_unbalanced(result.mask, leaving, size, k), k)
    values = [0] * g.m
    for arc, x in zip(arcs, result.flow):
        values[arc.edge_index] = int(arc.direction) * x
    return Flow(g, tuple(values))


def extend_partial_cut_balanced(
    g: Graph, e1: PartialOrientation, k: int
) -> Union[PartialOrientation, ExtensionObstruction]:
    """Extend e1 to a partial k-cut-balanced orientation, or report why it cannot be.

    Runs a circulation with bounds [1, k-1] on e1's arcs and [0, k-1] on both
    arcs of every undecided edge, then cancels the two-sided part per edge;
    edges left with nonzero net flow join the orientation.
    """
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError("k", k, "a finite integer >= 2")
    g.check_same(len(e1))
    rows = []
    owners: List[Tuple[int, Direction]] = []
    for i, d in enumerate(e1.dirs):
        u, v = g.edges[i]
        if d is None:
            rows.append((u, v, 0, k - 1))
            owners.append((i, Direction.FORWARD))
            rows.append((v, u, 0, k - 1))
            owners.append((i, Direction.BACKWARD))
        else:
            tail, head = (u, v) if d is Direction.FORWARD else (v, u)
            rows.append((tail, head, 1, k - 1))
            owners.append((i, d))

    result = feasible_circulation(BoundedDigraph.build(g.n, rows))
    if isinstance(result, ViolatingSet):
        overloaded = ((1 << g.n) - 1) & ~result.mask
        obstruction = obstruction_for(g, e1, tuple(mask_members(overloaded)))
        assert obstruction.violates(k)
        return obstruction

    net = [0] * g.m
    for (i, d), x in zip(owners, result.flow):
        net[i] += int(d) * x
    dirs = tuple(
        e1.dirs[i] if e1.dirs[i] is not None
        else (None if x == 0 else (Direction.FORWARD if x > 0 else Direction.BACKWARD))
        for i, x in enumerate(net)
    )
    extended = PartialOrientation(dirs)
    logger.debug(
        f"Extended {len(e1.oriented_edges())} oriented edges to {len(extended.oriented_edges())}"
    )
    return extended


def obstruction_for(g: Graph, e1: PartialOrientation, vertices: Tuple[int, ...]) -> ExtensionObstruction:
    """Recount an obstruction for a given X directly from g and e1."""
    mask = as_mask(vertices)
    fixed_out = size = 0
    for i, (u, v) in enumerate(g.edges):
        u_in, v_in = (mask >> u) & 1, (mask >> v) & 1
        if u_in != v_in:
            size += 1
            d = e1.dirs[i]
            if d is not None and (u_in if d is Direction.FORWARD else v_in):
                fixed_out += 1
    return ExtensionObstruction(tuple(sorted(vertices)), fixed_out, size)


# ========== WNZF ==========


def wnzf_bicriteria(g: Graph, c: CostFunction, k: KValue) -> Tuple[Flow, ApproxCertificate]:
    """(6, 6)-approximation for the weighted nowhere-zero k-flow problem.

    Returns the cheaper of 6f + g6 and 6f - g6, where f is the integral part
    of an optimal LP extreme point and g6 a nowhere-zero 6-flow.

    Raises:
        KTooSmallError: If k < 6.
    """
    if k is not UNBOUNDED and (not isinstance(k, int) or k < 6):
        raise KTooSmallError(k, 6)
    z = solve_wnzf_lp(g, c, k)
    split = classify_flow_extreme_point(g, z, k)
    g6 = nz6_flow(g)
    f = split.integral_flow

    plus = scale_add(6, f, 1, g6)
    minus = scale_add(6, f, -1, g6)
    cost_plus, cost_minus = flow_cost(plus, c), flow_cost(minus, c)
    out, cost = (plus, cost_plus) if cost_plus <= cost_minus else (minus, cost_minus)

    bound = 6 * k if k is not UNBOUNDED else 6 * (f.max_abs() + 1)  # type: ignore[operator]
    violation = verify_nowhere_zero_k_flow(g, out, bound)
    if violation is not None:
        raise SolverOperationError("wnzf_bicriteria", f"output failed verification: {violation.detail}")
    cert = _certify(ApproxCertificate("wnzf", z.objective, cost, Fraction(6), bound))
    logger.info(
        f"wnzf: n={g.n}, m={g.m}, k={k}, LP {z.objective}, {len(split.fractional_edges)} half edges, "
        f"output cost {cost}"
    )
    return out, cert


# ========== WCBO ==========


def wcbo_bicriteria(g: Graph, c: CostFunction, k: int) -> Tuple[Orientation, ApproxCertificate]:
    """(k, 6)-approximation for the weighted k-cut-balanced orientation problem.

    Raises:
        KTooSmallError: If k < 6.
    """
    if k is UNBOUNDED or not isinstance(k, int):
        raise InvalidParameterError("k", k, "a finite integer >= 6")
    if k < 6:
        raise KTooSmallError(k, 6)
    y = solve_wcbo_lp(g, c, k)
    e1 = PartialOrientation(tuple(
        Direction.FORWARD if fwd == 1 else (Direction.BACKWARD if bwd == 1 else None)
        for fwd, bwd in y.values
    ))
    extended = extend_partial_cut_balanced(g, e1, k)
    if isinstance(extended, ExtensionObstruction):
        raise SolverOperationError("wcbo_bicriteria", f"integral arcs of the LP point overload {extended.vertices}")
    f = flow_from_cut_balanced(g, extended, k)
    g6 = nz6_flow(g)
    _, po = support_orientation(scale_add(6, f, 1, g6))
    o = po.to_full()

    bound = 6 * k
    violation = verify_cut_balanced(g, o, bound)
    if violation is not None:
        raise SolverOperationError("wcbo_bicriteria", f"output failed verification: {violation.detail}")
    cost = orientation_cost(o, c)
    cert = _certify(ApproxCertificate("wcbo", y.objective, cost, Fraction(k), bound))
    logger.info(
        f"wcbo: n={g.n}, m={g.m}, k={k}, LP {y.objective} after {y.cut_rounds} rounds, "
        f"{len(e1.oriented_edges())} integral edges, output cost {cost}"
    )
    return o, cert


def wcbo_via_wnzf(g: Graph, c: CostFunction, k: int) -> Tuple[Orientation, ApproxCertificate]:
    """Orientation of the bicriteria flow; a 6(k-1)-approximation for cut-balanced orientations.

    Any k-cut-balanced orientation carries a nowhere-zero k-flow of cost at
    most (k-1) times its own, so LP/(k-1) is a lower bound on the optimum.
    """
    if k is UNBOUNDED or not isinstance(k, int):
        raise InvalidParameterError("k", k, "a finite integer >= 6")
    flow, flow_cert = wnzf_bicriteria(g, c, k)
    _, po = support_orientation(flow)
    o = po.to_full()
    violation = verify_cut_balanced(g, o, 6 * k)
    if violation is not None:
        raise SolverOperationError("wcbo_via_wnzf", f"output failed verification: {violation.detail}")
    cost = orientation_cost(o, c)
    cert = ApproxCertificate(
        "wcbo_via_wnzf", flow_cert.lp_value / (k - 1), cost, Fraction(6 * (k - 1)), 6 * k
    )
    return o, _certify(cert)


# ========== SWNZF ==========


def _start_flow(g: Graph, c: CostFunction, initial: Optional[Flow]) -> Flow:
    c.require_symmetric()
    f0 = initial if initial is not None else nz6_flow(g)
    g.check_same(len(f0.values))
    violation = verify_nowhere_zero_k_flow(g, f0, 6)
    if violation is not None:
        raise NotNZ6FlowError(violation)
    return f0


def _swnzf_certificate(algorithm: str, g: Graph, c: CostFunction, f: Flow) -> ApproxCertificate:
    failure = verify_nowhere_zero_k_flow(g, f, 6)
    if failure is None:
        failure = verify_locally_optimal(g, c, f)
    if failure is not None:
        raise SolverOperationError(algorithm, f"output failed verification: {failure.detail}")
    edge_total = sum(c.edge_cost(i) for i in range(g.m))
    return _certify(
        ApproxCertificate(algorithm, Fraction(edge_total), flow_cost(f, c), Fraction(3), 6, lp_source="edge_costs")
    )


def local_search_digraph(g: Graph, c: CostFunction, f0: Flow) -> BoundedDigraph:
    """Reversed positive arcs of f0 with cost c(e)(3 - |f0(e)|) and capacity [0, 1]; arc i belongs to edge i."""
    rows = []
    for i, ((u, v), x) in enumerate(zip(g.edges, f0.values)):
        tail, head = (v, u) if x > 0 else (u, v)
        rows.append((tail, head, 0, 1, c.edge_cost(i) * (3 - abs(x))))
    return BoundedDigraph.build(g.n, rows)


def apply_reversals(f0: Flow, selected: List[int]) -> Flow:
    """f0 + 6g for a 0/1 circulation g on the reversed arcs: each chosen edge flips by 6."""
    values = list(f0.values)
    for i, used in enumerate(selected):
        if used:
            values[i] -= 6 if values[i] > 0 else -6
    return Flow(f0.graph, tuple(values))


def swnzf_local_search(
    g: Graph, c: CostFunction, initial: Optional[Flow] = None
) -> Tuple[Flow, ApproxCertificate]:
    """Locally optimal nowhere-zero 6-flow via one min-cost circulation.

    Args:
        g: 2-edge-connected graph.
        c: Symmetric costs.
        initial: Starting nowhere-zero 6-flow; nz6_flow(g) when omitted.

    Raises:
        AsymmetricCostError: If c is not symmetric.
    """
    f0 = _start_flow(g, c, initial)
    circ = min_cost_circulation(local_search_digraph(g, c, f0))
    f = apply_reversals(f0, list(circ.flow))
    cert = _swnzf_certificate("swnzf", g, c, f)
    logger.info(
        f"swnzf: n={g.n}, m={g.m}, start cost {flow_cost(f0, c)}, "
        f"{sum(circ.flow)} edges flipped, output cost {cert.output_cost}"
    )
    return f, cert


def swnzf_cycle_canceling_with_count(
    g: Graph, c: CostFunction, initial: Optional[Flow] = None
) -> Tuple[Flow, int]:
    """Cancel cycles of negative weight c(e)(3 - |f(e)|) in supp+(f) until none remain.

    Returns:
        (locally optimal flow, number of cancellations).

    Raises:
        BudgetExceededError: If more than 5 * sum c(e) cancellations occur.
    """
    f = _start_flow(g, c, initial)
    limit = 5 * sum(c.edge_cost(i) for i in range(g.m))
    iterations = 0
    while True:
        arcs = []
        for i, ((u, v), x) in enumerate(zip(g.edges, f.values)):
            tail, head = (u, v) if x > 0 else (v, u)
            arcs.append((tail, head, c.edge_cost(i) * (3 - abs(x))))
        cycle = find_negative_cycle(g.n, arcs)
        if cycle is None:
            break
        if iterations >= limit:
            raise BudgetExceededError("swnzf_cycle_canceling", limit)
        values = list(f.values)
        for i in cycle.arcs:
            values[i] -= 6 if values[i] > 0 else -6
        f = Flow(g, tuple(values))
        iterations += 1
    logger.debug(f"Cycle canceling local search: {iterations} cancellations")
    return f, iterations


def swnzf_cycle_canceling(g: Graph, c: CostFunction, initial: Optional[Flow] = None) -> Flow:
    """Pseudo-polynomial local search; see swnzf_cycle_canceling_with_count."""
    f, _ = swnzf_cycle_canceling_with_count(g, c, initial)
    _swnzf_certificate("swnzf_cycle_canceling", g, c, f)
    return f
