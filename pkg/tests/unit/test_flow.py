"""
Tests for the flow algebra.

Covers:
- Flow queries (excess, support, positive arcs)
- Extension of partial k-flows
- Linear combinations and nowhere-zero composition
- Cost of a flow
"""

import pytest

from core.exceptions import (
    BoundViolatedError,
    ConservationViolatedError,
    ForbiddenArcUsedError,
    GraphMismatchError,
    NonpositiveValueError,
    SupportNotCoveringError,
)
from core.flow import (
    Flow,
    compose_nowhere_zero,
    extend,
    flow_cost,
    negate,
    scale_add,
    support_orientation,
)
from core.graph import FORBIDDEN, ArcRef, CostFunction, Direction, PartialOrientation, build_graph

F, B = Direction.FORWARD, Direction.BACKWARD


# ========== Queries ==========


class TestFlowQueries:
    """Tests for per-flow queries."""

    def test_length_must_match(self, triangle):
        """Test that a flow needs one value per edge."""
        with pytest.raises(GraphMismatchError):
            Flow(triangle, (1, 1))

    def test_excess_and_conservation(self, triangle):
        """Test outflow minus inflow."""
        f = Flow.of(triangle, [1, 1, 1])
        assert f.is_conserving()
        broken = Flow.of(triangle, [2, 1, 1])
        assert broken.excess(0) == 1
        assert broken.excess(1) == -1
        assert not broken.is_conserving()

    def test_value_on_arc_is_antisymmetric(self, triangle):
        """Test f(e-) = -f(e+)."""
        f = Flow.of(triangle, [2, 2, 2])
        assert f.value_on_arc(ArcRef(0, F)) == 2
        assert f.value_on_arc(ArcRef(0, B)) == -2

    def test_support_and_positive_arcs(self, digon):
        """Test support and the arcs carrying positive value."""
        f = Flow.of(digon, [3, -3])
        assert f.support() == frozenset({0, 1})
        assert f.positive_arcs() == [ArcRef(0, F), ArcRef(1, B)]
        assert f.max_abs() == 3
        assert f.is_nowhere_zero()
        assert not Flow.zero(digon).is_nowhere_zero()


# ========== Extension ==========


class TestExtend:
    """Tests for extending a partial k-flow to a signed flow."""

    def test_mapping_values(self, digon):
        """Test that backward edges receive negative values."""
        po = PartialOrientation((F, B))
        f = extend(digon, po, {0: 2, 1: 2})
        assert f.values == (2, -2)

    def test_undecided_edges_get_zero(self):
        """Test extension with an undecided edge."""
        g = build_graph(2, [(0, 1), (1, 0), (0, 1)])
        po = PartialOrientation((F, F, None))
        f = extend(g, po, [1, 1, 0])
        assert f.values == (1, 1, 0)

    def test_nonpositive_value(self, digon):
        """Test that oriented edges need a value of at least 1."""
        with pytest.raises(NonpositiveValueError):
            extend(digon, PartialOrientation((F, B)), {0: 0, 1: 0})

    def test_conservation_checked(self, digon):
        """Test that unbalanced values are refused."""
        with pytest.raises(ConservationViolatedError):
            extend(digon, PartialOrientation((F, B)), {0: 1, 1: 2})


# ========== Algebra ==========


class TestFlowAlgebra:
    """Tests for negation, linear combinations and composition."""

    def test_negate(self, triangle):
        """Test that negation flips every value."""
        assert negate(Flow.of(triangle, [1, 1, 1])).values == (-1, -1, -1)

    def test_scale_add(self, triangle):
        """Test a*f1 + b*f2."""
        f = Flow.of(triangle, [1, 1, 1])
        assert scale_add(3, f, -1, f).values == (2, 2, 2)

    def test_scale_add_graph_mismatch(self, triangle, digon):
        """Test that flows on different graphs cannot be combined."""
        with pytest.raises(GraphMismatchError):
            scale_add(1, Flow.zero(triangle), 1, Flow.zero(digon))

    def test_compose_nowhere_zero(self):
        """Test k2*f1 + f2 gives a nowhere-zero k1*k2-flow."""
        g = build_graph(2, [(0, 1), (0, 1), (1, 0)])
        f2 = Flow.of(g, [1, 0, 1])
        f3 = Flow.of(g, [1, 1, 2])
        composed = compose_nowhere_zero(f2, 2, f3, 3)
        assert composed.values == (4, 1, 5)
        assert composed.is_nowhere_zero()
        assert composed.max_abs() <= 5

    def test_compose_needs_covering_supports(self):
        """Test that a common zero edge is refused."""
        g = build_graph(2, [(0, 1), (1, 0)])
        with pytest.raises(SupportNotCoveringError):
            compose_nowhere_zero(Flow.zero(g), 2, Flow.zero(g), 3)

    def test_compose_checks_bounds(self):
        """Test that inputs must fit their declared k."""
        g = build_graph(2, [(0, 1), (1, 0)])
        with pytest.raises(BoundViolatedError):
            compose_nowhere_zero(Flow.of(g, [2, 2]), 2, Flow.of(g, [1, 1]), 3)

    def test_support_orientation(self, digon):
        """Test orienting the support by sign."""
        support, po = support_orientation(Flow.of(digon, [2, -2]))
        assert support == frozenset({0, 1})
        assert po.dirs == (F, B)


# ========== Cost ==========


class TestFlowCost:
    """Tests for the cost of a flow."""

    def test_cost_uses_chosen_arc(self, digon):
        """Test sum of c(positive arc) * |value|."""
        c = CostFunction(((1, 10), (10, 2)))
        assert flow_cost(Flow.of(digon, [3, -3]), c) == 3 * 1 + 3 * 2

    def test_zero_edges_are_free(self, digon):
        """Test that FORBIDDEN arcs on zero edges cost nothing."""
        c = CostFunction(((FORBIDDEN, FORBIDDEN), (FORBIDDEN, FORBIDDEN)))
        assert flow_cost(Flow.zero(digon), c) == 0

    def test_forbidden_arc_with_flow(self, digon):
        """Test that positive flow on a FORBIDDEN arc raises."""
        c = CostFunction(((FORBIDDEN, 0), (0, 0)))
        with pytest.raises(ForbiddenArcUsedError):
            flow_cost(Flow.of(digon, [1, -1]), c)
