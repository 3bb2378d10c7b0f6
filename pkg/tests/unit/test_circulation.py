"""
Tests for the circulation engine.

Covers:
- Hoffman feasibility with violating-set certificates
- Min-cost circulation (successive shortest paths and cycle canceling)
- Negative cycle detection
"""

import pytest

from core.exceptions import InfeasibleError, InvalidParameterError
from engines.circulation import (
    BoundedDigraph,
    Circulation,
    ViolatingSet,
    cycle_canceling_min_cost,
    enumerate_circulations,
    feasible_circulation,
    find_negative_cycle,
    hoffman_bounds,
    is_circulation,
    min_cost_circulation,
    residual_negative_cycle,
)


def _triangle(lower: int, upper: int, cost: int = 0) -> BoundedDigraph:
    return BoundedDigraph.build(3, [(0, 1, lower, upper, cost), (1, 2, lower, upper, cost), (2, 0, lower, upper, cost)])


# ========== Validation ==========


class TestBoundedDigraph:
    """Tests for digraph validation."""

    def test_bad_bounds(self):
        """Test that lower must not exceed upper."""
        with pytest.raises(InvalidParameterError):
            BoundedDigraph.build(2, [(0, 1, 2, 1)])

    def test_bad_endpoint(self):
        """Test that endpoints must exist."""
        with pytest.raises(InvalidParameterError):
            BoundedDigraph.build(2, [(0, 5, 0, 1)])

    def test_is_circulation(self):
        """Test bounds and conservation checks."""
        d = _triangle(1, 2)
        assert is_circulation(d, (1, 1, 1))
        assert not is_circulation(d, (1, 2, 1))
        assert not is_circulation(d, (0, 0, 0))


# ========== Feasibility ==========


class TestFeasibleCirculation:
    """Tests for Hoffman feasibility."""

    def test_feasible_cycle(self):
        """Test a cycle that must carry at least 2."""
        result = feasible_circulation(_triangle(2, 5))
        assert isinstance(result, Circulation)
        assert is_circulation(_triangle(2, 5), result.flow)

    def test_infeasible_gives_violating_set(self):
        """Test that a forced arc without a way back yields a certificate."""
        d = BoundedDigraph.build(3, [(0, 1, 1, 1), (1, 2, 0, 3)])
        result = feasible_circulation(d)
        assert isinstance(result, ViolatingSet)
        lower_into, upper_out = hoffman_bounds(d, result.mask)
        assert lower_into > upper_out
        assert (result.lower_into, result.upper_out) == (lower_into, upper_out)

    def test_tight_return_arc(self):
        """Test lower bounds pushing more than the return arc allows."""
        d = BoundedDigraph.build(2, [(0, 1, 1, 2), (0, 1, 1, 2), (1, 0, 0, 1)])
        result = feasible_circulation(d)
        assert isinstance(result, ViolatingSet)
        assert result.members() == [1]

    def test_empty_digraph(self):
        """Test that no arcs means the empty circulation."""
        result = feasible_circulation(BoundedDigraph.build(2, []))
        assert isinstance(result, Circulation)
        assert result.flow == ()


# ========== Min Cost ==========


class TestMinCostCirculation:
    """Tests for min-cost circulation solvers."""

    def test_negative_cycle_saturated(self):
        """Test that a negative cycle is pushed to capacity."""
        d = _triangle(0, 3, cost=-1)
        circ = min_cost_circulation(d)
        assert circ.flow == (3, 3, 3)
        assert circ.cost(d) == -9

    def test_positive_costs_stay_at_lower_bounds(self):
        """Test that nothing extra is sent along a positive cycle."""
        d = _triangle(1, 4, cost=2)
        assert min_cost_circulation(d).flow == (1, 1, 1)

    def test_agrees_with_enumeration(self):
        """Test against exhaustive search on a small digraph."""
        d = BoundedDigraph.build(
            3,
            [(0, 1, 0, 2, -3), (1, 2, 0, 2, 1), (2, 0, 0, 2, 1), (1, 0, 0, 1, 1), (2, 1, 0, 2, -1)],
        )
        best = min(c.cost(d) for c in enumerate_circulations(d))
        assert min_cost_circulation(d).cost(d) == best
        assert cycle_canceling_min_cost(d).cost(d) == best

    def test_no_negative_residual_cycle_at_optimum(self):
        """Test the optimality criterion on the returned circulation."""
        d = _triangle(0, 2, cost=-1)
        circ = min_cost_circulation(d)
        assert residual_negative_cycle(d, circ) is None

    def test_infeasible(self):
        """Test that infeasible bounds raise InfeasibleError."""
        d = BoundedDigraph.build(2, [(0, 1, 1, 1)])
        with pytest.raises(InfeasibleError):
            min_cost_circulation(d)
        with pytest.raises(InfeasibleError):
            cycle_canceling_min_cost(d)


# ========== Negative Cycles ==========


class TestFindNegativeCycle:
    """Tests for Bellman-Ford negative cycle detection."""

    def test_finds_cycle(self):
        """Test a two-arc negative cycle."""
        cycle = find_negative_cycle(2, [(0, 1, 1), (1, 0, -2)])
        assert cycle is not None
        assert sorted(cycle.arcs) == [0, 1]
        assert cycle.weight == -1

    def test_zero_weight_cycle_is_not_negative(self):
        """Test that weight exactly 0 is accepted."""
        assert find_negative_cycle(2, [(0, 1, 1), (1, 0, -1)]) is None

    def test_negative_self_loop(self):
        """Test a single negative loop arc."""
        cycle = find_negative_cycle(1, [(0, 0, -4)])
        assert cycle is not None
        assert cycle.arcs == (0,)

    def test_cycle_is_consecutive(self):
        """Test that the returned arcs form a closed walk in order."""
        arcs = [(0, 1, 2), (1, 2, 2), (2, 0, -5), (2, 3, 0), (3, 0, 7)]
        cycle = find_negative_cycle(4, arcs)
        assert cycle is not None
        for a, b in zip(cycle.arcs, cycle.arcs[1:] + cycle.arcs[:1]):
            assert arcs[a][1] == arcs[b][0]
        assert cycle.weight == sum(arcs[i][2] for i in cycle.arcs)

    def test_empty(self):
        """Test graphs without vertices or arcs."""
        assert find_negative_cycle(0, []) is None
        assert find_negative_cycle(3, []) is None
