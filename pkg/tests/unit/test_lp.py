"""
Tests for the flow and orientation LP relaxations.

Covers:
- Flow relaxation optimum and extreme-point classification
- Orientation relaxation by cutting planes
- Cut separation (min-cut vs enumeration)
- Exact feasibility re-checks
"""

from fractions import Fraction

import pytest

from core.exceptions import (
    ConservationViolatedError,
    InfeasibleError,
    InvalidParameterError,
    NotTwoEdgeConnectedError,
    StructureViolationError,
)
from core.graph import FORBIDDEN, UNBOUNDED, CostFunction, build_graph
from engines.lp import (
    LpSolution,
    classify_flow_extreme_point,
    cut_out_value,
    lp_solution_feasible,
    project_flow_lp_point,
    separate_cut_constraint,
    separate_cut_constraint_brute,
    solve_wcbo_lp,
    solve_wnzf_lp,
    with_objective,
)
from solvers.corpus import gen_random_two_edge_connected, random_costs

HALF = Fraction(1, 2)
ONE, ZERO = Fraction(1), Fraction(0)


# ========== Flow Relaxation ==========


class TestFlowRelaxation:
    """Tests for solve_wnzf_lp."""

    def test_triangle_unit(self, triangle):
        """Test that a cycle needs total value 1 on every edge."""
        z = solve_wnzf_lp(triangle, CostFunction.unit(triangle), 6)
        assert z.objective == 3
        assert lp_solution_feasible(triangle, z)

    def test_cheap_direction_chosen(self, triangle):
        """Test that asymmetric costs pick the cheap way around."""
        c = CostFunction(((10, 1), (10, 1), (10, 1)))
        z = solve_wnzf_lp(triangle, c, 6)
        assert z.objective == 3
        assert z.values == ((ZERO, ONE),) * 3

    def test_petersen_lower_bound(self, petersen):
        """Test that the unit-cost optimum equals the edge count."""
        z = solve_wnzf_lp(petersen, CostFunction.unit(petersen), 6)
        assert z.objective == 15

    def test_unbounded_k(self, k4):
        """Test that k = inf drops the upper rows."""
        z = solve_wnzf_lp(k4, CostFunction.unit(k4), UNBOUNDED)
        assert z.objective == 6
        assert z.k is UNBOUNDED

    def test_bridge_rejected(self):
        """Test the 2-edge-connectivity precondition."""
        g = build_graph(3, [(0, 1), (1, 0), (1, 2)])
        with pytest.raises(NotTwoEdgeConnectedError) as exc:
            solve_wnzf_lp(g, CostFunction.unit(g), 6)
        assert exc.value.bridge == 2

    def test_forbidden_arcs_can_make_it_infeasible(self, triangle):
        """Test that vertex 1 with only entering arcs has no solution."""
        c = CostFunction(((1, FORBIDDEN), (FORBIDDEN, 1), (1, FORBIDDEN)))
        with pytest.raises(InfeasibleError):
            solve_wnzf_lp(triangle, c, 6)

    def test_forbidden_arcs_get_zero(self, triangle):
        """Test that FORBIDDEN arcs are never used."""
        c = CostFunction(((FORBIDDEN, 3),) * 3)
        z = solve_wnzf_lp(triangle, c, 6)
        assert all(fwd == 0 for fwd, _ in z.values)
        assert lp_solution_feasible(triangle, z, c)

    def test_bad_k(self, triangle):
        """Test that k must be at least 2."""
        with pytest.raises(InvalidParameterError):
            solve_wnzf_lp(triangle, CostFunction.unit(triangle), 1)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_extreme_points_classify(self, seed):
        """Test that optimal points split into an integral flow and half edges."""
        g = gen_random_two_edge_connected(7, 13, seed=seed)
        c = random_costs(g, max_cost=9, seed=seed)
        z = solve_wnzf_lp(g, c, 6)
        split = classify_flow_extreme_point(g, z, 6)
        assert split.integral_flow.is_conserving()
        assert split.integral_flow.max_abs() <= 5
        for i in split.fractional_edges:
            assert z.values[i] == (HALF, HALF)


# ========== Classification ==========


class TestClassification:
    """Tests for classify_flow_extreme_point and projection."""

    def test_integral_point(self, triangle):
        """Test an integral circulation."""
        z = LpSolution("P", 6, ((ONE, ZERO),) * 3, Fraction(3))
        split = classify_flow_extreme_point(triangle, z, 6)
        assert split.integral_flow.values == (1, 1, 1)
        assert split.fractional_edges == frozenset()

    def test_half_point(self, triangle):
        """Test that (1/2, 1/2) edges are reported as fractional."""
        z = LpSolution("P", 6, ((HALF, HALF),) * 3, Fraction(3))
        split = classify_flow_extreme_point(triangle, z, 6)
        assert split.integral_flow.values == (0, 0, 0)
        assert split.fractional_edges == frozenset({0, 1, 2})

    def test_other_fractions_rejected(self, triangle):
        """Test that thirds violate the structure."""
        third = Fraction(1, 3)
        z = LpSolution("P", 6, ((third, 2 * third),) * 3, Fraction(3))
        with pytest.raises(StructureViolationError):
            classify_flow_extreme_point(triangle, z, 6)

    def test_two_sided_integral_rejected(self, triangle):
        """Test that both arcs of an edge may not carry flow."""
        z = LpSolution("P", 6, ((ONE, ONE),) * 3, Fraction(6))
        with pytest.raises(StructureViolationError):
            classify_flow_extreme_point(triangle, z, 6)

    def test_value_above_k(self, triangle):
        """Test that integral values must fit k."""
        z = LpSolution("P", 6, ((Fraction(7), ZERO),) * 3, Fraction(21))
        with pytest.raises(StructureViolationError):
            classify_flow_extreme_point(triangle, z, 6)

    def test_unbalanced_integral_part(self, digon):
        """Test that the integral arcs must conserve flow."""
        z = LpSolution("P", 6, ((ONE, ZERO), (HALF, HALF)), Fraction(2))
        with pytest.raises(ConservationViolatedError):
            classify_flow_extreme_point(digon, z, 6)

    def test_projection(self):
        """Test normalizing each edge to total 1."""
        z = LpSolution("P", 6, ((Fraction(2), ZERO), (HALF, HALF)), Fraction(3))
        y = project_flow_lp_point(z, CostFunction(((1, 4), (2, 2))))
        assert y.system == "Q"
        assert y.values == ((ONE, ZERO), (HALF, HALF))
        assert y.objective == Fraction(3)

    def test_projection_cost_on_triangle(self, triangle):
        """Test that the projected point is priced and never costs more than z."""
        c = CostFunction.unit(triangle)
        z = solve_wnzf_lp(triangle, c, 6)
        y = project_flow_lp_point(z, c)
        assert y.objective > 0
        assert y.objective <= z.objective <= 5 * z.objective
        assert y.objective == with_objective(y, c).objective


# ========== Orientation Relaxation ==========


class TestOrientationRelaxation:
    """Tests for solve_wcbo_lp."""

    def test_binding_cut(self, digon):
        """Test that the singleton cut limits the cheap direction."""
        c = CostFunction(((0, 5), (0, 5)))
        y = solve_wcbo_lp(digon, c, 3)
        assert y.objective == Fraction(10, 3)
        assert lp_solution_feasible(digon, y, c)
        for fwd, bwd in y.values:
            assert (fwd * 3).denominator == 1
            assert fwd + bwd == 1

    def test_unit_costs(self, petersen):
        """Test that unit costs give exactly m."""
        y = solve_wcbo_lp(petersen, CostFunction.unit(petersen), 6)
        assert y.objective == 15
        assert separate_cut_constraint(petersen, y.values, 6) is None

    def test_unbounded_k_rejected(self, triangle):
        """Test that the orientation relaxation needs a finite k."""
        with pytest.raises(InvalidParameterError):
            solve_wcbo_lp(triangle, CostFunction.unit(triangle), UNBOUNDED)

    def test_both_arcs_forbidden(self, triangle):
        """Test that an edge with no usable arc is infeasible."""
        c = CostFunction(((FORBIDDEN, FORBIDDEN), (1, 1), (1, 1)))
        with pytest.raises(InfeasibleError):
            solve_wcbo_lp(triangle, c, 6)

    def test_cut_rounds_without_seeding(self, digon, monkeypatch):
        """Test that separation alone finds the binding cuts."""
        monkeypatch.setenv("NZFLOW_LP__SEED_SINGLETON_CUTS", "false")
        y = solve_wcbo_lp(digon, CostFunction(((0, 5), (0, 5))), 3)
        assert y.objective == Fraction(10, 3)
        assert y.cut_rounds >= 2


# ========== Separation ==========


class TestSeparation:
    """Tests for the cut separation oracles."""

    def test_all_forward_digon_violates(self, digon):
        """Test that sending both edges out of vertex 0 is too much for k = 3."""
        y = ((ONE, ZERO), (ONE, ZERO))
        assert cut_out_value(digon, y, 0b01) == (Fraction(2), 2)
        assert separate_cut_constraint(digon, y, 3) == frozenset({0})
        assert separate_cut_constraint_brute(digon, y, 3) == frozenset({0})

    def test_balanced_point_passes(self, digon):
        """Test that halves satisfy every cut."""
        y = ((HALF, HALF), (HALF, HALF))
        assert separate_cut_constraint(digon, y, 3) is None

    @pytest.mark.parametrize("seed", range(6))
    def test_min_cut_agrees_with_enumeration(self, seed):
        """Test that the min-cut oracle finds a violated set exactly when one exists."""
        g = gen_random_two_edge_connected(6, 10, seed=seed)
        y = tuple(
            (ONE, ZERO) if (seed >> (i % 3)) & 1 or i % 2 else (ZERO, ONE) for i in range(g.m)
        )
        for k in (2, 3, 6):
            found = separate_cut_constraint(g, y, k)
            brute = separate_cut_constraint_brute(g, y, k)
            assert (found is None) == (brute is None)
            if found is not None:
                leaving, size = cut_out_value(g, y, sum(1 << v for v in found))
                assert k * leaving > (k - 1) * size


# ========== Text Form and Costs ==========


class TestSolutionText:
    """Tests for the nzl form and objective recomputation."""

    def test_text_round_trip(self, triangle):
        """Test that values survive the text form."""
        z = solve_wnzf_lp(triangle, CostFunction.unit(triangle), 6)
        back = LpSolution.from_text(z.to_text(), "P", 6)
        assert back.values == z.values
        assert back.objective == z.objective
        assert not back.extreme

    def test_with_objective(self, triangle):
        """Test recomputing the objective under new costs."""
        z = LpSolution("P", 6, ((ONE, ZERO),) * 3, Fraction(3))
        assert with_objective(z, CostFunction(((2, 0), (3, 0), (4, 0)))).objective == 9

    def test_infeasible_point_detected(self, triangle):
        """Test the exact re-check on a broken point."""
        z = LpSolution("P", 6, ((ONE, ZERO), (ONE, ZERO), (ZERO, ONE)), Fraction(3))
        assert not lp_solution_feasible(triangle, z)
