"""
Tests for nowhere-zero 6-flow construction and the exhaustive flow oracle.
"""

import pytest

from core.exceptions import (
    BudgetExceededError,
    ConservationViolatedError,
    NotTwoEdgeConnectedError,
)
from core.flow import flow_cost
from core.graph import FORBIDDEN, UNBOUNDED, CostFunction, build_graph
from solvers.corpus import gen_complete, gen_random_two_edge_connected, random_costs
from solvers.gadgets import gen_cycle
from solvers.nz6 import brute_force_min_nzk, integer_flow_from_modular, nz2_or_none, nz6_flow
from solvers.verify import verify_nowhere_zero_k_flow


# ========== Modular Lift ==========


class TestIntegerFlowFromModular:
    """Tests for lifting Z_k-flows to integer flows."""

    def test_already_balanced(self, triangle):
        """Test that a balanced representative is returned unchanged."""
        assert integer_flow_from_modular(triangle, [2, 2, 2], 3).values == (2, 2, 2)

    def test_reverses_a_path(self, digon):
        """Test that excess is removed by reversing positive arcs."""
        f = integer_flow_from_modular(digon, [1, 2], 3)
        assert f.values == (-2, 2)
        assert f.is_conserving()

    def test_residues_are_reduced(self, triangle):
        """Test that negative and large inputs are taken modulo k."""
        f = integer_flow_from_modular(triangle, [-1, 5, 2], 3)
        assert f.values == (2, 2, 2)

    def test_not_a_modular_flow(self, digon):
        """Test that an unbalanced residue vector is refused."""
        with pytest.raises(ConservationViolatedError):
            integer_flow_from_modular(digon, [1, 1], 3)

    def test_zeros_stay_zero(self):
        """Test that the support is preserved."""
        g = build_graph(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
        f = integer_flow_from_modular(g, [1, 1, 0, 0], 2)
        assert f.values[2:] == (0, 0)
        assert f.is_conserving()
        assert all(abs(x) <= 1 for x in f.values)


# ========== Nowhere-Zero 6-Flows ==========


class TestNZ6Flow:
    """Tests for nz6_flow."""

    @pytest.mark.parametrize("name", ["triangle", "digon", "k4", "petersen"])
    def test_named_graphs(self, name, request):
        """Test small named graphs."""
        g = request.getfixturevalue(name)
        f = nz6_flow(g)
        assert verify_nowhere_zero_k_flow(g, f, 6) is None

    @pytest.mark.parametrize("seed", range(10))
    def test_random_graphs(self, seed):
        """Test seeded random 2-edge-connected multigraphs."""
        g = gen_random_two_edge_connected(12, 24, seed=seed)
        f = nz6_flow(g)
        assert verify_nowhere_zero_k_flow(g, f, 6) is None

    def test_long_cycle(self):
        """Test a cycle longer than any contractible short cycle."""
        g, _ = gen_cycle(40)
        f = nz6_flow(g)
        assert verify_nowhere_zero_k_flow(g, f, 6) is None

    def test_large_cubic_core(self):
        """Test complete graphs where every vertex keeps high degree."""
        g = gen_complete(8)
        assert verify_nowhere_zero_k_flow(g, nz6_flow(g), 6) is None

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(20))
    def test_random_graphs_at_scale(self, seed):
        """Test graphs with up to 50 vertices and 150 edges."""
        g = gen_random_two_edge_connected(50, 150, seed=seed)
        assert verify_nowhere_zero_k_flow(g, nz6_flow(g), 6) is None

    def test_bridge_rejected(self):
        """Test that a bridge makes the construction impossible."""
        g = build_graph(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)])
        with pytest.raises(NotTwoEdgeConnectedError) as exc:
            nz6_flow(g)
        assert exc.value.bridge == 2


class TestNZ2:
    """Tests for Eulerian nowhere-zero 2-flows."""

    def test_even_graph(self, triangle):
        """Test that a cycle gets +/-1 everywhere."""
        f = nz2_or_none(triangle)
        assert f is not None
        assert verify_nowhere_zero_k_flow(triangle, f, 2) is None

    def test_parallel_edges(self, digon):
        """Test that the two edges of a digon carry opposite signs."""
        f = nz2_or_none(digon)
        assert f is not None
        assert sorted(f.values) == [-1, 1]

    def test_odd_degree(self, k4):
        """Test that odd-degree graphs have no 2-flow."""
        assert nz2_or_none(k4) is None


# ========== Exhaustive Oracle ==========


class TestBruteForceMinNZK:
    """Tests for brute_force_min_nzk."""

    def test_triangle(self, triangle):
        """Test that the unit-cost optimum puts 1 on every edge."""
        flow, cost = brute_force_min_nzk(triangle, CostFunction.unit(triangle), 4)
        assert cost == 3
        assert set(flow.values) in ({1}, {-1})

    def test_asymmetric_costs(self, triangle):
        """Test that the cheap direction is used."""
        c = CostFunction(((5, 1), (5, 1), (5, 1)))
        flow, cost = brute_force_min_nzk(triangle, c, 3)
        assert cost == 3
        assert flow.values == (-1, -1, -1)

    def test_forbidden_arcs_excluded(self, triangle):
        """Test that a forced direction is respected."""
        c = CostFunction(((FORBIDDEN, 2),) * 3)
        flow, cost = brute_force_min_nzk(triangle, c, 3)
        assert flow.values == (-1, -1, -1)
        assert cost == 6

    def test_all_arcs_forbidden(self, triangle):
        """Test that an edge without usable arcs means no flow."""
        c = CostFunction(((FORBIDDEN, FORBIDDEN), (1, 1), (1, 1)))
        assert brute_force_min_nzk(triangle, c, 3) is None

    def test_k4_needs_four(self, k4):
        """Test that K4 has a nowhere-zero 4-flow but no 3-flow."""
        zeros = CostFunction.zeros(k4)
        assert brute_force_min_nzk(k4, zeros, 3) is None
        found = brute_force_min_nzk(k4, zeros, 4)
        assert found is not None
        assert verify_nowhere_zero_k_flow(k4, found[0], 4) is None

    def test_petersen_needs_five(self, petersen):
        """Test that the Petersen graph has no nowhere-zero 4-flow but has a 5-flow."""
        zeros = CostFunction.zeros(petersen)
        assert brute_force_min_nzk(petersen, zeros, 4) is None
        found = brute_force_min_nzk(petersen, zeros, 5)
        assert found is not None
        assert verify_nowhere_zero_k_flow(petersen, found[0], 5) is None

    def test_unbounded_k(self, digon):
        """Test that k = inf searches up to the value cap."""
        flow, cost = brute_force_min_nzk(digon, CostFunction.unit(digon), UNBOUNDED)
        assert cost == 2
        assert flow.max_abs() == 1

    def test_cost_matches_flow(self):
        """Test that the reported cost is the cost of the returned flow."""
        g = gen_random_two_edge_connected(5, 8, seed=3)
        c = random_costs(g, max_cost=7, seed=3)
        found = brute_force_min_nzk(g, c, 4)
        assert found is not None
        flow, cost = found
        assert flow_cost(flow, c) == cost

    def test_budget(self, petersen):
        """Test that the node budget is enforced."""
        with pytest.raises(BudgetExceededError):
            brute_force_min_nzk(petersen, CostFunction.zeros(petersen), 4, max_nodes=10)
