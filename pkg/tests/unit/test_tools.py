"""
Tests for the MCP tool layer.

Tools are registered on a recorder standing in for FastMCP, then called
directly with the same string arguments a client would send.
"""

import json

import pytest

from core.exceptions import FormatError, InvalidParameterError, SolverOperationError
from core.formats import read_graph
from core.graph import UNBOUNDED
from mcp_tools.decorators import wrap_errors
from mcp_tools.helpers import parse_operations
from mcp_tools.tools.generate import _generate
from mcp_tools.tools.oracle import run_operations
from mcp_tools.tools.solve import solve_graph
from mcp_tools.tools.verify import verify_text
from server import register_all_tools

TRIANGLE = "nzg 3 3\n0 1 1 1\n1 2 1 1\n2 0 1 1\n"
DIGON = "nzg 2 2\n0 1 1 1\n0 1 1 1\n"


class _Recorder:
    """Collects functions registered through ``mcp.tool()``."""

    def __init__(self):
        self.tools = {}

    def tool(self):
        def register(func):
            self.tools[func.__name__] = func
            return func

        return register


@pytest.fixture
def tools():
    recorder = _Recorder()
    register_all_tools(recorder)
    return recorder.tools


# ========== Registration and Errors ==========


class TestRegistration:
    """Tests for tool registration and error wrapping."""

    def test_all_tools_registered(self, tools):
        """Test the exposed tool names."""
        assert set(tools) == {
            "solve_instance",
            "verify_solution",
            "generate_instance",
            "run_oracle",
            "export_bench",
        }

    def test_unexpected_errors_are_wrapped(self):
        """Test that foreign exceptions become SolverOperationError."""

        @wrap_errors("boom")
        def fail():
            raise KeyError("x")

        with pytest.raises(SolverOperationError) as exc:
            fail()
        assert exc.value.operation == "boom"

    def test_domain_errors_pass_through(self):
        """Test that NZFlowError subclasses keep their type."""

        @wrap_errors("parse")
        def fail():
            raise FormatError("<x>", 1, "bad")

        with pytest.raises(FormatError):
            fail()


# ========== Solve ==========


class TestSolveTool:
    """Tests for solve_instance and solve_graph."""

    def test_swnzf(self, tools):
        """Test the local search on the unit triangle."""
        result = json.loads(tools["solve_instance"]("swnzf", TRIANGLE))
        assert result["success"]
        assert result["certificate"]["output_cost"] == 3
        assert result["solution"].startswith("nzf 3")

    def test_nz6_has_no_certificate(self, tools):
        """Test that plain construction returns no certificate."""
        result = json.loads(tools["solve_instance"]("nz6", TRIANGLE))
        assert result["certificate"] is None

    def test_validation_error(self, tools):
        """Test that a small k is reported, not raised."""
        result = json.loads(tools["solve_instance"]("wnzf", TRIANGLE, "3"))
        assert not result["success"]
        assert "Validation error" in result["error"]

    def test_unbounded_wnzf(self):
        """Test that k = inf reaches the bicriteria flow."""
        g, c = read_graph(TRIANGLE)
        solution, cert = solve_graph("wnzf", g, c, UNBOUNDED)
        assert solution.startswith("nzf 3")
        assert cert.check()

    def test_unknown_problem(self):
        """Test the direct entry point with a bad name."""
        g, c = read_graph(TRIANGLE)
        with pytest.raises(ValueError):
            solve_graph("tsp", g, c, 6)


# ========== Verify ==========


class TestVerifyTool:
    """Tests for verify_solution and verify_text."""

    def test_ok(self, tools):
        """Test a valid 2-flow."""
        result = json.loads(tools["verify_solution"]("flow", TRIANGLE, "nzf 3\n0 1\n1 1\n2 1\n", "2"))
        assert result["ok"]

    def test_violation(self, tools):
        """Test that the witness is returned as JSON."""
        result = json.loads(tools["verify_solution"]("cbo", DIGON, "nzo 2\n0 +\n1 +\n", "3"))
        assert not result["ok"]
        assert result["violation"]["kind"] == "cut_unbalanced"
        assert result["violation"]["vertices"] == [1]

    def test_bad_kind(self, tools):
        """Test that unknown kinds fail validation."""
        result = json.loads(tools["verify_solution"]("cycle", TRIANGLE, "nzf 3\n"))
        assert not result["success"]

    def test_partial_for_cbo(self):
        """Test that cbo needs every edge decided."""
        g, c = read_graph(DIGON)
        with pytest.raises(InvalidParameterError):
            verify_text("cbo", g, c, "nzo 2\n0 +\n", 2)


# ========== Generate ==========


class TestGenerateTool:
    """Tests for generate_instance."""

    def test_cycle(self, tools):
        """Test that a generated cycle parses back."""
        result = json.loads(tools["generate_instance"]("cycle", n=5))
        g, _ = read_graph(result["graph"])
        assert (g.n, g.m) == (5, 5)

    def test_random_default_edges(self):
        """Test that m defaults to 2n."""
        result = _generate({"kind": "random", "n": 6, "seed": 2})
        g, _ = read_graph(result["graph"])
        assert g.m == 12

    def test_sat_completion(self):
        """Test that the gadget comes with its partial orientation."""
        result = _generate({"kind": "sat-completion", "dimacs": "p cnf 1 2\n1 0\n-1 0\n", "k": 4})
        g, _ = read_graph(result["graph"])
        assert result["partial"].startswith(f"nzo {g.m}")

    def test_missing_formula(self, tools):
        """Test that formula generators without DIMACS fail validation."""
        result = json.loads(tools["generate_instance"]("nae3sat"))
        assert not result["success"]


# ========== Oracles ==========


class TestOracleTool:
    """Tests for run_oracle and run_operations."""

    def test_batch(self):
        """Test independent results per operation."""
        ops = [
            {"action": "min_nzk", "graph_text": TRIANGLE, "k": 4},
            {"action": "min_cbo", "graph_text": DIGON, "k": 2},
            {"action": "cbo_check", "graph_text": DIGON, "partial_text": "nzo 2\n0 +\n1 +\n", "k": 2},
            {"action": "min_cbo", "graph_text": DIGON},
            {"action": "teleport"},
        ]
        result = run_operations(ops)
        assert result["total"] == 5
        assert result["succeeded"] == 3
        first, second, third, fourth, fifth = result["results"]
        assert first["cost"] == 3
        assert second["cost"] == 2
        assert third["exists"] is False
        assert "requires fields: k" in fourth["error"]
        assert "Unknown action" in fifth["error"]

    def test_handler_error_is_contained(self):
        """Test that a malformed graph fails only its own operation."""
        result = run_operations([{"action": "min_nzk", "graph_text": "nzg x", "k": 3}])
        assert not result["results"][0]["success"]

    def test_tool_rejects_bad_json(self, tools):
        """Test the error shape for unparseable input."""
        result = json.loads(tools["run_oracle"]("[{"))
        assert result["success"] is False
        assert result["results"] == []

    def test_parse_single_object(self):
        """Test that a single object becomes a one-element batch."""
        assert parse_operations('{"action": "min_nzk"}') == [{"action": "min_nzk"}]

    def test_parse_rejects_scalars(self):
        """Test that arrays must hold objects."""
        with pytest.raises(InvalidParameterError):
            parse_operations("[1, 2]")


# ========== Export ==========


class TestExportTool:
    """Tests for export_bench."""

    def test_export(self, tools, tmp_path, output_dir):
        """Test that the spreadsheet lands in the output directory."""
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "t.nzg").write_text(TRIANGLE)
        result = json.loads(tools["export_bench"](str(corpus), "runs.xlsx", 1))
        assert result["success"]
        assert result["count"] == 3
        assert (output_dir / "runs.xlsx").exists()
