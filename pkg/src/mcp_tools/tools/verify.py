"""
Verification tool: check a flow or orientation against its defining property.

kind:
    flow         → nowhere-zero k-flow (nzf solution)
    cbo          → k-cut-balanced orientation (nzo, every edge decided)
    partial-cbo  → partial k-cut-balanced orientation (nzo, '?' allowed)
    local-opt    → locally optimal nowhere-zero 6-flow (nzf, symmetric costs)
"""

import json
import logging
from typing import Any, Dict, Optional

from pydantic import ValidationError

from core.exceptions import InvalidParameterError
from core.formats import read_flow, read_graph, read_orientation
from core.graph import CostFunction, Graph, KValue
from core.models import Violation, VerifyRequest
from mcp_tools.decorators import solver_tool
from solvers.verify import (
    verify_cut_balanced,
    verify_locally_optimal,
    verify_nowhere_zero_k_flow,
    verify_partial_cut_balanced,
)

logger = logging.getLogger(__name__)


def verify_text(
    kind: str, g: Graph, c: CostFunction, solution_text: str, k: KValue, method: str = "hoffman"
) -> Optional[Violation]:
    """Parse a solution for g and return the first violation, or None."""
    if kind == "flow":
        return verify_nowhere_zero_k_flow(g, read_flow(solution_text, g, source="solution"), k)
    if kind == "local-opt":
        return verify_locally_optimal(g, c, read_flow(solution_text, g, source="solution"))
    po = read_orientation(solution_text, g.m, source="solution")
    if kind == "partial-cbo":
        return verify_partial_cut_balanced(g, po, k, method=method)
    if kind == "cbo":
        if not po.is_full():
            raise InvalidParameterError("orientation", f"{len(po.undecided_edges())} undecided edges", "a full orientation")
        return verify_cut_balanced(g, po.to_full(), k, method=method)
    raise ValueError(f"unknown verification kind '{kind}'")


def _verify(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a request and run the verifier.

    Returns:
        Dict with keys: success, kind, ok and, when not ok, violation.
    """
    request = VerifyRequest(**spec)
    g, c = read_graph(request.graph_text, source="graph_text")
    violation = verify_text(request.kind, g, c, request.solution_text, request.k_value, request.method)
    result: Dict[str, Any] = {"success": True, "kind": request.kind, "ok": violation is None}
    if violation is not None:
        result["violation"] = violation.model_dump(exclude_none=True, mode="json")
    return result


# ========== Tool Registration ==========


def register_verify_tools(mcp):
    """Register the verification tool with FastMCP."""

    @solver_tool(mcp, "verify_solution")
    def verify_solution(
        kind: str, graph_text: str, solution_text: str, k: str = "6", method: str = "hoffman"
    ) -> str:
        """
        Verify a solution against a graph.

        Args:
            kind: flow | cbo | partial-cbo | local-opt
            graph_text: Graph file contents (nzg)
            solution_text: Flow (nzf) or orientation (nzo) contents
            k: Integer >= 2, or "inf" for flows
            method: hoffman (default) or brute (n <= 20)

        Returns:
            JSON with ok=true, or ok=false and the violation
        """
        try:
            result = _verify(
                {"kind": kind, "graph_text": graph_text, "solution_text": solution_text, "k": k, "method": method}
            )
        except ValidationError as e:
            result = {"success": False, "error": f"Validation error: {e.errors()[0]['msg']}"}
        return json.dumps(result, indent=2)
