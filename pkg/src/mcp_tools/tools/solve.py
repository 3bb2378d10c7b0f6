"""
Solve tool: run one of the approximation pipelines on a graph given as text.

problem:
    wnzf   → nowhere-zero 6k-flow, cost <= 6 * LP          (k >= 6 or inf)
    wcbo   → 6k-cut-balanced orientation, cost <= k * LP   (6 <= k < inf)
    swnzf  → locally optimal nowhere-zero 6-flow           (symmetric costs)
    nz6    → any nowhere-zero 6-flow
"""

import json
import logging
from typing import Any, Dict, Optional, Tuple

from pydantic import ValidationError

from core.formats import read_graph, write_flow, write_orientation
from core.graph import CostFunction, Graph, KValue
from core.models import SolveRequest
from mcp_tools.decorators import solver_tool
from solvers.approx import ApproxCertificate, swnzf_local_search, wcbo_bicriteria, wnzf_bicriteria
from solvers.nz6 import nz6_flow

logger = logging.getLogger(__name__)


def solve_graph(
    problem: str, g: Graph, c: CostFunction, k: KValue
) -> Tuple[str, Optional[ApproxCertificate]]:
    """Run a pipeline and return (solution text, certificate or None)."""
    if problem == "wnzf":
        f, cert = wnzf_bicriteria(g, c, k)
        return write_flow(f), cert
    if problem == "wcbo":
        o, cert = wcbo_bicriteria(g, c, k)  # type: ignore[arg-type]
        return write_orientation(o.to_partial()), cert
    if problem == "swnzf":
        f, cert = swnzf_local_search(g, c)
        return write_flow(f), cert
    if problem == "nz6":
        return write_flow(nz6_flow(g)), None
    raise ValueError(f"unknown problem '{problem}'")


def _solve(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a request and solve it.

    Args:
        spec: Keys problem, graph_text and k.

    Returns:
        Dict with keys: success, problem, solution, certificate (may be None).
    """
    request = SolveRequest(**spec)
    g, c = read_graph(request.graph_text, source="graph_text")
    solution, cert = solve_graph(request.problem, g, c, request.k_value)
    return {
        "success": True,
        "problem": request.problem,
        "solution": solution,
        "certificate": cert.to_model().model_dump(exclude_none=True) if cert else None,
    }


# ========== Tool Registration ==========


def register_solve_tools(mcp):
    """Register the solve tool with FastMCP."""

    @solver_tool(mcp, "solve_instance")
    def solve_instance(problem: str, graph_text: str, k: str = "6") -> str:
        """
        Solve an instance given in nzg text.

        Args:
            problem: wnzf | wcbo | swnzf | nz6
            graph_text: Graph file contents ("nzg n m" then "u v c+ c-" lines, X = forbidden)
            k: Integer >= 2, or "inf" (wnzf only)

        Returns:
            JSON with the solution text (nzf or nzo) and the certificate
        """
        try:
            result = _solve({"problem": problem, "graph_text": graph_text, "k": k})
        except ValidationError as e:
            result = {"success": False, "error": f"Validation error: {e.errors()[0]['msg']}"}
        return json.dumps(result, indent=2)
