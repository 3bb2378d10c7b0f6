"""
Brute-force oracle tool for small instances.

Operations (JSON object or array, one object per operation):
    {"action": "min_nzk",   "graph_text": ..., "k": 4}
    {"action": "cbo_check", "graph_text": ..., "partial_text": ..., "k": 4}
    {"action": "min_cbo",   "graph_text": ..., "k": 3}
"""

import json
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from core.formats import read_graph, read_orientation, write_flow, write_orientation
from core.models import parse_k
from mcp_tools.decorators import solver_tool
from mcp_tools.helpers import parse_operations
from solvers.nz6 import brute_force_min_nzk
from solvers.verify import brute_force_min_cbo, completion_exists_brute

logger = logging.getLogger(__name__)


# ========== Action Handlers ==========


def _min_nzk(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Cheapest nowhere-zero k-flow by exhaustive search.

    Args:
        spec: Keys graph_text, k (int or "inf"), value_cap (optional).

    Returns:
        Dict with keys: success, feasible, and cost/flow when feasible.
    """
    g, c = read_graph(spec["graph_text"], source="graph_text")
    found = brute_force_min_nzk(g, c, parse_k(spec["k"]), value_cap=spec.get("value_cap"))
    if found is None:
        return {"success": True, "feasible": False}
    flow, cost = found
    return {"success": True, "feasible": True, "cost": cost, "flow": write_flow(flow)}


def _cbo_check(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Search the completions of a partial orientation for a k-cut-balanced one.

    Args:
        spec: Keys graph_text, partial_text, k.

    Returns:
        Dict with keys: success, exists, and orientation when one exists.
    """
    g, _ = read_graph(spec["graph_text"], source="graph_text")
    po = read_orientation(spec["partial_text"], g.m, source="partial_text")
    o = completion_exists_brute(g, po, int(spec["k"]))
    if o is None:
        return {"success": True, "exists": False}
    return {"success": True, "exists": True, "orientation": write_orientation(o.to_partial())}


def _min_cbo(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Cheapest k-cut-balanced orientation over all 2^m orientations."""
    g, c = read_graph(spec["graph_text"], source="graph_text")
    found = brute_force_min_cbo(g, c, int(spec["k"]))
    if found is None:
        return {"success": True, "feasible": False}
    o, cost = found
    return {"success": True, "feasible": True, "cost": cost, "orientation": write_orientation(o.to_partial())}


# Dispatch table: action -> (handler, required_fields)
ORACLE_DISPATCH: Dict[str, Tuple[Callable, List[str]]] = {
    "min_nzk": (_min_nzk, ["graph_text", "k"]),
    "cbo_check": (_cbo_check, ["graph_text", "partial_text", "k"]),
    "min_cbo": (_min_cbo, ["graph_text", "k"]),
}


def _validate_required_fields(
    spec: Dict[str, Any], required: List[str], action: str
) -> Optional[str]:
    """Return an error message naming missing fields, or None."""
    missing = [f for f in required if f not in spec]
    if missing:
        return f"'{action}' requires fields: {', '.join(missing)}"
    return None


def run_operations(ops_data: List[Dict[str, Any]]) -> Dict[str, Any]:
    """Execute a batch; each operation reports success or error independently."""
    results = []
    for i, spec in enumerate(ops_data):
        action = str(spec.get("action", "")).lower()
        entry = ORACLE_DISPATCH.get(action)
        if entry is None:
            results.append(
                {
                    "index": i,
                    "success": False,
                    "error": f"Unknown action '{action}'. Supported: " + ", ".join(ORACLE_DISPATCH),
                }
            )
            continue

        handler, required_fields = entry
        field_error = _validate_required_fields(spec, required_fields, action)
        if field_error:
            results.append({"index": i, "action": action, "success": False, "error": field_error})
            continue

        try:
            results.append({"index": i, "action": action, **handler(spec)})
        except ValidationError as e:
            error_msg = f"Validation error: {e.errors()[0]['msg']}"
            logger.error(f"Validation error in oracle op {i} ({action}): {error_msg}")
            results.append({"index": i, "action": action, "success": False, "error": error_msg})
        except Exception as e:
            logger.error(f"Error in oracle op {i} ({action}): {e}")
            results.append({"index": i, "action": action, "success": False, "error": str(e)})

    return {
        "total": len(ops_data),
        "succeeded": sum(1 for r in results if r.get("success")),
        "results": results,
    }


# ========== Tool Registration ==========


def register_oracle_tools(mcp):
    """Register the batch oracle tool with FastMCP."""

    @solver_tool(mcp, "run_oracle")
    def run_oracle(operations: str) -> str:
        """
        Run exhaustive oracles on small instances (m <= 16 recommended).

        Args:
            operations: JSON object or array of objects, each with an action:

                min_nzk    graph_text, k (int or "inf"), value_cap (optional)
                cbo_check  graph_text, partial_text (nzo with '?'), k
                min_cbo    graph_text, k

        Returns:
            JSON result with per-operation status
        """
        try:
            ops_data = parse_operations(operations)
        except Exception as e:
            return json.dumps(
                {"success": False, "error": f"Invalid input: {e}", "total": 0, "succeeded": 0, "results": []},
                indent=2,
            )
        return json.dumps(run_operations(ops_data), indent=2)
