"""
Instance generator tool.

kind:
    cycle           → n-cycle with unit costs
    random          → seeded random 2-edge-connected graph with random costs
    sat-completion  → completion gadget for a restricted SAT formula (graph + partial orientation)
    nae3sat         → unit-cost gadget for an NAE3SAT formula (graph + target value)
"""

import json
import logging
from typing import Any, Dict

from pydantic import ValidationError

from core.formats import write_graph, write_orientation
from core.models import GenerateRequest
from mcp_tools.decorators import solver_tool
from solvers.corpus import gen_random_two_edge_connected, random_costs
from solvers.gadgets import (
    gen_completion_hardness,
    gen_cycle,
    gen_nae3sat_instance,
    parse_dimacs,
    zero_infinity_costs,
)

logger = logging.getLogger(__name__)


def generate(request: GenerateRequest) -> Dict[str, Any]:
    """Build the requested instance as text artifacts.

    Returns:
        Dict with "graph" and, depending on kind, "partial" or "target".
    """
    if request.kind == "cycle":
        g, c = gen_cycle(request.n)
        return {"graph": write_graph(g, c, comment=f"cycle of length {request.n}")}

    if request.kind == "random":
        m = request.m if request.m is not None else 2 * request.n
        g = gen_random_two_edge_connected(request.n, m, seed=request.seed)
        c = random_costs(g, max_cost=request.max_cost, seed=request.seed, symmetric=request.symmetric)
        return {"graph": write_graph(g, c, comment=f"random n={request.n} m={m} seed={request.seed}")}

    phi = parse_dimacs(request.dimacs or "", source="dimacs")
    if request.kind == "sat-completion":
        gadget = gen_completion_hardness(phi, request.k)
        costs = zero_infinity_costs(gadget.graph, gadget.partial)
        logger.info(
            f"Completion gadget: {gadget.graph.n} vertices, {gadget.graph.m} edges, "
            f"{len(gadget.variable_edges)} free variables"
        )
        return {
            "graph": write_graph(gadget.graph, costs, comment=f"completion gadget k={request.k}"),
            "partial": write_orientation(gadget.partial),
        }

    nae = gen_nae3sat_instance(phi)
    logger.info(f"NAE gadget: {nae.graph.n} vertices, {nae.graph.m} edges, target {nae.target}")
    return {
        "graph": write_graph(nae.graph, nae.costs, comment=f"target {nae.target}"),
        "target": nae.target,
    }


def _generate(spec: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a spec and generate.

    Returns:
        Dict with keys: success, kind, and the artifacts from generate().
    """
    request = GenerateRequest(**spec)
    return {"success": True, "kind": request.kind, **generate(request)}


# ========== Tool Registration ==========


def register_generate_tools(mcp):
    """Register the generator tool with FastMCP."""

    @solver_tool(mcp, "generate_instance")
    def generate_instance(
        kind: str,
        n: int = 3,
        m: int = 0,
        k: int = 4,
        seed: int = 0,
        dimacs: str = "",
        max_cost: int = 20,
        symmetric: bool = False,
    ) -> str:
        """
        Generate a test instance.

        Args:
            kind: cycle | random | sat-completion | nae3sat
            n: Vertex count (cycle, random)
            m: Edge count for random (0 = 2n)
            k: Flow bound for sat-completion (>= 4)
            seed: Random seed (random)
            dimacs: DIMACS CNF text (sat-completion, nae3sat)
            max_cost: Largest arc cost (random)
            symmetric: Equal costs in both directions (random)

        Returns:
            JSON with the graph text and any extra artifacts
        """
        spec: Dict[str, Any] = {
            "kind": kind,
            "n": n,
            "k": k,
            "seed": seed,
            "max_cost": max_cost,
            "symmetric": symmetric,
        }
        if m:
            spec["m"] = m
        if dimacs:
            spec["dimacs"] = dimacs
        try:
            result = _generate(spec)
        except ValidationError as e:
            result = {"success": False, "error": f"Validation error: {e.errors()[0]['msg']}"}
        return json.dumps(result, indent=2)
