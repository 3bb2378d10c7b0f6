"""
Exact engines for nzflow: integral circulations and rational linear programs.
"""

from .circulation import (
    BoundedArc,
    BoundedDigraph,
    Circulation,
    NegativeCycle,
    ViolatingSet,
    cycle_canceling_min_cost,
    enumerate_circulations,
    feasible_circulation,
    find_negative_cycle,
    is_circulation,
    min_cost_circulation,
    residual_negative_cycle,
)
from .lp import (
    FlowLpClassification,
    LpSolution,
    classify_flow_extreme_point,
    lp_solution_feasible,
    project_flow_lp_point,
    separate_cut_constraint,
    separate_cut_constraint_brute,
    solve_wcbo_lp,
    solve_wnzf_lp,
)
from .simplex import LinearProgram, SimplexResult, solve

__all__ = [
    # Circulation
    "BoundedArc",
    "BoundedDigraph",
    "Circulation",
    "NegativeCycle",
    "ViolatingSet",
    "cycle_canceling_min_cost",
    "enumerate_circulations",
    "feasible_circulation",
    "find_negative_cycle",
    "is_circulation",
    "min_cost_circulation",
    "residual_negative_cycle",
    # LP
    "FlowLpClassification",
    "LpSolution",
    "classify_flow_extreme_point",
    "lp_solution_feasible",
    "project_flow_lp_point",
    "separate_cut_constraint",
    "separate_cut_constraint_brute",
    "solve_wcbo_lp",
    "solve_wnzf_lp",
    # Simplex
    "LinearProgram",
    "SimplexResult",
    "solve",
]
