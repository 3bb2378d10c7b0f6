"""
Solvers for nzflow: nowhere-zero 6-flows, the approximation algorithms,
verification oracles, hardness gadgets, corpora and benchmarking.
"""

from .approx import (
    ApproxCertificate,
    ExtensionObstruction,
    extend_partial_cut_balanced,
    flow_from_cut_balanced,
    swnzf_cycle_canceling,
    swnzf_cycle_canceling_with_count,
    swnzf_local_search,
    wcbo_bicriteria,
    wcbo_via_wnzf,
    wnzf_bicriteria,
)
from .bench import export_bench_excel, format_bench_table, run_bench
from .corpus import (
    gen_complete,
    gen_petersen,
    gen_random_nae3sat,
    gen_random_restricted_sat,
    gen_random_two_edge_connected,
    random_costs,
    restricted_sat_templates,
)
from .gadgets import (
    CnfFormula,
    CompletionGadget,
    NaeGadget,
    gen_completion_hardness,
    gen_cycle,
    gen_nae3sat_instance,
    parse_dimacs,
    to_dimacs,
    witness_flow_from_assignment,
    zero_infinity_costs,
)
from .nz6 import brute_force_min_nzk, integer_flow_from_modular, nz2_or_none, nz6_flow
from .verify import (
    brute_force_cut_balanced_check,
    brute_force_min_cbo,
    completion_exists_brute,
    verify_cut_balanced,
    verify_locally_optimal,
    verify_nowhere_zero_k_flow,
    verify_partial_cut_balanced,
    violation_rechecks,
)

__all__ = [
    # Approximation
    "ApproxCertificate",
    "ExtensionObstruction",
    "extend_partial_cut_balanced",
    "flow_from_cut_balanced",
    "swnzf_cycle_canceling",
    "swnzf_cycle_canceling_with_count",
    "swnzf_local_search",
    "wcbo_bicriteria",
    "wcbo_via_wnzf",
    "wnzf_bicriteria",
    # Bench
    "export_bench_excel",
    "format_bench_table",
    "run_bench",
    # Corpus
    "gen_complete",
    "gen_petersen",
    "gen_random_nae3sat",
    "gen_random_restricted_sat",
    "gen_random_two_edge_connected",
    "random_costs",
    "restricted_sat_templates",
    # Gadgets
    "CnfFormula",
    "CompletionGadget",
    "NaeGadget",
    "gen_completion_hardness",
    "gen_cycle",
    "gen_nae3sat_instance",
    "parse_dimacs",
    "to_dimacs",
    "witness_flow_from_assignment",
    "zero_infinity_costs",
    # NZ6
    "brute_force_min_nzk",
    "integer_flow_from_modular",
    "nz2_or_none",
    "nz6_flow",
    # Verification
    "brute_force_cut_balanced_check",
    "brute_force_min_cbo",
    "completion_exists_brute",
    "verify_cut_balanced",
    "verify_locally_optimal",
    "verify_nowhere_zero_k_flow",
    "verify_partial_cut_balanced",
    "violation_rechecks",
]
