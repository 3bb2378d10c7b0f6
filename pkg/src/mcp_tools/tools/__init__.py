"""
MCP tools package.

Contains all tool definitions organized by category:
- solve: Approximation pipelines (solve_instance)
- verify: Solution verification (verify_solution)
- generate: Instance generators (generate_instance)
- oracle: Batch brute-force oracles (run_oracle)
- export: Corpus bench with spreadsheet export (export_bench)
"""

from .solve import register_solve_tools
from .verify import register_verify_tools
from .generate import register_generate_tools
from .oracle import register_oracle_tools
from .export import register_export_tools

__all__ = [
    "register_solve_tools",
    "register_verify_tools",
    "register_generate_tools",
    "register_oracle_tools",
    "register_export_tools",
]
