"""
Bench export tool: benchmark a corpus directory and save the table as .xlsx.
"""

import json
import logging

from mcp_tools.decorators import solver_tool
from solvers.bench import export_bench_excel, run_bench

logger = logging.getLogger(__name__)


def register_export_tools(mcp):
    """Register the bench export tool with FastMCP."""

    @solver_tool(mcp, "export_bench")
    def export_bench(corpus_dir: str, filename: str = "bench.xlsx", workers: int = 0) -> str:
        """
        Benchmark every *.nzg file in a directory and export the results.

        Args:
            corpus_dir: Directory holding the instances
            filename: Spreadsheet name, saved under the configured output directory
            workers: Thread count (0 = config default)

        Returns:
            JSON with success, row count and the saved path
        """
        rows = run_bench(corpus_dir, workers or None)
        return json.dumps(export_bench_excel(rows, filename), indent=2)
