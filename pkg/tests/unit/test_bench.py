"""
Tests for corpus benchmarking and spreadsheet export.
"""

import json
import threading
import time

import pytest
from openpyxl import load_workbook

from core.config import ConfigManager
from core.exceptions import InvalidParameterError
from core.models import BenchRow
from solvers import bench
from solvers.bench import BENCH_COLUMNS, export_bench_excel, export_bench_json, format_bench_table, run_bench

SQUARE = "nzg 4 4\n0 1 1 1\n1 2 1 1\n2 3 1 1\n3 0 1 1\n"
ASYMMETRIC = "nzg 2 2\n0 1 1 4\n1 0 2 3\n"


@pytest.fixture
def corpus(tmp_path):
    root = tmp_path / "corpus"
    root.mkdir()
    (root / "square.nzg").write_text(SQUARE)
    (root / "skewed.nzg").write_text(ASYMMETRIC)
    (root / "broken.nzg").write_text("nzg 3 1\n0 0 1 1\n")
    (root / "notes.txt").write_text("ignored")
    return root


class TestRunBench:
    """Tests for run_bench."""

    def test_rows(self, corpus):
        """Test that rows are sorted and failures recorded per instance."""
        rows = run_bench(str(corpus), workers=2)
        keys = [(r.instance, r.algorithm) for r in rows]
        assert keys == [
            ("broken", "read"),
            ("skewed", "wcbo"),
            ("skewed", "wnzf"),
            ("square", "swnzf"),
            ("square", "wcbo"),
            ("square", "wnzf"),
        ]
        assert rows[0].error
        for row in rows[1:]:
            assert row.error is None
            assert row.output_cost is not None

    def test_missing_directory(self, tmp_path):
        """Test that the corpus must exist."""
        with pytest.raises(InvalidParameterError):
            run_bench(str(tmp_path / "absent"))

    def test_deadline_does_not_wait_for_stuck_instance(self, corpus, monkeypatch):
        """Test that one deadline bounds the run and unfinished instances time out."""
        release = threading.Event()
        real = bench.bench_instance

        def run_one(path):
            if path.stem == "square":
                release.wait(30)
                return []
            return real(path)

        monkeypatch.setattr(bench, "bench_instance", run_one)
        monkeypatch.setenv("NZFLOW_BENCH__TIMEOUT_SECONDS", "2")
        ConfigManager.reset()
        try:
            start = time.monotonic()
            rows = run_bench(str(corpus), workers=3)
            elapsed = time.monotonic() - start
        finally:
            release.set()
        assert elapsed < 15
        stuck = [r for r in rows if r.instance == "square"]
        assert len(stuck) == 1
        assert stuck[0].error == "timeout"
        assert {r.instance for r in rows} == {"broken", "skewed", "square"}


class TestBenchOutput:
    """Tests for the table, JSON and spreadsheet forms."""

    ROWS = [
        BenchRow(instance="a", algorithm="wnzf", lp_value="3/1", output_cost=9, ratio="3/1", flow_bound=36),
        BenchRow(instance="b", algorithm="read", lp_value="", error="bad header"),
    ]

    def test_table(self):
        """Test the header and blank cells for missing values."""
        lines = format_bench_table(self.ROWS).splitlines()
        assert lines[0].split("\t") == BENCH_COLUMNS
        assert lines[2].split("\t")[3] == ""

    def test_json(self):
        """Test the JSON list form."""
        data = json.loads(export_bench_json(self.ROWS))
        assert data[0]["output_cost"] == 9

    def test_excel(self, output_dir):
        """Test the spreadsheet contents."""
        result = export_bench_excel(self.ROWS, "bench.xlsx")
        assert result["success"]
        ws = load_workbook(result["path"]).active
        assert ws.title == "Bench"
        assert [c.value for c in ws[1]] == BENCH_COLUMNS
        assert ws.cell(row=2, column=1).value == "a"
        assert ws.cell(row=3, column=BENCH_COLUMNS.index("output_cost") + 1).value is None
        assert ws.cell(row=3, column=BENCH_COLUMNS.index("error") + 1).value == "bad header"
        assert ws.freeze_panes == "A2"

    def test_excel_outside_output_dir(self, output_dir, tmp_path_factory):
        """Test that exports may not escape the output directory."""
        elsewhere = tmp_path_factory.mktemp("elsewhere")
        result = export_bench_excel(self.ROWS, str(elsewhere / "bench.xlsx"))
        assert result == {"success": False, "error": "Invalid output directory"}
        assert not (elsewhere / "bench.xlsx").exists()

    def test_excel_subdirectory(self, output_dir):
        """Test that subfolders of the output directory are allowed."""
        result = export_bench_excel(self.ROWS, str(output_dir / "runs" / "bench.xlsx"))
        assert result["success"]
        assert (output_dir / "runs" / "bench.xlsx").exists()
