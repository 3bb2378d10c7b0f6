"""
Tests for the command line surface.

Each test drives command_surface() with an argv list and inspects the exit
status and stdout.
"""

import io
import json

import pytest

from cli import SEPARATOR, command_surface

TRIANGLE = "nzg 3 3\n0 1 1 1\n1 2 1 1\n2 0 1 1\n"
SQUARE = "nzg 4 4\n0 1 1 1\n1 2 1 1\n2 3 1 1\n3 0 1 1\n"
DIGON = "nzg 2 2\n0 1 1 1\n0 1 1 1\n"
BRIDGED = "nzg 3 3\n0 1 1 1\n1 0 1 1\n1 2 1 1\n"
NAE_DIMACS = "p cnf 3 3\n1 2 3 0\n-1 2 3 0\n-1 2 -3 0\n"


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _parts(out: str):
    return out.split(SEPARATOR + "\n")


# ========== solve / nz6 ==========


class TestSolveCommand:
    """Tests for 'solve' and 'nz6'."""

    def test_swnzf_from_stdin(self, monkeypatch, capsys):
        """Test the generated triangle piped into the local search."""
        assert command_surface(["gen", "cycle", "3"]) == 0
        graph = capsys.readouterr().out
        monkeypatch.setattr("sys.stdin", io.StringIO(graph))
        assert command_surface(["solve", "swnzf", "-"]) == 0
        flow, cert = _parts(capsys.readouterr().out)
        assert flow.startswith("nzf 3")
        data = json.loads(cert)
        assert data["output_cost"] == 3
        assert data["lp_source"] == "edge_costs"

    def test_graph_defaults_to_stdin(self, monkeypatch, capsys):
        """Test that the graph argument may be left out when piping."""
        monkeypatch.setattr("sys.stdin", io.StringIO(TRIANGLE))
        assert command_surface(["solve", "swnzf"]) == 0
        flow, _ = _parts(capsys.readouterr().out)
        assert flow.startswith("nzf 3")

    def test_wnzf_with_oracle(self, tmp_path, capsys):
        """Test that the brute-force optimum is recorded."""
        path = _write(tmp_path, "t.nzg", TRIANGLE)
        assert command_surface(["solve", "wnzf", path, "--with-oracle"]) == 0
        _, cert = _parts(capsys.readouterr().out)
        data = json.loads(cert)
        assert data["oracle_value"] == 3
        assert data["flow_bound"] == 36

    def test_wcbo_output_file(self, tmp_path, capsys):
        """Test that -o receives the orientation and stdout the certificate."""
        path = _write(tmp_path, "t.nzg", TRIANGLE)
        out = tmp_path / "o.nzo"
        assert command_surface(["solve", "wcbo", path, "-o", str(out)]) == 0
        assert out.read_text().startswith("nzo 3")
        assert json.loads(capsys.readouterr().out)["algorithm"] == "wcbo"

    def test_bridge_is_precondition_failure(self, tmp_path):
        """Test exit status 3 for a graph with a bridge."""
        path = _write(tmp_path, "b.nzg", BRIDGED)
        assert command_surface(["solve", "wnzf", path]) == 3

    def test_asymmetric_swnzf_is_malformed(self, tmp_path):
        """Test exit status 2 when swnzf gets asymmetric costs."""
        path = _write(tmp_path, "a.nzg", "nzg 2 2\n0 1 1 2\n1 0 1 1\n")
        assert command_surface(["solve", "swnzf", path]) == 2

    def test_malformed_graph(self, tmp_path):
        """Test exit status 2 for a broken header."""
        path = _write(tmp_path, "m.nzg", "nzg 2\n")
        assert command_surface(["solve", "wnzf", path]) == 2

    def test_missing_file(self, tmp_path):
        """Test exit status 2 for an unreadable path."""
        assert command_surface(["nz6", str(tmp_path / "absent.nzg")]) == 2

    def test_unknown_problem(self):
        """Test that argparse errors map to status 2."""
        assert command_surface(["solve", "tsp", "-"]) == 2

    def test_nz6(self, tmp_path, capsys):
        """Test that nz6 prints a flow with values in 1..5."""
        path = _write(tmp_path, "s.nzg", SQUARE)
        assert command_surface(["nz6", path]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "nzf 4"
        assert all(1 <= abs(int(line.split()[1])) <= 5 for line in lines[1:])


# ========== verify ==========


class TestVerifyCommand:
    """Tests for 'verify'."""

    def test_local_opt_all_threes(self, tmp_path, capsys):
        """Test that the all-3 cycle flow is locally optimal."""
        graph = _write(tmp_path, "s.nzg", SQUARE)
        flow = _write(tmp_path, "s.nzf", "nzf 4\n0 3\n1 3\n2 3\n3 3\n")
        assert command_surface(["verify", "local-opt", graph, flow]) == 0
        assert capsys.readouterr().out == "ok\n"

    def test_flow_violation(self, tmp_path, capsys):
        """Test exit status 1 with the violation as JSON."""
        graph = _write(tmp_path, "t.nzg", TRIANGLE)
        flow = _write(tmp_path, "t.nzf", "nzf 3\n0 3\n1 3\n2 3\n")
        assert command_surface(["verify", "flow", graph, flow, "--k", "3"]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "range_exceeded"

    @pytest.mark.parametrize("method", ["hoffman", "brute"])
    def test_cbo_violation(self, tmp_path, capsys, method):
        """Test that a sink is reported as the starved side."""
        graph = _write(tmp_path, "d.nzg", DIGON)
        o = _write(tmp_path, "d.nzo", "nzo 2\n0 +\n1 +\n")
        assert command_surface(["verify", "cbo", graph, o, "--k", "3", "--method", method]) == 1
        assert json.loads(capsys.readouterr().out)["vertices"] == [1]

    def test_cbo_needs_full_orientation(self, tmp_path):
        """Test exit status 2 for undecided edges."""
        graph = _write(tmp_path, "d.nzg", DIGON)
        o = _write(tmp_path, "d.nzo", "nzo 2\n0 +\n1 ?\n")
        assert command_surface(["verify", "cbo", graph, o, "--k", "2"]) == 2

    def test_partial_cbo(self, tmp_path):
        """Test that an opposite pair passes."""
        graph = _write(tmp_path, "d.nzg", DIGON)
        o = _write(tmp_path, "d.nzo", "nzo 2\n0 +\n1 -\n")
        assert command_surface(["verify", "partial-cbo", graph, o, "--k", "2"]) == 0


# ========== gen / brute / schema ==========


class TestGenerateCommand:
    """Tests for 'gen'."""

    def test_nae3sat_target(self, tmp_path, capsys):
        """Test the graph and target for a three-clause formula."""
        formula = _write(tmp_path, "f.cnf", NAE_DIMACS)
        assert command_surface(["gen", "nae3sat", formula]) == 0
        graph, target = _parts(capsys.readouterr().out)
        assert "nzg 18 31" in graph
        assert target.strip() == "target 38"

    def test_sat_completion_to_file(self, tmp_path, monkeypatch, capsys):
        """Test that -o takes the graph and stdout the partial orientation."""
        monkeypatch.setattr("sys.stdin", io.StringIO("p cnf 3 3\n1 2 3 0\n-1 -2 3 0\n1 -2 -3 0\n"))
        out = tmp_path / "g.nzg"
        assert command_surface(["gen", "sat-completion", "-", "--k", "4", "-o", str(out)]) == 0
        assert "nzg 10 33" in out.read_text()
        assert capsys.readouterr().out.startswith("nzo 33")

    def test_random_symmetric(self, capsys):
        """Test seeded random graphs with symmetric costs."""
        assert command_surface(["--seed", "5", "gen", "random", "--n", "6", "--m", "9", "--symmetric"]) == 0
        lines = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
        assert lines[0] == "nzg 6 9"
        assert all(ln.split()[2] == ln.split()[3] for ln in lines[1:])

    def test_seed_after_subcommand(self, capsys):
        """Test that --seed after 'gen' matches --seed before it."""
        argv = ["gen", "random", "--n", "7", "--m", "12"]
        assert command_surface(["--seed", "3", *argv]) == 0
        before = capsys.readouterr().out
        assert command_surface([*argv, "--seed", "3"]) == 0
        after = capsys.readouterr().out
        assert before == after
        assert command_surface([*argv, "--seed", "4"]) == 0
        assert capsys.readouterr().out != before


class TestBruteCommand:
    """Tests for 'brute'."""

    def test_min_nzk(self, tmp_path, capsys):
        """Test the cheapest 4-flow on the triangle."""
        path = _write(tmp_path, "t.nzg", TRIANGLE)
        assert command_surface(["brute", "min-nzk", path, "--k", "4"]) == 0
        _, cost = _parts(capsys.readouterr().out)
        assert cost.strip() == "cost 3"

    def test_cbo_check(self, tmp_path, capsys):
        """Test completing a lone arc."""
        graph = _write(tmp_path, "d.nzg", DIGON)
        partial = _write(tmp_path, "d.nzo", "nzo 2\n0 +\n1 ?\n")
        assert command_surface(["brute", "cbo-check", graph, "--k", "2", "--partial", partial]) == 0
        assert capsys.readouterr().out == "nzo 2\n0 +\n1 -\n"

    def test_cbo_check_needs_partial(self, tmp_path):
        """Test exit status 2 without --partial."""
        graph = _write(tmp_path, "d.nzg", DIGON)
        assert command_surface(["brute", "cbo-check", graph]) == 2


class TestMiscCommands:
    """Tests for 'schema', 'bench' and --version."""

    def test_schema(self, capsys):
        """Test printing the certificate schema."""
        assert command_surface(["schema", "certificate"]) == 0
        assert "output_cost" in json.loads(capsys.readouterr().out)["properties"]

    def test_version(self):
        """Test that --version exits cleanly."""
        assert command_surface(["--version"]) == 0

    def test_bench(self, tmp_path, output_dir, capsys):
        """Test the table and the spreadsheet export."""
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "square.nzg").write_text(SQUARE)
        assert command_surface(["bench", str(corpus), "--workers", "1", "--xlsx", "bench.xlsx"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("instance\talgorithm")
        assert [ln.split("\t")[1] for ln in lines[1:]] == ["swnzf", "wcbo", "wnzf"]
        assert (output_dir / "bench.xlsx").exists()
