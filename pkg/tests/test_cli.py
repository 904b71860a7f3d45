"""CLI: exit codes, round trips, deterministic experiment tables."""

import pytest

from hamdg import io as hio
from hamdg.cli import main
from hamdg.constructions import circulant_tournament


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_circulant_to_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "circulant", "--n", "7")
        assert code == 0
        assert hio.parse(out) == circulant_tournament(7)

    def test_round_trip_byte_identical(self, capsys, tmp_path):
        path = str(tmp_path / "g.dg")
        code, out, _ = run(
            capsys, "gen", "--family", "circulant", "--n", "9", "--output", path
        )
        assert code == 0
        text = open(path).read()
        assert hio.serialize(hio.parse(text)) == text

    def test_parts_sidecar(self, capsys, tmp_path):
        parts = str(tmp_path / "g.parts")
        code, _, _ = run(
            capsys,
            "gen", "--family", "fig2", "--n", "7",
            "--output", str(tmp_path / "g.dg"), "--parts", parts,
        )
        assert code == 0
        assert open(parts).read().startswith("PARTS 1\n")

    def test_unknown_family_is_usage_error(self, capsys):
        code, _, err = run(capsys, "gen", "--family", "moebius", "--n", "5")
        assert code == 2 and "error" in err


class TestCheck:
    def test_negative_verdict_exit_1(self, capsys, tmp_path):
        path = str(tmp_path / "fig2.dg")
        run(capsys, "gen", "--family", "fig2", "--n", "7", "--output", path)
        code, out, _ = run(capsys, "check", "--rule", "meyniel", "--input", path)
        assert code == 1
        assert '"holds": false' in out

    def test_positive_verdict_exit_0(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "complete_digraph", "--n", "5", "--output", path)
        code, out, _ = run(capsys, "check", "--rule", "ghouila_houri", "--input", path)
        assert code == 0 and '"holds": true' in out


class TestSolveCount:
    def test_solve_emits_cycle_record(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "circulant", "--n", "7", "--output", path)
        code, out, _ = run(capsys, "solve", "--input", path)
        assert code == 0 and out.startswith("CYCLE 1 7 ")

    def test_solve_none_exit_1(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "transitive", "--n", "5", "--output", path)
        code, out, _ = run(capsys, "solve", "--input", path)
        assert code == 1 and out.strip() == "NONE"

    def test_budget_exit_3(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "complete_digraph", "--n", "12", "--output", path)
        code, _, err = run(capsys, "solve", "--input", path, "--budget", "3")
        assert code == 3 and "budget" in err

    def test_count(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "circulant", "--n", "5", "--output", path)
        code, out, _ = run(capsys, "count", "--input", path, "--kind", "paths")
        assert code == 0 and '"count": 15' in out


class TestDecomposeCover:
    def test_walecki(self, capsys):
        code, out, _ = run(capsys, "decompose", "--walecki", "9")
        assert code == 0 and out.strip().endswith("# cycles=4")

    def test_no_decomposition_exit_1(self, capsys, tmp_path):
        path = str(tmp_path / "k4.dg")
        run(capsys, "gen", "--family", "complete_digraph", "--n", "4", "--output", path)
        code, out, _ = run(capsys, "decompose", "--input", path)
        assert code == 1 and out.strip() == "NONE"

    def test_cover_summary(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "circulant", "--n", "7", "--output", path)
        code, out, _ = run(capsys, "cover", "--input", path)
        assert code == 0
        assert "# size=" in out and "half_plus_quarter=" in out


class TestExpander:
    def test_check_holds(self, capsys, tmp_path):
        path = str(tmp_path / "t.dg")
        run(capsys, "gen", "--family", "circulant", "--n", "11", "--output", path)
        code, out, _ = run(
            capsys, "expander", "--input", path, "--nu", "1/20", "--tau", "1/5"
        )
        assert code == 0 and '"holds": true' in out

    def test_pipeline_trace(self, capsys):
        code, out, _ = run(
            capsys,
            "expander", "--pipeline", "--base", "triangle", "--m", "5",
            "--exceptional", "2", "--seed", "1",
        )
        assert code == 0
        assert "# walk length=" in out and "# merge cluster=" in out
        assert "CYCLE 1 17 " in out


class TestExperiment:
    def test_kelly_table(self, capsys):
        code, out, _ = run(capsys, "experiment", "kelly", "--n", "3,5")
        assert code == 0
        assert out.startswith("# schema=1\n")
        assert "kelly-n5,5,24,24,2,True" in out

    def test_reruns_byte_identical(self, capsys):
        _, out1, _ = run(capsys, "experiment", "cover", "--n", "5,7", "--seed", "3")
        _, out2, _ = run(capsys, "experiment", "cover", "--n", "5,7", "--seed", "3")
        assert out1 == out2

    def test_jsonl_flag(self, capsys):
        code, out, _ = run(capsys, "experiment", "camion", "--n", "3", "--jsonl")
        assert code == 0 and out.strip().startswith("{")


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == 2
