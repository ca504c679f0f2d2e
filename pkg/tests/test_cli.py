import json
import subprocess
import sys

import pytest

from eqdim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


class TestGen:
    def test_johnson_7_3(self, capsys, tmp_path):
        out_file = tmp_path / "j73.json"
        code, out, _ = run_cli(capsys, "gen", "johnson:7,3", "--out", str(out_file))
        assert code == 0
        data = json.loads(out_file.read_text(encoding="utf-8"))
        assert data["n"] == 35
        assert data["labels"][0] == "{1,2,3}"
        assert data["family"] == "johnson:7,3"
        assert data["manifest"]["artifact_version"]

    def test_kneser_petersen(self, capsys):
        code, data, _ = run_json(capsys, "gen", "kneser:5,2")
        assert code == 0 and data["n"] == 10
        assert len(data["edges"]) == 15

    def test_bad_spec_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "gen", "johnson:3,3")
        assert code == 2 and "error" in err

    def test_random_spec_seeded(self, capsys):
        code1, d1, _ = run_json(capsys, "gen", "random:8,40", "--seed", "5")
        code2, d2, _ = run_json(capsys, "gen", "random:8,40", "--seed", "5")
        assert code1 == code2 == 0 and d1["edges"] == d2["edges"]


class TestVerify:
    def test_triangle_on_j72(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--graph", "johnson:7,2",
                                 "--set", "{1,2},{1,3},{2,3}")
        assert code == 0 and data["valid"] is True
        assert data["labels"] == ["{1,2}", "{1,3}", "{2,3}"]

    def test_failing_set_on_j83(self, capsys):
        labels = ",".join("{1,2,%d}" % j for j in range(3, 9))
        code, data, _ = run_json(capsys, "verify", "--graph", "johnson:8,3",
                                 "--set", labels)
        assert code == 1
        assert data["valid"] is False and data["violation"] is not None

    def test_all_vertices_valid(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--graph", "cycle:6",
                                 "--set", "0,1,2,3,4,5")
        assert code == 0 and data["valid"] is True

    def test_unknown_label_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--graph", "johnson:5,2",
                               "--set", "{1,9}")
        assert code == 2 and "unknown label" in err

    def test_indices_on_file(self, capsys, tmp_path):
        out_file = tmp_path / "g.json"
        run_cli(capsys, "gen", "cycle:4", "--out", str(out_file))
        code, data, _ = run_json(capsys, "verify", "--graph", str(out_file),
                                 "--set", "0,2")
        assert code == 0 and data["valid"] is True


class TestSolve:
    def test_p2(self, capsys):
        code, data, _ = run_json(capsys, "solve", "--graph", "path:2")
        assert code == 0
        assert data["value"] == 1 and data["status"] == "optimal"

    def test_johnson_5_2(self, capsys):
        code, data, _ = run_json(capsys, "solve", "--graph", "johnson:5,2")
        assert code == 0 and data["value"] == 3

    def test_disconnected_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--graph", "kneser:8,4")
        assert code == 2
        assert "35 components" in err

    def test_node_limit_zero_upper_only(self, capsys):
        code, data, _ = run_json(capsys, "solve", "--graph", "johnson:7,3",
                                 "--node-limit", "0")
        assert code == 1 and data["status"] == "upper_only"

    def test_brute_force_flag(self, capsys):
        code, data, _ = run_json(capsys, "solve", "--graph", "johnson:4,2",
                                 "--brute-force")
        assert code == 0 and data["value"] == 2

    def test_family_hint_from_file(self, capsys, tmp_path):
        out_file = tmp_path / "j63.json"
        run_cli(capsys, "gen", "johnson:6,3", "--out", str(out_file))
        code, data, _ = run_json(capsys, "solve", "--graph", str(out_file))
        assert code == 0 and data["value"] == 10
        assert data["nodes"] == 0  # construction seed closes the gap instantly

    def test_python_kernel_flag(self, capsys):
        code, data, _ = run_json(capsys, "solve", "--graph", "cycle:5",
                                 "--kernel", "python")
        assert code == 0 and data["value"] == 3


class TestBounds:
    def test_j63_lower(self, capsys):
        code, data, _ = run_json(capsys, "bounds", "--graph", "johnson:6,3")
        assert code == 0
        assert data["lower"] == 10 and data["lower_rule"] == "forced-pair matching"

    def test_star_exact(self, capsys):
        code, data, _ = run_json(capsys, "bounds", "--graph", "star:6")
        assert code == 0 and data["exact"] == 1

    def test_kneser_9_3(self, capsys):
        code, data, _ = run_json(capsys, "bounds", "--graph", "kneser:9,3")
        assert code == 0 and data["lower"] == 3

    def test_disconnected_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--graph", "kneser:8,4")
        assert code == 2 and "disconnected" in err


class TestConstruction:
    def test_valid_certified(self, capsys):
        code, data, _ = run_json(capsys, "construction", "johnson2:7")
        assert code == 0
        assert data["valid"] is True and data["optimality_certified"] is True

    def test_invalid_exit_1(self, capsys):
        with pytest.warns(UserWarning):
            code, data, _ = run_json(capsys, "construction", "johnson3:8")
        assert code == 1 and data["valid"] is False

    def test_bad_spec(self, capsys):
        code, _, err = run_cli(capsys, "construction", "johnson9:4")
        assert code == 2 and "error" in err


class TestTable:
    def test_only_7_3(self, capsys):
        code, out, _ = run_cli(capsys, "table1", "--only", "7,3")
        assert code == 0
        rows = [ln for ln in out.splitlines() if ln.startswith(("johnson", "kneser"))]
        assert len(rows) == 2
        assert all("PASS" in ln for ln in rows)

    def test_only_4_2_small_section(self, capsys):
        code, data, _ = run_json(capsys, "table1", "--only", "4,2", "--json")
        assert code == 0
        assert len(data["rows"]) == 1
        assert data["rows"][0]["computed"] == 2

    def test_node_limit_zero_fails(self, capsys):
        code, data, _ = run_json(capsys, "table1", "--only", "7,3",
                                 "--node-limit", "0", "--json")
        assert code == 1
        assert any(row["status"] == "upper_only" for row in data["rows"])
        assert not data["all_pass"]

    def test_bad_only(self, capsys):
        code, _, err = run_cli(capsys, "table1", "--only", "nope")
        assert code == 2

    def test_unmatched_only(self, capsys):
        code, _, err = run_cli(capsys, "table1", "--only", "30,7")
        assert code == 2 and "no tabulated instance" in err


class TestReproducibility:
    def test_solve_replay_identical_except_elapsed(self, capsys):
        argv = ["solve", "--graph", "johnson:5,2"]
        _, first, _ = run_json(capsys, *argv)
        _, second, _ = run_json(capsys, *argv)
        first.pop("elapsed_s")
        second.pop("elapsed_s")
        assert first == second

    def test_gen_replay_byte_identical(self, capsys):
        _, out1, _ = run_cli(capsys, "gen", "johnson:6,2")
        _, out2, _ = run_cli(capsys, "gen", "johnson:6,2")
        assert out1 == out2

    def test_manifest_embedded_everywhere(self, capsys):
        for argv in (["gen", "cycle:5"],
                     ["verify", "--graph", "cycle:5", "--set", "0,1,2"],
                     ["solve", "--graph", "cycle:5"],
                     ["bounds", "--graph", "cycle:5"],
                     ["construction", "kneser2:5"],
                     ["table1", "--only", "4,2", "--json"]):
            _, data, _ = run_json(capsys, *argv)
            assert data["manifest"]["command"] == argv


class TestEntryPoint:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "eqdim.cli", "solve", "--graph", "path:4"],
            check=True, capture_output=True, text=True)
        data = json.loads(result.stdout)
        assert data["value"] == 2

    def test_version_flag(self):
        result = subprocess.run(
            [sys.executable, "-m", "eqdim.cli", "--version"],
            check=True, capture_output=True, text=True)
        assert result.stdout.strip()
