import json

import pytest

from thermleak.cli import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
)
from thermleak.gridfile import read_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def leakage_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header, *rows = lines
    return [dict(zip(header.split(","), r.split(","))) for r in rows]


@pytest.fixture
def broken_project(tmp_path, demo_project_dict):
    data = json.loads(json.dumps(demo_project_dict))
    data["blocks"][0]["gates"][0]["gate"] = "missing_gate"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestLeakageCommand:
    def test_default_vectors(self, capsys, demo_project_path):
        code, out, err = run(capsys, "leakage", demo_project_path)
        assert code == EXIT_OK
        rows = leakage_rows(out)
        assert {(r["gate"], r["inputs"]) for r in rows} == {
            ("inv", "1"),
            ("inv", "0"),
            ("nand2", "00"),
            ("nand2", "10"),
        }
        assert err == ""

    def test_all_vectors_stack_suppression(self, capsys, demo_project_path):
        code, out, _ = run(capsys, "leakage", demo_project_path, "--all-vectors")
        assert code == EXIT_OK
        rows = {(r["gate"], r["inputs"]): r for r in leakage_rows(out)}
        assert len(rows) == 6
        # two stacked OFF devices leak far less than one
        w_stack = float(rows[("nand2", "00")]["w_eff_um"])
        w_single = float(rows[("nand2", "01")]["w_eff_um"])
        assert w_single == pytest.approx(0.3, rel=1e-12)
        assert w_stack < w_single / 10

    def test_temp_flag(self, capsys, demo_project_path):
        _, cold, _ = run(capsys, "leakage", demo_project_path)
        _, hot, _ = run(capsys, "leakage", demo_project_path, "--temp", "350")
        p_cold = float(leakage_rows(cold)[0]["p_static_w"])
        p_hot = float(leakage_rows(hot)[0]["p_static_w"])
        assert p_hot > p_cold

    def test_deterministic_output(self, capsys, demo_project_path):
        _, first, _ = run(capsys, "leakage", demo_project_path, "--all-vectors")
        _, second, _ = run(capsys, "leakage", demo_project_path, "--all-vectors")
        assert first == second

    def test_missing_gate_reference(self, capsys, broken_project):
        code, _, err = run(capsys, "leakage", broken_project)
        assert code == EXIT_VALIDATION
        assert "missing_gate" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "leakage", str(tmp_path / "absent.json"))
        assert code == EXIT_VALIDATION
        assert "error:" in err

    def test_output_file(self, capsys, demo_project_path, tmp_path):
        dest = tmp_path / "leak.csv"
        code, out, _ = run(capsys, "leakage", demo_project_path, "-o", str(dest))
        assert code == EXIT_OK
        assert out == ""
        assert dest.read_text().startswith("# temp=")


class TestThermalCommand:
    def test_grid_csv_round_trip(self, capsys, demo_project_path, tmp_path):
        dest = tmp_path / "map.csv"
        code, _, _ = run(
            capsys,
            "thermal",
            demo_project_path,
            "--nx", "10", "--ny", "8", "-o", str(dest),
        )
        assert code == EXIT_OK
        grid = read_grid(dest)
        assert (grid.nx, grid.ny, grid.mode) == (10, 8, "rise")
        assert grid.values.min() > 0.0

    def test_deterministic_bytes(self, capsys, demo_project_path):
        args = ("thermal", demo_project_path, "--nx", "6", "--ny", "6")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second


class TestCosimCommand:
    def test_converged_json_report(self, capsys, demo_project_path):
        code, out, _ = run(capsys, "cosim", demo_project_path, "--nx", "4", "--ny", "4")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["status"] == "converged"
        assert report["iterations"] == 2
        assert "trace" not in report
        assert set(report["final_temps"]) == {"alu", "cache", "io"}

    def test_trace_and_grid_outputs(self, capsys, demo_project_path, tmp_path):
        dest = tmp_path / "final.csv"
        code, out, _ = run(
            capsys,
            "cosim",
            demo_project_path,
            "--trace", "--grid", str(dest), "--nx", "5", "--ny", "5",
        )
        assert code == EXIT_OK
        report = json.loads(out)
        assert len(report["trace"]) == report["iterations"]
        grid = read_grid(dest)
        assert grid.mode == "absolute"
        assert grid.values.max() > 300.0

    def test_max_iter_zero_not_converged(self, capsys, demo_project_path):
        code, out, _ = run(
            capsys, "cosim", demo_project_path, "--max-iter", "0", "--nx", "4", "--ny", "4"
        )
        assert code == EXIT_NOT_CONVERGED
        assert json.loads(out)["status"] == "max_iter_reached"

    def test_validation_failure(self, capsys, broken_project):
        code, _, err = run(capsys, "cosim", broken_project)
        assert code == EXIT_VALIDATION
        assert "missing_gate" in err


class TestVerifyCommand:
    def test_all_pass(self, capsys, demo_project_path):
        code, out, _ = run(capsys, "verify", demo_project_path)
        assert code == EXIT_OK
        assert out.strip().endswith("overall: PASS")
        assert "FAIL" not in out
