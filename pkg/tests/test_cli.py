"""CLI tests: exit codes, formats, deterministic CSV output."""

import json
import os
import stat

import pytest

from seqscreen.cli import main

SCENARIO = {
    "pretest_probability": 0.01,
    "tests": {"pcr": {"sensitivity": 0.9, "specificity": 0.9}},
    "sequence": [{"test": "pcr", "result": "positive"}],
    "targets": {"target_ppv": 0.95},
}


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(SCENARIO))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

class TestCompute:
    def test_json_report(self, capsys, scenario_file):
        code, out, _ = run(capsys, "compute", "--input", scenario_file)
        assert code == 0
        report = json.loads(out)
        assert report["tests"]["pcr"]["iterations_needed"] == 4
        assert report["sequence"]["formula_used"] == "SerialPPV"

    def test_table_format(self, capsys, scenario_file):
        code, out, _ = run(capsys, "compute", "--input", scenario_file, "--format", "table")
        assert code == 0
        assert "iterations needed" in out
        assert "4" in out

    def test_cancelling_sequence(self, capsys, tmp_path):
        doc = {
            "pretest_probability": 0.5,
            "tests": {"t": {"sensitivity": 0.9, "specificity": 0.9}},
            "sequence": [
                {"test": "t", "result": "positive"},
                {"test": "t", "result": "negative"},
            ],
        }
        path = tmp_path / "s.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "compute", "--input", str(path))
        assert code == 0
        assert json.loads(out)["sequence"]["posterior_disease"] == pytest.approx(0.5)

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        code, out, err = run(capsys, "compute", "--input", str(path))
        assert code == 2
        assert "line 1" in err
        assert out == ""

    def test_invalid_scenario_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"pretest_probability": 2.0, "tests": {}}))
        code, _, err = run(capsys, "compute", "--input", str(path))
        assert code == 2
        assert "pretest_probability" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "compute", "--input", str(tmp_path / "nope.json"))
        assert code == 2

    def test_unreachable_target_exits_3(self, capsys, tmp_path):
        doc = {
            "pretest_probability": 0.1,
            "tests": {"coin": {"sensitivity": 0.5, "specificity": 0.5}},
            "sequence": [],
            "targets": {"target_ppv": 0.9},
        }
        path = tmp_path / "s.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "compute", "--input", str(path))
        assert code == 3
        assert json.loads(out)["error"]["code"] == "TargetUnreachable"

    def test_conflicting_certainty_exits_3(self, capsys, tmp_path):
        doc = {
            "pretest_probability": 0.5,
            "tests": {
                "in": {"sensitivity": 0.8, "specificity": 1.0},
                "out": {"sensitivity": 1.0, "specificity": 0.8},
            },
            "sequence": [
                {"test": "in", "result": "positive"},
                {"test": "out", "result": "negative"},
            ],
        }
        path = tmp_path / "s.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "compute", "--input", str(path))
        assert code == 3
        assert json.loads(out)["error"]["code"] == "ConflictingCertainty"


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------

class TestCurve:
    def test_csv_shape_and_values(self, capsys):
        code, out, _ = run(capsys, "curve", "-a", "0.8", "-b", "0.85", "--points", "101")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "phi,ppv,npv"
        assert len(lines) == 102
        mid = lines[51].split(",")
        assert mid[0] == "0.5"
        assert mid[1] == "0.842105263158"

    def test_deterministic_bytes(self, capsys, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["curve", "-a", "0.8", "-b", "0.85", "--points", "513", "--output", str(out1)]) == 0
        assert main(["curve", "-a", "0.8", "-b", "0.85", "--points", "513", "--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert b"\r" not in out1.read_bytes()

    def test_perfect_test_two_points(self, capsys):
        code, out, _ = run(capsys, "curve", "-a", "1", "-b", "1", "--points", "2")
        assert code == 0
        assert out.splitlines()[1:] == ["0,0,1", "1,1,0"]

    def test_json_format_matches_sample(self, capsys):
        code, out, _ = run(capsys, "curve", "-a", "0.8", "-b", "0.85", "--points", "3",
                           "--format", "json")
        assert code == 0
        body = json.loads(out)
        assert body["phi_values"] == [0.0, 0.5, 1.0]
        assert body["ppv_values"][1] == pytest.approx(0.8 / 0.95, rel=1e-15)

    def test_single_point_exits_2(self, capsys):
        code, _, err = run(capsys, "curve", "-a", "0.8", "-b", "0.85", "--points", "1")
        assert code == 2
        assert "points" in err

    def test_invalid_parameters_exit_2(self, capsys):
        code, _, err = run(capsys, "curve", "-a", "1.5", "-b", "0.85")
        assert code == 2

    def test_unwritable_path_exits_4(self, capsys, tmp_path):
        target = tmp_path / "no-such-dir" / "out.csv"
        code, _, err = run(capsys, "curve", "-a", "0.8", "-b", "0.85", "--output", str(target))
        assert code == 4


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

class TestGeometry:
    def test_reference_report(self, capsys):
        code, out, _ = run(capsys, "geometry", "-a", "0.8", "-b", "0.95")
        assert code == 0
        report = json.loads(out)
        assert report["prevalence_threshold"] == pytest.approx(0.2, abs=1e-12)
        assert report["intersection"]["phi_i"] == pytest.approx(0.352693145518, abs=1e-9)
        assert report["intersection"]["method"] == "ClosedForm"

    def test_uninformative_error_object(self, capsys):
        code, out, _ = run(capsys, "geometry", "-a", "0.6", "-b", "0.4")
        assert code == 3
        assert json.loads(out)["error"]["code"] == "UninformativeTest"

    def test_degenerate_branch_marker(self, capsys):
        code, out, _ = run(capsys, "geometry", "-a", "0.9", "-b", "0.9")
        assert code == 0
        assert json.loads(out)["intersection"]["method"] == "PerturbedClosedForm"

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "geometry", "-a", "0.8", "-b", "0.95", "--format", "table")
        assert code == 0
        assert "prevalence threshold" in out
