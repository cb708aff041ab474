"""Command-line interface: subcommands, formats, exit codes."""

import json
import subprocess
import sys

import pytest

from orbitope_lab.cli import main


def run_json(capsys, argv):
    status = main(argv)
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_describe_normalizes_to_dominant(capsys):
    status, report = run_json(
        capsys, ["describe", "--system", "a2", "--x", "0,2,-2"]
    )
    assert status == 0
    assert report["schema"] == "orbitope-lab/1"
    assert report["command"] == "describe"
    assert report["x_dominant"] == ["2", "0", "-2"]
    assert report["wall_set"] == []
    assert report["x_connected_subset_count"] == 4
    assert report["system"]["weyl_order"] == 6
    assert report["orbit_size"] == 6


def test_describe_wall_set(capsys):
    status, report = run_json(capsys, ["describe", "--system", "B2", "--x", "1,1"])
    assert status == 0
    assert report["wall_set"] == [1]


def test_describe_a1_order(capsys):
    status, report = run_json(capsys, ["describe", "--system", "A1", "--x", "1,-1"])
    assert status == 0
    assert report["system"]["weyl_order"] == 2


def test_weight_coordinates(capsys):
    status, report = run_json(
        capsys,
        ["describe", "--system", "g2", "--coords", "weights", "--x", "1,1"],
    )
    assert status == 0
    assert report["x_dominant"] == ["-1", "-2", "3"]
    assert report["wall_set"] == []


def test_polytope_counts(capsys):
    status, report = run_json(capsys, ["polytope", "--system", "a2", "--x", "2,0,-2"])
    assert status == 0
    assert report["dim"] == 2
    assert report["vertex_count"] == 6
    assert report["facet_count"] == 6
    assert report["face_count"] == 13
    assert report["faces_by_dim"] == {"0": 6, "1": 6, "2": 1}
    assert len(report["face_orbits"]) == 3
    assert len(report["vertices"]) == 6


def test_classify_counts(capsys):
    for x, expected in (("2,0,-2", 3), ("1,1,-2", 2)):
        status, report = run_json(capsys, ["classify", "--system", "a2", "--x", x])
        assert status == 0
        assert report["stratum_count"] == expected
        assert len(report["descriptors"]) == expected
    status, report = run_json(capsys, ["classify", "--system", "a1", "--x", "1,-1"])
    assert report["stratum_count"] == 1
    record = report["descriptors"][0]
    assert record["I"] == []
    assert record["beta"] == ["1/2", "-1/2"]


def test_verify_without_model(capsys):
    status, report = run_json(capsys, ["verify", "--system", "g2", "--x=-1,-2,3"])
    assert status == 0
    assert report["passed"] is True
    assert report["first_counterexample"] is None
    assert [s["name"] for s in report["stages"]] == ["bijection"]


def test_verify_with_model(capsys):
    status, report = run_json(
        capsys,
        ["verify", "--model", "sym3", "--x", "2,0,-2", "--n-samples", "150"],
    )
    assert status == 0
    assert report["passed"] is True
    names = [s["name"] for s in report["stages"]]
    assert names == ["bijection", "model"]
    model_stage = report["stages"][1]
    assert model_stage["report"]["passed"] is True


def test_verify_corrupt_descriptor_fails(capsys):
    status, report = run_json(
        capsys,
        [
            "verify",
            "--system",
            "a2",
            "--x",
            "2,0,-2",
            "--corrupt-descriptor",
            "1",
        ],
    )
    assert status == 1
    assert report["passed"] is False
    assert report["first_counterexample"]["kind"] == "witness-mismatch"
    kinds = {c["kind"] for c in report["stages"][0]["counterexamples"]}
    assert "witness-mismatch" in kinds


def test_verify_reports_are_byte_identical(tmp_path, capsys):
    argv = [
        "verify",
        "--model",
        "skew4",
        "--x",
        "3,1",
        "--n-samples",
        "120",
        "--seed",
        "9",
    ]
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    status = main(
        ["describe", "--system", "a2", "--x", "2,0,-2", "--out", str(target)]
    )
    capsys.readouterr()
    assert status == 0
    report = json.loads(target.read_text())
    assert report["command"] == "describe"


def test_table_format(capsys):
    status = main(
        ["verify", "--system", "a2", "--x", "2,0,-2", "--format", "table"]
    )
    out = capsys.readouterr().out
    assert status == 0
    assert "passed: yes" in out
    assert "schema: orbitope-lab/1" in out


def error_message(capsys, argv):
    status = main(argv)
    err = capsys.readouterr().err
    assert status == 1
    assert err.startswith("error:")
    return err


def test_domain_errors(capsys):
    error_message(capsys, ["classify", "--system", "a2", "--x", "1,2"])
    error_message(capsys, ["classify", "--system", "a2", "--x", "0,0,0"])
    error_message(capsys, ["classify", "--x", "1,0,-1"])
    error_message(capsys, ["verify", "--model", "sym9x", "--x", "1"])
    error_message(capsys, ["verify", "--model", "skew2", "--x", "1"])
    error_message(
        capsys, ["classify", "--model", "sym3", "--system", "a2", "--x", "1,0,-1"]
    )
    error_message(capsys, ["describe", "--system", "a2"])
    error_message(capsys, ["describe", "--system", "a2", "--x", "1,,2"])
    error_message(capsys, ["describe", "--system", "nosuch9", "--x", "1"])
    error_message(
        capsys,
        [
            "verify",
            "--system",
            "a2",
            "--x",
            "2,0,-2",
            "--corrupt-descriptor",
            "99",
        ],
    )
    error_message(
        capsys,
        ["describe", "--system", "a2", "--coords", "weights", "--x", "1,2,3"],
    )


def test_face_budget_flag(capsys):
    status = main(
        ["polytope", "--system", "b3", "--x", "3,2,1", "--face-budget", "10"]
    )
    err = capsys.readouterr().err
    assert status == 1
    assert "budget" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orbitope_lab", "describe", "--system", "a1", "--x", "1,-1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["system"]["weyl_order"] == 2
