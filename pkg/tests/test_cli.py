"""CLI contract: subcommands, JSON schema, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from f4prolong.cli import run


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_cartan_json(capsys):
    code, out, _ = _capture(capsys, ["verify", "cartan", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "f4prolong/1"
    assert data["suite"] == "cartan"
    assert data["seed"] == 0
    assert len(data["items"]) == 141
    assert all(i["status"] == "pass" for i in data["items"])


def test_verify_roots_human(capsys):
    code, out, _ = _capture(capsys, ["verify", "roots"])
    assert code == 0
    assert "paper-discrepancy" in out
    assert "suite roots:" in out


def test_identical_seeds_identical_json(capsys):
    _, out1, _ = _capture(capsys, ["verify", "roots", "--json", "--seed", "3"])
    _, out2, _ = _capture(capsys, ["verify", "roots", "--json", "--seed", "3"])
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("elapsed_ms")
    d2.pop("elapsed_ms")
    assert d1 == d2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "bogus"])
    assert exc.value.code == 2


def test_malformed_rational_exits_2(capsys):
    code, _, err = _capture(capsys, ["flag", "--coords", "1,2,nope,0,0,0,0,0,0"])
    assert code == 2
    assert "malformed rational" in err


def test_wrong_arity_exits_2(capsys):
    code, _, err = _capture(capsys, ["flag", "--coords", "1,2"])
    assert code == 2
    assert "9" in err


def test_flag_command(capsys):
    code, out, _ = _capture(
        capsys, ["flag", "--coords", "1,0,2,0,1,1/2,0,3,1", "--json"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "f4prolong/1"
    assert len(data["lambda_frame"]) == 3
    assert len(data["v_frame"]) == 4
    assert all(len(f) == 7 for f in data["lambda_frame"])
    assert all(len(e) == 8 for e in data["v_frame"])
    assert all(i["status"] == "pass" for i in data["items"])


def test_integrate_default_data(capsys):
    code, out, _ = _capture(
        capsys, ["integrate", "--step", "1e-2", "--tmax", "0.1", "--json"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "f4prolong/1"
    assert data["max_constraint_drift"] < 1e-8
    assert data["steps"] == 10


def test_integrate_custom_covector(capsys):
    # covector s=0, r34=1 with controls in its kernel
    code, out, _ = _capture(
        capsys,
        [
            "integrate",
            "--step", "1e-2", "--tmax", "0.1",
            "--covector", "0,0,0,0,0,0,1",
            "--controls", "1,0,0,0,0,0,1,0",
            "--json",
        ],
    )
    assert code == 0
    assert json.loads(out)["max_constraint_drift"] < 1e-8


def test_integrate_bad_controls_exit_2(capsys):
    code, _, err = _capture(
        capsys,
        ["integrate", "--covector", "0,0,1,0,0,0,0"],
    )
    assert code == 2
    assert "ker" in err


def test_integrate_csv_export(capsys, tmp_path):
    path = tmp_path / "traj.csv"
    code, _, _ = _capture(
        capsys,
        ["integrate", "--step", "1e-2", "--tmax", "0.05", "--csv", str(path)],
    )
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("time,z,")
    assert len(lines) == 1 + 5 + 1  # header + steps + initial state


def test_export_model_json(capsys):
    code, out, _ = _capture(capsys, ["export-model", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "f4prolong/1"
    assert len(data["chart"]) == 15
    assert set(data["frame"]) >= {"X1", "Y4", "X34", "Z"}
    assert len(data["coframe"]) == 15
    assert "omega" in data["coframe"]


def test_roots_list_json(capsys):
    code, out, _ = _capture(capsys, ["roots", "--list", "--json"])
    assert code == 0
    data = json.loads(out)
    assert len(data["positive_roots"]) == 24
    assert {"root": [2, 3, 4, 2], "height": 11, "alpha4": 2} in data["positive_roots"]
