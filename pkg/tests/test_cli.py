import json

import pytest
import yaml

from evaluation.results import ResultTable
from main import EXIT_ASSERTION, EXIT_OK, main


def write_config(tmp_path, document, name="run.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(document), encoding="utf-8")
    return path


def run_command(tmp_path, command, document, *extra):
    config = write_config(tmp_path, document)
    out = tmp_path / "out.json"
    status = main([command, "--config", str(config), "--out", str(out), *extra])
    return status, out


def test_predict_poles(tmp_path):
    document = {"potential": {"kind": "square_well", "q0": 4.0, "a": 2.0},
                "parameters": {"p_range": [1, 5]}}
    status, out = run_command(tmp_path, "predict-poles", document)
    assert status == EXIT_OK
    table = ResultTable.from_json(out.read_text(encoding="utf-8"))
    assert table.column("p") == [1, 2, 3, 4, 5]
    assert table.rows[0]["real_ratio"] is None
    assert all(row["nu_im"] > 0 for row in table.rows)
    assert all(row["lambert_residual"] <= 1e-12 for row in table.rows)
    assert table.provenance.command == "predict-poles"
    assert table.provenance.potential == {"kind": "square_well", "q0": 4.0, "a": 2.0,
                                          "support_radius": 2.0, "analytic": False}


def test_phase_shifts_of_zero_potential(tmp_path):
    status, out = run_command(tmp_path, "phase-shifts",
                              {"potential": {"kind": "zero"}, "parameters": {"l_range": [0, 3]}})
    assert status == EXIT_OK
    table = ResultTable.from_json(out.read_text(encoding="utf-8"))
    assert table.column("nu") == [0.5, 1.5, 2.5, 3.5]
    assert table.column("delta") == [0.0] * 4
    assert set(table.column("method")) == {"small-phase"}
    assert table.errors == []


def test_specfun_gamma_csv(tmp_path):
    document = {"potential": {"kind": "zero"},
                "parameters": {"function": "gamma", "values": [1, 2, 3, 4, 5]}}
    config = write_config(tmp_path, document)
    out = tmp_path / "gamma.csv"
    assert main(["specfun-table", "--config", str(config), "--out", str(out), "--format", "csv"]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").split("\r\n")
    assert lines[0].startswith("function,nu_re,nu_im,x,value_re")
    values = [float(line.split(",")[4]) for line in lines[1:6]]
    assert values == pytest.approx([1.0, 1.0, 2.0, 6.0, 24.0], rel=1e-12)


def test_tabulated_file_next_to_config(tmp_path):
    (tmp_path / "table.csv").write_text("r,q\n0.1,2.0\n0.5,1.0\n1.0,0.5\n", encoding="utf-8")
    document = {"potential": {"kind": "tabulated", "file": "table.csv"},
                "parameters": {"function": "gamma", "values": [1]}}
    status, _ = run_command(tmp_path, "specfun-table", document)
    assert status == EXIT_OK


def test_verify_exit_codes(tmp_path):
    document = {"potential": {"kind": "zero"}, "parameters": {"suites": ["nicholson"]}}
    status, out = run_command(tmp_path, "verify", document)
    assert status == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["passed"] is True
    status, out = run_command(tmp_path, "verify", {"potential": {"kind": "zero"},
                                                   "parameters": {"suites": "nicholson"}}, "--tol", "1e-30")
    assert status == EXIT_ASSERTION
    assert json.loads(out.read_text(encoding="utf-8"))["passed"] is False


@pytest.mark.parametrize("command, document, extra", [
    ("phase-shifts", {"potential": {"kind": "zero"}, "tolerence": {}}, ()),
    ("phase-shifts", {"potential": {"kind": "square_well", "q0": 1.0}}, ()),
    ("uniqueness-gap", {"potential": {"kind": "zero"}}, ()),
    ("poles", {"potential": {"kind": "zero"}}, ()),
    ("predict-poles", {"potential": {"kind": "analytic_decay"}}, ()),
    ("specfun-table", {"potential": {"kind": "zero"}, "parameters": {"function": "zeta"}}, ()),
    ("phase-shifts", {"potential": {"kind": "zero"}}, ("--tol", "-1")),
    ("amplitude", {"potential": {"kind": "zero"}, "dimension": 2}, ()),
])
def test_configuration_errors_exit_2(tmp_path, command, document, extra, capsys):
    status, out = run_command(tmp_path, command, document, *extra)
    assert status == 2
    assert not out.exists()
    assert "Error:" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["phase-shifts", "--config", str(tmp_path / "absent.yaml")]) == 2


def test_amplitude_of_zero_potential(tmp_path):
    document = {"potential": {"kind": "zero"}, "parameters": {"l_max": 3, "theta_angles": [0.0, 1.0]}}
    status, out = run_command(tmp_path, "amplitude", document)
    assert status == EXIT_OK
    table = ResultTable.from_json(out.read_text(encoding="utf-8"))
    assert table.column("theta") == [0.0, 1.0]
    assert table.column("value_re") == [0.0, 0.0]
    assert table.column("tail_estimate") == [0.0, 0.0]
    assert set(table.column("l_max")) == {3}
