"""Command-line behaviour: dispatch, exit codes, strict parsing, output
formats, figures and determinism."""

import json
import subprocess
import sys

from braidkit.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_qbinom(capsys):
    code, out, _ = run_cli(capsys, ["qbinom", "4", "2", "--lambda", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "35"


def test_qbinom_finite_field(capsys):
    code, out, _ = run_cli(capsys, ["qbinom", "4", "2", "--lambda", "2", "--field", "F5"])
    assert code == 0
    assert json.loads(out)["value"] == "0"  # 35 = 0 mod 5


def test_validate_generator_ok(capsys):
    code, out, _ = run_cli(capsys, ["validate", "--gen", "dj_hecke", "--n", "2",
                                    "--q", "2", "--tensor", "-N", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["braid_equation"]["ok"]
    assert doc["tensor_axioms"]["passed"]


def test_validate_empty_space(capsys):
    code, out, _ = run_cli(capsys, ["validate", "--gen", "scalar", "--n", "0", "--mu", "1"])
    assert code == 0


def test_validate_corrupted_file(tmp_path, capsys):
    spec = {
        "field": "Q",
        "dim": 2,
        # flip with one corrupting entry: braid equation fails
        "c": ["1", "0", "0", "0",
              "1", "0", "1", "0",
              "0", "1", "0", "0",
              "0", "0", "0", "1"],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    code, out, err = run_cli(capsys, ["validate", "--input", str(path)])
    assert code == 1
    doc = json.loads(out)
    assert not doc["passed"]
    assert doc["braid_equation"]["witness"] is not None
    assert json.loads(err)["error"] == "VerificationFailed"


def test_other_commands_reject_non_braiding(tmp_path, capsys):
    spec = {
        "field": "Q",
        "dim": 2,
        "c": ["1", "0", "0", "0",
              "1", "0", "1", "0",
              "0", "1", "0", "0",
              "0", "0", "0", "1"],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    code, _, err = run_cli(capsys, ["nichols", "--input", str(path), "-N", "2"])
    assert code == 2
    assert json.loads(err)["error"] == "BraidEquationError"


def test_hecke_command(capsys):
    code, out, _ = run_cli(capsys, ["hecke", "--gen", "dj_hecke", "--n", "2", "--q", "2",
                                    "--lambda", "4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["marks"] == ["4"]
    assert doc["check"]["ok"]


def test_sym_dims(capsys):
    code, out, _ = run_cli(capsys, ["sym", "--gen", "dj_hecke", "--n", "2", "--q", "2",
                                    "-N", "5"])
    assert code == 0
    assert json.loads(out)["dims"] == [1, 2, 3, 4, 5, 6]


def test_sym_table_format(capsys):
    code, out, _ = run_cli(capsys, ["sym", "--gen", "dj_hecke", "--n", "2", "--q", "2",
                                    "-N", "3", "--format", "table"])
    assert code == 0
    assert "dims: 1 2 3 4" in out


def test_nichols_matches_sym(capsys):
    code, out, _ = run_cli(capsys, ["nichols", "--gen", "dj_hecke", "--n", "2", "--q", "2",
                                    "-N", "4"])
    assert code == 0
    assert json.loads(out)["dims"] == [1, 2, 3, 4, 5]


def test_env_with_input_file(tmp_path, capsys):
    spec = {"field": "F8", "dim": 1, "c": [1], "bracket": [1]}
    path = tmp_path / "char2.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run_cli(capsys, ["env", "--input", str(path), "--lambda", "g", "-N", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [1, 2, 2, 2]
    assert doc["iota"]["injective"]
    assert doc["grU_dims"] == [1, 1, 0, 0]


def test_primitives_command(capsys):
    code, out, _ = run_cli(capsys, ["primitives", "--gen", "flip", "--n", "2", "-N", "4"])
    assert code == 0
    assert json.loads(out)["dims"] == [2, 1, 2, 3]
    code, out, _ = run_cli(capsys, ["primitives", "--gen", "dj_hecke", "--n", "2",
                                    "--q", "2", "-N", "4", "--object", "S"])
    assert code == 0
    assert json.loads(out)["dims"] == [2, 0, 0, 0]


def test_verify_single_theorem(capsys):
    code, out, _ = run_cli(capsys, ["verify", "milnor-moore", "--gen", "dj_hecke",
                                    "--n", "2", "--q", "2", "-N", "4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["conclusion"]["verdict"] is True


def test_verify_categorical_over_f5(capsys):
    code, out, _ = run_cli(capsys, ["verify", "categorical-rigidity", "--gen", "dj_hecke",
                                    "--field", "F5", "--n", "2", "--q", "2"])
    assert code == 0


def test_strict_unknown_key_rejected(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"field": "Q", "dim": 1, "c": [1], "bogus": True}))
    code, _, err = run_cli(capsys, ["validate", "--input", str(path)])
    assert code == 2
    assert json.loads(err)["error"] == "InputFormatError"


def test_missing_input_is_usage_error(capsys):
    code, _, err = run_cli(capsys, ["sym", "-N", "3"])
    assert code == 2
    assert "error" in json.loads(err)


def test_nonzero_exit_carries_error_object(capsys):
    # mark 3 is not a Hecke mark of the flip: computation refuses
    code, _, err = run_cli(capsys, ["sym", "--gen", "flip", "--n", "2",
                                    "--lambda", "3", "-N", "3"])
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "NotHeckeError"


def test_output_file_and_figures(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    fig_dir = tmp_path / "figs"
    code, _, _ = run_cli(capsys, ["sym", "--gen", "dj_hecke", "--n", "2", "--q", "2",
                                  "-N", "4", "--output", str(out_path),
                                  "--figures", str(fig_dir)])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["figures"] == ["sym_S_dims.png"]
    assert (fig_dir / "sym_S_dims.png").stat().st_size > 0


def test_verify_all_passes_and_is_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, ["verify", "all"])
    code2, out2, _ = run_cli(capsys, ["verify", "all"])
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["passed"]
    assert len(doc["suite"]) >= 10


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "braidkit.cli", "qbinom", "4", "2", "--lambda", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "35"
