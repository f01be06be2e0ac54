import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qmatrix import catalog, io
from qmatrix.cli import main
from qmatrix.core import QuantumFuzzySet

DATA = Path(__file__).resolve().parent.parent / "data"
CDP = str(DATA / "cat_dog_pet.json")
BELL = str(DATA / "bell.json")
GHZ = str(DATA / "ghz3.json")
HADAMARD = str(DATA / "hadamard_basis.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def bad_psd(tmp_path):
    doc = {
        "schema_version": "qfs-1",
        "dim": 2,
        "elements": [{"label": "x", "matrix": [[[0.5, 0], [0.51, 0]], [[0.51, 0], [0.5, 0]]]}],
    }
    path = tmp_path / "bad.json"
    io.write_json(path, doc)
    return str(path)


def test_inspect_text(capsys):
    code, out, _ = run(capsys, "inspect", CDP)
    assert code == 0
    assert "dim 2, 3 elements" in out
    cat_line = next(line for line in out.splitlines() if line.startswith("cat"))
    assert "0.3000" in cat_line and "0.7600" in cat_line and "0.6000" in cat_line


def test_inspect_json(capsys):
    code, out, _ = run(capsys, "inspect", CDP, "--json")
    rows = {r["label"]: r for r in json.loads(out)["elements"]}
    assert code == 0
    assert rows["dog"]["purity"] == pytest.approx(0.60, abs=1e-12)
    assert rows["pet"]["membership"] == pytest.approx(0.5, abs=1e-12)
    assert rows["cat"]["bloch"] == pytest.approx([0.6, 0.0, 0.4], abs=1e-12)


def test_inspect_validation_error(capsys, bad_psd):
    code, out, err = run(capsys, "inspect", bad_psd)
    assert code == 2 and out == ""
    assert err.startswith("ValidationError: NotPositiveSemidefinite: ")
    assert len(err.strip().splitlines()) == 1


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text("[1, 2")
    code, _, err = run(capsys, "inspect", str(path))
    assert code == 2 and err.startswith("ParseError: ")
    code, _, err = run(capsys, "inspect", str(tmp_path / "nope.json"))
    assert code == 2 and err.startswith("ParseError: ")


def test_classical_verdicts(capsys, tmp_path):
    code, out, _ = run(capsys, "classical", CDP)
    assert code == 3 and out.startswith("not classical")
    dec = tmp_path / "dec.json"
    assert run(capsys, "decohere", CDP, "--out", str(dec))[0] == 0
    code, out, _ = run(capsys, "classical", str(dec), "--json")
    assert code == 0 and json.loads(out)["classical"] is True


def test_classical_tolerance_override(capsys):
    # the largest commutator norm is about 0.198; a loose enough tolerance accepts the set
    code, _, _ = run(capsys, "classical", CDP, "--tol-comm", "0.5")
    assert code == 0


def test_decohere_stdout(capsys):
    code, out, _ = run(capsys, "decohere", CDP)
    q = io.parse_qfs(json.loads(out))
    assert code == 0
    assert np.allclose(q["cat"].matrix, np.diag([0.7, 0.3]), atol=1e-15)


def test_decohere_hadamard_basis_fixes_plus(capsys, tmp_path):
    src = tmp_path / "plus.json"
    io.write_json(src, io.dump_qfs(QuantumFuzzySet(["plus"], [catalog.plus_state()])))
    code, out, _ = run(capsys, "decohere", str(src), "--basis", HADAMARD)
    assert code == 0
    out_state = io.parse_qfs(json.loads(out))["plus"]
    assert np.allclose(out_state.matrix, catalog.plus_state().matrix, atol=1e-12)


def test_decohere_basis_dim_mismatch(capsys, tmp_path):
    path = tmp_path / "q3.json"
    io.write_json(path, io.dump_qfs(QuantumFuzzySet(["m"], [np.eye(3) / 3])))
    code, _, err = run(capsys, "decohere", str(path), "--basis", HADAMARD)
    assert code == 2 and "DimensionMismatch" in err


def test_fidelity(capsys):
    code, out, _ = run(capsys, "fidelity", CDP, "--json")
    f = np.array(json.loads(out)["fidelity"])
    assert code == 0
    assert f[0, 1] == pytest.approx(0.8898, abs=5e-4)
    code, out, _ = run(capsys, "fidelity", CDP)
    assert "0.9782" in out


def test_holevo(capsys):
    code, out, _ = run(capsys, "holevo", CDP, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["holevo_bits"] == pytest.approx(0.07648464952478895, abs=1e-12)
    code, out, _ = run(capsys, "holevo", CDP, "--weights", "1,0,0", "--json")
    assert json.loads(out)["holevo_bits"] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "weights, err_name",
    [("0.5,0.5", "WeightMismatch"), ("0.5,0.5,0.5", "WeightNotNormalized"), ("a,b,c", "UsageError")],
)
def test_holevo_weight_errors(capsys, weights, err_name):
    code, _, err = run(capsys, "holevo", CDP, "--weights", weights)
    assert code == 4
    assert err.startswith("UsageError: ") and err_name in err


def test_qmatrix_bell(capsys):
    code, out, _ = run(capsys, "qmatrix", BELL, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["mutual_information_bits"] == pytest.approx(2.0, abs=1e-9)
    assert doc["sections"]["A"]["entropy_bits"] == pytest.approx(1.0, abs=1e-9)
    code, out, _ = run(capsys, "qmatrix", BELL)
    assert "I(A : B) = 2.0000 bits" in out


def test_qmatrix_parts(capsys):
    code, out, _ = run(capsys, "qmatrix", GHZ, "--parts", "q0|q1", "--json")
    assert code == 0 and json.loads(out)["mutual_information_bits"] == pytest.approx(1.0, abs=1e-9)
    code, out, _ = run(capsys, "qmatrix", GHZ, "--parts", "q0|q1,q2", "--json")
    assert json.loads(out)["mutual_information_bits"] == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize(
    "parts, name", [("q0|q0", "OverlappingParts"), ("q0|zz", "UnknownLabel"), ("q0", "UsageError"), ("|q1", "EmptyKeepSet")]
)
def test_qmatrix_part_errors(capsys, parts, name):
    code, _, err = run(capsys, "qmatrix", GHZ, "--parts", parts)
    assert code == 4 and name in err


@pytest.mark.parametrize("name", ["cat-dog-pet", "bell", "categorical"])
def test_examples_pass(capsys, name):
    code, out, _ = run(capsys, "examples", name)
    assert code == 0
    assert "FAIL" not in out
    code, out, _ = run(capsys, "examples", name, "--json")
    assert json.loads(out)["passed"] is True


def test_unknown_example(capsys):
    code, _, err = run(capsys, "examples", "dragon")
    assert code == 4 and err.startswith("UsageError: UnknownExample: ")


def test_argparse_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 4
    with pytest.raises(SystemExit) as info:
        main(["inspect"])
    assert info.value.code == 4
    assert "UsageError" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qmatrix", "classical", CDP], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 3
    assert proc.stdout.startswith("not classical")
