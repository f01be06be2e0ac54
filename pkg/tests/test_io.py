import json

import numpy as np
import pytest

from qmatrix import catalog, errors, io
from qmatrix.core import Basis, QuantumFuzzySet
from qmatrix.random import random_density, random_unitary


def test_qfs_round_trip(cdp):
    doc = io.dump_qfs(cdp)
    assert doc["schema_version"] == "qfs-1"
    back = io.parse_qfs(json.loads(json.dumps(doc)))
    assert back.labels == cdp.labels
    for x in cdp:
        assert np.array_equal(back[x].matrix, cdp[x].matrix)
    assert io.dump_qfs(back) == doc


def test_random_qfs_round_trip_is_exact(rng):
    states = [random_density(3, rng) for _ in range(4)]
    q = QuantumFuzzySet([f"s{i}" for i in range(4)], states)
    back = io.parse_qfs(json.loads(json.dumps(io.dump_qfs(q))))
    for x in q:
        assert np.array_equal(back[x].matrix, q[x].matrix)


def test_qmatrix_round_trip():
    qm = catalog.ghz_qmatrix(3)
    doc = io.dump_qmatrix(qm)
    back = io.parse_qmatrix(json.loads(json.dumps(doc)))
    assert back.labels == qm.labels and back.dims == qm.dims
    assert np.array_equal(back.global_state.matrix, qm.global_state.matrix)


def test_basis_round_trip(rng):
    b = Basis.from_unitary(random_unitary(3, rng))
    back = io.parse_basis(json.loads(json.dumps(io.dump_basis(b))))
    assert np.array_equal(back.unitary, b.unitary)


def test_empty_qfs_round_trip():
    q = QuantumFuzzySet([], [], dim=3)
    back = io.parse_qfs(io.dump_qfs(q))
    assert len(back) == 0 and back.dim == 3


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"schema_version": "qfs-2", "dim": 2, "elements": []},
        {"schema_version": "qfs-1", "elements": []},
        {"schema_version": "qfs-1", "dim": "2", "elements": []},
        {"schema_version": "qfs-1", "dim": True, "elements": []},
        {"schema_version": "qfs-1", "dim": 0, "elements": []},
        {"schema_version": "qfs-1", "dim": 1, "elements": [{"label": "a"}]},
        {"schema_version": "qfs-1", "dim": 1, "elements": [{"label": 3, "matrix": [[[1, 0]]]}]},
        {"schema_version": "qfs-1", "dim": 1, "elements": [{"label": "a", "matrix": [[1]]}]},
        {"schema_version": "qfs-1", "dim": 1, "elements": [{"label": "a", "matrix": [[["1", 0]]]}]},
        {"schema_version": "qfs-1", "dim": 2, "elements": [{"label": "a", "matrix": [[[1, 0]]]}]},
        {"schema_version": "qfs-1", "dim": 1, "elements": ["a"]},
    ],
)
def test_parse_errors(doc):
    with pytest.raises(errors.ParseError):
        io.parse_qfs(doc)


def test_validation_errors_pass_through():
    doc = {
        "schema_version": "qfs-1",
        "dim": 2,
        "elements": [{"label": "a", "matrix": [[[1, 0], [0, 0]], [[0, 0], [0.5, 0]]]}],
    }
    with pytest.raises(errors.TraceNotOne):
        io.parse_qfs(doc)
    doc["elements"][0]["matrix"] = [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]
    doc["elements"].append(doc["elements"][0])
    with pytest.raises(errors.DuplicateLabel):
        io.parse_qfs(doc)


def test_qmatrix_parse_errors():
    good = io.dump_qmatrix(catalog.bell_qmatrix())
    with pytest.raises(errors.ParseError):
        io.parse_qmatrix({**good, "dims": [2, 0]})
    with pytest.raises(errors.ParseError):
        io.parse_qmatrix({**good, "dims": [2, 3]})
    with pytest.raises(errors.ParseError):
        io.parse_qmatrix({**good, "labels": ["A", 1]})
    with pytest.raises(errors.LengthMismatch):
        io.parse_qmatrix({**good, "labels": ["A", "B", "C"]})


def test_read_json_errors(tmp_path):
    with pytest.raises(errors.ParseError, match="cannot read"):
        io.read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(errors.ParseError, match="invalid JSON"):
        io.read_json(bad)


def test_write_then_load(tmp_path, cdp):
    path = tmp_path / "q.json"
    io.write_json(path, io.dump_qfs(cdp))
    assert io.load_qfs(path).labels == cdp.labels
