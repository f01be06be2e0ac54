"""JSON documents for fuzzy sets, Q-Matrices and bases.

Complex entries are two-element ``[re, im]`` arrays. Floats are written with
Python's shortest round-trip repr, so ``dump(load(doc))`` reproduces a
canonical document entry for entry.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .core import Basis, DensityMatrix, QMatrix, QuantumFuzzySet
from .errors import ParseError
from .tolerance import DEFAULT_TOL, ToleranceConfig

QFS_SCHEMA = "qfs-1"
QMATRIX_SCHEMA = "qmatrix-1"
BASIS_SCHEMA = "basis-1"


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise ParseError(f"{where}: non-finite number")
    return x


def _complex(pair, where: str) -> complex:
    if not isinstance(pair, list) or len(pair) != 2:
        raise ParseError(f"{where}: expected [re, im], got {pair!r}")
    return complex(_number(pair[0], where), _number(pair[1], where))


def _matrix(rows, n: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{where}: expected {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}: row {i} must have {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex(entry, f"{where}[{i}][{j}]")
    return out


def _vector(entries, n: int, where: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError(f"{where}: expected {n} entries")
    return np.array([_complex(e, f"{where}[{i}]") for i, e in enumerate(entries)])


def encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _field(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    val = doc[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return val


def _schema(doc, expected: str) -> None:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    got = doc.get("schema_version")
    if got != expected:
        raise ParseError(f"schema_version must be {expected!r}, got {got!r}")


def parse_qfs(doc, tol: ToleranceConfig = DEFAULT_TOL) -> QuantumFuzzySet:
    _schema(doc, QFS_SCHEMA)
    dim = _field(doc, "dim", int, "qfs")
    if dim < 1:
        raise ParseError("qfs: dim must be positive")
    elements = _field(doc, "elements", list, "qfs")
    labels, states = [], []
    for k, el in enumerate(elements):
        if not isinstance(el, dict):
            raise ParseError(f"elements[{k}] must be an object")
        label = _field(el, "label", str, f"elements[{k}]")
        m = _matrix(_field(el, "matrix", list, f"elements[{k}]"), dim, f"elements[{k}].matrix")
        labels.append(label)
        states.append(DensityMatrix(m, tol))
    return QuantumFuzzySet(labels, states, dim)


def dump_qfs(q: QuantumFuzzySet) -> dict:
    return {
        "schema_version": QFS_SCHEMA,
        "dim": q.dim,
        "elements": [{"label": x, "matrix": encode_matrix(q[x].matrix)} for x in q.labels],
    }


def parse_qmatrix(doc, tol: ToleranceConfig = DEFAULT_TOL) -> QMatrix:
    _schema(doc, QMATRIX_SCHEMA)
    labels = _field(doc, "labels", list, "qmatrix")
    dims = _field(doc, "dims", list, "qmatrix")
    if not all(isinstance(x, str) for x in labels):
        raise ParseError("qmatrix: labels must be strings")
    if any(isinstance(d, bool) or not isinstance(d, int) or d < 1 for d in dims):
        raise ParseError("qmatrix: dims must be positive integers")
    n = math.prod(dims)
    m = _matrix(_field(doc, "matrix", list, "qmatrix"), n, "qmatrix.matrix")
    return QMatrix(labels, dims, DensityMatrix(m, tol))


def dump_qmatrix(qm: QMatrix) -> dict:
    return {
        "schema_version": QMATRIX_SCHEMA,
        "labels": list(qm.labels),
        "dims": list(qm.dims),
        "matrix": encode_matrix(qm.global_state.matrix),
    }


def parse_basis(doc, tol: ToleranceConfig = DEFAULT_TOL) -> Basis:
    """``{"schema_version": "basis-1", "dim": d, "vectors": [[[re, im], ...], ...]}``."""
    _schema(doc, BASIS_SCHEMA)
    dim = _field(doc, "dim", int, "basis")
    vectors = _field(doc, "vectors", list, "basis")
    return Basis([_vector(v, dim, f"vectors[{i}]") for i, v in enumerate(vectors)], tol)


def dump_basis(b: Basis) -> dict:
    return {
        "schema_version": BASIS_SCHEMA,
        "dim": b.dim,
        "vectors": [[[float(z.real), float(z.imag)] for z in v] for v in b.vectors],
    }


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def load_qfs(path, tol: ToleranceConfig = DEFAULT_TOL) -> QuantumFuzzySet:
    return parse_qfs(read_json(path), tol)


def load_qmatrix(path, tol: ToleranceConfig = DEFAULT_TOL) -> QMatrix:
    return parse_qmatrix(read_json(path), tol)


def load_basis(path, tol: ToleranceConfig = DEFAULT_TOL) -> Basis:
    return parse_basis(read_json(path), tol)
