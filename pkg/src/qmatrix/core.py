"""Density matrices, quantum fuzzy sets and Q-Matrices.

A quantum fuzzy set assigns a density matrix on a shared Hilbert space to
every label. A Q-Matrix is one global density matrix on a tensor product of
labelled subsystems; its single-label partial traces are the sections.

All objects are immutable: matrices are stored as read-only numpy arrays and
every operation returns a new object.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from types import MappingProxyType

import numpy as np

from . import kernels
from ._linalg import entropy_bits, hermitian_defect, hermitize, readonly, trace_norm
from .errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    DuplicateLabel,
    EmptyKeepSet,
    HeterogeneousDims,
    LabelMismatch,
    LengthMismatch,
    NotHermitian,
    NotPositiveSemidefinite,
    NotSquare,
    OverlappingParts,
    TraceNotOne,
    UnknownLabel,
    ValidationError,
)
from .tolerance import DEFAULT_TOL, ToleranceConfig

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# below this the trace is left alone, so exactly-representable inputs stay exact
_TRACE_SNAP = 1e-14


class DensityMatrix:
    """A validated Hermitian, positive semidefinite, unit-trace matrix.

    Construct through :func:`make_density` (or the class itself, which calls
    it). The underlying array is read-only.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix, tol: ToleranceConfig = DEFAULT_TOL):
        self._m = _validated(matrix, tol)

    @classmethod
    def _trusted(cls, matrix: np.ndarray) -> "DensityMatrix":
        obj = cls.__new__(cls)
        obj._m = readonly(matrix)
        return obj

    @classmethod
    def from_vector(cls, psi, tol: ToleranceConfig = DEFAULT_TOL) -> "DensityMatrix":
        """Projector onto a state vector (normalized here)."""
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("zero vector has no projector")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), tol)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls._trusted(np.eye(dim) / dim)

    @classmethod
    def basis_state(cls, index: int, dim: int) -> "DensityMatrix":
        m = np.zeros((dim, dim), dtype=complex)
        m[index, index] = 1.0
        return cls._trusted(m)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self._m if dtype is None else self._m.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, {np.array2string(self._m, precision=4)})"

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix._trusted(np.kron(self._m, other._m))

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(np.allclose(self._m, other._m, rtol=0, atol=atol))


def _validated(matrix, tol: ToleranceConfig) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise NotSquare(f"NotSquare: expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")

    defect = hermitian_defect(m)
    if defect > tol.herm:
        raise NotHermitian(f"NotHermitian: max |m - m^dagger| = {defect:.3g} > {tol.herm:g}")
    m = hermitize(m)

    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > tol.trace:
        raise TraceNotOne(f"TraceNotOne: trace = {tr:.12g}, |trace - 1| = {abs(tr - 1):.3g} > {tol.trace:g}")

    w, v = np.linalg.eigh(m)
    lo = float(w[0])
    if lo < -tol.psd:
        raise NotPositiveSemidefinite(
            f"NotPositiveSemidefinite: min eigenvalue = {lo:.6g} < {-tol.psd:g}"
        )
    if lo < 0:
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        m = hermitize((v * w) @ v.conj().T)
    elif abs(tr - 1.0) > _TRACE_SNAP:
        m = m / tr
    m.flags.writeable = False
    return m


def make_density(m, tol: ToleranceConfig = DEFAULT_TOL) -> DensityMatrix:
    """Validate ``m`` and wrap it as a :class:`DensityMatrix`.

    Violations beyond tolerance raise ``NotHermitian``, ``TraceNotOne`` or
    ``NotPositiveSemidefinite``. Slightly negative eigenvalues (within
    ``tol.psd``) are clamped to zero and the spectrum renormalized.
    """
    return DensityMatrix(m, tol)


def _as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


class Basis:
    """An orthonormal basis, stored as the columns of a unitary matrix."""

    __slots__ = ("_u",)

    def __init__(self, vectors, tol: ToleranceConfig = DEFAULT_TOL):
        vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
        if not vecs:
            raise BasisNotOrthonormal("BasisNotOrthonormal: no vectors given")
        d = vecs[0].size
        if any(v.size != d for v in vecs) or len(vecs) != d:
            raise BasisNotOrthonormal(
                f"BasisNotOrthonormal: need {d} vectors of length {d}, got {len(vecs)}"
            )
        u = np.column_stack(vecs)
        defect = float(np.max(np.abs(u.conj().T @ u - np.eye(d))))
        if defect > tol.herm:
            raise BasisNotOrthonormal(
                f"BasisNotOrthonormal: max |<e_i|e_j> - delta_ij| = {defect:.3g} > {tol.herm:g}"
            )
        self._u = readonly(u)

    @classmethod
    def computational(cls, dim: int) -> "Basis":
        return cls(np.eye(dim))

    @classmethod
    def from_unitary(cls, u, tol: ToleranceConfig = DEFAULT_TOL) -> "Basis":
        u = np.asarray(u, dtype=complex)
        return cls(u.T, tol)

    @property
    def unitary(self) -> np.ndarray:
        """Matrix whose columns are the basis vectors."""
        return self._u

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self._u[:, i] for i in range(self.dim)]

    @property
    def dim(self) -> int:
        return self._u.shape[0]

    def is_computational(self) -> bool:
        return bool(np.array_equal(self._u, np.eye(self.dim)))

    def to_basis(self, m: np.ndarray) -> np.ndarray:
        """Express an operator in this basis (U^dagger m U)."""
        if self.is_computational():
            return np.array(m, dtype=complex)
        return self._u.conj().T @ m @ self._u

    def from_basis(self, m: np.ndarray) -> np.ndarray:
        if self.is_computational():
            return np.array(m, dtype=complex)
        return self._u @ m @ self._u.conj().T

    def __repr__(self) -> str:
        return f"Basis(dim={self.dim})"


def _require_dim(what: str, got: int, expected: int) -> None:
    if got != expected:
        raise DimensionMismatch(f"DimensionMismatch: {what} has dim {got}, expected {expected}")


def _require_qubit(rho: DensityMatrix) -> None:
    _require_dim("state", rho.dim, 2)


# scalar diagnostics


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state."""
    m = rho.matrix
    return float(np.real(np.vdot(m, m)))


def von_neumann_entropy(rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Entropy in bits. Eigenvalues at or below ``tol.eig`` contribute nothing."""
    return entropy_bits(np.linalg.eigvalsh(rho.matrix), tol.eig)


def bloch_vector(rho: DensityMatrix) -> tuple[float, float, float]:
    _require_qubit(rho)
    m = rho.matrix
    return (
        float(2 * m[0, 1].real),
        float(-2 * m[0, 1].imag) + 0.0,
        float((m[0, 0] - m[1, 1]).real),
    )


def membership(rho: DensityMatrix) -> float:
    """Probability of |1>, i.e. the classical fuzzy membership of a qubit state."""
    _require_qubit(rho)
    return float(min(max(rho.matrix[1, 1].real, 0.0), 1.0))


def l1_coherence(rho: DensityMatrix, basis: Basis | None = None) -> float:
    """Sum of |off-diagonal entries| of rho written in ``basis``."""
    if basis is None:
        basis = Basis.computational(rho.dim)
    _require_dim("basis", basis.dim, rho.dim)
    m = basis.to_basis(rho.matrix)
    return float(np.abs(m).sum() - np.abs(np.diagonal(m)).sum())


# quantum fuzzy sets


class QuantumFuzzySet(Mapping):
    """An ordered label set with one density matrix per label, all of one dimension."""

    __slots__ = ("_labels", "_states", "_dim")

    def __init__(self, labels: Sequence[str], states: Sequence, dim: int | None = None):
        labels = tuple(labels)
        states = tuple(_as_density(s) for s in states)
        if len(labels) != len(states):
            raise LengthMismatch(
                f"LengthMismatch: {len(labels)} labels but {len(states)} states"
            )
        seen = set()
        for lab in labels:
            if not isinstance(lab, str):
                raise ValidationError(f"label {lab!r} is not a string")
            if lab in seen:
                raise DuplicateLabel(f"DuplicateLabel: {lab!r}")
            seen.add(lab)
        if states:
            d = states[0].dim
            for lab, s in zip(labels, states):
                if s.dim != d:
                    raise DimensionMismatch(
                        f"DimensionMismatch: state {lab!r} has dim {s.dim}, expected {d}"
                    )
            if dim is not None and dim != d:
                raise DimensionMismatch(f"DimensionMismatch: states have dim {d}, declared {dim}")
            dim = d
        elif dim is None:
            raise ValidationError("an empty fuzzy set needs an explicit dim")
        self._labels = labels
        self._states = MappingProxyType(dict(zip(labels, states)))
        self._dim = int(dim)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def states(self) -> tuple[DensityMatrix, ...]:
        return tuple(self._states[x] for x in self._labels)

    @property
    def dim(self) -> int:
        return self._dim

    def __getitem__(self, label: str) -> DensityMatrix:
        try:
            return self._states[label]
        except KeyError:
            raise UnknownLabel(f"UnknownLabel: {label!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __repr__(self) -> str:
        return f"QuantumFuzzySet(labels={list(self._labels)}, dim={self._dim})"

    def stack(self) -> np.ndarray:
        """States as a (n, dim, dim) array in label order."""
        if not self._labels:
            return np.zeros((0, self._dim, self._dim), dtype=complex)
        return np.stack([s.matrix for s in self.states])

    def memberships(self) -> dict[str, float]:
        return {x: membership(self[x]) for x in self._labels}


def qfs_make(labels: Sequence[str], states: Sequence, dim: int | None = None) -> QuantumFuzzySet:
    return QuantumFuzzySet(labels, states, dim)


def qfs_is_classical(q: QuantumFuzzySet, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, float]:
    """Pairwise-commutation test.

    Returns the verdict and the largest Frobenius norm of a commutator
    ``[rho_x, rho_y]``; the threshold is ``tol.comm * dim``.
    """
    worst = kernels.max_commutator_norm(q.stack()) if len(q) > 1 else 0.0
    return worst <= tol.comm * q.dim, worst


def dephase(rho: DensityMatrix, basis: Basis) -> DensityMatrix:
    """Drop all coherences of rho in ``basis``."""
    _require_dim("basis", basis.dim, rho.dim)
    diag = np.diagonal(basis.to_basis(rho.matrix)).real
    return DensityMatrix._trusted(basis.from_basis(np.diag(diag).astype(complex)))


def qfs_decohere(q: QuantumFuzzySet, basis: Basis | None = None) -> QuantumFuzzySet:
    if basis is None:
        basis = Basis.computational(q.dim)
    _require_dim("basis", basis.dim, q.dim)
    return QuantumFuzzySet(q.labels, [dephase(s, basis) for s in q.states], q.dim)


# Q-Matrix


class QMatrix:
    """A global density matrix over labelled tensor factors.

    Subsystem 0 is the most significant digit of the composite index.
    """

    __slots__ = ("_labels", "_dims", "_global")

    def __init__(self, labels: Sequence[str], dims: Sequence[int], global_state):
        labels = tuple(labels)
        dims = tuple(int(d) for d in dims)
        if len(labels) != len(dims):
            raise LengthMismatch(f"LengthMismatch: {len(labels)} labels but {len(dims)} dims")
        if len(set(labels)) != len(labels):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise DuplicateLabel(f"DuplicateLabel: {dup!r}")
        if not labels:
            raise ValidationError("a Q-Matrix needs at least one subsystem")
        if any(d < 1 for d in dims):
            raise DimensionMismatch(f"DimensionMismatch: subsystem dims must be positive, got {dims}")
        rho = _as_density(global_state)
        total = math.prod(dims)
        if rho.dim != total:
            raise DimensionMismatch(
                f"DimensionMismatch: product of dims {dims} is {total}, global state has dim {rho.dim}"
            )
        self._labels, self._dims, self._global = labels, dims, rho

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    @property
    def global_state(self) -> DensityMatrix:
        return self._global

    def __repr__(self) -> str:
        return f"QMatrix(labels={list(self._labels)}, dims={list(self._dims)})"

    def _mask(self, keep: Iterable[str]) -> list[bool]:
        keep = set(keep)
        unknown = keep.difference(self._labels)
        if unknown:
            raise UnknownLabel(f"UnknownLabel: {sorted(unknown)} not in {list(self._labels)}")
        return [x in keep for x in self._labels]


def qmatrix_make(labels: Sequence[str], dims: Sequence[int], global_state) -> QMatrix:
    return QMatrix(labels, dims, global_state)


def product_qmatrix(labels: Sequence[str], states: Sequence[DensityMatrix]) -> QMatrix:
    """Q-Matrix of the tensor product of ``states``."""
    states = [_as_density(s) for s in states]
    m = np.ones((1, 1), dtype=complex)
    for s in states:
        m = np.kron(m, s.matrix)
    return QMatrix(labels, [s.dim for s in states], DensityMatrix._trusted(m))


def partial_trace(qm: QMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on ``keep``, with kept subsystems in the Q-Matrix's order."""
    if isinstance(keep, str):
        keep = [keep]
    mask = qm._mask(keep)
    if not any(mask):
        raise EmptyKeepSet("EmptyKeepSet: keep at least one subsystem")
    if all(mask):
        return qm.global_state
    reduced = kernels.partial_trace(qm.global_state.matrix, qm.dims, mask)
    return DensityMatrix._trusted(hermitize(reduced))


def qmatrix_sections(qm: QMatrix) -> QuantumFuzzySet:
    if len(set(qm.dims)) != 1:
        raise HeterogeneousDims(
            f"HeterogeneousDims: sections need one shared dimension, got {list(qm.dims)}"
        )
    return QuantumFuzzySet(qm.labels, [partial_trace(qm, [x]) for x in qm.labels], qm.dims[0])


def realizes(qm: QMatrix, q: QuantumFuzzySet, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether every section of ``qm`` matches ``q`` within ``tol.real`` trace distance."""
    if set(qm.labels) != set(q.labels):
        raise LabelMismatch(
            f"LabelMismatch: Q-Matrix labels {sorted(qm.labels)} vs fuzzy-set labels {sorted(q.labels)}"
        )
    for x, d in zip(qm.labels, qm.dims):
        if d != q.dim:
            return False
        section = partial_trace(qm, [x])
        if 0.5 * trace_norm(section.matrix - q[x].matrix) > tol.real:
            return False
    return True


def mutual_information(
    qm: QMatrix,
    part_a: Iterable[str],
    part_b: Iterable[str],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> float:
    """S(A) + S(B) - S(AB) in bits."""
    part_a = [part_a] if isinstance(part_a, str) else list(part_a)
    part_b = [part_b] if isinstance(part_b, str) else list(part_b)
    if not part_a or not part_b:
        raise EmptyKeepSet("EmptyKeepSet: both parts must be nonempty")
    overlap = set(part_a) & set(part_b)
    if overlap:
        raise OverlappingParts(f"OverlappingParts: {sorted(overlap)} in both parts")
    s_a = von_neumann_entropy(partial_trace(qm, part_a), tol)
    s_b = von_neumann_entropy(partial_trace(qm, part_b), tol)
    s_ab = von_neumann_entropy(partial_trace(qm, part_a + part_b), tol)
    return s_a + s_b - s_ab


def section_entropy_excess(qm: QMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Sum of single-label section entropies minus the global entropy."""
    local = sum(von_neumann_entropy(partial_trace(qm, [x]), tol) for x in qm.labels)
    return local - von_neumann_entropy(qm.global_state, tol)


def basis_projectors(basis: Basis) -> list[DensityMatrix]:
    return [DensityMatrix._trusted(np.outer(v, v.conj())) for v in basis.vectors]
