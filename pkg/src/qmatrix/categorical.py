"""CPTP channels in Kraus form and the category of quantum fuzzy sets.

A morphism ``(f, channel): (X, mu_X) -> (Y, mu_Y)`` pairs a label map with
a channel such that ``channel(mu_X(x)) == mu_Y(f(x))`` for every label,
up to ``tol.morph`` in trace distance.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from types import MappingProxyType

import numpy as np

from . import kernels
from ._linalg import frobenius, hermitize, readonly, trace_norm
from .core import (
    PAULI_X,
    Basis,
    DensityMatrix,
    QuantumFuzzySet,
    _require_dim,
)
from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    EmptyKrausList,
    LabelMismatch,
    MorphismConditionViolated,
    NotIso,
    NotTracePreserving,
    NotUnitary,
    SourceTargetMismatch,
    UnknownLabel,
)
from .tolerance import DEFAULT_TOL, ToleranceConfig

PAIR_SEP = "⊗"


class QuantumChannel:
    """A trace-preserving map rho -> sum_k K_k rho K_k^dagger on one fixed dimension."""

    __slots__ = ("_kraus",)

    def __init__(self, kraus_ops, tol: ToleranceConfig = DEFAULT_TOL):
        ops = [np.asarray(k, dtype=complex) for k in kraus_ops]
        if not ops:
            raise EmptyKrausList("EmptyKrausList: a channel needs at least one Kraus operator")
        d = ops[0].shape[0] if ops[0].ndim == 2 else -1
        for i, k in enumerate(ops):
            if k.ndim != 2 or k.shape != (d, d):
                raise DimensionMismatch(
                    f"DimensionMismatch: Kraus operator {i} has shape {k.shape}, expected ({d}, {d})"
                )
        stack = np.stack(ops)
        defect = frobenius(np.einsum("kji,kjl->il", stack.conj(), stack) - np.eye(d))
        if defect > tol.tp:
            raise NotTracePreserving(
                f"NotTracePreserving: ||sum K^dagger K - I||_F = {defect:.3g} > {tol.tp:g}"
            )
        self._kraus = readonly(stack)

    @classmethod
    def _trusted(cls, stack: np.ndarray) -> "QuantumChannel":
        obj = cls.__new__(cls)
        obj._kraus = readonly(stack)
        return obj

    @property
    def kraus(self) -> np.ndarray:
        """Kraus operators as a read-only (n, dim, dim) array."""
        return self._kraus

    @property
    def dim(self) -> int:
        return self._kraus.shape[1]

    def __len__(self) -> int:
        return self._kraus.shape[0]

    def __call__(self, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> DensityMatrix:
        return channel_apply(self, rho, tol)

    def __repr__(self) -> str:
        return f"QuantumChannel(dim={self.dim}, n_kraus={len(self)})"

    def choi(self) -> np.ndarray:
        return kernels.choi_matrix(self._kraus)


def channel_make(kraus_ops, tol: ToleranceConfig = DEFAULT_TOL) -> QuantumChannel:
    return QuantumChannel(kraus_ops, tol)


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel._trusted(np.eye(dim, dtype=complex)[None])


def unitary_channel(u, tol: ToleranceConfig = DEFAULT_TOL) -> QuantumChannel:
    return QuantumChannel([u], tol)


def dephasing_channel(basis: Basis) -> QuantumChannel:
    """Kraus operators |e_i><e_i| of ``basis``."""
    return QuantumChannel([np.outer(v, v.conj()) for v in basis.vectors])


def bit_flip_channel() -> QuantumChannel:
    return QuantumChannel._trusted(PAULI_X[None])


def channel_apply(
    channel: QuantumChannel, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOL
) -> DensityMatrix:
    _require_dim("state", rho.dim, channel.dim)
    out = kernels.kraus_apply(channel.kraus, rho.matrix)
    return DensityMatrix(out, tol)


def channel_compose(outer: QuantumChannel, inner: QuantumChannel) -> QuantumChannel:
    """``outer`` after ``inner``; Kraus set {L_j K_i}, not recompressed."""
    if outer.dim != inner.dim:
        raise DimensionMismatch(
            f"DimensionMismatch: cannot compose dim {outer.dim} after dim {inner.dim}"
        )
    d = outer.dim
    prod = np.einsum("jab,ibc->jiac", outer.kraus, inner.kraus)
    return QuantumChannel._trusted(prod.reshape(-1, d, d))


def channel_tensor(a: QuantumChannel, b: QuantumChannel) -> QuantumChannel:
    """Kraus set {K_i (x) L_j} acting on the tensor product space."""
    da, db = a.dim, b.dim
    prod = np.einsum("iab,jcd->ijacbd", a.kraus, b.kraus)
    return QuantumChannel._trusted(prod.reshape(-1, da * db, da * db))


def channel_is_unitary(channel: QuantumChannel, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray | None:
    """The unitary implementing ``channel``, or ``None`` if there is none.

    Uses the Choi matrix, so redundant Kraus decompositions of a unitary
    channel are still recognized. The returned matrix is fixed only up to a
    global phase.
    """
    d = channel.dim
    w, v = np.linalg.eigh(hermitize(channel.choi()))
    top = float(w[-1])
    if top <= 0 or np.max(np.abs(w[:-1]), initial=0.0) > tol.choi * top:
        return None
    u = (np.sqrt(top) * v[:, -1]).reshape(d, d).T
    if frobenius(u @ u.conj().T - np.eye(d)) > tol.tp:
        return None
    return u


def channels_equal(a: QuantumChannel, b: QuantumChannel, atol: float = 1e-10) -> bool:
    """Equality of action, compared on all matrix units through the Choi matrices."""
    if a.dim != b.dim:
        return False
    return bool(np.max(np.abs(a.choi() - b.choi())) <= atol)


def _trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * trace_norm(a - b)


# objects


def unit_qfs() -> QuantumFuzzySet:
    """The monoidal unit: one label mapped to the 1x1 state [[1]]."""
    return QuantumFuzzySet(["*"], [DensityMatrix._trusted(np.ones((1, 1)))])


def pair_label(x: str, y: str) -> str:
    return f"{x}{PAIR_SEP}{y}"


def qfs_tensor(a: QuantumFuzzySet, b: QuantumFuzzySet) -> QuantumFuzzySet:
    """Labels ``x⊗y`` over X x Y (X-major), states rho_x (x) sigma_y."""
    labels, states = [], []
    for x in a.labels:
        for y in b.labels:
            labels.append(pair_label(x, y))
            states.append(a[x].tensor(b[y]))
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(
            f"DuplicateLabel: rendering pair labels with {PAIR_SEP!r} is ambiguous for these inputs"
        )
    return QuantumFuzzySet(labels, states, a.dim * b.dim)


def qfs_equal(a: QuantumFuzzySet, b: QuantumFuzzySet, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Same label set and per-label trace distance within ``tol.morph``."""
    if set(a.labels) != set(b.labels) or a.dim != b.dim:
        return False
    return all(_trace_distance(a[x].matrix, b[x].matrix) <= tol.morph for x in a.labels)


# morphisms


class QFSMorphism:
    """A label map together with a channel satisfying the commuting square."""

    __slots__ = ("_source", "_target", "_map", "_channel")

    def __init__(
        self,
        source: QuantumFuzzySet,
        target: QuantumFuzzySet,
        label_map: Mapping[str, str],
        channel: QuantumChannel,
        tol: ToleranceConfig = DEFAULT_TOL,
    ):
        lm = _check_label_map(source, target, label_map)
        if channel.dim != source.dim or channel.dim != target.dim:
            raise DimensionMismatch(
                f"DimensionMismatch: channel dim {channel.dim}, source dim {source.dim}, "
                f"target dim {target.dim}"
            )
        worst_label, worst = None, 0.0
        for x in source.labels:
            image = kernels.kraus_apply(channel.kraus, source[x].matrix)
            defect = _trace_distance(image, target[lm[x]].matrix)
            if defect > worst:
                worst_label, worst = x, defect
        if worst > tol.morph:
            raise MorphismConditionViolated(
                f"MorphismConditionViolated: label {worst_label!r} -> {lm[worst_label]!r} "
                f"misses by trace distance {worst:.6g} > {tol.morph:g}"
            )
        self._set(source, target, lm, channel)

    def _set(self, source, target, lm, channel):
        self._source, self._target = source, target
        self._map = MappingProxyType(dict(lm))
        self._channel = channel

    @classmethod
    def _trusted(cls, source, target, label_map, channel) -> "QFSMorphism":
        obj = cls.__new__(cls)
        obj._set(source, target, label_map, channel)
        return obj

    @property
    def source(self) -> QuantumFuzzySet:
        return self._source

    @property
    def target(self) -> QuantumFuzzySet:
        return self._target

    @property
    def label_map(self) -> Mapping[str, str]:
        return self._map

    @property
    def channel(self) -> QuantumChannel:
        return self._channel

    def defect(self) -> float:
        """Largest trace distance between channel(mu_X(x)) and mu_Y(f(x))."""
        worst = 0.0
        for x in self._source.labels:
            image = kernels.kraus_apply(self._channel.kraus, self._source[x].matrix)
            worst = max(worst, _trace_distance(image, self._target[self._map[x]].matrix))
        return worst

    def __repr__(self) -> str:
        return (
            f"QFSMorphism({list(self._source.labels)} -> {list(self._target.labels)}, "
            f"{self._channel!r})"
        )


def _check_label_map(source, target, label_map) -> dict[str, str]:
    lm = dict(label_map)
    missing = [x for x in source.labels if x not in lm]
    if missing:
        raise UnknownLabel(f"UnknownLabel: label map undefined on {missing}")
    extra = [x for x in lm if x not in source]
    if extra:
        raise UnknownLabel(f"UnknownLabel: label map has keys {extra} outside the source")
    bad = [y for y in lm.values() if y not in target]
    if bad:
        raise UnknownLabel(f"UnknownLabel: label map values {bad} not in the target")
    return lm


def morphism_make(
    source: QuantumFuzzySet,
    target: QuantumFuzzySet,
    label_map: Mapping[str, str],
    channel: QuantumChannel,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> QFSMorphism:
    return QFSMorphism(source, target, label_map, channel, tol)


def identity_morphism(q: QuantumFuzzySet) -> QFSMorphism:
    return QFSMorphism._trusted(q, q, {x: x for x in q.labels}, identity_channel(q.dim))


def morphism_compose(
    g: QFSMorphism, f: QFSMorphism, tol: ToleranceConfig = DEFAULT_TOL
) -> QFSMorphism:
    """``g`` after ``f``. The composite is valid by construction and not re-checked."""
    if not qfs_equal(f.target, g.source, tol):
        raise SourceTargetMismatch(
            f"SourceTargetMismatch: target of f {list(f.target.labels)} is not the source of g "
            f"{list(g.source.labels)}"
        )
    lm = {x: g.label_map[f.label_map[x]] for x in f.source.labels}
    return QFSMorphism._trusted(f.source, g.target, lm, channel_compose(g.channel, f.channel))


def morphism_tensor(a: QFSMorphism, b: QFSMorphism) -> QFSMorphism:
    source = qfs_tensor(a.source, b.source)
    target = qfs_tensor(a.target, b.target)
    lm = {
        pair_label(x, y): pair_label(a.label_map[x], b.label_map[y])
        for x in a.source.labels
        for y in b.source.labels
    }
    return QFSMorphism._trusted(source, target, lm, channel_tensor(a.channel, b.channel))


def morphism_dagger(m: QFSMorphism, tol: ToleranceConfig = DEFAULT_TOL) -> QFSMorphism:
    """Inverse of an isomorphism: inverse label map and the adjoint unitary."""
    values = list(m.label_map.values())
    if len(set(values)) != len(values) or set(values) != set(m.target.labels):
        raise NotIso("NotIso: label map is not a bijection onto the target labels")
    u = channel_is_unitary(m.channel, tol)
    if u is None:
        raise NotUnitary("NotUnitary: the channel is not a unitary channel, so it has no CPTP inverse")
    inverse = {y: x for x, y in m.label_map.items()}
    adjoint = QuantumChannel._trusted(u.conj().T[None])
    return QFSMorphism._trusted(m.target, m.source, inverse, adjoint)


def morphisms_equal(a: QFSMorphism, b: QFSMorphism, atol: float = 1e-10) -> bool:
    return dict(a.label_map) == dict(b.label_map) and channels_equal(a.channel, b.channel, atol)


# fibration over label sets


def cartesian_lift(
    f: Mapping[str, str], target: QuantumFuzzySet
) -> tuple[QuantumFuzzySet, QFSMorphism]:
    """Pull ``target`` back along ``f: Y -> X``.

    Returns the pullback ``(Y, y -> mu_X(f(y)))`` and the lifting morphism
    ``(f, id)`` into ``target``.
    """
    bad = {y: x for y, x in f.items() if x not in target}
    if bad:
        raise UnknownLabel(f"UnknownLabel: {sorted(set(bad.values()))} not in the target")
    ys = list(f)
    pullback = QuantumFuzzySet(ys, [target[f[y]] for y in ys], target.dim)
    lift = QFSMorphism._trusted(pullback, target, dict(f), identity_channel(target.dim))
    return pullback, lift


def factor_through_lift(
    lift: QFSMorphism, g: QFSMorphism, h: Mapping[str, str], tol: ToleranceConfig = DEFAULT_TOL
) -> QFSMorphism:
    """The morphism ``(h, g.channel)`` into the pullback through which ``g`` factors.

    Requires ``lift.label_map o h == g.label_map`` and the same codomain.
    """
    if not qfs_equal(lift.target, g.target, tol):
        raise SourceTargetMismatch("SourceTargetMismatch: g and the lift have different targets")
    f = lift.label_map
    for z in g.source.labels:
        if z not in h:
            raise UnknownLabel(f"UnknownLabel: h undefined on {z!r}")
        if h[z] not in f or f[h[z]] != g.label_map[z]:
            raise LabelMismatch(f"LabelMismatch: f(h({z!r})) != g({z!r})")
    return QFSMorphism(g.source, lift.source, h, g.channel, tol)


# the copy map obstruction


def copy_map(rho: DensityMatrix, basis: Basis | None = None) -> np.ndarray:
    """Basis copy map: |e_i><e_j| -> delta_ij |e_i e_i><e_j e_j|, returned in ``basis``."""
    if basis is None:
        basis = Basis.computational(rho.dim)
    _require_dim("basis", basis.dim, rho.dim)
    d = rho.dim
    out = np.zeros((d * d, d * d), dtype=complex)
    diag = np.diagonal(basis.to_basis(rho.matrix))
    idx = np.arange(d) * (d + 1)
    out[idx, idx] = diag
    return out


def frobenius_copy_defect(rho: DensityMatrix, basis: Basis | None = None) -> float:
    """Trace norm of Delta(rho) - rho (x) rho; zero exactly on basis projectors."""
    if basis is None:
        basis = Basis.computational(rho.dim)
    _require_dim("basis", basis.dim, rho.dim)
    return trace_norm(kernels.copy_defect_matrix(basis.to_basis(rho.matrix)))


def decoherence_morphism(q: QuantumFuzzySet, basis: Basis | None = None) -> QFSMorphism:
    """``(id, D_basis): q -> decohere(q)``, validated."""
    from .core import qfs_decohere

    if basis is None:
        basis = Basis.computational(q.dim)
    target = qfs_decohere(q, basis)
    return QFSMorphism(q, target, {x: x for x in q.labels}, dephasing_channel(basis))


def unitary_image(q: QuantumFuzzySet, u, relabel: Mapping[str, str] | None = None) -> QFSMorphism:
    """Morphism carrying ``q`` to its image under ``u`` (optionally relabelled)."""
    ch = unitary_channel(u)
    relabel = dict(relabel) if relabel else {x: x for x in q.labels}
    images = {relabel[x]: channel_apply(ch, q[x]) for x in q.labels}
    labels: Sequence[str] = list(dict.fromkeys(relabel[x] for x in q.labels))
    target = QuantumFuzzySet(labels, [images[y] for y in labels], q.dim)
    return QFSMorphism(q, target, relabel, ch)
