"""Similarity and information measures between states, and POVM measurement."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ._linalg import eigvalsh, frobenius, hermitian_defect, psd_floor, readonly, sqrtm_psd, trace_norm
from .core import DensityMatrix, QuantumFuzzySet, _as_density, _require_dim, von_neumann_entropy
from .errors import (
    DimensionMismatch,
    EffectNotHermitian,
    EffectNotPSD,
    LengthMismatch,
    NotComplete,
    ValidationError,
    WeightMismatch,
    WeightNotNormalized,
)
from .tolerance import DEFAULT_TOL, ToleranceConfig


def _same_dim(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"DimensionMismatch: dims {rho.dim} and {sigma.dim}")


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1]."""
    _same_dim(rho, sigma)
    s = sqrtm_psd(rho.matrix)
    w = eigvalsh(s @ sigma.matrix @ s)
    f = float(np.sqrt(psd_floor(w)).sum() ** 2)
    return min(max(f, 0.0), 1.0)


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    _same_dim(rho, sigma)
    return 0.5 * trace_norm(rho.matrix - sigma.matrix)


def bures_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    f = fidelity(rho, sigma)
    return float(np.sqrt(max(2.0 - 2.0 * np.sqrt(f), 0.0)))


def fidelity_matrix(q: QuantumFuzzySet) -> np.ndarray:
    """Pairwise fidelities in label order; symmetric with unit diagonal."""
    n = len(q)
    out = np.eye(n)
    states = q.states
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = fidelity(states[i], states[j])
    return out


class Ensemble:
    """Weighted family of states of one dimension; weights sum to one."""

    __slots__ = ("_weights", "_states")

    def __init__(self, weights: Sequence[float], states: Sequence, tol: ToleranceConfig = DEFAULT_TOL):
        w = np.asarray(weights, dtype=float).ravel()
        states = tuple(_as_density(s) for s in states)
        if w.size != len(states):
            raise WeightMismatch(f"WeightMismatch: {w.size} weights for {len(states)} states")
        if not states:
            raise ValidationError("an ensemble needs at least one state")
        if np.any(w < 0) or np.any(w > 1) or not np.all(np.isfinite(w)):
            raise WeightNotNormalized(f"WeightNotNormalized: weights must lie in [0, 1], got {w.tolist()}")
        if abs(w.sum() - 1.0) > tol.trace:
            raise WeightNotNormalized(f"WeightNotNormalized: weights sum to {w.sum():.12g}")
        d = states[0].dim
        for s in states:
            _require_dim("ensemble state", s.dim, d)
        w = w.copy()
        w.flags.writeable = False
        self._weights, self._states = w, states

    @classmethod
    def uniform(cls, states: Sequence) -> "Ensemble":
        n = len(states)
        return cls(np.full(n, 1.0 / n), states)

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def states(self) -> tuple[DensityMatrix, ...]:
        return self._states

    @property
    def dim(self) -> int:
        return self._states[0].dim

    def mixture(self) -> DensityMatrix:
        m = sum(p * s.matrix for p, s in zip(self._weights, self._states))
        return DensityMatrix._trusted(m)


def holevo(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """S(sum p rho) - sum p S(rho) in bits; zero-weight members are skipped."""
    avg = sum(
        float(p) * von_neumann_entropy(s, tol) for p, s in zip(e.weights, e.states) if p > 0
    )
    return von_neumann_entropy(e.mixture(), tol) - avg


class POVM:
    """Labelled PSD effects summing to the identity."""

    __slots__ = ("_outcomes", "_effects")

    def __init__(self, outcomes: Sequence[str], effects: Sequence, tol: ToleranceConfig = DEFAULT_TOL):
        outcomes = tuple(outcomes)
        mats = [np.asarray(e, dtype=complex) for e in effects]
        if len(outcomes) != len(mats):
            raise LengthMismatch(f"LengthMismatch: {len(outcomes)} outcomes, {len(mats)} effects")
        if not mats:
            raise ValidationError("a POVM needs at least one effect")
        d = mats[0].shape[0] if mats[0].ndim == 2 else -1
        for a, e in zip(outcomes, mats):
            if e.shape != (d, d):
                raise DimensionMismatch(f"DimensionMismatch: effect {a!r} has shape {e.shape}")
            defect = hermitian_defect(e)
            if defect > tol.herm:
                raise EffectNotHermitian(f"EffectNotHermitian: effect {a!r} defect {defect:.3g}")
            lo = float(eigvalsh(e)[0])
            if lo < -tol.psd:
                raise EffectNotPSD(f"EffectNotPSD: effect {a!r} has eigenvalue {lo:.6g}")
        stack = np.stack(mats)
        gap = frobenius(stack.sum(axis=0) - np.eye(d))
        if gap > tol.tp:
            raise NotComplete(f"NotComplete: ||sum E - I||_F = {gap:.3g} > {tol.tp:g}")
        self._outcomes = outcomes
        self._effects = readonly(stack)

    @property
    def outcomes(self) -> tuple[str, ...]:
        return self._outcomes

    @property
    def effects(self) -> np.ndarray:
        return self._effects

    @property
    def dim(self) -> int:
        return self._effects.shape[1]


def povm_make(outcomes: Sequence[str], effects: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> POVM:
    return POVM(outcomes, effects, tol)


def povm_measure(rho: DensityMatrix, povm: POVM) -> dict[str, float]:
    """Outcome probabilities Tr(rho E_a), clamped to [0, 1]."""
    _require_dim("state", rho.dim, povm.dim)
    # Tr(rho E) = sum_ij rho_ij E_ji
    p = np.einsum("ij,aji->a", rho.matrix, povm.effects).real
    return dict(zip(povm.outcomes, np.clip(p, 0.0, 1.0).tolist()))
