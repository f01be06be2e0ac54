"""Random states, unitaries, channels and POVMs for testing and benchmarks.

Mixed states use the Ginibre construction A A^dagger / Tr(A A^dagger) with A
complex Gaussian; pure states are normalized complex Gaussian vectors.
"""

import numpy as np

from .categorical import QuantumChannel
from .core import DensityMatrix
from .information import POVM


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def ginibre(dim: int, rng=None, rank: int | None = None) -> np.ndarray:
    rng = _rng(rng)
    k = dim if rank is None else rank
    return rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))


def random_density(dim: int, rng=None, rank: int | None = None) -> DensityMatrix:
    a = ginibre(dim, rng, rank)
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_pure(dim: int, rng=None) -> DensityMatrix:
    rng = _rng(rng)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return DensityMatrix.from_vector(psi)


def random_unitary(dim: int, rng=None) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    q, r = np.linalg.qr(ginibre(dim, rng))
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_channel(dim: int, n_kraus: int = 2, rng=None) -> QuantumChannel:
    """Channel from a random isometry C^d -> C^(n d), cut into Kraus blocks."""
    rng = _rng(rng)
    a = rng.standard_normal((n_kraus * dim, dim)) + 1j * rng.standard_normal((n_kraus * dim, dim))
    q, _ = np.linalg.qr(a)
    return QuantumChannel(q.reshape(n_kraus, dim, dim))


def random_povm(dim: int, n_outcomes: int, rng=None) -> POVM:
    """Normalize random PSD effects G_a by S^{-1/2} G_a S^{-1/2}, S = sum G_a."""
    rng = _rng(rng)
    gs = [(lambda a: a @ a.conj().T)(ginibre(dim, rng)) for _ in range(n_outcomes)]
    w, v = np.linalg.eigh(sum(gs))
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    effects = [inv_sqrt @ g @ inv_sqrt for g in gs]
    effects = [(e + e.conj().T) / 2 for e in effects]
    return POVM([f"a{i}" for i in range(n_outcomes)], effects)
