"""Small Hermitian-matrix helpers used across modules."""

import numpy as np


def hermitian_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2


def eigvalsh(m: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(hermitize(m))


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(eigvalsh(m)).sum())


def psd_floor(w: np.ndarray) -> np.ndarray:
    """Zero eigenvalues below the solver's resolution before taking roots.

    Round-off leaves null eigenvalues near 1e-17, and their square roots
    (near 3e-9) would otherwise leak into fidelities of pure states.
    """
    if w.size == 0:
        return w
    floor = w.size * np.finfo(float).eps * max(float(np.max(np.abs(w))), 1.0)
    return np.where(w > floor, w, 0.0)


def sqrtm_psd(m: np.ndarray) -> np.ndarray:
    """Square root of a PSD matrix via its spectrum."""
    w, v = np.linalg.eigh(hermitize(m))
    return (v * np.sqrt(psd_floor(w))) @ v.conj().T


def entropy_bits(eigenvalues: np.ndarray, cutoff: float) -> float:
    """Shannon entropy in bits of a spectrum, ignoring entries <= cutoff."""
    p = np.asarray(eigenvalues, dtype=float)
    p = p[p > cutoff]
    if p.size == 0:
        return 0.0
    return float(max(-(p * np.log2(p)).sum(), 0.0))


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a
