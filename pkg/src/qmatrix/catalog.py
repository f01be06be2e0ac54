"""Named states and fuzzy sets used by the reproductions and the tests."""

import numpy as np

from .core import DensityMatrix, QMatrix, QuantumFuzzySet, product_qmatrix

CAT = ((0.7, 0.3), (0.3, 0.3))
DOG = ((0.4, 0.2), (0.2, 0.6))
PET = ((0.5, 0.1), (0.1, 0.5))


def cat_dog_pet() -> QuantumFuzzySet:
    return QuantumFuzzySet(["cat", "dog", "pet"], [CAT, DOG, PET])


def bell_state() -> DensityMatrix:
    """|Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2)."""
    return DensityMatrix.from_vector([1, 0, 0, 1])


def bell_qmatrix(labels=("A", "B")) -> QMatrix:
    return QMatrix(labels, [2, 2], bell_state())


def ghz_qmatrix(n: int = 3, labels=None) -> QMatrix:
    labels = labels or [f"q{i}" for i in range(n)]
    psi = np.zeros(2**n)
    psi[0] = psi[-1] = 1
    return QMatrix(labels, [2] * n, DensityMatrix.from_vector(psi))


def werner_qmatrix(p: float, labels=("A", "B")) -> QMatrix:
    """p |Phi+><Phi+| + (1 - p) I/4."""
    m = p * bell_state().matrix + (1 - p) * np.eye(4) / 4
    return QMatrix(labels, [2, 2], DensityMatrix(m))


def cat_dog_product(labels=("A", "B")) -> QMatrix:
    q = cat_dog_pet()
    return product_qmatrix(labels, [q["cat"], q["dog"]])


def plus_state() -> DensityMatrix:
    return DensityMatrix.from_vector([1, 1])


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
