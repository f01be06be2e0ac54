"""Inner-loop kernels, compiled when available.

The Cython extension ``_ckernels`` is imported if it was built; otherwise the
numpy implementations in ``_pykernels`` are used. ``BACKEND`` names the one
in effect. Large matrix products are sent to numpy (BLAS) whichever
backend is active; see the ``*_BLAS_DIM`` thresholds. Both modules stay
importable on their own so they can be tested and benchmarked against each
other.
"""

import numpy as np

from . import _pykernels

try:
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pykernels
    BACKEND = "python"


# from these dimensions up the matrix products go to BLAS through numpy
KRAUS_BLAS_DIM = 16
COMMUTATOR_BLAS_DIM = 8


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def partial_trace(rho, dims, keep):
    return _impl.partial_trace(_c(rho), list(dims), [bool(k) for k in keep])


def kraus_apply(kraus, rho):
    rho = _c(rho)
    impl = _pykernels if rho.shape[0] >= KRAUS_BLAS_DIM else _impl
    return impl.kraus_apply(_c(kraus), rho)


def max_commutator_norm(stack):
    stack = _c(stack)
    if stack.shape[0] < 2:
        return 0.0
    impl = _pykernels if stack.shape[1] >= COMMUTATOR_BLAS_DIM else _impl
    return float(impl.max_commutator_norm(stack))


def copy_defect_matrix(rho):
    return _impl.copy_defect_matrix(_c(rho))


def choi_matrix(kraus):
    return _impl.choi_matrix(_c(kraus))


def available_backends() -> dict:
    """Map of backend name to kernel module for every importable backend."""
    out = {"python": _pykernels}
    if BACKEND == "cython":
        out["cython"] = _impl
    return out
