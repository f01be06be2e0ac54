"""Pure numpy implementations of the inner-loop kernels.

Signatures match ``_ckernels`` exactly. Inputs are assumed C-contiguous
complex128 (``kernels.__init__`` normalizes them).
"""

import numpy as np


def partial_trace(rho, dims, keep):
    """Reduced matrix on the subsystems flagged in ``keep``.

    ``dims`` lists subsystem dimensions with subsystem 0 as the most
    significant mixed-radix digit; kept subsystems stay in their original order.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    kept = [i for i in range(n) if keep[i]]
    traced = [i for i in range(n) if not keep[i]]
    dk = int(np.prod([dims[i] for i in kept], dtype=np.int64))
    dt = int(np.prod([dims[i] for i in traced], dtype=np.int64))
    t = rho.reshape(dims + dims)
    order = kept + traced + [n + i for i in kept] + [n + i for i in traced]
    t = t.transpose(order).reshape(dk, dt, dk, dt)
    return np.ascontiguousarray(np.trace(t, axis1=1, axis2=3))


def kraus_apply(kraus, rho):
    """Sum over k of K_k rho K_k^dagger."""
    return np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj(), optimize=True)


def max_commutator_norm(stack):
    """Largest Frobenius norm of [A, B] over unordered pairs of the stack."""
    n = stack.shape[0]
    if n < 2:
        return 0.0
    iu, ju = np.triu_indices(n, k=1)
    a, b = stack[iu], stack[ju]
    comm = a @ b - b @ a
    return float(np.sqrt((np.abs(comm) ** 2).sum(axis=(1, 2))).max())


def copy_defect_matrix(rho):
    """Delta(rho) - rho (x) rho, where Delta keeps rho_ii at index (ii, ii)."""
    d = rho.shape[0]
    out = -np.kron(rho, rho)
    idx = np.arange(d) * (d + 1)
    out[idx, idx] += np.diagonal(rho)
    return out


def choi_matrix(kraus):
    """Unnormalized Choi matrix sum_ij |i><j| (x) Phi(|i><j|)."""
    n, d, _ = kraus.shape
    # J[(i,k),(j,l)] = sum_n K[n,k,i] conj(K[n,l,j])
    j = np.einsum("nki,nlj->ikjl", kraus, kraus.conj())
    return np.ascontiguousarray(j.reshape(d * d, d * d))
