# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels; same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef void _offsets(Py_ssize_t[::1] dims, Py_ssize_t[::1] strides, list axes,
                   Py_ssize_t[::1] out):
    # mixed-radix enumeration of the listed axes, most significant first
    cdef Py_ssize_t n_axes = len(axes)
    cdef Py_ssize_t total = out.shape[0]
    cdef Py_ssize_t pos, k, ax, digit, rem, acc
    for pos in range(total):
        rem = pos
        acc = 0
        for k in range(n_axes - 1, -1, -1):
            ax = axes[k]
            digit = rem % dims[ax]
            rem = rem // dims[ax]
            acc += digit * strides[ax]
        out[pos] = acc


def partial_trace(const double complex[:, ::1] rho, dims, keep):
    cdef Py_ssize_t n = len(dims)
    cdef Py_ssize_t[::1] d = np.asarray(dims, dtype=np.intp).copy()
    cdef Py_ssize_t[::1] strides = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t i, a, b, t, ra, cb
    cdef Py_ssize_t acc = 1
    for i in range(n - 1, -1, -1):
        strides[i] = acc
        acc *= d[i]
    kept = [i for i in range(n) if keep[i]]
    traced = [i for i in range(n) if not keep[i]]
    cdef Py_ssize_t dk = 1, dt = 1
    for i in kept:
        dk *= d[i]
    for i in traced:
        dt *= d[i]
    cdef Py_ssize_t[::1] off_k = np.empty(dk, dtype=np.intp)
    cdef Py_ssize_t[::1] off_t = np.empty(dt, dtype=np.intp)
    _offsets(d, strides, kept, off_k)
    _offsets(d, strides, traced, off_t)
    out_arr = np.zeros((dk, dk), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex s
    for a in range(dk):
        ra = off_k[a]
        for b in range(dk):
            cb = off_k[b]
            s = 0
            for t in range(dt):
                s = s + rho[ra + off_t[t], cb + off_t[t]]
            out[a, b] = s
    return out_arr


def kraus_apply(const double complex[:, :, ::1] kraus, const double complex[:, ::1] rho):
    cdef Py_ssize_t nk = kraus.shape[0], d = rho.shape[0]
    cdef Py_ssize_t k, i, j, l, m
    out_arr = np.zeros((d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex[:, ::1] tmp = tmp_arr
    cdef double complex s, a, kml
    for k in range(nk):
        # tmp = K rho, row-major inner loop
        tmp[:, :] = 0
        for i in range(d):
            for j in range(d):
                a = kraus[k, i, j]
                for l in range(d):
                    tmp[i, l] = tmp[i, l] + a * rho[j, l]
        # out += tmp K^dagger; rows of tmp and K are both contiguous
        for i in range(d):
            for m in range(d):
                s = 0
                for l in range(d):
                    kml = kraus[k, m, l]
                    s = s + tmp[i, l] * kml.conjugate()
                out[i, m] = out[i, m] + s
    return out_arr


def max_commutator_norm(const double complex[:, :, ::1] stack):
    cdef Py_ssize_t n = stack.shape[0], d = stack.shape[1]
    cdef Py_ssize_t p, q, i, j, k
    cdef double complex a, b
    cdef double acc, best = 0.0
    row_arr = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] row = row_arr
    for p in range(n):
        for q in range(p + 1, n):
            acc = 0.0
            for i in range(d):
                # row i of P Q - Q P
                row[:] = 0
                for k in range(d):
                    a = stack[p, i, k]
                    b = stack[q, i, k]
                    for j in range(d):
                        row[j] = row[j] + a * stack[q, k, j] - b * stack[p, k, j]
                for j in range(d):
                    acc += row[j].real * row[j].real + row[j].imag * row[j].imag
            if acc > best:
                best = acc
    return sqrt(best)


def copy_defect_matrix(const double complex[:, ::1] rho):
    cdef Py_ssize_t d = rho.shape[0]
    cdef Py_ssize_t i, j, k, l
    out_arr = np.empty((d * d, d * d), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    for i in range(d):
        for k in range(d):
            for j in range(d):
                for l in range(d):
                    out[i * d + k, j * d + l] = -rho[i, j] * rho[k, l]
    for i in range(d):
        out[i * (d + 1), i * (d + 1)] = out[i * (d + 1), i * (d + 1)] + rho[i, i]
    return out_arr


def choi_matrix(const double complex[:, :, ::1] kraus):
    cdef Py_ssize_t nk = kraus.shape[0], d = kraus.shape[1]
    cdef Py_ssize_t n, i, j, k, l, row
    cdef double complex a
    out_arr = np.zeros((d * d, d * d), dtype=np.complex128)
    # conj(K) with the last two axes swapped, so the inner loop reads contiguously
    kct_arr = np.ascontiguousarray(np.conj(np.asarray(kraus)).transpose(0, 2, 1))
    cdef double complex[:, ::1] out = out_arr
    cdef const double complex[:, :, ::1] kct = kct_arr
    for n in range(nk):
        for i in range(d):
            for k in range(d):
                a = kraus[n, k, i]
                row = i * d + k
                for j in range(d):
                    for l in range(d):
                        out[row, j * d + l] = out[row, j * d + l] + a * kct[n, j, l]
    return out_arr
