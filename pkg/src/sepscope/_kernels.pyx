# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled index kernels for bipartite operators.

Every operator is a C-contiguous complex128 matrix of size (d_A d_B)^2 with
row index a * d_B + b (A major). Signatures mirror ``_kernels_py``.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


def partial_trace(const cplx[:, ::1] m, Py_ssize_t da, Py_ssize_t db, int over):
    """Trace out A (``over == 0``) or B (``over == 1``)."""
    cdef Py_ssize_t a, b, c, i, j
    cdef cplx acc
    cdef cnp.ndarray[cplx, ndim=2] out
    if over == 0:
        out = np.zeros((db, db), dtype=np.complex128)
        for b in range(db):
            for c in range(db):
                acc = 0
                for a in range(da):
                    acc = acc + m[a * db + b, a * db + c]
                out[b, c] = acc
    else:
        out = np.zeros((da, da), dtype=np.complex128)
        for i in range(da):
            for j in range(da):
                acc = 0
                for b in range(db):
                    acc = acc + m[i * db + b, j * db + b]
                out[i, j] = acc
    return out


def partial_transpose(const cplx[:, ::1] m, Py_ssize_t da, Py_ssize_t db, int over):
    """Transpose the A (``over == 0``) or B (``over == 1``) indices."""
    cdef Py_ssize_t n = da * db
    cdef Py_ssize_t a, b, c, d
    cdef cnp.ndarray[cplx, ndim=2] out = np.empty((n, n), dtype=np.complex128)
    for a in range(da):
        for b in range(db):
            for c in range(da):
                for d in range(db):
                    if over == 0:
                        out[a * db + b, c * db + d] = m[c * db + b, a * db + d]
                    else:
                        out[a * db + b, c * db + d] = m[a * db + d, c * db + b]
    return out


def gamma_lift(const cplx[:, ::1] m, Py_ssize_t da, Py_ssize_t db, int mode):
    """Apply Γ⊗I (mode 0), I⊗Γ (mode 1) or Γ⊗Γ (mode 2) in one pass.

    Γ(X) = Tr(X)·1 − X, so Γ⊗I(X) = 1_A⊗X_B − X, I⊗Γ(X) = X_A⊗1_B − X and
    Γ⊗Γ(X) = Tr(X)·1 − X_A⊗1_B − 1_A⊗X_B + X.
    """
    cdef Py_ssize_t n = da * db
    cdef Py_ssize_t a, b, c, d, i, j
    cdef cplx tr = 0
    cdef cplx[:, ::1] xa
    cdef cplx[:, ::1] xb
    cdef cnp.ndarray[cplx, ndim=2] out = np.empty((n, n), dtype=np.complex128)

    for i in range(n):
        tr = tr + m[i, i]
    xb = partial_trace(m, da, db, 0)
    xa = partial_trace(m, da, db, 1)

    for a in range(da):
        for b in range(db):
            i = a * db + b
            for c in range(da):
                for d in range(db):
                    j = c * db + d
                    if mode == 0:
                        out[i, j] = -m[i, j]
                        if a == c:
                            out[i, j] = out[i, j] + xb[b, d]
                    elif mode == 1:
                        out[i, j] = -m[i, j]
                        if b == d:
                            out[i, j] = out[i, j] + xa[a, c]
                    else:
                        out[i, j] = m[i, j]
                        if b == d:
                            out[i, j] = out[i, j] - xa[a, c]
                        if a == c:
                            out[i, j] = out[i, j] - xb[b, d]
                        if i == j:
                            out[i, j] = out[i, j] + tr
    return out


def regroup4(const cplx[:, ::1] m, Py_ssize_t d1, Py_ssize_t d2, Py_ssize_t d3, Py_ssize_t d4):
    """Reorder factors (1, 2, 3, 4) -> (1, 3, 2, 4) on both indices."""
    cdef Py_ssize_t n = d1 * d2 * d3 * d4
    cdef Py_ssize_t p, q, r, s, p2, q2, r2, s2, i, j, ii, jj
    cdef cnp.ndarray[cplx, ndim=2] out = np.empty((n, n), dtype=np.complex128)
    for p in range(d1):
        for q in range(d2):
            for r in range(d3):
                for s in range(d4):
                    i = ((p * d2 + q) * d3 + r) * d4 + s
                    ii = ((p * d3 + r) * d2 + q) * d4 + s
                    for p2 in range(d1):
                        for q2 in range(d2):
                            for r2 in range(d3):
                                for s2 in range(d4):
                                    j = ((p2 * d2 + q2) * d3 + r2) * d4 + s2
                                    jj = ((p2 * d3 + r2) * d2 + q2) * d4 + s2
                                    out[ii, jj] = m[i, j]
    return out
