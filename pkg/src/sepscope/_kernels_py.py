"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def partial_trace(m, da, db, over):
    t = m.reshape(da, db, da, db)
    if over == 0:
        return np.einsum("abac->bc", t)
    return np.einsum("abcb->ac", t)


def partial_transpose(m, da, db, over):
    t = m.reshape(da, db, da, db)
    if over == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(da * db, da * db)


def gamma_lift(m, da, db, mode):
    if mode == 0:
        return np.kron(np.eye(da), partial_trace(m, da, db, 0)) - m
    if mode == 1:
        return np.kron(partial_trace(m, da, db, 1), np.eye(db)) - m
    n = da * db
    return (
        np.trace(m) * np.eye(n)
        - np.kron(partial_trace(m, da, db, 1), np.eye(db))
        - np.kron(np.eye(da), partial_trace(m, da, db, 0))
        + m
    )


def regroup4(m, d1, d2, d3, d4):
    n = d1 * d2 * d3 * d4
    t = m.reshape(d1, d2, d3, d4, d1, d2, d3, d4)
    t = t.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return np.ascontiguousarray(t).reshape(n, n)
