"""Bipartite bookkeeping: shapes, tensor products, partial trace and transpose.

Index convention is fixed throughout the package: the composite basis vector
``|a>|b>`` sits at row ``a * d_B + b`` (A major, B minor), which is what
``numpy.kron(X_A, Y_B)`` produces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .exceptions import ValidationError
from .linalg import as_square, check_hermitian, spectrum

TRACE_TOL = 1e-9
PSD_TOL = 1e-9


class Subsystem(enum.Enum):
    A = "A"
    B = "B"

    @classmethod
    def coerce(cls, value: "Subsystem | str") -> "Subsystem":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValidationError(f"unknown subsystem {value!r}; expected 'A' or 'B'") from None


def _check_dims(dims, n: int) -> tuple[int, int]:
    try:
        da, db = (int(d) for d in dims)
    except (TypeError, ValueError):
        raise ValidationError(f"dims must be a pair of integers, got {dims!r}") from None
    if da < 1 or db < 1:
        raise ValidationError(f"subsystem dimensions must be positive, got {dims!r}")
    if da * db != n:
        raise ValidationError(f"dims {da}x{db} do not factor an operator of dimension {n}")
    return da, db


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Unit-trace positive semidefinite operator on C^{d_A} ⊗ C^{d_B}.

    Construction validates Hermiticity, trace and positivity; the stored matrix
    is the exactly Hermitian part of the input.
    """

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        m = check_hermitian(self.matrix)
        dims = _check_dims(self.dims, m.shape[0])
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr:.12g}, expected 1 within {TRACE_TOL:g}")
        lo = spectrum(m)[0]
        if lo < -PSD_TOL:
            raise ValidationError(
                f"not positive semidefinite: minimum eigenvalue {lo:.3e} < -{PSD_TOL:g}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    def reduced(self, keep: Subsystem | str) -> np.ndarray:
        """Marginal on ``keep`` (``"A"`` gives rho_A)."""
        keep = Subsystem.coerce(keep)
        over = Subsystem.B if keep is Subsystem.A else Subsystem.A
        return partial_trace(self.matrix, self.dims, over)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def unpack(op, dims=None) -> tuple[np.ndarray, tuple[int, int]]:
    """Split a ``DensityOperator`` or ``(matrix, dims)`` into array and checked dims."""
    if isinstance(op, DensityOperator):
        if dims is not None and tuple(dims) != op.dims:
            raise ValidationError(f"dims {tuple(dims)} disagree with attached shape {op.dims}")
        return op.matrix, op.dims
    if dims is None:
        raise ValidationError("a bare matrix needs explicit dims=(d_A, d_B)")
    m = as_square(op)
    return m, _check_dims(dims, m.shape[0])


def tensor(*ops) -> np.ndarray:
    """Kronecker product, first factor most significant."""
    out = np.ones((1, 1), dtype=np.complex128)
    for op in ops:
        out = np.kron(out, np.asarray(op, dtype=np.complex128))
    return out


def partial_trace(op, dims=None, over: Subsystem | str = Subsystem.B) -> np.ndarray:
    """Trace out subsystem ``over``; ``over="B"`` yields rho_A."""
    m, (da, db) = unpack(op, dims)
    flag = 0 if Subsystem.coerce(over) is Subsystem.A else 1
    return kernels.partial_trace(m, da, db, flag)


def partial_transpose(op, dims=None, over: Subsystem | str = Subsystem.A) -> np.ndarray:
    """Transpose the indices of subsystem ``over`` only (rho^{T_A} by default)."""
    m, (da, db) = unpack(op, dims)
    flag = 0 if Subsystem.coerce(over) is Subsystem.A else 1
    return kernels.partial_transpose(m, da, db, flag)


def permute_to_bipartition(op, dims4) -> np.ndarray:
    """Regroup an operator on A⊗B⊗A'⊗B' into (AA')⊗(BB').

    ``dims4`` is ``(d_A, d_B, d_A', d_B')``. The result acts on a space with
    shape ``(d_A * d_A', d_B * d_B')``.
    """
    m = as_square(op)
    try:
        d1, d2, d3, d4 = (int(d) for d in dims4)
    except (TypeError, ValueError):
        raise ValidationError(f"need four factor dimensions, got {dims4!r}") from None
    if min(d1, d2, d3, d4) < 1 or d1 * d2 * d3 * d4 != m.shape[0]:
        raise ValidationError(
            f"factor dimensions {dims4!r} do not factor an operator of dimension {m.shape[0]}"
        )
    return kernels.regroup4(m, d1, d2, d3, d4)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128)
