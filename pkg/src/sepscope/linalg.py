"""Dense Hermitian kernel: validation, eigendecomposition and spectral functions.

All operators are plain ``numpy.ndarray`` objects of dtype complex128. Spectra
are real arrays sorted in ascending order.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .exceptions import DomainError, ValidationError

RANK_TOL = 1e-10
HERMITICITY_RTOL = 1e-10


def as_square(m) -> np.ndarray:
    """Return ``m`` as a finite square complex128 array or raise ``ValidationError``."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def check_hermitian(m, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate Hermiticity and return the exactly symmetrized matrix.

    The allowed deviation is ``rtol * max|entry|``. On failure the message names
    the worst offending entry pair.
    """
    a = as_square(m)
    dev = np.abs(a - a.conj().T)
    scale = float(np.max(np.abs(a)))
    worst = float(dev.max())
    if worst > rtol * max(scale, np.finfo(float).tiny):
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise ValidationError(
            f"matrix is not Hermitian: |M[{i}][{j}] - conj(M[{j}][{i}])| = {worst:.3e} "
            f"exceeds {rtol:.1e} x max|entry| ({scale:.3e})"
        )
    return (a + a.conj().T) / 2


def hermitian_eig(h, rtol: float = HERMITICITY_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition ``h = V diag(w) V†`` with ``w`` ascending."""
    a = check_hermitian(h, rtol)
    w, v = np.linalg.eigh(a)
    return w, v


def spectrum(h) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    return np.linalg.eigvalsh(check_hermitian(h))


_NAMED = {
    "log": np.log,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "log2": np.log2,
}


def matrix_function(
    h,
    f: Callable[[np.ndarray], np.ndarray] | str,
    support_only: bool = False,
    rank_tol: float = RANK_TOL,
) -> np.ndarray:
    """Apply the scalar function ``f`` to the spectrum of ``h``.

    With ``support_only`` the eigenvalues with ``|w| <= rank_tol`` are dropped:
    ``f`` acts on the support and the kernel is mapped to zero. ``f`` may be a callable
    or one of ``"log"``, ``"exp"``, ``"sqrt"``, ``"log2"``.
    """
    func = _NAMED[f] if isinstance(f, str) else f
    w, v = hermitian_eig(h)
    if support_only:
        keep = np.abs(w) > rank_tol
        w, v = w[keep], v[:, keep]
        if w.size == 0:
            return np.zeros_like(v @ v.conj().T)
    with np.errstate(divide="ignore", invalid="ignore"):
        fw = np.asarray(func(w))
    bad = ~np.isfinite(fw) | (np.abs(np.imag(fw)) > 0)
    if np.any(bad):
        raise DomainError(f"function undefined at eigenvalue {w[np.argmax(bad)]:.6e}")
    fw = np.real(fw)
    return (v * fw) @ v.conj().T


def support_basis(h, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal columns spanning the eigenvectors with ``|eigenvalue| > rank_tol``."""
    w, v = hermitian_eig(h)
    return v[:, np.abs(w) > rank_tol]


def kernel_basis(h, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal columns spanning the eigenvectors with ``|eigenvalue| <= rank_tol``."""
    w, v = hermitian_eig(h)
    return v[:, np.abs(w) <= rank_tol]


def von_neumann_entropy(rho, base: float = 2.0, rank_tol: float = RANK_TOL) -> float:
    """Entropy ``-sum p log p`` of the eigenvalues, zero eigenvalues dropped."""
    p = spectrum(rho)
    p = p[p > rank_tol]
    return float(-np.sum(p * np.log(p)) / np.log(base))
