"""Conditional amplitude operator rho_{A|B} and conditional von Neumann entropy.

rho_{A|B} = exp[log rho_AB - log(1_A ⊗ rho_B)] is only defined on the support
of rho_AB. Both logarithms are taken on their supports, the difference is
compressed onto supp(rho_AB) and exponentiated there; the kernel of rho_AB is
mapped to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import DensityOperator, Subsystem, identity, partial_trace, unpack
from .exceptions import InconsistencyError, RankError
from .linalg import RANK_TOL, hermitian_eig, kernel_basis, matrix_function, support_basis
from .verdict import DEFAULT_TOL, Criterion, CriterionVerdict

SUPPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ConditionalAmplitude:
    op: np.ndarray
    support_dim: int
    max_eigenvalue: float
    conditioned_on: Subsystem

    @property
    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.op)

    @property
    def sigma(self) -> np.ndarray:
        """-log rho_{A|B} on the support (zero on the kernel)."""
        w, v = hermitian_eig(self.op)
        w, v = w[-self.support_dim :], v[:, -self.support_dim :]
        return (v * -np.log(w)) @ v.conj().T


def _as_state(rho, dims) -> DensityOperator:
    if isinstance(rho, DensityOperator):
        if dims is not None:
            unpack(rho, dims)
        return rho
    return DensityOperator(*unpack(rho, dims))


def conditioning_operator(rho: DensityOperator, conditioned_on: Subsystem | str) -> np.ndarray:
    """1_A ⊗ rho_B when conditioning on B, rho_A ⊗ 1_B when conditioning on A."""
    da, db = rho.dims
    if Subsystem.coerce(conditioned_on) is Subsystem.B:
        return np.kron(identity(da), partial_trace(rho.matrix, rho.dims, "A"))
    return np.kron(partial_trace(rho.matrix, rho.dims, "B"), identity(db))


def conditional_amplitude(
    rho,
    conditioned_on: Subsystem | str = Subsystem.B,
    *,
    dims=None,
    rank_tol: float = RANK_TOL,
    support_tol: float = SUPPORT_TOL,
) -> ConditionalAmplitude:
    """rho_{A|B} (``conditioned_on="B"``) or rho_{B|A} (``conditioned_on="A"``)."""
    state = _as_state(rho, dims)
    cond = Subsystem.coerce(conditioned_on)
    m = state.matrix
    marg = conditioning_operator(state, cond)

    ker = kernel_basis(marg, rank_tol)
    if ker.shape[1]:
        leak = float(np.max(np.abs(m @ ker)))
        if leak > support_tol:
            raise InconsistencyError(
                f"support of rho_AB is not contained in the support of the conditioning "
                f"marginal: |rho v| = {leak:.3e} for a kernel vector v"
            )

    s = support_basis(m, rank_tol)
    if s.shape[1] == 0:
        raise RankError("rho_AB has empty support")
    diff = matrix_function(m, np.log, True, rank_tol) - matrix_function(marg, np.log, True, rank_tol)
    compressed = s.conj().T @ diff @ s
    compressed = (compressed + compressed.conj().T) / 2
    inner = matrix_function(compressed, np.exp)
    op = s @ inner @ s.conj().T
    op = (op + op.conj().T) / 2
    top = float(np.linalg.eigvalsh(inner)[-1])
    return ConditionalAmplitude(op, s.shape[1], top, cond)


def conditional_entropy(
    rho,
    conditioned_on: Subsystem | str = Subsystem.B,
    *,
    dims=None,
    rank_tol: float = RANK_TOL,
    amplitude: ConditionalAmplitude | None = None,
) -> float:
    """S(A|B) = -Tr[rho_AB log2 rho_{A|B}] in bits, trace restricted to supp(rho_AB)."""
    state = _as_state(rho, dims)
    if amplitude is None:
        amplitude = conditional_amplitude(state, conditioned_on, rank_tol=rank_tol)
    return float(np.real(np.trace(state.matrix @ amplitude.sigma))) / np.log(2)


def spectral_criterion(
    rho,
    conditioned_on: Subsystem | str = Subsystem.B,
    *,
    dims=None,
    tol: float = DEFAULT_TOL,
    rank_tol: float = RANK_TOL,
    amplitude: ConditionalAmplitude | None = None,
) -> CriterionVerdict:
    """Fails (certified inseparable) when rho_{A|B} has an eigenvalue above 1 + tol."""
    if amplitude is None:
        amplitude = conditional_amplitude(rho, conditioned_on, dims=dims, rank_tol=rank_tol)
    w = np.sort(amplitude.spectrum)
    top = amplitude.max_eigenvalue
    return CriterionVerdict(
        Criterion.SPECTRAL_CONDITIONAL, top, tuple(float(x) for x in w), bool(top <= 1.0 + tol), tol
    )


def entropic_criterion(
    rho,
    conditioned_on: Subsystem | str = Subsystem.B,
    *,
    dims=None,
    tol: float = DEFAULT_TOL,
    rank_tol: float = RANK_TOL,
    amplitude: ConditionalAmplitude | None = None,
) -> CriterionVerdict:
    """Fails when S(A|B) < -tol. Weaker than ``spectral_criterion``."""
    state = _as_state(rho, dims)
    if amplitude is None:
        amplitude = conditional_amplitude(state, conditioned_on, rank_tol=rank_tol)
    s = conditional_entropy(state, amplitude=amplitude)
    w = tuple(float(x) for x in np.sort(amplitude.spectrum))
    return CriterionVerdict(Criterion.ENTROPIC_CONDITIONAL, float(s), w, bool(s >= -tol), tol)


@dataclass(frozen=True, eq=False)
class TrotterResult:
    matrix: np.ndarray
    hermiticity_deviation: float
    n: int


def trotter_approximation(
    rho,
    n: int,
    *,
    dims=None,
    rank_tol: float = RANK_TOL,
) -> TrotterResult:
    """[rho_AB^{1/n} (1_A ⊗ rho_B)^{-1/n}]^n, returned unsymmetrized.

    Only a convergence witness for ``conditional_amplitude``; the product is
    not Hermitian for finite n unless the two factors commute.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    state = _as_state(rho, dims)
    marg = conditioning_operator(state, Subsystem.B)
    w = np.linalg.eigvalsh(marg)
    if w[0] <= rank_tol:
        raise RankError(f"rho_B is singular (smallest eigenvalue {w[0]:.3e}); no inverse power")
    left = matrix_function(state.matrix, lambda x: x ** (1.0 / n), True, rank_tol)
    right = matrix_function(marg, lambda x: x ** (-1.0 / n))
    prod = np.linalg.matrix_power(left @ right, n)
    dev = float(np.max(np.abs(prod - prod.conj().T)))
    return TrotterResult(prod, dev, n)
