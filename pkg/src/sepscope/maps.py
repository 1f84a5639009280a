"""The Γ map, its bipartite liftings and the criterion report.

Γ(X) = Tr(X)·1 - X is positive, so Λ = Γ⊗I, Λ̃ = I⊗Γ and M = Γ⊗Γ send every
separable state to a positive semidefinite operator. A negative eigenvalue in
any of them certifies inseparability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bipartite import DensityOperator, identity, partial_trace, partial_transpose, unpack
from .conditional import conditional_amplitude, entropic_criterion, spectral_criterion
from .exceptions import ValidationError
from .linalg import RANK_TOL, check_hermitian
from .verdict import DEFAULT_TOL, Criterion, CriterionVerdict, min_eigenvalue_verdict

_LAMBDA, _DUAL, _SYMMETRIC = 0, 1, 2


def gamma(x) -> np.ndarray:
    """Γ(X) = Tr(X)·1 - X on a single system."""
    h = check_hermitian(x)
    return np.trace(h) * identity(h.shape[0]) - h


def gamma_inverse(x) -> np.ndarray:
    """Γ⁻¹(X) = Tr(X)/(d-1)·1 - X; requires d > 1."""
    h = check_hermitian(x)
    d = h.shape[0]
    if d < 2:
        raise ValidationError("Γ is not invertible on a one-dimensional space")
    return np.trace(h) / (d - 1) * identity(d) - h


def lambda_map(rho, dims=None) -> np.ndarray:
    """λ_AB = 1_A ⊗ rho_B - rho_AB."""
    m, (da, db) = unpack(rho, dims)
    return kernels.gamma_lift(m, da, db, _LAMBDA)


def dual_lambda_map(rho, dims=None) -> np.ndarray:
    """λ̃_AB = rho_A ⊗ 1_B - rho_AB."""
    m, (da, db) = unpack(rho, dims)
    return kernels.gamma_lift(m, da, db, _DUAL)


def symmetric_map(rho, dims=None) -> np.ndarray:
    """μ_AB = 1⊗1 - rho_A⊗1 - 1⊗rho_B + rho_AB (with Tr(rho) on the identity term)."""
    m, (da, db) = unpack(rho, dims)
    return kernels.gamma_lift(m, da, db, _SYMMETRIC)


def lambda_inverse(lam, dims=None) -> np.ndarray:
    """Undo ``lambda_map``: (d_A - 1)⁻¹ (1_A ⊗ λ_B) - λ_AB."""
    m, (da, db) = unpack(lam, dims)
    if da < 2:
        raise ValidationError("Λ is not invertible when d_A = 1")
    lam_b = partial_trace(m, (da, db), "A")
    return np.kron(identity(da), lam_b) / (da - 1) - m


def dual_lambda_inverse(lam, dims=None) -> np.ndarray:
    """Undo ``dual_lambda_map``: (d_B - 1)⁻¹ (λ̃_A ⊗ 1_B) - λ̃_AB."""
    m, (da, db) = unpack(lam, dims)
    if db < 2:
        raise ValidationError("Λ̃ is not invertible when d_B = 1")
    lam_a = partial_trace(m, (da, db), "B")
    return np.kron(lam_a, identity(db)) / (db - 1) - m


def symmetric_inverse(mu, dims=None) -> np.ndarray:
    """Undo ``symmetric_map`` via Γ⁻¹ ⊗ Γ⁻¹."""
    m, (da, db) = unpack(mu, dims)
    if da < 2 or db < 2:
        raise ValidationError("M is not invertible when either subsystem is one-dimensional")
    mu_a = partial_trace(m, (da, db), "B")
    mu_b = partial_trace(m, (da, db), "A")
    tr = np.trace(m)
    return (
        tr / ((da - 1) * (db - 1)) * identity(da * db)
        - np.kron(mu_a, identity(db)) / (db - 1)
        - np.kron(identity(da), mu_b) / (da - 1)
        + m
    )


_MAP_CRITERIA = {
    Criterion.LAMBDA: lambda_map,
    Criterion.DUAL_LAMBDA: dual_lambda_map,
    Criterion.SYMMETRIC: symmetric_map,
    Criterion.PARTIAL_TRANSPOSE_A: lambda m, dims: partial_transpose(m, dims, "A"),
    Criterion.PARTIAL_TRANSPOSE_B: lambda m, dims: partial_transpose(m, dims, "B"),
}


def map_criterion(rho, criterion: Criterion | str, dims=None, tol: float = DEFAULT_TOL) -> CriterionVerdict:
    """Positivity verdict for one of the five operator-valued criteria."""
    criterion = Criterion(criterion)
    if criterion not in _MAP_CRITERIA:
        raise ValidationError(f"{criterion} is not a map criterion")
    m, dims = unpack(rho, dims)
    out = _MAP_CRITERIA[criterion](m, dims)
    return min_eigenvalue_verdict(criterion, np.linalg.eigvalsh((out + out.conj().T) / 2), tol)


@dataclass(frozen=True)
class CriterionReport:
    verdicts: tuple[CriterionVerdict, ...]
    certified_inseparable: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "certified_inseparable", any(not v.passes for v in self.verdicts))

    def __getitem__(self, criterion: Criterion | str) -> CriterionVerdict:
        criterion = Criterion(criterion)
        for v in self.verdicts:
            if v.criterion is criterion:
                return v
        raise KeyError(criterion)

    def failing(self) -> list[Criterion]:
        return [v.criterion for v in self.verdicts if not v.passes]


def criterion_report(
    rho,
    dims=None,
    *,
    tol: float = DEFAULT_TOL,
    rank_tol: float = RANK_TOL,
    criteria=None,
) -> CriterionReport:
    """Evaluate every criterion (or the subset ``criteria``) on a state."""
    state = rho if isinstance(rho, DensityOperator) else DensityOperator(*unpack(rho, dims))
    wanted = list(Criterion) if criteria is None else [Criterion(c) for c in criteria]
    verdicts = []
    amp = None
    for c in wanted:
        if c in _MAP_CRITERIA:
            verdicts.append(map_criterion(state, c, tol=tol))
            continue
        if amp is None:
            amp = conditional_amplitude(state, "B", rank_tol=rank_tol)
        if c is Criterion.SPECTRAL_CONDITIONAL:
            verdicts.append(spectral_criterion(state, tol=tol, amplitude=amp))
        else:
            verdicts.append(entropic_criterion(state, tol=tol, amplitude=amp))
    return CriterionReport(tuple(verdicts))
