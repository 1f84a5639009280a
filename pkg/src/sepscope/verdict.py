"""Criterion identifiers and verdict records shared by ``conditional`` and ``maps``."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


class Criterion(str, enum.Enum):
    LAMBDA = "Lambda"
    DUAL_LAMBDA = "DualLambda"
    SYMMETRIC = "Symmetric"
    PARTIAL_TRANSPOSE_A = "PartialTransposeA"
    PARTIAL_TRANSPOSE_B = "PartialTransposeB"
    SPECTRAL_CONDITIONAL = "SpectralConditional"
    ENTROPIC_CONDITIONAL = "EntropicConditional"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one necessary separability test.

    ``statistic`` is the minimum eigenvalue for the map and transpose
    criteria, the maximum eigenvalue of rho_{A|B} for the spectral criterion
    and S(A|B) in bits for the entropic one. ``passes`` is False when the
    state is certified inseparable.
    """

    criterion: Criterion
    statistic: float
    spectrum: tuple[float, ...]
    passes: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion.value,
            "statistic": self.statistic,
            "spectrum": list(self.spectrum),
            "passes": self.passes,
            "tolerance": self.tolerance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionVerdict":
        return cls(
            criterion=Criterion(d["criterion"]),
            statistic=float(d["statistic"]),
            spectrum=tuple(float(x) for x in d["spectrum"]),
            passes=bool(d["passes"]),
            tolerance=float(d["tolerance"]),
        )


def min_eigenvalue_verdict(criterion: Criterion, eigenvalues, tol: float) -> CriterionVerdict:
    w = np.sort(np.asarray(eigenvalues, dtype=float))
    lo = float(w[0])
    return CriterionVerdict(criterion, lo, tuple(float(x) for x in w), lo >= -tol, tol)
