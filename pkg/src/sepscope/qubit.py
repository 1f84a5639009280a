"""Two-qubit geometry: Bloch vectors, Hilbert-Schmidt (r, s, t) coordinates,
the T-state tetrahedron/octahedron picture and the magic basis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bipartite import unpack
from .exceptions import ValidationError
from .linalg import as_square

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SX, SY, SZ)

# rotation by pi about y: exp(-i pi sigma_y / 2) = -i sigma_y
U_Y = np.array([[0, -1], [1, 0]], dtype=np.complex128)

REGION_TOL = 1e-9


def bloch_vector(rho) -> np.ndarray:
    """r_k = Tr(rho sigma_k) for a single qubit."""
    m = as_square(rho)
    if m.shape != (2, 2):
        raise ValidationError(f"Bloch vector needs a 2x2 operator, got {m.shape}")
    return np.array([np.trace(m @ p).real for p in PAULI])


def from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return (I2 + sum(c * p for c, p in zip(r, PAULI))) / 2


@dataclass(frozen=True, eq=False)
class HSDecomposition:
    """rho = (1⊗1 + r·σ⊗1 + 1⊗s·σ + Σ t_nm σ_n⊗σ_m) / 4."""

    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float).reshape(3))
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float).reshape(3))
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float).reshape(3, 3))

    def allclose(self, other: "HSDecomposition", atol: float = 1e-12) -> bool:
        return all(
            np.allclose(x, y, rtol=0, atol=atol)
            for x, y in ((self.r, other.r), (self.s, other.s), (self.t, other.t))
        )

    def to_dict(self) -> dict:
        return {"r": self.r.tolist(), "s": self.s.tolist(), "t": self.t.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "HSDecomposition":
        return cls(d["r"], d["s"], d["t"])


def _two_qubit(rho, dims) -> np.ndarray:
    if dims is None and not hasattr(rho, "dims"):
        dims = (2, 2)
    m, dims = unpack(rho, dims)
    if dims != (2, 2):
        raise ValidationError(f"two-qubit operation needs shape (2, 2), got {dims}")
    return m


def hs_decompose(rho, dims=None) -> HSDecomposition:
    m = _two_qubit(rho, dims)
    r = [np.trace(m @ np.kron(p, I2)).real for p in PAULI]
    s = [np.trace(m @ np.kron(I2, p)).real for p in PAULI]
    t = [[np.trace(m @ np.kron(p, q)).real for q in PAULI] for p in PAULI]
    return HSDecomposition(r, s, t)


def hs_compose(d: HSDecomposition) -> np.ndarray:
    """Operator with coordinates (r, s, t); positivity is not checked."""
    out = np.kron(I2, I2).astype(np.complex128)
    for n in range(3):
        out += d.r[n] * np.kron(PAULI[n], I2)
        out += d.s[n] * np.kron(I2, PAULI[n])
        for m in range(3):
            out += d.t[n, m] * np.kron(PAULI[n], PAULI[m])
    return out / 4


class HSMap(str, enum.Enum):
    LAMBDA = "Lambda"
    DUAL_LAMBDA = "DualLambda"
    SYMMETRIC = "Symmetric"


_SIGNS = {
    HSMap.LAMBDA: (-1, 1, -1),
    HSMap.DUAL_LAMBDA: (1, -1, -1),
    HSMap.SYMMETRIC: (-1, -1, 1),
}


def map_action_on_hs(d: HSDecomposition, which: HSMap | str) -> HSDecomposition:
    """Sign flips of the Pauli terms: Λ flips A, Λ̃ flips B, M flips both."""
    sr, ss, st = _SIGNS[HSMap(which)]
    return HSDecomposition(sr * d.r, ss * d.s, st * d.t)


class TRegion(str, enum.Enum):
    OUTSIDE_TETRAHEDRON = "OutsideTetrahedron"
    SEPARABLE_OCTAHEDRON = "SeparableOctahedron"
    ENTANGLED_SHELL = "EntangledShell"


# Bell-state corners of the set of valid T-diagonal states.
TETRAHEDRON_VERTICES = np.array([[-1, 1, 1], [1, -1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float)
OCTAHEDRON_VERTICES = np.vstack([np.eye(3), -np.eye(3)])


def _facets(vertices: np.ndarray) -> list[tuple[np.ndarray, float]]:
    """Half-spaces n·x <= c bounding the tetrahedron spanned by ``vertices``."""
    centroid = vertices.mean(axis=0)
    out = []
    for idx in combinations(range(4), 3):
        p, q, r = vertices[list(idx)]
        n = np.cross(q - p, r - p)
        c = float(n @ p)
        if n @ centroid > c:
            n, c = -n, -c
        out.append((n, c))
    return out


_TETRA_FACETS = _facets(TETRAHEDRON_VERTICES)


def in_tetrahedron(t, tol: float = REGION_TOL) -> bool:
    t = np.asarray(t, dtype=float)
    return all(n @ t <= c + tol * np.linalg.norm(n) for n, c in _TETRA_FACETS)


def in_octahedron(t, tol: float = REGION_TOL) -> bool:
    return float(np.sum(np.abs(np.asarray(t, dtype=float)))) <= 1.0 + tol


def t_state_region(t, tol: float = REGION_TOL) -> TRegion:
    """Classify a T-diagonal vector (t11, t22, t33)."""
    if not in_tetrahedron(t, tol):
        return TRegion.OUTSIDE_TETRAHEDRON
    if in_octahedron(t, tol):
        return TRegion.SEPARABLE_OCTAHEDRON
    return TRegion.ENTANGLED_SHELL


def t_diagonal_state(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return hs_compose(HSDecomposition(np.zeros(3), np.zeros(3), np.diag(t)))


def t_diagonal_vector(d: HSDecomposition, tol: float = 1e-9) -> np.ndarray | None:
    """The diagonal of t when r = s = 0 and t is diagonal, else None."""
    off = d.t - np.diag(np.diag(d.t))
    if np.max(np.abs(d.r)) > tol or np.max(np.abs(d.s)) > tol or np.max(np.abs(off)) > tol:
        return None
    return np.diag(d.t).copy()


# Control-in-the-dual-basis CNOT; real, symmetric and self-inverse.
W = np.array(
    [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]], dtype=np.complex128
) / 2
MAGIC_PHASES = np.diag([1j, 1, 1, 1j])


def magic_basis() -> np.ndarray:
    """V = W·D; its columns are the magic basis vectors |e_i> = V|i>."""
    return W @ MAGIC_PHASES


def magic_conjugation(rho, dims=None) -> np.ndarray:
    """V (V† rho V)* V†: complex conjugation in the magic basis."""
    m = _two_qubit(rho, dims)
    v = magic_basis()
    return v @ (v.conj().T @ m @ v).conj() @ v.conj().T
