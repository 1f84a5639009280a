"""Named example states, random ensembles and the dilution builder.

The appendix-example constructors transcribe the displayed matrices entry by
entry (including the 1/(1+8a) and 1/(1+7b) prefactors) rather than building
them from their mixture decompositions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .bipartite import DensityOperator, permute_to_bipartition
from .exceptions import ValidationError

MAX_DILUTION_DIM = 64
_NORM_TOL = 1e-9


class StateFamily(str, enum.Enum):
    WERNER = "werner"
    GISIN_MIXTURE = "gisin"
    SINGLET_PLUS_GROUND = "singlet_plus_ground"
    HORODECKI_TWO_QUBIT = "horodecki_two_qubit"
    HORODECKI_3X3 = "horodecki3x3"
    HORODECKI_2X4 = "horodecki2x4"
    BELL = "bell"
    PRODUCT_PURE = "product_pure"
    MAXIMALLY_MIXED = "maximally_mixed"

    @classmethod
    def lookup(cls, name: "StateFamily | str") -> "StateFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        key = _ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            known = ", ".join(f.value for f in cls)
            raise ValidationError(f"unknown state family {name!r}; known: {known}") from None


_ALIASES = {
    "gisinmixture": "gisin",
    "singletplusground": "singlet_plus_ground",
    "horodeckitwoqubit": "horodecki_two_qubit",
    "horodecki_3x3": "horodecki3x3",
    "horodecki_2x4": "horodecki2x4",
    "productpure": "product_pure",
    "maximallymixed": "maximally_mixed",
    "mixed": "maximally_mixed",
    "singlet": "bell",
    "product": "product_pure",
}

# parameters implied by an alias
_ALIAS_PARAMS = {"singlet": {"k": 3}}

# parameter swept by default, per family
PRIMARY_PARAMETER = {
    StateFamily.WERNER: "x",
    StateFamily.GISIN_MIXTURE: "x",
    StateFamily.SINGLET_PLUS_GROUND: "x",
    StateFamily.HORODECKI_TWO_QUBIT: "p",
    StateFamily.HORODECKI_3X3: "a",
    StateFamily.HORODECKI_2X4: "b",
}


def _in_range(name: str, value: float, lo: float, hi: float, *, open_lo=False, open_hi=False):
    bad_lo = value <= lo if open_lo else value < lo
    bad_hi = value >= hi if open_hi else value > hi
    if bad_lo or bad_hi or not math.isfinite(value):
        lb = "(" if open_lo else "["
        rb = ")" if open_hi else "]"
        raise ValidationError(f"parameter {name}={value!r} outside {lb}{lo}, {hi}{rb}")


def _check_norm(a: float, b: float):
    if abs(a * a + b * b - 1.0) > _NORM_TOL:
        raise ValidationError(f"parameters must satisfy a^2 + b^2 = 1, got {a * a + b * b!r}")


def werner(x: float) -> DensityOperator:
    """x |Ψ⁻><Ψ⁻| + (1-x)/4 · 1."""
    _in_range("x", x, 0.0, 1.0)
    d, o = (1 + x) / 4, -x / 2
    m = np.array(
        [
            [(1 - x) / 4, 0, 0, 0],
            [0, d, o, 0],
            [0, o, d, 0],
            [0, 0, 0, (1 - x) / 4],
        ]
    )
    return DensityOperator(m, (2, 2))


def gisin(x: float, a: float, b: float | None = None) -> DensityOperator:
    """x |ψ><ψ| + (1-x)/2 (|00><00| + |11><11|), ψ = a|01> + b|10>."""
    _in_range("x", x, 0.0, 1.0)
    if b is None:
        _in_range("a", abs(a), 0.0, 1.0)
        b = math.sqrt(1.0 - a * a)
    _check_norm(a, b)
    m = np.array(
        [
            [(1 - x) / 2, 0, 0, 0],
            [0, x * abs(a) ** 2, x * a * np.conj(b), 0],
            [0, x * np.conj(a) * b, x * abs(b) ** 2, 0],
            [0, 0, 0, (1 - x) / 2],
        ],
        dtype=np.complex128,
    )
    return DensityOperator(m, (2, 2))


def singlet_plus_ground(x: float) -> DensityOperator:
    """x |Ψ⁻><Ψ⁻| + (1-x) |00><00|."""
    _in_range("x", x, 0.0, 1.0)
    m = np.array(
        [
            [1 - x, 0, 0, 0],
            [0, x / 2, -x / 2, 0],
            [0, -x / 2, x / 2, 0],
            [0, 0, 0, 0],
        ]
    )
    return DensityOperator(m, (2, 2))


def horodecki_two_qubit(p: float, a: float, b: float | None = None) -> DensityOperator:
    """p |ψ1><ψ1| + (1-p) |ψ2><ψ2|, ψ1 = a|00> + b|11>, ψ2 = a|01> + b|10>."""
    _in_range("p", p, 0.0, 1.0)
    _in_range("a", a, 0.0, 1.0)
    if b is None:
        b = math.sqrt(1.0 - a * a)
    _in_range("b", b, 0.0, 1.0)
    _check_norm(a, b)
    q = 1 - p
    m = np.array(
        [
            [p * a * a, 0, 0, p * a * b],
            [0, q * a * a, q * a * b, 0],
            [0, q * a * b, q * b * b, 0],
            [p * a * b, 0, 0, p * b * b],
        ]
    )
    return DensityOperator(m, (2, 2))


def horodecki_3x3(a: float) -> DensityOperator:
    """Horodecki's 3x3 PPT entangled state, 0 < a < 1."""
    _in_range("a", a, 0.0, 1.0, open_lo=True, open_hi=True)
    m = a * np.eye(9)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = a
    c = math.sqrt(1 - a * a) / 2
    m[6, 6] = m[8, 8] = (1 + a) / 2
    m[6, 8] = m[8, 6] = c
    return DensityOperator(m / (1 + 8 * a), (3, 3))


def horodecki_2x4(b: float) -> DensityOperator:
    """Horodecki's 2x4 PPT entangled state, 0 < b < 1."""
    _in_range("b", b, 0.0, 1.0, open_lo=True, open_hi=True)
    m = b * np.eye(8)
    for i, j in ((0, 5), (1, 6), (2, 7)):
        m[i, j] = m[j, i] = b
    c = math.sqrt(1 - b * b) / 2
    m[4, 4] = m[7, 7] = (1 + b) / 2
    m[4, 7] = m[7, 4] = c
    return DensityOperator(m / (1 + 7 * b), (2, 4))


BELL_NAMES = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")


def bell_vector(k: int) -> np.ndarray:
    """k = 0..3 -> |Φ⁺>, |Φ⁻>, |Ψ⁺>, |Ψ⁻>."""
    k = int(k)
    s = 1 / math.sqrt(2)
    vecs = {
        0: [s, 0, 0, s],
        1: [s, 0, 0, -s],
        2: [0, s, s, 0],
        3: [0, s, -s, 0],
    }
    if k not in vecs:
        raise ValidationError(f"parameter k={k!r} outside {{0, 1, 2, 3}}")
    return np.array(vecs[k], dtype=np.complex128)


def bell(k: int = 3) -> DensityOperator:
    v = bell_vector(k)
    return DensityOperator(np.outer(v, v.conj()), (2, 2))


def singlet() -> DensityOperator:
    return bell(3)


def qubit_ket(theta: float = 0.0, phi: float = 0.0) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def product_pure(
    theta_a: float = 0.0, phi_a: float = 0.0, theta_b: float = 0.0, phi_b: float = 0.0
) -> DensityOperator:
    """|a>|b> for qubit kets given by Bloch angles; defaults to |00>."""
    v = np.kron(qubit_ket(theta_a, phi_a), qubit_ket(theta_b, phi_b))
    return DensityOperator(np.outer(v, v.conj()), (2, 2))


def maximally_mixed(dA: int = 2, dB: int = 2) -> DensityOperator:
    da, db = int(dA), int(dB)
    if da < 1 or db < 1:
        raise ValidationError(f"dimensions must be positive, got {dA}x{dB}")
    return DensityOperator(np.eye(da * db) / (da * db), (da, db))


_BUILDERS = {
    StateFamily.WERNER: werner,
    StateFamily.GISIN_MIXTURE: gisin,
    StateFamily.SINGLET_PLUS_GROUND: singlet_plus_ground,
    StateFamily.HORODECKI_TWO_QUBIT: horodecki_two_qubit,
    StateFamily.HORODECKI_3X3: horodecki_3x3,
    StateFamily.HORODECKI_2X4: horodecki_2x4,
    StateFamily.BELL: bell,
    StateFamily.PRODUCT_PURE: product_pure,
    StateFamily.MAXIMALLY_MIXED: maximally_mixed,
}

_DEFAULTS = {
    StateFamily.WERNER: {"x": 1.0},
    StateFamily.GISIN_MIXTURE: {"x": 1.0, "a": 1 / math.sqrt(2)},
    StateFamily.SINGLET_PLUS_GROUND: {"x": 1.0},
    StateFamily.HORODECKI_TWO_QUBIT: {"p": 0.0, "a": 1 / math.sqrt(2)},
    StateFamily.HORODECKI_3X3: {"a": 0.5},
    StateFamily.HORODECKI_2X4: {"b": 0.5},
    StateFamily.BELL: {"k": 3},
    StateFamily.PRODUCT_PURE: {},
    StateFamily.MAXIMALLY_MIXED: {"dA": 2, "dB": 2},
}

_INT_PARAMS = {"k", "dA", "dB"}


@dataclass(frozen=True)
class NamedStateSpec:
    """A state family plus its real parameters, e.g. ``werner`` with ``x=0.5``."""

    name: StateFamily
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        raw = str(self.name).strip().lower() if not isinstance(self.name, StateFamily) else None
        fam = StateFamily.lookup(self.name)
        params = dict(_ALIAS_PARAMS.get(raw, {})) if raw else {}
        params.update(self.params)
        allowed = set(_DEFAULTS[fam]) | _optional_params(fam)
        unknown = set(params) - allowed
        if unknown:
            raise ValidationError(
                f"unknown parameter(s) {sorted(unknown)} for {fam.value}; accepted: {sorted(allowed)}"
            )
        clean = {k: (int(v) if k in _INT_PARAMS else float(v)) for k, v in params.items()}
        object.__setattr__(self, "name", fam)
        object.__setattr__(self, "params", clean)

    def resolved_params(self) -> dict:
        out = dict(_DEFAULTS[self.name])
        out.update(self.params)
        return out

    def build(self) -> DensityOperator:
        return _BUILDERS[self.name](**self.resolved_params())

    def with_param(self, key: str, value: float) -> "NamedStateSpec":
        return NamedStateSpec(self.name, {**self.params, key: value})

    def to_dict(self) -> dict:
        return {"name": self.name.value, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "NamedStateSpec":
        if "name" not in d:
            raise ValidationError("state spec needs a 'name' field")
        return cls(d["name"], dict(d.get("params", {})))


def _optional_params(fam: StateFamily) -> set[str]:
    if fam in (StateFamily.GISIN_MIXTURE, StateFamily.HORODECKI_TWO_QUBIT):
        return {"b"}
    if fam is StateFamily.PRODUCT_PURE:
        return {"theta_a", "phi_a", "theta_b", "phi_b"}
    return set()


def construct(spec: NamedStateSpec | str, **params) -> DensityOperator:
    """Build a named state: ``construct("werner", x=0.5)`` or from a spec."""
    if not isinstance(spec, NamedStateSpec):
        spec = NamedStateSpec(spec, params)
    elif params:
        spec = NamedStateSpec(spec.name, {**spec.params, **params})
    return spec.build()


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(dA: int, dB: int, rank: int | None = None, seed: int = 0) -> DensityOperator:
    """G G† / Tr(G G†) with G a (d_A d_B) x rank complex Ginibre matrix."""
    n = dA * dB
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise ValidationError(f"rank must lie in [1, {n}], got {rank}")
    g = _ginibre(_rng(seed), n, rank)
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real, (dA, dB))


def random_pure_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = _ginibre(rng, d, 1)[:, 0]
    return v / np.linalg.norm(v)


def random_separable(dA: int, dB: int, terms: int = 4, seed: int = 0) -> DensityOperator:
    """Convex mixture of ``terms`` random pure product states, flat-Dirichlet weights."""
    if terms < 1:
        raise ValidationError(f"terms must be >= 1, got {terms}")
    rng = _rng(seed)
    w = rng.dirichlet(np.ones(terms))
    m = np.zeros((dA * dB, dA * dB), dtype=np.complex128)
    for wi in w:
        v = np.kron(random_pure_vector(rng, dA), random_pure_vector(rng, dB))
        m += wi * np.outer(v, v.conj())
    return DensityOperator(m, (dA, dB))


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random unitary from QR of a Ginibre matrix with R's diagonal phases removed."""
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_product_unitary(dA: int, dB: int, seed: int = 0) -> np.ndarray:
    """U_A ⊗ U_B with independent Haar factors."""
    rng = _rng(seed)
    return np.kron(haar_unitary(rng, dA), haar_unitary(rng, dB))


def dilute(inner: DensityOperator, outer: DensityOperator) -> DensityOperator:
    """rho_AB ⊗ rho_A'B' regrouped onto the (AA')|(BB') cut."""
    n = inner.dim * outer.dim
    if n > MAX_DILUTION_DIM:
        raise ValidationError(f"diluted dimension {n} exceeds the cap {MAX_DILUTION_DIM}")
    (da, db), (da2, db2) = inner.dims, outer.dims
    m = permute_to_bipartition(np.kron(inner.matrix, outer.matrix), (da, db, da2, db2))
    return DensityOperator(m, (da * da2, db * db2))
