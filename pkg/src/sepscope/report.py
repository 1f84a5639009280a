"""Analysis reports and the JSON matrix file format.

Matrix files look like::

    {"dims": [2, 2], "matrix": [[[re, im], [re, im], ...], ...]}

with rows in the A-major order used everywhere else in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bipartite import DensityOperator
from .conditional import conditional_amplitude, conditional_entropy
from .exceptions import ValidationError
from .linalg import RANK_TOL
from .maps import criterion_report
from .qubit import hs_decompose, t_diagonal_vector, t_state_region
from .verdict import DEFAULT_TOL, CriterionVerdict

INSUFFICIENCY_NOTE = (
    "all implemented criteria pass, but they are only necessary for separability "
    "beyond 2x2 and 2x3; this state may still be entangled"
)


class MatrixFileError(ValidationError):
    """Malformed matrix file; the message carries line or field context."""


def load_matrix_file(path) -> DensityOperator:
    text = Path(path).read_text(encoding="utf-8")
    return parse_matrix_json(text, source=str(path))


def parse_matrix_json(text: str, source: str = "<string>") -> DensityOperator:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise MatrixFileError(f"{source}: top level must be an object with 'dims' and 'matrix'")
    for key in ("dims", "matrix"):
        if key not in doc:
            raise MatrixFileError(f"{source}: missing field '{key}'")
    dims = doc["dims"]
    if not (isinstance(dims, list) and len(dims) == 2 and all(isinstance(d, int) for d in dims)):
        raise MatrixFileError(f"{source}: field 'dims' must be [d_A, d_B] integers, got {dims!r}")
    rows = doc["matrix"]
    n = dims[0] * dims[1]
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFileError(f"{source}: field 'matrix' must have {n} rows")
    m = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFileError(f"{source}: matrix[{i}] must have {n} entries")
        for j, entry in enumerate(row):
            ok = (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            )
            if not ok:
                raise MatrixFileError(f"{source}: matrix[{i}][{j}] must be a [re, im] pair, got {entry!r}")
            m[i, j] = complex(entry[0], entry[1])
    try:
        return DensityOperator(m, tuple(dims))
    except ValidationError as exc:
        raise ValidationError(f"{source}: invalid density operator: {exc}") from None


def matrix_to_json(rho: DensityOperator) -> str:
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix]
    return json.dumps({"dims": list(rho.dims), "matrix": rows})


@dataclass
class AnalysisReport:
    source: dict
    dims: tuple[int, int]
    verdicts: list[CriterionVerdict]
    certified_inseparable: bool
    conditional_entropy_bits: float
    conditional_max_eigenvalue: float
    hs: dict | None = None
    t_region: str | None = None
    notes: list[str] = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "dims": list(self.dims),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "certified_inseparable": self.certified_inseparable,
            "conditional_entropy_bits": self.conditional_entropy_bits,
            "conditional_max_eigenvalue": self.conditional_max_eigenvalue,
            "hs": self.hs,
            "t_region": self.t_region,
            "notes": list(self.notes),
            "tolerances": dict(self.tolerances),
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(
            source=d["source"],
            dims=tuple(d["dims"]),
            verdicts=[CriterionVerdict.from_dict(v) for v in d["verdicts"]],
            certified_inseparable=bool(d["certified_inseparable"]),
            conditional_entropy_bits=float(d["conditional_entropy_bits"]),
            conditional_max_eigenvalue=float(d["conditional_max_eigenvalue"]),
            hs=d.get("hs"),
            t_region=d.get("t_region"),
            notes=list(d.get("notes", [])),
            tolerances=dict(d.get("tolerances", {})),
            version=d.get("version", __version__),
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def verdict(self, criterion) -> CriterionVerdict:
        for v in self.verdicts:
            if v.criterion == criterion:
                return v
        raise KeyError(criterion)

    def to_text(self) -> str:
        lines = [f"state: {json.dumps(self.source)}  dims: {self.dims[0]}x{self.dims[1]}"]
        for v in self.verdicts:
            status = "pass" if v.passes else "FAIL"
            lines.append(f"  {v.criterion.value:<22} {status:<4}  statistic = {v.statistic:+.12g}")
        lines.append(f"  S(A|B) = {self.conditional_entropy_bits:+.12g} bits")
        lines.append(f"  max eig rho_A|B = {self.conditional_max_eigenvalue:.12g}")
        if self.hs is not None:
            lines.append(f"  r = {self.hs['r']}  s = {self.hs['s']}")
        if self.t_region is not None:
            lines.append(f"  T-state region: {self.t_region}")
        verdict = "certified inseparable" if self.certified_inseparable else "no criterion fails"
        lines.append(f"  => {verdict}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def analyze_state(
    rho: DensityOperator,
    source: dict | None = None,
    *,
    tol: float = DEFAULT_TOL,
    rank_tol: float = RANK_TOL,
) -> AnalysisReport:
    """Full criterion report plus conditional-entropy and two-qubit geometry data."""
    rep = criterion_report(rho, tol=tol, rank_tol=rank_tol)
    amp = conditional_amplitude(rho, "B", rank_tol=rank_tol)
    entropy = conditional_entropy(rho, amplitude=amp)
    hs = region = None
    if rho.dims == (2, 2):
        d = hs_decompose(rho)
        hs = d.to_dict()
        t = t_diagonal_vector(d)
        if t is not None:
            region = t_state_region(t).value
    notes = []
    da, db = rho.dims
    if not rep.certified_inseparable and da * db > 6 and min(da, db) > 1:
        notes.append(INSUFFICIENCY_NOTE)
    return AnalysisReport(
        source=source or {"matrix": "inline"},
        dims=rho.dims,
        verdicts=list(rep.verdicts),
        certified_inseparable=rep.certified_inseparable,
        conditional_entropy_bits=entropy,
        conditional_max_eigenvalue=amp.max_eigenvalue,
        hs=hs,
        t_region=region,
        notes=notes,
        tolerances={"tol": tol, "rank_tol": rank_tol},
    )
