"""Shared enums and report records."""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any


class DesignMode(str, Enum):
    """How strictly a design's lambda is checked."""

    EXACT = "exact"
    AT_LEAST = "at-least"

    def __str__(self) -> str:
        return self.value


class Pgl2Class(str, Enum):
    """Element types of PGL(2,q)."""

    CENTRAL = "central"
    UNIPOTENT = "unipotent"
    SPLIT = "semisimple-split"
    NONSPLIT = "semisimple-nonsplit"

    def __str__(self) -> str:
        return self.value


class TableRowKind(str, Enum):
    """Rows of the p-group and normalizer design tables."""

    CYCLIC_Q_PLUS_1 = "cyclic-q+1"
    CYCLIC_Q_MINUS_1 = "cyclic-q-1"
    CYCLIC_Q = "cyclic-q"
    ABELIAN_P = "abelian-p"
    DIHEDRAL_Q_MINUS_1 = "dihedral-2(q-1)"
    DIHEDRAL_Q_PLUS_1 = "dihedral-2(q+1)"
    BOREL = "borel"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def list_rows(cls) -> list[str]:
        return [row.value for row in cls]


@dataclass
class DesignReport:
    """Outcome of checking a block set against a t-(n,k,lambda;q) design."""

    ok: bool
    mode: DesignMode
    lam: int
    lam_min: int
    lam_max: int
    t_subspaces: int
    blocks: int
    violation: Any = None  # first offending t-subspace, if any

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "mode": self.mode.value,
            "lambda": self.lam,
            "lambda_min": self.lam_min,
            "lambda_max": self.lam_max,
            "t_subspaces": self.t_subspaces,
            "blocks": self.blocks,
            "violation": self.violation.to_text() if hasattr(self.violation, "to_text") else self.violation,
        }


@dataclass
class GddReport:
    """Outcome of a group divisible design check."""

    ok: bool
    violation: str | None = None
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "witness": list(self.witness) if self.witness else None}


@dataclass
class CwCodeReport:
    """Constant weight code read off a design's block incidence vectors."""

    length: int
    blocks: int
    constant_weight: bool
    weight: int | None
    max_intersection: int | None
    min_distance: int | None
    distance_matches: bool | None  # d == 2(w - s)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class FamilyReport:
    """Codes of a family read as blocks of a design."""

    codes: int
    distinct_blocks: int
    n: int
    k: int
    t: int
    mode: DesignMode
    lam_min: int
    lam_max: int
    is_design: bool
    splitting_count: int | None = None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["mode"] = self.mode.value
        return data


@dataclass
class CyclicCodeCount:
    """Cyclic codes of length n counted by dimension."""

    n: int
    q: int
    factor_degrees: list[int]
    by_dimension: dict[int, int]
    total: int
    falling_factorial_reading: dict[int, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "factor_degrees": self.factor_degrees,
            "by_dimension": {str(k): v for k, v in sorted(self.by_dimension.items())},
            "total": self.total,
            "falling_factorial_reading": {str(k): v for k, v in sorted(self.falling_factorial_reading.items())},
        }
