"""Shared result types: check items, axiom reports, freeness and iso results.

Everything a verifier or theorem checker returns is built from these small
dataclasses so the CLI can serialize any result uniformly.  Statuses are
plain strings: ``"pass"``, ``"fail"``, ``"unknown"``, ``"unsupported"`` for
checks, and ``"Confirmed"``, ``"Refuted"``, ``"Unknown"`` for theorem
conclusions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional

import numpy as np

__all__ = [
    "CheckItem",
    "AxiomReport",
    "FreeOfRank",
    "NotFree",
    "UnknownFreeness",
    "IsoYes",
    "IsoNo",
    "IsoUnknown",
    "TheoremReport",
    "CONFIRMED",
    "REFUTED",
    "UNDECIDED",
    "first_nonzero_witness",
]

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"
UNSUPPORTED = "unsupported"

CONFIRMED = "Confirmed"
REFUTED = "Refuted"
UNDECIDED = "Unknown"


@dataclass
class CheckItem:
    """One named check with a status and an optional failure witness."""

    name: str
    status: str
    witness: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    """Outcome of a verifier: an ordered list of checks plus a verdict."""

    subject: str
    checks: List[CheckItem] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckItem]:
        return [c for c in self.checks if c.status == FAIL]

    def check_named(self, name: str) -> CheckItem:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"no check named {name!r} in report for {self.subject}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass(frozen=True)
class FreeOfRank:
    """The module is free; ``witness`` columns are a basis of generators."""

    rank: int
    witness: Any = None

    def to_json(self, field=None) -> Dict[str, Any]:
        out: Dict[str, Any] = {"free": True, "rank": self.rank}
        if self.witness is not None and field is not None:
            out["witness"] = [[field.format(x) for x in row] for row in np.asarray(self.witness)]
        return out


@dataclass(frozen=True)
class NotFree:
    reason: str

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"free": False, "reason": self.reason}


@dataclass(frozen=True)
class UnknownFreeness:
    reason: str

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"free": None, "reason": self.reason}


@dataclass(frozen=True)
class IsoYes:
    """Modules are isomorphic; ``matrix`` is a verified invertible intertwiner."""

    matrix: Any

    def to_json(self, field=None) -> Dict[str, Any]:
        out: Dict[str, Any] = {"isomorphic": True}
        if field is not None:
            out["matrix"] = [[field.format(x) for x in row] for row in np.asarray(self.matrix)]
        return out


@dataclass(frozen=True)
class IsoNo:
    reason: str

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"isomorphic": False, "reason": self.reason}


@dataclass(frozen=True)
class IsoUnknown:
    """Random search failed and exhaustion was infeasible; carries the failure bound."""

    failure_bound: str

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"isomorphic": None, "failure_bound": self.failure_bound}


@dataclass
class TheoremReport:
    """Outcome of checking one theorem instance.

    ``conclusion`` is ``"Confirmed"``, ``"Refuted"``, or ``"Unknown"``;
    ``hypotheses`` records each hypothesis check; ``witnesses`` holds the
    constructive data (ranks, bases, intertwiners) serialized as strings.
    """

    theorem: str
    hypotheses: List[CheckItem] = dc_field(default_factory=list)
    conclusion: str = UNDECIDED
    witnesses: Dict[str, Any] = dc_field(default_factory=dict)
    note: str = ""

    @property
    def confirmed(self) -> bool:
        return self.conclusion == CONFIRMED

    @property
    def hypotheses_met(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    def to_json(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "conclusion": self.conclusion,
            "witnesses": self.witnesses,
            "note": self.note,
        }


def first_nonzero_witness(field, residual: np.ndarray) -> Optional[Dict[str, Any]]:
    """Locate the first nonzero entry of a residual tensor, for failure reports.

    Returns ``None`` when the residual is identically zero, else a dict with
    the multi-index, the serialized value there, and the count of nonzeros.
    """
    arr = np.asarray(residual)
    flat = arr.reshape(-1)
    nonzeros = [i for i in range(flat.shape[0]) if not field.is_zero(flat[i])]
    if not nonzeros:
        return None
    first = nonzeros[0]
    idx = np.unravel_index(first, arr.shape) if arr.ndim > 0 else ()
    return {
        "index": [int(i) for i in idx],
        "value": field.format(flat[first]),
        "nonzeros": len(nonzeros),
    }
