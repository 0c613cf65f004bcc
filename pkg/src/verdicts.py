"""
File: verdicts.py

Purpose: Result records for checks whose failure is an outcome, not an error:
         named checks with witnesses, and scenario verdicts that separate
         hypotheses from conclusions. A conclusion can only be recorded while
         every hypothesis holds.

Imports from: dataclasses, typing, src.errors, src.utils
Imported by: src.fusion, src.rep_graphs, src.verification, app.py

Key Classes:
- Check: One named yes/no check with an optional witness
- ScenarioVerdict: Hypotheses, conclusions and details of a scenario run
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .errors import ArgumentError
from .utils import to_plain

STATUS_PASS = "pass"
STATUS_HYPOTHESIS_FAILURE = "hypothesis-failure"
STATUS_CONCLUSION_FAILURE = "conclusion-failure"


@dataclass(frozen=True)
class Check:
    name: str
    holds: bool
    witness: Optional[Any] = None

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_dict(self) -> Dict[str, Any]:
        out = {"name": self.name, "holds": bool(self.holds)}
        if self.witness is not None:
            out["witness"] = to_plain(self.witness)
        return out


@dataclass
class ScenarioVerdict:
    """Outcome of a scenario: conclusions are only evaluated under valid hypotheses."""

    name: str
    hypotheses: List[Check] = field(default_factory=list)
    conclusions: List[Check] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def require(self, name: str, holds: bool, witness: Optional[Any] = None) -> bool:
        self.hypotheses.append(Check(name, bool(holds), witness))
        return bool(holds)

    def conclude(self, name: str, holds: bool, witness: Optional[Any] = None) -> bool:
        if not self.hypotheses_hold:
            raise ArgumentError(f"Conclusion '{name}' recorded with a failed hypothesis")
        self.conclusions.append(Check(name, bool(holds), witness))
        return bool(holds)

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    @property
    def conclusion_checked(self) -> bool:
        return bool(self.conclusions)

    @property
    def conclusion_holds(self) -> bool:
        return self.conclusion_checked and all(c.holds for c in self.conclusions)

    @property
    def status(self) -> str:
        if not self.hypotheses_hold:
            return STATUS_HYPOTHESIS_FAILURE
        if self.conclusion_checked and not self.conclusion_holds:
            return STATUS_CONCLUSION_FAILURE
        return STATUS_PASS

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def __bool__(self) -> bool:
        return self.passed

    def failed_hypotheses(self) -> List[str]:
        return [h.name for h in self.hypotheses if not h.holds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion_checked": self.conclusion_checked,
            "conclusion_holds": self.conclusion_holds,
            "conclusions": [c.to_dict() for c in self.conclusions],
            "details": to_plain(self.details),
        }
