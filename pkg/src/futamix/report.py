"""Verdicts of equivalence checks, shared by conformance and projections."""

from __future__ import annotations

from dataclasses import dataclass, field

from .values import Value, print_datum

EQUAL, UNEQUAL, ERROR = "equal", "unequal", "error"


@dataclass(frozen=True)
class Verdict:
    point: object          # an input tuple, or a case name
    outcome: str           # equal | unequal | error
    tier: str = ""         # structural | functional, when it matters
    note: str = ""

    def to_json(self) -> dict:
        pt = self.point
        if isinstance(pt, tuple):
            pt = [print_datum(x) if not isinstance(x, str) else x for x in pt]
        out = {"point": pt, "outcome": self.outcome}
        if self.tier:
            out["tier"] = self.tier
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class EquivalenceReport:
    mode: str                              # structural | functional
    grid: tuple = ()
    verdicts: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(v.outcome == EQUAL for v in self.verdicts)

    def failures(self) -> list:
        return [v for v in self.verdicts if v.outcome != EQUAL]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "overall": "pass" if self.overall else "fail",
            "points": len(self.verdicts),
            "verdicts": [v.to_json() for v in self.verdicts],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        bad = self.failures()
        head = f"{self.mode}: {'pass' if self.overall else 'fail'} ({len(self.verdicts) - len(bad)}/{len(self.verdicts)})"
        if bad:
            v = bad[0]
            head += f"; first failure at {v.point}: {v.outcome}" + (f" ({v.note})" if v.note else "")
        return head


def show_point(pt) -> str:
    if isinstance(pt, tuple):
        return "(" + " ".join(print_datum(x) for x in pt) + ")"
    return str(pt)


def value_text(v: Value) -> str:
    return print_datum(v)
