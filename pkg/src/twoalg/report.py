"""Verification reports: one entry per axiom with a concrete witness on failure."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    axiom: str
    passed: bool
    witness: tuple = ()
    detail: str = ""

    def line(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        text = f"  [{mark}] {self.axiom}"
        if not self.passed and self.witness:
            text += f" witness={self.witness}"
        if self.detail:
            text += f"  {self.detail}"
        return text


@dataclass
class Report:
    """Outcome of a checker.

    ``ok`` is true iff no entry failed. ``label`` is an optional
    classification (e.g. ``"pre-crossed"``) set by the checker.
    """

    subject: str
    entries: list[Check] = field(default_factory=list)
    label: str | None = None

    def add(self, axiom, passed, witness=(), detail=""):
        self.entries.append(Check(axiom, bool(passed), tuple(witness), detail))

    def extend(self, other: Report, prefix: str = ""):
        for c in other.entries:
            axiom = f"{prefix}{c.axiom}" if prefix else c.axiom
            self.entries.append(Check(axiom, c.passed, c.witness, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.entries)

    def failures(self) -> list[Check]:
        return [c for c in self.entries if not c.passed]

    def failed(self, axiom: str) -> bool:
        return any(c.axiom == axiom and not c.passed for c in self.entries)

    def passed(self, axiom: str) -> bool:
        hits = [c for c in self.entries if c.axiom == axiom]
        return bool(hits) and all(c.passed for c in hits)

    def get(self, axiom: str) -> Check:
        for c in self.entries:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def __bool__(self):
        return self.ok

    def __str__(self):
        verdict = "PASS" if self.ok else "FAIL"
        head = f"{self.subject}: {verdict}"
        if self.label:
            head += f" ({self.label})"
        return "\n".join([head] + [c.line() for c in self.entries])
