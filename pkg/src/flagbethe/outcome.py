"""Result record shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field

EXACT = "exact"
LIMIT = "limit sweep (exact rationals at generic z)"


@dataclass
class CheckOutcome:
    """Result of a verification routine: pass flag, witnesses and evidence."""

    passed: bool
    witnesses: list = field(default_factory=list)
    evidence: str = EXACT
    details: dict = field(default_factory=dict)
