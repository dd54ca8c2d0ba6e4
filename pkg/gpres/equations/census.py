from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..grading.models import GradedPresentation
from ..solver.config import SolverConfig
from ..solver.identity import is_identity_in_limit
from ..solver.verdict import Verdict
from ..words.enumerate import ball
from ..words.syntax import format_word
from ..words.word import Word, concat, invert
from .equation import Equation, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusEntry:
    label: str
    verdict: Verdict

    def to_line(self) -> str:
        return f"{self.label} {self.verdict.to_record()}"


@dataclass
class CensusReport:
    """Classification of a ball of elements: solutions are Trivial, non-solutions Nontrivial."""

    radius: Optional[int] = None
    entries: list[CensusEntry] = field(default_factory=list)

    def add(self, label: str, verdict: Verdict):
        self.entries.append(CensusEntry(label, verdict))

    @property
    def solutions(self) -> list[str]:
        return [e.label for e in self.entries if e.verdict.is_trivial]

    @property
    def non_solutions(self) -> list[str]:
        return [e.label for e in self.entries if e.verdict.is_nontrivial]

    @property
    def unknowns(self) -> list[str]:
        return [e.label for e in self.entries if e.verdict.is_unknown]

    @property
    def size(self) -> int:
        return len(self.entries)

    def counts(self) -> dict[str, int]:
        return {
            "solutions": len(self.solutions),
            "non_solutions": len(self.non_solutions),
            "unknowns": len(self.unknowns),
        }

    def to_lines(self) -> list[str]:
        return [e.to_line() for e in self.entries]

    @property
    def exit_code(self) -> int:
        return 2 if self.unknowns else 0


def eval_at(P: GradedPresentation, eq: Equation, g: Word, cfg: SolverConfig) -> Verdict:
    """Is g a solution of eq = 1 in the group presented by P's ranks and all later ones?"""
    if eq.alphabet != P.alphabet:
        raise ValueError("Equation alphabet does not match the presentation")
    return is_identity_in_limit(P, substitute(eq, g), cfg)


def census(
    P: GradedPresentation,
    eq: Equation,
    radius: int,
    cfg: SolverConfig,
    dedupe: bool = False,
) -> CensusReport:
    """Classify every reduced word of length <= radius, in shortlex order.

    With dedupe, a word certified equal to an earlier representative is skipped.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    report = CensusReport(radius=radius)
    representatives: list[Word] = []
    skipped = 0
    for g in ball(P.alphabet, radius):
        if dedupe and any(
            is_identity_in_limit(P, concat(g, invert(r)), cfg).is_trivial for r in representatives
        ):
            skipped += 1
            continue
        representatives.append(g)
        report.add(format_word(g), eval_at(P, eq, g, cfg))
    if skipped:
        logger.info(f"Census: {skipped} words certified equal to earlier ones were skipped")
    return report
