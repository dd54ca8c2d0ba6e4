from __future__ import annotations

import logging
from typing import Iterable, Iterator

from ..grading.conditions import period_clause1, period_clause2
from ..grading.models import GradedPresentation, Outcome, Period
from ..words.abelian import abelian_congruent
from ..words.enumerate import enumerate_reduced
from ..words.syntax import format_word
from ..words.word import Word

logger = logging.getLogger(__name__)


def period_candidates(P: GradedPresentation, i: int, cfg) -> Iterator[Word]:
    """Words of length i congruent to ab modulo the commutator subgroup and c1...ch."""
    if i < 1:
        raise ValueError(f"Period length must be >= 1, got {i}")
    ab = P.params.ab()
    lattice = [P.params.relator_vector()]

    def congruent(w: Word) -> bool:
        return abelian_congruent(w, ab, lattice)

    if cfg.mode == "exhaustive":
        if i > cfg.exhaustive_rank_cap:
            raise ValueError(
                f"Exhaustive period enumeration is capped at rank {cfg.exhaustive_rank_cap}, "
                f"got rank {i}; use targeted mode"
            )
        yield from enumerate_reduced(P.alphabet, i, congruent)
        return

    pool = cfg.targeted.get(i, ())
    for w in pool:
        if len(w) != i:
            raise ValueError(f'Targeted candidate "{format_word(w)}" has length {len(w)}, not {i}')
    for w in sorted(set(pool), key=Word.shortlex_key):
        if congruent(w):
            yield w
        else:
            logger.info(f'Targeted candidate "{format_word(w)}" is not congruent to ab; skipped')


def screen_periods(P: GradedPresentation, i: int, candidates: Iterable[Word], cfg):
    """Greedy pass over candidates in order. Yields events, returns the accepted periods."""
    accepted: list[Word] = []
    for word in candidates:
        text = format_word(word)
        result = period_clause1(P, i, word, cfg.solver)
        if result.outcome is Outcome.PASS:
            for other in accepted:
                result = period_clause2(P, i, word, other, cfg.solver)
                if result.outcome is not Outcome.PASS:
                    break
        if result.outcome is not Outcome.PASS:
            logger.info(f'Rank {i}: period candidate "{text}" excluded by clause {result.clause} ({result.outcome.value})')
            yield {
                "event": "period_excluded",
                "rank": i,
                "word": text,
                "clause": result.clause,
                "result": result.outcome.value,
                "detail": result.detail,
            }
            continue
        accepted.append(word)
        yield {"event": "period_accepted", "rank": i, "word": text}
    return [Period(w, i) for w in accepted]


def select_periods(P: GradedPresentation, i: int, candidates: Iterable[Word], cfg) -> list[Period]:
    return drain(screen_periods(P, i, candidates, cfg))


def drain(events: Iterator[dict]):
    """Run an event generator to completion and return its value."""
    while True:
        try:
            next(events)
        except StopIteration as stop:
            return stop.value
