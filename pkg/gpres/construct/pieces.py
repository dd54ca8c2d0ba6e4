from __future__ import annotations

import logging
from typing import Optional, Sequence

from ..grading.models import GradedPresentation, Period, Relator
from ..solver.config import SolverConfig
from ..solver.conjugacy import shortest_equal
from ..solver.identity import is_identity, relator_lattice, relevant_indexed
from ..words.abelian import abelianize
from ..words.enumerate import enumerate_reduced
from ..words.syntax import format_word
from ..words.word import Word, concat, invert, product

logger = logging.getLogger(__name__)


def conjugated_generator(P: GradedPresentation, j: int, z: Word) -> Word:
    """Z c_j Z^-1, reduced."""
    c = Word.generator(P.alphabet, P.alphabet.c(j))
    return product(P.alphabet, (z, c, invert(z)))


def minimal_conjugate_words(
    P: GradedPresentation, i: int, j: int, z: Word, cfg: SolverConfig
) -> list[Word]:
    """Minimal words of G(i-1) shorter than d*i that equal Z c_j Z^-1, in shortlex order."""
    if not 1 <= j <= P.alphabet.h:
        raise ValueError(f"j must lie in 1..{P.alphabet.h}, got {j}")
    lower = i - 1
    target = conjugated_generator(P, j, z)
    limit = P.params.d * i

    witness, verdict = shortest_equal(P, lower, target, cfg)
    if verdict.is_unknown:
        logger.warning(f'Rank {i}: minimality for "{format_word(target)}" undecided; no pieces')
        return []
    if len(witness) >= limit:
        logger.warning(
            f'Rank {i}: shortest form of "{format_word(target)}" has length {len(witness)} >= {limit}'
        )
        return []

    size = len(witness)
    if not relevant_indexed(P, 2 * size, cfg, lower):
        return [witness]

    lattice = relator_lattice(P, lower)
    goal = abelianize(target)
    target_inv = invert(target)
    found = []
    for u in enumerate_reduced(P.alphabet, size, lambda u: lattice.contains(abelianize(u) - goal)):
        result = is_identity(P, lower, concat(u, target_inv), cfg)
        if result.is_trivial:
            found.append(u)
        elif result.is_unknown:
            logger.info(f'Rank {i}: equality of "{format_word(u)}" with "{format_word(target)}" undecided')
    return found


def build_relator(
    period: Period,
    pieces: Sequence[Word],
    n: int,
    d: Optional[int] = None,
    conjugating_base: Optional[Word] = None,
) -> Relator:
    """The relator T_1 A^-n T_2 A^n ... T_h A^n."""
    h = period.word.alphabet.h
    if len(pieces) != h:
        raise ValueError(f"Expected {h} pieces, got {len(pieces)}")
    if d is not None:
        for k, t in enumerate(pieces, start=1):
            if len(t) >= d * period.rank:
                raise ValueError(f"Piece {k} has length {len(t)} >= d*rank = {d * period.rank}")
    exponents = [(-1) ** j * n for j in range(1, h + 1)]
    return Relator.structured(period, list(zip(pieces, exponents)), conjugating_base)
