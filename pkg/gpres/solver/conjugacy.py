from __future__ import annotations

import logging
from typing import Optional

from ..grading.models import GradedPresentation
from ..words.abelian import abelianize
from ..words.cyclic import is_conjugate_free
from ..words.enumerate import ball, enumerate_reduced
from ..words.word import Word, concat, invert, kill_generators, product
from .config import SolverConfig
from .identity import (
    abelian_obstruction,
    conjugator_radius,
    is_identity,
    relator_lattice,
    relators_die_without_c,
    relevant_indexed,
)
from .verdict import Obstruction, Verdict

logger = logging.getLogger(__name__)


def are_conjugate(
    P: GradedPresentation, rank: int, x: Word, y: Word, cfg: SolverConfig
) -> tuple[Verdict, Optional[Word]]:
    """Decide whether Z^-1 x Z = y for some Z in G(rank); returns (verdict, Z)."""
    P.check_rank(rank)
    z = is_conjugate_free(x, y)
    if z is not None:
        return Verdict.trivial(), z

    lattice = relator_lattice(P, rank)
    found = abelian_obstruction(lattice, abelianize(x) - abelianize(y))
    if found:
        return found, None

    if relators_die_without_c(P, rank):
        c = P.alphabet.c_indices
        kx, ky = kill_generators(x, c), kill_generators(y, c)
        if is_conjugate_free(kx, ky) is None:
            return Verdict.nontrivial(Obstruction.FREE_QUOTIENT, concat(kx, invert(ky))), None

    radius = conjugator_radius(len(x), len(y), cfg)
    if not relevant_indexed(P, 2 * radius + len(x) + len(y), cfg, rank):
        # Every test word below behaves as in the free group, where x and y are not conjugate.
        return Verdict.nontrivial(Obstruction.LENGTH_CUT_FREE, radius), None

    tested = 0
    saw_unknown = False
    y_inv = invert(y)
    for z in ball(P.alphabet, radius):
        tested += 1
        if tested > cfg.node_budget:
            logger.debug(f"are_conjugate: conjugator budget {cfg.node_budget} exhausted at radius {radius}")
            return Verdict.unknown(budget=cfg.node_budget, reason="conjugator ball not exhausted"), None
        word = product(P.alphabet, (invert(z), x, z, y_inv))
        verdict = is_identity(P, rank, word, cfg)
        if verdict.is_trivial:
            return verdict, z
        if verdict.is_unknown:
            saw_unknown = True
    if saw_unknown:
        return Verdict.unknown(reason=f"undecided conjugators within radius {radius}"), None
    return Verdict.nontrivial(Obstruction.BALL_EXHAUSTED, radius), None


def shortest_equal(
    P: GradedPresentation, rank: int, w: Word, cfg: SolverConfig
) -> tuple[Word, Verdict]:
    """Shortlex-first word certified equal to w in G(rank), and whether minimality is decided."""
    P.check_rank(rank)
    if not relevant_indexed(P, 2 * len(w), cfg, rank):
        # u w^-1 has length <= 2|w| for every candidate u, so equality is free equality.
        return w, Verdict.trivial()

    lattice = relator_lattice(P, rank)
    target = abelianize(w)
    w_inv = invert(w)
    tested = 0
    undecided = None
    for length in range(len(w) + 1):
        for u in enumerate_reduced(P.alphabet, length, lambda u: lattice.contains(abelianize(u) - target)):
            if u == w:
                return w, undecided or Verdict.trivial()
            tested += 1
            if tested > cfg.node_budget:
                return w, Verdict.unknown(budget=cfg.node_budget, reason="shortlex scan not finished")
            verdict = is_identity(P, rank, concat(u, w_inv), cfg)
            if verdict.is_trivial:
                return u, undecided or verdict
            if verdict.is_unknown and undecided is None:
                undecided = Verdict.unknown(reason=f"equality with {len(u)}-letter words undecided")
    return w, undecided or Verdict.trivial()
