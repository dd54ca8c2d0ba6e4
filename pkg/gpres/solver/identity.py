"""Word problem in a graded presentation: obstructions, length cut, Dehn, bounded search."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Optional

from ..grading.models import GradedPresentation, Relator, min_relator_length
from ..words.abelian import AbelianVector, IntegerLattice, abelianize
from ..words.word import Word, kill_generators
from .config import SolverConfig
from .dehn import RelatorForm, dehn_reduce_forms, insertion_search, relator_forms
from .oracle import brute_identity
from .verdict import Obstruction, Verdict

logger = logging.getLogger(__name__)


# ============================================================
# Length cut and bounds
# ============================================================


def relator_cut(word_length: int, alpha: Fraction) -> Fraction:
    """Relators strictly shorter than this can matter for a word of this length."""
    return Fraction(word_length) / (1 - alpha)


def relevant_indexed(
    P: GradedPresentation, word_length: int, cfg: SolverConfig, rank: Optional[int] = None
) -> list[tuple[int, Relator]]:
    cut = relator_cut(word_length, cfg.alpha)
    return [(i, r) for i, r in enumerate(P.relators(rank)) if len(r) < cut]


def relevant_relators(
    P: GradedPresentation, word_length: int, cfg: SolverConfig, rank: Optional[int] = None
) -> list[Relator]:
    """Relators R with |R| < word_length / (1 - alpha), in index order."""
    return [r for _, r in relevant_indexed(P, word_length, cfg, rank)]


def conjugator_radius(x_length: int, y_length: int, cfg: SolverConfig) -> int:
    if cfg.conjugator_radius_override is not None:
        return cfg.conjugator_radius_override
    return math.ceil((Fraction(1, 2) + cfg.alpha) * (x_length + y_length))


def double_coset_bound(alpha: Fraction, a_length: int, b_length: int, c_length: int) -> Fraction:
    """Length bound on the coset representatives in an equation A X B Y = C."""
    return (Fraction(1, 2) + alpha) * (a_length + b_length + c_length) + a_length // 2 + b_length // 2


def power_conjugator_bound(d: int, period_length: int) -> int:
    """Length bound for a conjugator taking a period onto a conjugate of itself."""
    return d * period_length // 3


# ============================================================
# Obstructions
# ============================================================


def relator_lattice(P: GradedPresentation, rank: int, limit: bool = False) -> IntegerLattice:
    key = ("lattice", rank, limit)
    if key not in P.memo:
        vectors = [abelianize(r.flattened) for r in P.relators(rank)]
        if limit:
            vectors.append(P.params.relator_vector())
        P.memo[key] = IntegerLattice(vectors, P.alphabet.size)
    return P.memo[key]


def abelian_obstruction(lattice: IntegerLattice, v: AbelianVector) -> Optional[Verdict]:
    if lattice.contains(v):
        return None
    return Verdict.nontrivial(Obstruction.ABELIAN, v)


def relators_die_without_c(P: GradedPresentation, rank: int) -> bool:
    """True when every relator maps to 1 once c1..ch are killed."""
    key = ("dies", rank)
    if key not in P.memo:
        c = P.alphabet.c_indices
        P.memo[key] = all(kill_generators(r.flattened, c).is_empty() for r in P.relators(rank))
    return P.memo[key]


def presentation_forms(P: GradedPresentation, indexed: list[tuple[int, Relator]]) -> list[RelatorForm]:
    forms = []
    for index, relator in indexed:
        key = ("forms", index)
        if key not in P.memo:
            P.memo[key] = relator_forms([(index, relator)])
        forms.extend(P.memo[key])
    return forms


# ============================================================
# Decision pipeline
# ============================================================


def is_identity(P: GradedPresentation, rank: int, w: Word, cfg: SolverConfig) -> Verdict:
    """Decide w = 1 in G(rank), soundly and within the configured budgets."""
    P.check_rank(rank)
    if cfg.oracle_mode:
        return brute_identity(P, rank, w, cfg.node_budget)
    return _decide(P, rank, w, cfg, limit=False)


def is_identity_in_limit(P: GradedPresentation, w: Word, cfg: SolverConfig) -> Verdict:
    """Decide w = 1 in the limit group whose built prefix is P.

    Unbuilt ranks only contribute generated relators: they abelianize to
    (0,0,1,...,1), die once the c's are killed, and are no shorter than
    min_relator_length at their rank.
    """
    return _decide(P, P.built_rank, w, cfg, limit=True)


def _decide(P: GradedPresentation, rank: int, w: Word, cfg: SolverConfig, limit: bool) -> Verdict:
    P.check_rank(rank)
    if w.alphabet != P.alphabet:
        raise ValueError("Word alphabet does not match the presentation")
    if w.is_empty():
        return Verdict.trivial()

    found = abelian_obstruction(relator_lattice(P, rank, limit), abelianize(w))
    if found:
        return found

    if relators_die_without_c(P, rank):
        image = kill_generators(w, P.alphabet.c_indices)
        if not image.is_empty():
            return Verdict.nontrivial(Obstruction.FREE_QUOTIENT, image)

    relevant = relevant_indexed(P, len(w), cfg, rank)
    if not relevant:
        cut = relator_cut(len(w), cfg.alpha)
        if limit and cut > min_relator_length(P.params, P.built_rank + 1):
            return Verdict.unknown(reason=f"length cut {cut} reaches unbuilt ranks")
        return Verdict.nontrivial(Obstruction.LENGTH_CUT_FREE, len(w))

    forms = presentation_forms(P, relevant)
    reduced, steps = dehn_reduce_forms(w, forms)
    if reduced.is_empty():
        return Verdict.trivial(steps)

    if cfg.max_search_length is not None and len(reduced) > cfg.max_search_length:
        return Verdict.unknown(
            reason=f"word length {len(reduced)} exceeds search limit {cfg.max_search_length}"
        )

    cap = cfg.max_intermediate_length
    if cap is None:
        cap = 2 * len(w) + max(len(r) for _, r in relevant)
    path, exhausted = insertion_search(reduced, forms, cfg.node_budget, cap)
    if path is not None:
        return Verdict.trivial(steps + path)
    if exhausted:
        logger.debug(f"is_identity: node budget {cfg.node_budget} exhausted at rank {rank}")
        return Verdict.unknown(budget=cfg.node_budget, reason="node budget exhausted")
    return Verdict.unknown(reason=f"no proof with intermediate words up to length {cap}")
