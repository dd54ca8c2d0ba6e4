"""Independent ground truth for small instances.

Certificates come from a plain breadth-first search over relator insertions;
non-triviality comes from a complete coset table (Todd-Coxeter) of the finite
factor generated by the letters that occur in relators, the remaining letters
forming a free factor.
"""

from __future__ import annotations

import logging
from functools import reduce as fold
from typing import Sequence

from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from ..grading.models import GradedPresentation
from ..words.word import Word, free_reduce
from .dehn import insertion_search, relator_forms
from .verdict import Obstruction, Verdict

logger = logging.getLogger(__name__)


class CosetTracer:
    """Regular action of a finite presented group on its coset table."""

    def __init__(self, names: Sequence[str], relators: Sequence[Sequence[tuple[int, int]]], budget: int):
        result = free_group(", ".join(names))
        F, gens = result[0], result[1:]
        elements = [
            fold(lambda acc, item: acc * gens[item[0]] ** item[1], rel, F.identity) for rel in relators
        ]
        table = FpGroup(F, elements).coset_enumeration([], max_cosets=budget)
        if not table.is_complete():
            raise ValueError("coset enumeration incomplete")
        table.compress()
        self._table = table.table
        self._columns = {}
        for k, g in enumerate(gens):
            self._columns[(k, 1)] = table.A_dict[g]
            self._columns[(k, -1)] = table.A_dict[g**-1]
        self.order = len(self._table)

    def trace(self, letters: Sequence[tuple[int, int]]) -> int:
        coset = 0
        for letter in letters:
            coset = self._table[coset][self._columns[letter]]
        return coset


def _finite_factor(P: GradedPresentation, rank: int, budget: int):
    """(generator codes in the factor, tracer) or None if enumeration fails."""
    key = ("finite_factor", rank, budget)
    if key not in P.memo:
        P.memo[key] = _enumerate_factor(P, rank, budget)
    return P.memo[key]


def _enumerate_factor(P: GradedPresentation, rank: int, budget: int):
    words = [r.flattened for r in P.relators(rank)]
    used = sorted({abs(c) for w in words for c in w.codes})
    position = {code: k for k, code in enumerate(used)}
    names = [P.alphabet.name(code - 1) for code in used]
    relators = [[(position[abs(c)], 1 if c > 0 else -1) for c in w.codes] for w in words]
    try:
        tracer = CosetTracer(names, relators, budget)
    except ValueError as e:
        logger.debug(f"brute_identity: no finite closure within {budget} cosets ({e})")
        return None
    return position, tracer


def _free_product_normal_form(codes: tuple[int, ...], position: dict[int, int], tracer: CosetTracer):
    """Delete trivial syllables of the finite factor until none remain."""
    while True:
        out: list[int] = []
        changed = False
        i = 0
        while i < len(codes):
            if abs(codes[i]) not in position:
                out.append(codes[i])
                i += 1
                continue
            j = i
            while j < len(codes) and abs(codes[j]) in position:
                j += 1
            syllable = codes[i:j]
            letters = [(position[abs(c)], 1 if c > 0 else -1) for c in syllable]
            if tracer.trace(letters) == 0:
                changed = True
            else:
                out.extend(syllable)
            i = j
        codes = free_reduce(out)
        if not changed:
            return codes


def brute_identity(P: GradedPresentation, rank: int, w: Word, budget: int) -> Verdict:
    """Exhaustive to the budget; no Dehn shortcut and no cheap obstructions."""
    P.check_rank(rank)
    relators = P.relators(rank)
    if w.is_empty():
        return Verdict.trivial()
    if not relators:
        return Verdict.nontrivial(Obstruction.LENGTH_CUT_FREE, len(w))

    forms = relator_forms(list(enumerate(relators)))
    cap = 2 * len(w) + max(len(r) for r in relators)
    path, _ = insertion_search(w, forms, budget, cap)
    if path is not None:
        return Verdict.trivial(path)

    factor = _finite_factor(P, rank, budget)
    if factor is None:
        return Verdict.unknown(budget=budget, reason="no certificate and no finite closure")
    position, tracer = factor
    normal = _free_product_normal_form(w.codes, position, tracer)
    if normal:
        return Verdict.nontrivial(Obstruction.COSET_TABLE, Word._trusted(w.alphabet, normal))
    return Verdict.unknown(budget=budget, reason="trivial by coset table, no certificate found")
