"""Condition R: period clauses 1-2 and relator clauses R1-R6, three-valued."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence

from ..solver.config import SolverConfig
from ..solver.conjugacy import are_conjugate, shortest_equal
from ..solver.identity import is_identity, relator_lattice
from ..words.abelian import IntegerLattice, abelianize
from ..words.cyclic import cyclic_core, proper_power_root
from ..words.enumerate import enumerate_reduced
from ..words.syntax import format_word
from ..words.word import Word, codes_key, concat, invert, invert_codes, power, product
from .models import (
    ClauseResult,
    ConditionReport,
    GradedPresentation,
    Outcome,
    Period,
    Relator,
)

logger = logging.getLogger(__name__)


def _passed(subject: str, clause: str, detail: str = "") -> ClauseResult:
    return ClauseResult(subject, clause, Outcome.PASS, detail)


def _failed(subject: str, clause: str, detail: str) -> ClauseResult:
    return ClauseResult(subject, clause, Outcome.FAIL, detail)


def _unknown(subject: str, clause: str, detail: str) -> ClauseResult:
    return ClauseResult(subject, clause, Outcome.UNKNOWN, detail)


def period_subject(word: Word, rank: int) -> str:
    return f'rank={rank} period="{format_word(word)}"'


def relator_subject(P: GradedPresentation, relator: Relator) -> str:
    index = _index_in_rank(P, relator)
    return f"rank={relator.rank} relator={index}"


def _index_in_rank(P: GradedPresentation, relator: Relator) -> int:
    if relator.rank > P.built_rank or relator.rank < 3:
        raise ValueError(f"Relator of rank {relator.rank} does not belong to the presentation")
    for i, r in enumerate(P.new_relators(relator.rank)):
        if r == relator:
            return i
    raise ValueError("Relator does not belong to the presentation")


# ============================================================
# Periods
# ============================================================


def period_clause1(P: GradedPresentation, i: int, word: Word, cfg: SolverConfig) -> ClauseResult:
    """Is word conjugate in G(i-1) to a power of a strictly shorter word?"""
    subject = period_subject(word, i)
    lower = i - 1
    if not P.relators(lower):
        # Free lower ranks: conjugacy classes are cyclic cores.
        _, core = cyclic_core(word)
        if len(core) < len(word):
            return _failed(subject, "1", f'conjugate to "{format_word(core)}"')
        root, k = proper_power_root(word)
        if k > 1:
            return _failed(subject, "1", f'power {k} of "{format_word(root)}"')
        return _passed(subject, "1")

    lattice = relator_lattice(P, lower)
    target = abelianize(word)
    undecided = None
    for length in range(1, i):
        max_power = math.ceil(i / length) + 1
        for root in enumerate_reduced(P.alphabet, length):
            v = abelianize(root)
            for k in range(1, max_power + 1):
                if not lattice.contains(target - v.scale(k)):
                    continue
                verdict, z = are_conjugate(P, lower, word, power(root, k), cfg)
                if verdict.is_trivial:
                    return _failed(
                        subject, "1", f'conjugate to "{format_word(root)}"^{k} by "{format_word(z)}"'
                    )
                if verdict.is_unknown and undecided is None:
                    undecided = f'conjugacy with "{format_word(root)}"^{k} undecided'
    if undecided:
        return _unknown(subject, "1", undecided)
    return _passed(subject, "1")


def period_clause2(
    P: GradedPresentation, i: int, x: Word, y: Word, cfg: SolverConfig
) -> ClauseResult:
    """Is x conjugate in G(i-1) to y or to y^-1?"""
    subject = f'{period_subject(x, i)} other="{format_word(y)}"'
    undecided = None
    for sign, target in ((1, y), (-1, invert(y))):
        verdict, z = are_conjugate(P, i - 1, x, target, cfg)
        if verdict.is_trivial:
            return _failed(subject, "2", f'conjugate to other^{sign} by "{format_word(z)}"')
        if verdict.is_unknown:
            undecided = f"conjugacy with other^{sign} undecided"
    if undecided:
        return _unknown(subject, "2", undecided)
    return _passed(subject, "2")


def check_periods(P: GradedPresentation, i: int, cfg: SolverConfig) -> list[ClauseResult]:
    P.check_rank(i)
    periods = [p.word for p in P.periods(i)]
    results = [period_clause1(P, i, x, cfg) for x in periods]
    for a in range(len(periods)):
        for b in range(a + 1, len(periods)):
            results.append(period_clause2(P, i, periods[a], periods[b], cfg))
    return results


# ============================================================
# Relators R1-R4
# ============================================================


def _worst(results: Sequence[ClauseResult], subject: str, clause: str) -> ClauseResult:
    for outcome in (Outcome.FAIL, Outcome.UNKNOWN):
        for r in results:
            if r.outcome is outcome:
                return r
    return _passed(subject, clause)


def check_R1_R2_R3_R4(
    P: GradedPresentation, relator: Relator, cfg: SolverConfig
) -> tuple[ClauseResult, ClauseResult, ClauseResult, ClauseResult]:
    subject = relator_subject(P, relator)
    if not relator.is_structured:
        return tuple(_unknown(subject, c, "unstructured relator") for c in ("R1", "R2", "R3", "R4"))
    params = P.params
    exponents = relator.exponents

    small = [e for e in exponents if abs(e) < params.n]
    if small:
        r1 = _failed(subject, "R1", f"exponent {small[0]} below n={params.n}")
    else:
        r1 = _passed(subject, "R1")

    magnitudes = [abs(e) for e in exponents]
    bound = 1 + Fraction(1, 2 * params.h)
    if min(magnitudes) == 0:
        r2 = _failed(subject, "R2", "zero exponent")
    else:
        ratio = Fraction(max(magnitudes), min(magnitudes))
        r2 = _passed(subject, "R2") if ratio <= bound else _failed(
            subject, "R2", f"exponent ratio {ratio} exceeds {bound}"
        )

    pieces = list(enumerate(relator.piece_words, start=1))
    r3 = _worst([_check_piece_minimal(P, relator, k, t, cfg, subject) for k, t in pieces], subject, "R3")
    r4 = _worst(
        [_check_piece_outside_period(P, relator, k, t, cfg, subject) for k, t in pieces], subject, "R4"
    )
    return r1, r2, r3, r4


def _check_piece_minimal(
    P: GradedPresentation, relator: Relator, k: int, t: Word, cfg: SolverConfig, subject: str
) -> ClauseResult:
    rank = relator.rank
    limit = P.params.d * rank
    if len(t) >= limit:
        return _failed(subject, "R3", f"piece {k} has length {len(t)} >= d*i = {limit}")
    witness, verdict = shortest_equal(P, rank - 1, t, cfg)
    if len(witness) < len(t):
        return _failed(subject, "R3", f'piece {k} equals shorter "{format_word(witness)}"')
    if verdict.is_unknown:
        return _unknown(subject, "R3", f"minimality of piece {k} undecided")
    return _passed(subject, "R3")


def _check_piece_outside_period(
    P: GradedPresentation, relator: Relator, k: int, t: Word, cfg: SolverConfig, subject: str
) -> ClauseResult:
    rank = relator.rank
    a = relator.period.word
    lattice = IntegerLattice(
        [abelianize(r.flattened) for r in P.relators(rank - 1)] + [abelianize(a)], P.alphabet.size
    )
    if not lattice.contains(abelianize(t)):
        return _passed(subject, "R4")
    bound = math.ceil(len(t) / len(a)) + 1
    undecided = False
    for p in range(-bound, bound + 1):
        verdict = is_identity(P, rank - 1, concat(t, power(a, -p)), cfg)
        if verdict.is_trivial:
            return _failed(subject, "R4", f"piece {k} equals period^{p}")
        undecided = undecided or verdict.is_unknown
    if undecided:
        return _unknown(subject, "R4", f"membership of piece {k} in the period's cyclic subgroup undecided")
    return _passed(subject, "R4")


# ============================================================
# R5
# ============================================================


def _block_layout(relator: Relator) -> tuple[list[int], list[int], list[int]]:
    """Offsets of each piece and exponent block in the literal product, with block lengths."""
    period_length = len(relator.period.word)
    starts_t, starts_e, lengths_e = [], [], []
    offset = 0
    for t, e in relator.pieces:
        starts_t.append(offset)
        offset += len(t)
        starts_e.append(offset)
        lengths_e.append(abs(e) * period_length)
        offset += abs(e) * period_length
    return starts_t, starts_e, lengths_e


def check_R5(relator: Relator, alpha: Fraction, subject: str = "relator") -> ClauseResult:
    """Not a proper power, and long structured subwords extend uniquely around the cycle."""
    if relator.flattened.is_empty():
        return _failed(subject, "R5", "empty relator")
    root, k = proper_power_root(relator.flattened)
    if k > 1:
        return _failed(subject, "R5", f'flattened word is "{format_word(root)}"^{k}')
    if not relator.is_structured:
        return _unknown(subject, "R5", "unstructured relator")

    literal = relator.literal_codes()
    total = len(literal)
    key = codes_key(literal)
    doubled = key + key
    h = len(relator.pieces)
    starts_t, starts_e, lengths_e = _block_layout(relator)
    lowest = max(0, math.ceil(1 / alpha - 4))
    for span in range(lowest, h - 1):
        for s in range(h):
            before = (s - 1) % h
            start = starts_e[before]
            end_block = (s + span) % h
            end = starts_e[end_block] + lengths_e[end_block]
            if end <= start:
                end += total
            v = doubled[start:end]
            extensions = set()
            pos = doubled.find(v)
            while 0 <= pos < total:
                extensions.add(doubled[pos + len(v) : pos + total])
                pos = doubled.find(v, pos + 1)
            if len(extensions) > 1:
                return _failed(
                    subject,
                    "R5",
                    f"subword through pieces {s + 1}..{(s + span) % h + 1} extends in {len(extensions)} ways",
                )
    return _passed(subject, "R5")


# ============================================================
# R6
# ============================================================


def _signed_structure(relator: Relator, sign: int) -> tuple[list[Word], list[int]]:
    """Pieces and exponents of relator^sign, read as a cyclic structured product."""
    pieces, exponents = list(relator.piece_words), list(relator.exponents)
    if sign > 0:
        return pieces, exponents
    h = len(pieces)
    return (
        [invert(pieces[h - 1 - j]) for j in range(h)],
        [-exponents[(h - 2 - j) % h] for j in range(h)],
    )


def _sign(e: int) -> int:
    return 1 if e > 0 else -1


class _PieceShifts:
    """Cached (p, q) with T = A^p T' A^q in G(rank), certified and undecided."""

    def __init__(self, P: GradedPresentation, rank: int, period: Word, cfg: SolverConfig):
        self.P, self.rank, self.period, self.cfg = P, rank, period, cfg
        self.lattice = relator_lattice(P, rank)
        self.cache: dict[tuple, tuple[frozenset, frozenset]] = {}

    def get(self, t: Word, t2: Word) -> tuple[frozenset, frozenset]:
        key = (t.codes, t2.codes)
        if key not in self.cache:
            self.cache[key] = self._compute(t, t2)
        return self.cache[key]

    def _compute(self, t: Word, t2: Word) -> tuple[frozenset, frozenset]:
        a = self.period
        bound = math.ceil((len(t) + len(t2)) / len(a)) + 1
        diff = abelianize(t) - abelianize(t2)
        va = abelianize(a)
        certified, undecided = set(), set()
        t_inv = invert(t)
        for p in range(-bound, bound + 1):
            for q in range(-bound, bound + 1):
                if not self.lattice.contains(diff - va.scale(p + q)):
                    continue
                word = product(a.alphabet, (t_inv, power(a, p), t2, power(a, q)))
                verdict = is_identity(self.P, self.rank, word, self.cfg)
                if verdict.is_trivial:
                    certified.add((p, q))
                elif verdict.is_unknown:
                    undecided.add((p, q))
        return frozenset(certified), frozenset(undecided)


def _chain_holds(shift_sets: Sequence[frozenset], deltas: Sequence[int]) -> bool:
    reachable = {q for _, q in shift_sets[0]}
    for j in range(1, len(shift_sets)):
        reachable = {q for p, q in shift_sets[j] if deltas[j - 1] - p in reachable}
        if not reachable:
            return False
    return bool(reachable)


def _core_subword(relator: Relator, k: int, span: int) -> str:
    """T_k A^e_k ... T_(k+span) as a key string."""
    h = len(relator.pieces)
    forward = relator.period.word.codes
    backward = invert_codes(forward)
    codes: list[int] = []
    for j in range(span + 1):
        t, e = relator.pieces[(k + j) % h]
        codes.extend(t.codes)
        if j < span:
            codes.extend((forward if e > 0 else backward) * abs(e))
    return codes_key(codes)


def check_R6(
    P: GradedPresentation,
    pair: tuple[Relator, Relator],
    cfg: SolverConfig,
    shifts: Optional[_PieceShifts] = None,
) -> ClauseResult:
    """Long piecewise-equal subwords of relators with one period occur only trivially."""
    r, r2 = pair
    subject = f"{relator_subject(P, r)} other={_index_in_rank(P, r2)}"
    if not (r.is_structured and r2.is_structured):
        return _unknown(subject, "R6", "unstructured relator")
    if r.period != r2.period:
        return _passed(subject, "R6", "different periods")
    rank = r.rank
    if shifts is None:
        shifts = _PieceShifts(P, rank - 1, r.period.word, cfg)

    h = len(r.pieces)
    pieces, exponents = list(r.piece_words), list(r.exponents)
    inverse_key = codes_key(invert_codes(r.literal_codes()))
    inverse_doubled = inverse_key + inverse_key
    lowest = max(0, math.ceil(1 / cfg.alpha - 2))
    undecided = None
    for sign in (1, -1):
        pieces2, exponents2 = _signed_structure(r2, sign)
        for span in range(lowest, h):
            for k in range(h):
                for k2 in range(h):
                    if any(
                        _sign(exponents[(k - 1 + j) % h]) != _sign(exponents2[(k2 - 1 + j) % h])
                        for j in range(span + 2)
                    ):
                        continue
                    sets = [shifts.get(pieces[(k + j) % h], pieces2[(k2 + j) % h]) for j in range(span + 1)]
                    deltas = [exponents2[(k2 + j) % h] - exponents[(k + j) % h] for j in range(span)]
                    alignment = f"sign={sign} pieces {k + 1}/{k2 + 1} span={span}"
                    if _chain_holds([c for c, _ in sets], deltas):
                        if r == r2 and sign == 1 and k == k2:
                            if inverse_doubled.find(_core_subword(r, k, span)) < 0:
                                continue
                            return _failed(subject, "R6", f"{alignment}: subword also occurs in the inverse")
                        return _failed(subject, "R6", f"{alignment}: piecewise equal subwords")
                    if undecided is None and _chain_holds([c | u for c, u in sets], deltas):
                        undecided = f"{alignment}: piece equalities undecided"
    if undecided:
        return _unknown(subject, "R6", undecided)
    return _passed(subject, "R6")


# ============================================================
# Whole presentation
# ============================================================


def check_presentation(P: GradedPresentation, cfg: SolverConfig) -> ConditionReport:
    """Check every period and relator of ranks 3..built_rank."""
    report = ConditionReport()
    for i in range(3, P.built_rank + 1):
        report.extend(check_periods(P, i, cfg))
        relators = P.new_relators(i)
        by_period: dict[Optional[Period], list[Relator]] = {}
        for relator in relators:
            report.extend(check_R1_R2_R3_R4(P, relator, cfg))
            report.add(check_R5(relator, cfg.alpha, relator_subject(P, relator)))
            by_period.setdefault(relator.period, []).append(relator)
        for period, group in by_period.items():
            if period is None:
                for relator in group:
                    report.add(_unknown(relator_subject(P, relator), "R6", "unstructured relator"))
                continue
            shifts = _PieceShifts(P, i - 1, period.word, cfg)
            for relator in group:
                for other in group:
                    report.add(check_R6(P, (relator, other), cfg, shifts))
        logger.debug(f"Checked rank {i}: {len(P.periods(i))} periods, {len(relators)} relators")
    if P.built_rank >= 3:
        report.notes.append(
            "relator length bounds above rank 3 are conservative lower bounds, not sharp values"
        )
    return report
