from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from ..words.abelian import AbelianVector
from ..words.alphabet import Alphabet
from ..words.word import Word, free_reduce, invert_codes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Params:
    alpha: Fraction
    h: int
    d: int
    n: int

    def __post_init__(self):
        if not isinstance(self.alpha, Fraction):
            raise ValueError(f"alpha must be a Fraction, got {self.alpha!r}")
        if not 0 < self.alpha < Fraction(1, 2):
            raise ValueError(f"alpha must lie in (0, 1/2), got {self.alpha}")
        if self.h < 2 or self.h % 2:
            raise ValueError(f"h must be an even integer >= 2, got {self.h}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.n <= self.d:
            raise ValueError(f"n must exceed d, got n={self.n}, d={self.d}")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.h)

    def ordering_warnings(self) -> list[str]:
        """Violations of 1/alpha < h < d < n."""
        warnings = []
        if not 1 / self.alpha < self.h:
            warnings.append(f"1/alpha = {1 / self.alpha} is not below h = {self.h}")
        if not self.h < self.d:
            warnings.append(f"h = {self.h} is not below d = {self.d}")
        if not self.d < self.n:
            warnings.append(f"d = {self.d} is not below n = {self.n}")
        return warnings

    def validate(self) -> Params:
        for message in self.ordering_warnings():
            logger.warning(f"Parameter ordering: {message}")
        return self

    def relator_vector(self) -> AbelianVector:
        """Abelianization shared by every generated relator."""
        return AbelianVector((0, 0) + (1,) * self.h)

    def ab(self) -> Word:
        return Word(self.alphabet, (1, 2))


def default_params(h: int = 2) -> Params:
    return Params(alpha=Fraction(3, 10), h=h, d=8, n=256)


@dataclass(frozen=True)
class Period:
    word: Word
    rank: int

    def __post_init__(self):
        if len(self.word) != self.rank:
            raise ValueError(f"Period length {len(self.word)} does not match rank {self.rank}")


@dataclass(frozen=True)
class Relator:
    """A relator; structured ones carry their period, conjugating base and pieces."""

    flattened: Word
    rank: int
    period: Optional[Period] = None
    conjugating_base: Optional[Word] = None
    pieces: tuple[tuple[Word, int], ...] = ()

    @classmethod
    def structured(
        cls,
        period: Period,
        pieces: Sequence[tuple[Word, int]],
        conjugating_base: Optional[Word] = None,
    ) -> Relator:
        pieces = tuple((t, int(e)) for t, e in pieces)
        flattened = Word._trusted(period.word.alphabet, free_reduce(_literal(period, pieces)))
        return cls(flattened, period.rank, period, conjugating_base, pieces)

    @classmethod
    def plain(cls, word: Word, rank: int) -> Relator:
        return cls(word, rank)

    @property
    def is_structured(self) -> bool:
        return self.period is not None

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.pieces)

    @property
    def piece_words(self) -> tuple[Word, ...]:
        return tuple(t for t, _ in self.pieces)

    def literal_codes(self) -> tuple[int, ...]:
        """The unreduced product T_1 A^e_1 ... T_h A^e_h."""
        if not self.is_structured:
            return self.flattened.codes
        return _literal(self.period, self.pieces)

    def __len__(self) -> int:
        return len(self.flattened)


def _literal(period: Period, pieces: Sequence[tuple[Word, int]]) -> tuple[int, ...]:
    forward = period.word.codes
    backward = invert_codes(forward)
    codes: list[int] = []
    for t, e in pieces:
        codes.extend(t.codes)
        codes.extend((forward if e > 0 else backward) * abs(e))
    return tuple(codes)


@dataclass(frozen=True)
class RankData:
    periods: tuple[Period, ...] = ()
    relators: tuple[Relator, ...] = ()


@dataclass(frozen=True)
class GradedPresentation:
    params: Params
    ranks: tuple[RankData, ...] = field(default=(RankData(), RankData(), RankData()))

    def __post_init__(self):
        if len(self.ranks) < 3:
            raise ValueError("A graded presentation records at least ranks 0, 1 and 2")
        for i in range(3):
            if self.ranks[i].periods or self.ranks[i].relators:
                raise ValueError(f"Rank {i} must be empty")
        for i, data in enumerate(self.ranks):
            for p in data.periods:
                if p.rank != i:
                    raise ValueError(f"Period of rank {p.rank} stored at rank {i}")
            for r in data.relators:
                if r.rank != i:
                    raise ValueError(f"Relator of rank {r.rank} stored at rank {i}")

    @classmethod
    def free(cls, params: Params, built_rank: int = 2) -> GradedPresentation:
        return cls(params, tuple(RankData() for _ in range(max(built_rank, 2) + 1)))

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for data the solver derives from the relators."""
        return {}

    @property
    def alphabet(self) -> Alphabet:
        return self.params.alphabet

    @property
    def built_rank(self) -> int:
        return len(self.ranks) - 1

    def check_rank(self, rank: int):
        if rank > self.built_rank:
            raise ValueError(f"Rank {rank} exceeds built rank {self.built_rank}")
        if rank < 0:
            raise ValueError(f"Rank must be >= 0, got {rank}")

    def relators(self, rank: Optional[int] = None) -> list[Relator]:
        """All relators of rank <= rank (default: built rank), in rank order."""
        rank = self.built_rank if rank is None else rank
        self.check_rank(rank)
        return [r for data in self.ranks[: rank + 1] for r in data.relators]

    def periods(self, rank: int) -> tuple[Period, ...]:
        self.check_rank(rank)
        return self.ranks[rank].periods

    def new_relators(self, rank: int) -> tuple[Relator, ...]:
        self.check_rank(rank)
        return self.ranks[rank].relators

    def with_rank(
        self, rank: int, periods: Sequence[Period], relators: Sequence[Relator]
    ) -> GradedPresentation:
        if rank != self.built_rank + 1:
            raise ValueError(f"Next rank must be {self.built_rank + 1}, got {rank}")
        return GradedPresentation(self.params, self.ranks + (RankData(tuple(periods), tuple(relators)),))

    def truncate(self, rank: int) -> GradedPresentation:
        self.check_rank(rank)
        return GradedPresentation(self.params, self.ranks[: max(rank, 2) + 1])


def min_relator_length(params: Params, rank: int) -> int:
    """Lower bound on the flattened length of a generated relator of this rank."""
    if rank < 3:
        raise ValueError(f"Relators start at rank 3, got {rank}")
    return params.h * rank * (params.n - params.d - 2)


def toy_presentation(relators: Sequence[Word], params: Optional[Params] = None) -> GradedPresentation:
    """Unstructured relators, each placed at rank max(3, |R|)."""
    if params is None:
        if not relators:
            raise ValueError("toy_presentation needs params or at least one relator")
        params = default_params(relators[0].alphabet.h)
    by_rank: dict[int, list[Relator]] = {}
    for word in relators:
        if word.alphabet != params.alphabet:
            raise ValueError("Relator alphabet does not match params")
        if word.is_empty():
            raise ValueError("Relators must be nonempty")
        rank = max(3, len(word))
        by_rank.setdefault(rank, []).append(Relator.plain(word, rank))
    top = max(by_rank, default=2)
    ranks = tuple(RankData(relators=tuple(by_rank.get(i, ()))) for i in range(top + 1))
    return GradedPresentation(params, ranks)


class Outcome(Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClauseResult:
    subject: str
    clause: str
    outcome: Outcome
    detail: str = ""

    def to_line(self) -> str:
        line = f"{self.subject} clause={self.clause} result={self.outcome.value}"
        if self.detail:
            line += f' detail="{self.detail}"'
        return line


@dataclass
class ConditionReport:
    results: list[ClauseResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, result: ClauseResult):
        self.results.append(result)

    def extend(self, results: Sequence[ClauseResult]):
        self.results.extend(results)

    def by_outcome(self, outcome: Outcome) -> list[ClauseResult]:
        return [r for r in self.results if r.outcome is outcome]

    @property
    def fails(self) -> list[ClauseResult]:
        return self.by_outcome(Outcome.FAIL)

    @property
    def unknowns(self) -> list[ClauseResult]:
        return self.by_outcome(Outcome.UNKNOWN)

    def counts(self) -> dict[str, int]:
        return {o.value: len(self.by_outcome(o)) for o in Outcome}

    def clause_counts(self) -> dict[str, dict[str, int]]:
        table: dict[str, dict[str, int]] = {}
        for r in self.results:
            row = table.setdefault(r.clause, {o.value: 0 for o in Outcome})
            row[r.outcome.value] += 1
        return table

    @property
    def exit_code(self) -> int:
        if self.fails:
            return 1
        if self.unknowns:
            return 2
        return 0
