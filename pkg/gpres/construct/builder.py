from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from ..grading.models import GradedPresentation, Params, Period, Relator
from ..solver.config import SolverConfig
from ..solver.conjugacy import are_conjugate
from ..words.alphabet import Alphabet
from ..words.cyclic import cyclic_reduce
from ..words.enumerate import ball
from ..words.syntax import format_word
from ..words.word import Word, invert
from .periods import drain, period_candidates, screen_periods
from .pieces import build_relator, minimal_conjugate_words

logger = logging.getLogger(__name__)

MODES = ("exhaustive", "targeted")


@dataclass(frozen=True)
class ZPool:
    """Conjugating bases Z tried for every period: a ball of G's free cover or an explicit list."""

    radius: Optional[int] = None
    words: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.radius is not None and self.radius < 0:
            raise ValueError(f"Ball radius must be >= 0, got {self.radius}")
        if self.radius is None and not self.words:
            raise ValueError("An explicit Z pool needs at least one word")

    @classmethod
    def ball(cls, radius: int) -> ZPool:
        return cls(radius=radius)

    @classmethod
    def explicit(cls, words: Sequence[Word]) -> ZPool:
        return cls(words=tuple(words))

    def members(self, alphabet: Alphabet) -> list[Word]:
        """Pool words in shortlex order, duplicates removed."""
        if self.radius is not None:
            return list(ball(alphabet, self.radius))
        for w in self.words:
            if w.alphabet != alphabet:
                raise ValueError("Z pool word over a different alphabet")
        return sorted(set(self.words), key=Word.shortlex_key)

    def describe(self) -> str:
        if self.radius is not None:
            return f"ball({self.radius})"
        return "{" + ", ".join(format_word(w) for w in self.members(self.words[0].alphabet)) + "}"


@dataclass(frozen=True)
class BuildConfig:
    mode: str = "exhaustive"
    targeted: dict[int, tuple[Word, ...]] = field(default_factory=dict)
    solver: SolverConfig = field(default_factory=SolverConfig)
    exhaustive_rank_cap: int = 4

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"Build mode must be one of {MODES}, got {self.mode!r}")
        if self.exhaustive_rank_cap < 3:
            raise ValueError(f"exhaustive_rank_cap must be >= 3, got {self.exhaustive_rank_cap}")


class PresentationBuilder:
    """Builds a graded presentation rank by rank.

    Every step is reported as an event dict so the CLI can drive a progress bar and
    write the build log; the finished presentation is the generator's return value.
    """

    def __init__(self, params: Params, zpool: ZPool, cfg: BuildConfig):
        self.params = params
        self.zpool = zpool
        self.cfg = cfg

    def build(self, max_rank: int) -> Iterator[dict]:
        """Build ranks 3..max_rank.

        Events:
            {"event": "start", "max_rank": int, "zpool": str}
            {"event": "rank_start", "rank": int}
            {"event": "period_accepted", "rank": int, "word": str}
            {"event": "period_excluded", "rank": int, "word": str, "clause": str,
             "result": str, "detail": str}
            {"event": "pieces_empty", "rank": int, "period": str, "z": str, "j": int}
            {"event": "piece_choice", "rank": int, "z": str, "j": int, "chosen": str,
             "choices": int}
            {"event": "relator_accepted", "rank": int, "period": str, "z": str, "length": int}
            {"event": "relator_excluded", "rank": int, "period": str, "z": str,
             "other": int, "result": str, "detail": str}
            {"event": "rank_done", "rank": int, "periods": int, "relators": int}
            {"event": "done", "built_rank": int, "relators": int}
        """
        if max_rank < 2:
            raise ValueError(f"max_rank must be >= 2, got {max_rank}")
        self.params.validate()
        P = GradedPresentation.free(self.params)
        yield {"event": "start", "max_rank": max_rank, "zpool": self.zpool.describe()}

        for i in range(3, max_rank + 1):
            P = yield from self.extend_rank(P, i)

        yield {"event": "done", "built_rank": P.built_rank, "relators": len(P.relators())}
        return P

    def extend_rank(self, P: GradedPresentation, i: int) -> Iterator[dict]:
        if P.built_rank != i - 1:
            raise ValueError(f"Cannot build rank {i} on a presentation built to rank {P.built_rank}")
        yield {"event": "rank_start", "rank": i}

        candidates = period_candidates(P, i, self.cfg)
        periods: list[Period] = yield from screen_periods(P, i, candidates, self.cfg)

        zs = self.zpool.members(P.alphabet)
        accepted: list[Relator] = []
        seen: set[str] = set()
        lower_free = not P.relators(i - 1)

        for period in periods:
            for z in zs:
                relator = yield from self._candidate(P, i, period, z)
                if relator is None:
                    continue
                subject = {"rank": i, "period": format_word(period.word), "z": format_word(z)}

                # In a free lower group conjugacy is equality of canonical cyclic words.
                canonical = cyclic_reduce(relator.flattened)[0].word.key
                if lower_free:
                    clash = None
                    if canonical in seen:
                        clash = (-1, "fail", "conjugate in F to an accepted relator")
                else:
                    clash = self._conjugate_to_accepted(P, i, relator, accepted)
                if clash is not None:
                    other, result, detail = clash
                    logger.info(f"Rank {i}: relator for period {subject['period']}, "
                                f"Z={subject['z']} excluded ({result})")
                    yield {"event": "relator_excluded", **subject, "other": other,
                           "result": result, "detail": detail}
                    continue

                accepted.append(relator)
                seen.add(canonical)
                seen.add(cyclic_reduce(invert(relator.flattened))[0].word.key)
                yield {"event": "relator_accepted", **subject, "length": len(relator)}

        yield {"event": "rank_done", "rank": i, "periods": len(periods), "relators": len(accepted)}
        return P.with_rank(i, periods, accepted)

    def _candidate(self, P: GradedPresentation, i: int, period: Period, z: Word):
        pieces = []
        for j in range(1, self.params.h + 1):
            choices = minimal_conjugate_words(P, i, j, z, self.cfg.solver)
            if not choices:
                yield {"event": "pieces_empty", "rank": i, "period": format_word(period.word),
                       "z": format_word(z), "j": j}
                return None
            chosen = min(choices, key=Word.shortlex_key)
            if len(choices) > 1:
                logger.info(f"Rank {i}: {len(choices)} minimal words for Z={format_word(z)}, "
                            f"j={j}; chose {format_word(chosen)}")
                yield {"event": "piece_choice", "rank": i, "z": format_word(z), "j": j,
                       "chosen": format_word(chosen), "choices": len(choices)}
            pieces.append(chosen)
        return build_relator(period, pieces, self.params.n, self.params.d, z)

    def _conjugate_to_accepted(
        self, P: GradedPresentation, i: int, relator: Relator, accepted: Sequence[Relator]
    ) -> Optional[tuple[int, str, str]]:
        """First accepted relator that the candidate is (or may be) conjugate to, in either sign."""
        for k, other in enumerate(accepted):
            for target in (other.flattened, invert(other.flattened)):
                verdict, _ = are_conjugate(P, i - 1, relator.flattened, target, self.cfg.solver)
                if verdict.is_trivial:
                    return k, "fail", "conjugate to an accepted relator"
                if verdict.is_unknown:
                    return k, "unknown", verdict.to_record()
        return None


def extend_rank(P: GradedPresentation, i: int, zpool: ZPool, cfg: BuildConfig) -> GradedPresentation:
    return drain(PresentationBuilder(P.params, zpool, cfg).extend_rank(P, i))


def build(params: Params, max_rank: int, zpool: ZPool, cfg: BuildConfig) -> GradedPresentation:
    return drain(PresentationBuilder(params, zpool, cfg).build(max_rank))


def format_event(event: dict) -> str:
    """One build log line: the event name followed by its fields."""
    parts = [event["event"]]
    for key, value in event.items():
        if key == "event":
            continue
        if isinstance(value, str):
            parts.append(f'{key}="{value}"')
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)
