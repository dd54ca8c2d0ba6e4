"""Line-oriented presentation file format.

    gpres v1
    params alpha=3/10 h=4 d=8 n=256
    rank 3
    rank 4
    period c1 a c1' b
    relator period="c1 a c1' b" z="1" t="c1;c2;c3;c4" e=-256,256,-256,256 length=4100
    relator word="a a a"

Ranks 0-2 are always empty and not written. Flattened relators are recomputed
on load and checked against the recorded length.
"""

from __future__ import annotations

import logging
import shlex
from fractions import Fraction
from pathlib import Path
from typing import Union

from ..solver.config import parse_alpha
from ..words.syntax import WordSyntaxError, format_word, parse_word
from .models import GradedPresentation, Params, Period, RankData, Relator

logger = logging.getLogger(__name__)

HEADER = "gpres v1"


class PresentationParseError(ValueError):
    """Raised for malformed presentation files."""


def _quote(text: str) -> str:
    return '"' + text + '"'


def _format_alpha(alpha: Fraction) -> str:
    return f"{alpha.numerator}/{alpha.denominator}"


def serialize(P: GradedPresentation) -> str:
    p = P.params
    lines = [HEADER, f"params alpha={_format_alpha(p.alpha)} h={p.h} d={p.d} n={p.n}"]
    for i in range(3, P.built_rank + 1):
        lines.append(f"rank {i}")
        for period in P.periods(i):
            lines.append(f"period {format_word(period.word)}")
        for r in P.new_relators(i):
            lines.append(_relator_line(r))
    return "\n".join(lines) + "\n"


def _relator_line(r: Relator) -> str:
    if not r.is_structured:
        return f"relator word={_quote(format_word(r.flattened))}"
    fields = [f"period={_quote(format_word(r.period.word))}"]
    if r.conjugating_base is not None:
        fields.append(f"z={_quote(format_word(r.conjugating_base))}")
    fields.append("t=" + _quote(";".join(format_word(t) for t in r.piece_words)))
    fields.append("e=" + ",".join(str(e) for e in r.exponents))
    fields.append(f"length={len(r.flattened)}")
    return "relator " + " ".join(fields)


def parse(text: str) -> GradedPresentation:
    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines or lines[0][1] != HEADER:
        raise PresentationParseError(f"Missing header line {HEADER!r}")
    if len(lines) < 2:
        raise PresentationParseError("Missing params line")

    params = _parse_params(*lines[1])
    alphabet = params.alphabet
    ranks: list[RankData] = [RankData(), RankData(), RankData()]
    periods: list[Period] = []
    relators: list[Relator] = []
    current = None

    def close_rank():
        if current is not None:
            ranks.append(RankData(tuple(periods), tuple(relators)))

    for number, line in lines[2:]:
        keyword, _, rest = line.partition(" ")
        try:
            if keyword == "rank":
                close_rank()
                rank = int(rest)
                expected = 3 if current is None else current + 1
                if rank != expected:
                    raise PresentationParseError(f"line {number}: expected rank {expected}, got {rank}")
                current = rank
                periods, relators = [], []
            elif keyword == "period":
                _require_rank(current, number)
                periods.append(Period(parse_word(alphabet, rest), current))
            elif keyword == "relator":
                _require_rank(current, number)
                relators.append(_parse_relator(rest, current, params, number))
            else:
                raise PresentationParseError(f"line {number}: unknown keyword {keyword!r}")
        except PresentationParseError:
            raise
        except (ValueError, WordSyntaxError) as e:
            raise PresentationParseError(f"line {number}: {e}") from e
    close_rank()

    try:
        return GradedPresentation(params, tuple(ranks))
    except ValueError as e:
        raise PresentationParseError(str(e)) from e


def _require_rank(current, number: int):
    if current is None:
        raise PresentationParseError(f"line {number}: entry before any rank line")


def _fields(rest: str, number: int) -> dict[str, str]:
    try:
        tokens = shlex.split(rest)
    except ValueError as e:
        raise PresentationParseError(f"line {number}: {e}") from e
    fields = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise PresentationParseError(f"line {number}: expected key=value, got {token!r}")
        fields[key] = value
    return fields


def _parse_params(number: int, line: str) -> Params:
    keyword, _, rest = line.partition(" ")
    if keyword != "params":
        raise PresentationParseError(f"line {number}: expected params line")
    fields = _fields(rest, number)
    try:
        return Params(
            alpha=parse_alpha(fields["alpha"]),
            h=int(fields["h"]),
            d=int(fields["d"]),
            n=int(fields["n"]),
        )
    except KeyError as e:
        raise PresentationParseError(f"line {number}: missing field {e.args[0]}") from e
    except ValueError as e:
        raise PresentationParseError(f"line {number}: {e}") from e


def _parse_relator(rest: str, rank: int, params: Params, number: int) -> Relator:
    alphabet = params.alphabet
    fields = _fields(rest, number)
    if "word" in fields:
        return Relator.plain(parse_word(alphabet, fields["word"]), rank)
    for key in ("period", "t", "e", "length"):
        if key not in fields:
            raise PresentationParseError(f"line {number}: missing field {key}")
    period = Period(parse_word(alphabet, fields["period"]), rank)
    pieces = [parse_word(alphabet, t) for t in fields["t"].split(";")]
    exponents = [int(e) for e in fields["e"].split(",")]
    if len(pieces) != alphabet.h or len(exponents) != alphabet.h:
        raise PresentationParseError(
            f"line {number}: expected {alphabet.h} pieces and exponents, "
            f"got {len(pieces)} and {len(exponents)}"
        )
    z = parse_word(alphabet, fields["z"]) if "z" in fields else None
    relator = Relator.structured(period, list(zip(pieces, exponents)), z)
    if len(relator.flattened) != int(fields["length"]):
        raise PresentationParseError(
            f"line {number}: flattened length {len(relator.flattened)} "
            f"does not match recorded length {fields['length']}"
        )
    return relator


def dump_presentation(P: GradedPresentation, path: Union[str, Path]):
    Path(path).write_text(serialize(P))
    logger.debug(f"Wrote presentation with built rank {P.built_rank} to {path}")


def load_presentation(path: Union[str, Path]) -> GradedPresentation:
    path = Path(path)
    if not path.exists():
        raise PresentationParseError(f"No such presentation file: {path}")
    return parse(path.read_text())
