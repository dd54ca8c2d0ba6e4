"""Text form of words: space separated generator names, ' marks an inverse, 1 is empty."""

from __future__ import annotations

from typing import Optional, Sequence

from .alphabet import Alphabet, Letter
from .word import Word, reduce


class WordSyntaxError(ValueError):
    """Raised for malformed word or equation text."""


def tokenize(text: str) -> list[str]:
    tokens = text.split()
    if tokens == ["1"]:
        return []
    if not tokens:
        raise WordSyntaxError("Empty word text; write 1 for the identity")
    return tokens


def parse_token(token: str, alphabet: Alphabet, extra: Optional[dict[str, int]] = None) -> int:
    """Signed code for one token, e.g. "c2'" -> -(index(c2) + 1)."""
    name = token.rstrip("'")
    primes = len(token) - len(name)
    if not name or primes > 1:
        raise WordSyntaxError(f"Bad token {token!r}")
    sign = -1 if primes else 1
    if extra and name in extra:
        return extra[name] * sign
    try:
        index = alphabet.index(name)
    except ValueError as e:
        raise WordSyntaxError(str(e)) from e
    return Letter(index, sign).code


def parse_word(alphabet: Alphabet, text: str) -> Word:
    codes = [parse_token(t, alphabet) for t in tokenize(text)]
    return reduce(alphabet, codes)


def format_codes(alphabet: Alphabet, codes: Sequence[int], extra: Optional[dict[int, str]] = None) -> str:
    if not codes:
        return "1"
    parts = []
    for c in codes:
        index = abs(c) - 1
        name = extra[abs(c)] if extra and abs(c) in extra else alphabet.name(index)
        parts.append(name if c > 0 else name + "'")
    return " ".join(parts)


def format_word(w: Word) -> str:
    return format_codes(w.alphabet, w.codes)
