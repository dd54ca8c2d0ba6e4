from __future__ import annotations

from typing import Callable, Iterator, Optional

from .alphabet import Alphabet
from .word import Word

WordFilter = Callable[[Word], bool]


def enumerate_reduced(
    alphabet: Alphabet, length: int, word_filter: Optional[WordFilter] = None
) -> Iterator[Word]:
    """All reduced words of exactly this length, in shortlex order."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    order = [letter.code for letter in alphabet.letters()]
    prefix: list[int] = []

    def walk(remaining: int) -> Iterator[Word]:
        if remaining == 0:
            w = Word._trusted(alphabet, tuple(prefix))
            if word_filter is None or word_filter(w):
                yield w
            return
        last = prefix[-1] if prefix else 0
        for code in order:
            if code == -last:
                continue
            prefix.append(code)
            yield from walk(remaining - 1)
            prefix.pop()

    yield from walk(length)


def ball(alphabet: Alphabet, radius: int, word_filter: Optional[WordFilter] = None) -> Iterator[Word]:
    """All reduced words of length <= radius, in shortlex order."""
    for length in range(radius + 1):
        yield from enumerate_reduced(alphabet, length, word_filter)


def count_reduced(alphabet: Alphabet, length: int) -> int:
    if length == 0:
        return 1
    k = 2 * alphabet.size
    return k * (k - 1) ** (length - 1)
