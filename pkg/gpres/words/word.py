"""Reduced words in the free group on a, b, c1, ..., ch.

Letters are stored as signed integer codes: generator index i with sign s is
``(i + 1) * s``. Every Word is freely reduced; the public constructors reduce
their input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .alphabet import Alphabet, Letter

# Offset into the unicode range used for the string keys. Each letter maps to a
# single character so that string order equals letter order and str.find can
# be used for subword search.
_KEY_BASE = 0x100


def code_char(code: int) -> str:
    rank = 2 * (abs(code) - 1) + (0 if code > 0 else 1)
    return chr(_KEY_BASE + rank)


def char_code(char: str) -> int:
    rank = ord(char) - _KEY_BASE
    index, odd = divmod(rank, 2)
    return -(index + 1) if odd else index + 1


def codes_key(codes: Iterable[int]) -> str:
    return "".join(code_char(c) for c in codes)


def key_codes(key: str) -> tuple[int, ...]:
    return tuple(char_code(ch) for ch in key)


def free_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def splice_bounds(
    head: Sequence[int], middle: Sequence[int], tail: Sequence[int]
) -> tuple[int, int, int, int]:
    """(k, i, j, t) with free_reduce(head + middle + tail) == head[:k] + middle[i:j] + tail[t:].

    All three parts must already be freely reduced; only the junctions cancel.
    """
    k, i, j, t = len(head), 0, len(middle), 0
    while i < j and k and head[k - 1] == -middle[i]:
        k -= 1
        i += 1
    while j > i and t < len(tail) and middle[j - 1] == -tail[t]:
        j -= 1
        t += 1
    if j == i:
        while k and t < len(tail) and head[k - 1] == -tail[t]:
            k -= 1
            t += 1
    return k, i, j, t


def is_freely_reduced(codes: Sequence[int]) -> bool:
    return all(codes[i] != -codes[i + 1] for i in range(len(codes) - 1))


def invert_codes(codes: Sequence[int]) -> tuple[int, ...]:
    return tuple(-c for c in reversed(codes))


@dataclass(frozen=True)
class Word:
    """A freely reduced word over an Alphabet."""

    alphabet: Alphabet
    codes: tuple[int, ...]

    def __post_init__(self):
        for c in self.codes:
            if c == 0 or abs(c) > self.alphabet.size:
                raise ValueError(f"Letter code {c} is outside the alphabet (h={self.alphabet.h})")
        if not is_freely_reduced(self.codes):
            raise ValueError("Word codes must be freely reduced; use reduce() on raw input")

    @classmethod
    def _trusted(cls, alphabet: Alphabet, codes: tuple[int, ...]) -> Word:
        # Skips validation for codes already known to be reduced.
        word = object.__new__(cls)
        object.__setattr__(word, "alphabet", alphabet)
        object.__setattr__(word, "codes", codes)
        return word

    @classmethod
    def empty(cls, alphabet: Alphabet) -> Word:
        return cls._trusted(alphabet, ())

    @classmethod
    def generator(cls, alphabet: Alphabet, index: int, sign: int = 1) -> Word:
        alphabet.check_index(index)
        return cls._trusted(alphabet, (Letter(index, sign).code,))

    @classmethod
    def from_codes(cls, alphabet: Alphabet, codes: Iterable[int]) -> Word:
        reduced = free_reduce(codes)
        for c in reduced:
            if c == 0 or abs(c) > alphabet.size:
                raise ValueError(f"Letter code {c} is outside the alphabet (h={alphabet.h})")
        return cls._trusted(alphabet, reduced)

    @classmethod
    def from_key(cls, alphabet: Alphabet, key: str) -> Word:
        return cls.from_codes(alphabet, key_codes(key))

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self.codes)

    @cached_property
    def key(self) -> str:
        return codes_key(self.codes)

    def shortlex_key(self) -> tuple[int, str]:
        return (len(self.codes), self.key)

    def is_empty(self) -> bool:
        return not self.codes

    def exponent_sum(self, index: int) -> int:
        code = index + 1
        return sum(1 if c == code else -1 for c in self.codes if abs(c) == code)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item: Union[int, slice]) -> Union[Letter, Word]:
        if isinstance(item, slice):
            # Subwords of a reduced word are reduced.
            return Word._trusted(self.alphabet, self.codes[item])
        return Letter.from_code(self.codes[item])

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        return power(self, k)

    def __repr__(self) -> str:
        from .syntax import format_word

        return f"Word({format_word(self)!r})"


def reduce(alphabet: Alphabet, raw: Iterable[Union[Letter, int]]) -> Word:
    """Freely reduce a sequence of Letters (or signed codes)."""
    codes = []
    for item in raw:
        if isinstance(item, Letter):
            if item.sign not in (1, -1):
                raise ValueError(f"Letter sign must be +1 or -1, got {item.sign}")
            alphabet.check_index(item.index)
            codes.append(item.code)
        else:
            codes.append(int(item))
    return Word.from_codes(alphabet, codes)


def _check_same(x: Word, y: Word):
    if x.alphabet != y.alphabet:
        raise ValueError(f"Alphabet mismatch: h={x.alphabet.h} vs h={y.alphabet.h}")


def concat(x: Word, y: Word) -> Word:
    _check_same(x, y)
    xs, ys = x.codes, y.codes
    i = 0
    limit = min(len(xs), len(ys))
    while i < limit and xs[len(xs) - 1 - i] == -ys[i]:
        i += 1
    return Word._trusted(x.alphabet, xs[: len(xs) - i] + ys[i:])


def product(alphabet: Alphabet, words: Iterable[Word]) -> Word:
    codes: list[int] = []
    for w in words:
        if w.alphabet != alphabet:
            raise ValueError(f"Alphabet mismatch: h={alphabet.h} vs h={w.alphabet.h}")
        codes.extend(w.codes)
    return Word._trusted(alphabet, free_reduce(codes))


def invert(w: Word) -> Word:
    return Word._trusted(w.alphabet, invert_codes(w.codes))


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    if k == 0 or not w.codes:
        return Word.empty(w.alphabet)
    # Only the cyclic core repeats without cancellation.
    prefix, core = split_cyclic_core(w.codes)
    codes = prefix + core * k + invert_codes(prefix)
    return Word._trusted(w.alphabet, codes)


def split_cyclic_core(codes: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split reduced codes as prefix + core + prefix^-1 with a cyclically reduced core."""
    n = len(codes)
    k = 0
    while 2 * k + 1 < n and codes[k] == -codes[n - 1 - k]:
        k += 1
    return tuple(codes[:k]), tuple(codes[k : n - k])


def kill_generators(w: Word, killed: Iterable[int]) -> Word:
    """Image of w under the map sending the given generator indices to 1."""
    dead = {index + 1 for index in killed}
    return Word.from_codes(w.alphabet, (c for c in w.codes if abs(c) not in dead))


def rotate_codes(codes: Sequence[int], shift: int) -> tuple[int, ...]:
    if not codes:
        return ()
    shift %= len(codes)
    return tuple(codes[shift:]) + tuple(codes[:shift])
