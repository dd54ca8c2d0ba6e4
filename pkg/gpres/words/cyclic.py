"""Cyclic words, free conjugacy and proper powers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .word import (
    Word,
    codes_key,
    concat,
    invert,
    invert_codes,
    rotate_codes,
    split_cyclic_core,
)


def least_rotation(s: str) -> int:
    """Start index of the lexicographically least rotation of s (Booth)."""
    n = len(s)
    if n == 0:
        return 0
    ss = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and ss[j] != ss[k + i + 1]:
            if ss[j] < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and ss[j] != ss[k]:
            if ss[j] < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word stored in its least rotation."""

    word: Word

    def __post_init__(self):
        codes = self.word.codes
        if len(codes) > 1 and codes[0] == -codes[-1]:
            raise ValueError("CyclicWord requires a cyclically reduced word")
        if least_rotation(self.word.key) != 0:
            raise ValueError("CyclicWord must be stored in its canonical rotation")

    @classmethod
    def of(cls, word: Word) -> CyclicWord:
        """Canonical cyclic word of an already cyclically reduced word."""
        shift = least_rotation(word.key)
        return cls(Word._trusted(word.alphabet, rotate_codes(word.codes, shift)))

    def __len__(self) -> int:
        return len(self.word)

    def rotations(self) -> Iterator[Word]:
        for s in range(max(len(self.word), 1)):
            yield Word._trusted(self.word.alphabet, rotate_codes(self.word.codes, s))

    def inverse(self) -> CyclicWord:
        return CyclicWord.of(invert(self.word))


def cyclic_core(w: Word) -> tuple[Word, Word]:
    """Return (prefix, core) with w = prefix * core * prefix^-1, core unrotated."""
    prefix, core = split_cyclic_core(w.codes)
    return Word._trusted(w.alphabet, prefix), Word._trusted(w.alphabet, core)


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Return (canonical cyclic core, conjugator Z) with w = Z * core * Z^-1."""
    prefix, core = cyclic_core(w)
    shift = least_rotation(core.key)
    canonical = Word._trusted(w.alphabet, rotate_codes(core.codes, shift))
    # core = P * canonical * P^-1 where P is the rotated-away prefix of core
    moved = Word._trusted(w.alphabet, core.codes[:shift])
    return CyclicWord(canonical), concat(prefix, moved)


def rotation_offset(x: Word, y: Word) -> Optional[int]:
    """Smallest s with rotate(x, s) == y, or None."""
    if len(x) != len(y):
        return None
    if not x.codes:
        return 0
    pos = (x.key + x.key).find(y.key)
    if pos < 0 or pos >= len(x):
        return None
    return pos


def is_conjugate_free(x: Word, y: Word) -> Optional[Word]:
    """Z with Z^-1 x Z == y in the free group, or None."""
    if x.alphabet != y.alphabet:
        raise ValueError("Alphabet mismatch")
    cx, core_x = cyclic_core(x)
    cy, core_y = cyclic_core(y)
    s = rotation_offset(core_x, core_y)
    if s is None:
        return None
    moved = Word._trusted(x.alphabet, core_x.codes[:s])
    return concat(concat(cx, moved), invert(cy))


def proper_power_root(w: Word) -> tuple[Word, int]:
    """(root, k) with root^k == w and k maximal, read off the cyclic core."""
    if not w.codes:
        raise ValueError("proper_power_root is undefined for the empty word")
    prefix, core = split_cyclic_core(w.codes)
    n = len(core)
    key = codes_key(core)
    period = (key + key).find(key, 1)
    k = n // period
    if k == 1:
        return w, 1
    root_codes = prefix + core[:period] + invert_codes(prefix)
    return Word._trusted(w.alphabet, root_codes), k


def cyclic_subword_of(needle: Word, hay: Word) -> bool:
    """True if needle occurs in some rotation of the cyclic word hay."""
    if len(needle) > len(hay):
        return False
    if not needle.codes:
        return True
    return (hay.key + hay.key).find(needle.key) >= 0
