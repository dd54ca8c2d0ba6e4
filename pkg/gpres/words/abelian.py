"""Abelianization and integer lattice membership."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy import igcdex

from .word import Word


@dataclass(frozen=True)
class AbelianVector:
    """Exponent-sum vector, one coordinate per generator."""

    coords: tuple[int, ...]

    @classmethod
    def zero(cls, size: int) -> AbelianVector:
        return cls((0,) * size)

    def __add__(self, other: AbelianVector) -> AbelianVector:
        return AbelianVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: AbelianVector) -> AbelianVector:
        return AbelianVector(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> AbelianVector:
        return AbelianVector(tuple(-x for x in self.coords))

    def scale(self, k: int) -> AbelianVector:
        return AbelianVector(tuple(k * x for x in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __len__(self) -> int:
        return len(self.coords)


def abelianize(w: Word) -> AbelianVector:
    coords = [0] * w.alphabet.size
    for c in w.codes:
        coords[abs(c) - 1] += 1 if c > 0 else -1
    return AbelianVector(tuple(coords))


class IntegerLattice:
    """Integer span of a set of vectors, kept in row echelon form."""

    def __init__(self, generators: Iterable[AbelianVector], size: int):
        self.size = size
        self._rows = _echelon([list(v.coords) for v in generators], size)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def contains(self, v: AbelianVector) -> bool:
        rest = list(v.coords)
        for row in self._rows:
            col = _pivot(row)
            q, r = divmod(rest[col], row[col])
            if r:
                return False
            if q:
                rest = [x - q * y for x, y in zip(rest, row)]
        return not any(rest)


def _pivot(row: Sequence[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


def _echelon(rows: list[list[int]], size: int) -> list[list[int]]:
    pending = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(size):
        hits = [r for r in pending if r[col]]
        if not hits:
            continue
        pending = [r for r in pending if not r[col]]
        pivot = hits[0]
        for other in hits[1:]:
            a, b = pivot[col], other[col]
            s, t, g = igcdex(a, b)
            s, t, g = int(s), int(t), int(g)
            combined = [s * x + t * y for x, y in zip(pivot, other)]
            cleared = [(b // g) * x - (a // g) * y for x, y in zip(pivot, other)]
            pivot = combined
            if any(cleared):
                pending.append(cleared)
        basis.append(pivot)
    return basis


def in_integer_span(v: AbelianVector, generators: Iterable[AbelianVector]) -> bool:
    return IntegerLattice(generators, len(v)).contains(v)


def abelian_congruent(x: Word, y: Word, lattice_gens: Iterable[AbelianVector]) -> bool:
    """True iff abelianize(x) - abelianize(y) lies in the span of lattice_gens."""
    return in_integer_span(abelianize(x) - abelianize(y), lattice_gens)
