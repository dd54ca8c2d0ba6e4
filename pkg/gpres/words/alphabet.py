from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class Letter(NamedTuple):
    """A generator (by index into the alphabet) raised to +1 or -1."""

    index: int
    sign: int

    @property
    def code(self) -> int:
        return (self.index + 1) * self.sign

    @classmethod
    def from_code(cls, code: int) -> Letter:
        return cls(abs(code) - 1, 1 if code > 0 else -1)

    def inverse(self) -> Letter:
        return Letter(self.index, -self.sign)


@dataclass(frozen=True)
class Alphabet:
    """The letters a, b, c1, ..., c<h> in this fixed order."""

    h: int

    def __post_init__(self):
        if not isinstance(self.h, int) or self.h < 2 or self.h % 2:
            raise ValueError(f"h must be an even integer >= 2, got {self.h!r}")

    @property
    def size(self) -> int:
        return self.h + 2

    @property
    def names(self) -> tuple[str, ...]:
        return ("a", "b") + tuple(f"c{j}" for j in range(1, self.h + 1))

    @property
    def c_indices(self) -> frozenset[int]:
        return frozenset(range(2, self.h + 2))

    def name(self, index: int) -> str:
        self.check_index(index)
        if index == 0:
            return "a"
        if index == 1:
            return "b"
        return f"c{index - 1}"

    def index(self, name: str) -> int:
        if name == "a":
            return 0
        if name == "b":
            return 1
        if name.startswith("c") and name[1:].isdigit():
            j = int(name[1:])
            if 1 <= j <= self.h:
                return j + 1
        raise ValueError(f"Unknown generator {name!r} for alphabet with h={self.h}")

    def c(self, j: int) -> int:
        """Generator index of c_j (1-based j)."""
        if not 1 <= j <= self.h:
            raise ValueError(f"c{j} is outside the alphabet (h={self.h})")
        return j + 1

    def check_index(self, index: int):
        if not 0 <= index < self.size:
            raise ValueError(f"Generator index {index} out of range 0..{self.size - 1}")

    def letters(self) -> tuple[Letter, ...]:
        """All letters in the fixed order a < a' < b < b' < c1 < c1' < ..."""
        return tuple(Letter(i, s) for i in range(self.size) for s in (1, -1))
