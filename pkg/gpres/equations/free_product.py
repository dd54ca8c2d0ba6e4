from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .finite_group import FiniteGroup

# Factor tags
LEFT = 0
RIGHT = 1


@dataclass(frozen=True)
class FreeProductElement:
    """Normal form: alternating (factor, element) syllables, none of them the identity."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for k, (factor, _) in enumerate(self.syllables):
            if factor not in (LEFT, RIGHT):
                raise ValueError(f"Unknown factor tag {factor}")
            if k and self.syllables[k - 1][0] == factor:
                raise ValueError("Adjacent syllables must come from different factors")

    def __len__(self) -> int:
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables


class FreeProduct:
    """The free product of two finite groups, A (tag 0) and B (tag 1)."""

    def __init__(self, A: FiniteGroup, B: FiniteGroup):
        self.factors = (A, B)

    def element(self, factor: int, x: int) -> FreeProductElement:
        if x == self.factors[factor].identity:
            return FreeProductElement()
        return FreeProductElement(((factor, x),))

    def mul(self, x: FreeProductElement, y: FreeProductElement) -> FreeProductElement:
        stack = list(x.syllables)
        for factor, value in y.syllables:
            if stack and stack[-1][0] == factor:
                _, top = stack.pop()
                merged = self.factors[factor].mul(top, value)
                if merged != self.factors[factor].identity:
                    stack.append((factor, merged))
            else:
                stack.append((factor, value))
        return FreeProductElement(tuple(stack))

    def inverse(self, x: FreeProductElement) -> FreeProductElement:
        return FreeProductElement(
            tuple((f, self.factors[f].inverse(v)) for f, v in reversed(x.syllables))
        )

    def normal_forms(self, max_syllables: int) -> Iterator[FreeProductElement]:
        """Every element with at most max_syllables syllables, shortest first."""
        if max_syllables < 0:
            raise ValueError(f"max_syllables must be >= 0, got {max_syllables}")
        nonidentity = [
            [v for v in G.elements() if v != G.identity] for G in self.factors
        ]

        def extend(prefix: tuple, remaining: int) -> Iterator[tuple]:
            if remaining == 0:
                yield prefix
                return
            last = prefix[-1][0] if prefix else None
            for factor in (LEFT, RIGHT):
                if factor == last:
                    continue
                for v in nonidentity[factor]:
                    yield from extend(prefix + ((factor, v),), remaining - 1)

        for length in range(max_syllables + 1):
            for syllables in extend((), length):
                yield FreeProductElement(syllables)

    def format(self, x: FreeProductElement) -> str:
        if x.is_identity():
            return "1"
        tags = "AB"
        return " ".join(f"{tags[f]}[{self.factors[f].name(v)}]" for f, v in x.syllables)


def free_product_mul(
    A: FiniteGroup, B: FiniteGroup, x: FreeProductElement, y: FreeProductElement
) -> FreeProductElement:
    return FreeProduct(A, B).mul(x, y)
