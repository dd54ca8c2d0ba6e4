from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional


def parse_alpha(text: str) -> Fraction:
    """Parse a rational written as p/q (or an integer)."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"alpha must be a rational p/q, got {text!r}") from e
    if "." in text:
        raise ValueError(f"alpha must be written as p/q, not as a decimal: {text!r}")
    return value


@dataclass(frozen=True)
class SolverConfig:
    alpha: Fraction = Fraction(3, 10)
    node_budget: int = 20000
    # None means 2 * |input| + longest relevant relator
    max_intermediate_length: Optional[int] = None
    # words longer than this skip the insertion search; None means no limit
    max_search_length: Optional[int] = None
    conjugator_radius_override: Optional[int] = None
    oracle_mode: bool = False

    def __post_init__(self):
        if not isinstance(self.alpha, Fraction):
            raise ValueError(f"alpha must be a Fraction, got {self.alpha!r}")
        if not 0 < self.alpha < Fraction(1, 2):
            raise ValueError(f"alpha must lie in (0, 1/2), got {self.alpha}")
        if self.node_budget < 1:
            raise ValueError(f"node_budget must be >= 1, got {self.node_budget}")
        if self.max_intermediate_length is not None and self.max_intermediate_length < 1:
            raise ValueError(
                f"max_intermediate_length must be >= 1, got {self.max_intermediate_length}"
            )
        if self.max_search_length is not None and self.max_search_length < 0:
            raise ValueError(f"max_search_length must be >= 0, got {self.max_search_length}")
        if self.conjugator_radius_override is not None and self.conjugator_radius_override < 0:
            raise ValueError(
                f"conjugator_radius_override must be >= 0, got {self.conjugator_radius_override}"
            )

    def with_budget(self, node_budget: int) -> SolverConfig:
        return replace(self, node_budget=node_budget)
