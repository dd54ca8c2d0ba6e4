"""Three-valued results of the bounded decision procedures."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, NamedTuple, Optional, Sequence

from ..words.abelian import AbelianVector
from ..words.cyclic import cyclic_core
from ..words.syntax import format_word
from ..words.word import Word, invert, rotate_codes


class VerdictValue(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


class Obstruction(Enum):
    ABELIAN = "abelian"
    FREE_QUOTIENT = "free-quotient"
    LENGTH_CUT_FREE = "length-cut-free"
    BALL_EXHAUSTED = "ball-exhausted"
    COSET_TABLE = "coset-table"
    FINITE_EVALUATION = "finite-evaluation"
    DIRECT_FACTOR = "direct-factor"


class RelatorApplication(NamedTuple):
    """Insert rotation `shift` of relator `index`'s cyclic core (inverted if sign < 0) at `position`."""

    index: int
    position: int
    shift: int
    sign: int


def relator_insertion(relator: Word, shift: int, sign: int) -> Word:
    _, core = cyclic_core(relator)
    if sign < 0:
        core = invert(core)
    return Word._trusted(core.alphabet, rotate_codes(core.codes, shift))


def apply_step(w: Word, relator: Word, step: RelatorApplication) -> Word:
    if not 0 <= step.position <= len(w):
        raise ValueError(f"Insertion position {step.position} outside word of length {len(w)}")
    inserted = relator_insertion(relator, step.shift, step.sign)
    codes = w.codes[: step.position] + inserted.codes + w.codes[step.position :]
    return Word.from_codes(w.alphabet, codes)


@dataclass(frozen=True)
class Verdict:
    value: VerdictValue
    certificate: tuple[RelatorApplication, ...] = ()
    obstruction: Optional[Obstruction] = None
    datum: Any = None
    budget: Optional[int] = None
    reason: str = ""

    @classmethod
    def trivial(cls, certificate: Sequence[RelatorApplication] = ()) -> Verdict:
        return cls(VerdictValue.TRIVIAL, certificate=tuple(certificate))

    @classmethod
    def nontrivial(cls, obstruction: Obstruction, datum: Any) -> Verdict:
        return cls(VerdictValue.NONTRIVIAL, obstruction=obstruction, datum=datum)

    @classmethod
    def unknown(cls, budget: Optional[int] = None, reason: str = "") -> Verdict:
        return cls(VerdictValue.UNKNOWN, budget=budget, reason=reason)

    @property
    def is_trivial(self) -> bool:
        return self.value is VerdictValue.TRIVIAL

    @property
    def is_nontrivial(self) -> bool:
        return self.value is VerdictValue.NONTRIVIAL

    @property
    def is_unknown(self) -> bool:
        return self.value is VerdictValue.UNKNOWN

    def replay(self, w: Word, relators: Sequence[Word]) -> Word:
        """Apply the certificate to w; a sound Trivial verdict ends at the empty word."""
        for step in self.certificate:
            w = apply_step(w, relators[step.index], step)
        return w

    def to_record(self) -> str:
        parts = [f"verdict={self.value.value}"]
        if self.is_trivial:
            steps = ",".join(f"({s.index},{s.position},{s.shift},{s.sign})" for s in self.certificate)
            parts.append(f"certificate=[{steps}]")
        elif self.is_nontrivial:
            parts.append(f"obstruction={self.obstruction.value}")
            parts.append(f"datum={_format_datum(self.datum)}")
        else:
            if self.budget is not None:
                parts.append(f"budget={self.budget}")
            if self.reason:
                parts.append(f'reason="{self.reason}"')
        return " ".join(parts)


def _format_datum(datum: Any) -> str:
    if isinstance(datum, AbelianVector):
        return "(" + ",".join(str(x) for x in datum.coords) + ")"
    if isinstance(datum, Word):
        return '"' + format_word(datum) + '"'
    return str(datum)
