"""Equations w(x) = 1: words over a, b, c1, ..., ch and one extra letter x."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..grading.models import Params, min_relator_length
from ..solver.identity import power_conjugator_bound
from ..words.alphabet import Alphabet
from ..words.cyclic import CyclicWord, cyclic_core, is_conjugate_free
from ..words.syntax import WordSyntaxError, format_codes, parse_token, tokenize
from ..words.word import Word, free_reduce, invert_codes, product

logger = logging.getLogger(__name__)

X_NAME = "x"


def x_code(alphabet: Alphabet) -> int:
    return alphabet.size + 1


@dataclass(frozen=True)
class Equation:
    alphabet: Alphabet
    codes: tuple[int, ...]

    def __post_init__(self):
        limit = x_code(self.alphabet)
        for c in self.codes:
            if c == 0 or abs(c) > limit:
                raise ValueError(f"Letter code {c} is outside the equation alphabet")
        if free_reduce(self.codes) != self.codes:
            raise ValueError("Equation codes must be freely reduced")

    @classmethod
    def from_codes(cls, alphabet: Alphabet, codes: Iterable[int]) -> Equation:
        return cls(alphabet, free_reduce(codes))

    @classmethod
    def constant(cls, w: Word) -> Equation:
        return cls(w.alphabet, w.codes)

    @classmethod
    def variable(cls, alphabet: Alphabet) -> Equation:
        return cls(alphabet, (x_code(alphabet),))

    def __len__(self) -> int:
        return len(self.codes)

    def __mul__(self, other: Equation) -> Equation:
        if other.alphabet != self.alphabet:
            raise ValueError("Cannot multiply equations over different alphabets")
        return Equation.from_codes(self.alphabet, self.codes + other.codes)

    def __invert__(self) -> Equation:
        return Equation(self.alphabet, invert_codes(self.codes))

    def __pow__(self, k: int) -> Equation:
        base = self.codes if k >= 0 else invert_codes(self.codes)
        return Equation.from_codes(self.alphabet, base * abs(k))

    def __str__(self) -> str:
        return format_equation(self)


def commutator(p: Equation, q: Equation) -> Equation:
    """[p, q] = p q p^-1 q^-1."""
    return p * q * ~p * ~q


def parse_equation(alphabet: Alphabet, text: str) -> Equation:
    extra = {X_NAME: x_code(alphabet)}
    codes = [parse_token(t, alphabet, extra) for t in tokenize(text)]
    return Equation.from_codes(alphabet, codes)


def format_equation(eq: Equation) -> str:
    return format_codes(eq.alphabet, eq.codes, {x_code(eq.alphabet): X_NAME})


def load_equation(alphabet: Alphabet, text: str) -> Equation:
    """Equation file contents: comment lines start with #, the rest is joined."""
    body = " ".join(
        line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")
    )
    if not body.strip():
        raise WordSyntaxError("Equation file is empty")
    return parse_equation(alphabet, body)


def _replace_x(eq: Equation, replacement: Sequence[int]) -> list[int]:
    xc = x_code(eq.alphabet)
    inverse = invert_codes(replacement)
    out: list[int] = []
    for c in eq.codes:
        if c == xc:
            out.extend(replacement)
        elif c == -xc:
            out.extend(inverse)
        else:
            out.append(c)
    return out


def substitute(eq: Equation, g: Word) -> Word:
    """w(g): x replaced by g, x' by g^-1, then reduced."""
    if g.alphabet != eq.alphabet:
        raise ValueError("Substituted word and equation use different alphabets")
    return Word._trusted(eq.alphabet, free_reduce(_replace_x(eq, g.codes)))


def compose(eq: Equation, inner: Equation) -> Equation:
    """w(inner(x))."""
    if inner.alphabet != eq.alphabet:
        raise ValueError("Composed equations use different alphabets")
    return Equation.from_codes(eq.alphabet, _replace_x(eq, inner.codes))


def x_exponent_sum(eq: Equation) -> int:
    xc = x_code(eq.alphabet)
    return sum(1 if c == xc else -1 for c in eq.codes if abs(c) == xc)


# ============================================================
# The equations built from the parameters
# ============================================================


def make_v(params: Params) -> Equation:
    """prod_j c_j (x^-1 a x b)^((-1)^j n)."""
    alphabet = params.alphabet
    x = Equation.variable(alphabet)
    a = Equation(alphabet, (1,))
    b = Equation(alphabet, (2,))
    base = ~x * a * x * b
    result = Equation(alphabet, ())
    for j in range(1, params.h + 1):
        c = Equation(alphabet, (alphabet.c(j) + 1,))
        result = result * c * base ** ((-1) ** j * params.n)
    return result


def make_w(params: Params) -> Equation:
    """[c1 v([a,x]) c1^-1, v([b,x])]."""
    alphabet = params.alphabet
    x = Equation.variable(alphabet)
    a = Equation(alphabet, (1,))
    b = Equation(alphabet, (2,))
    c1 = Equation(alphabet, (alphabet.c(1) + 1,))
    v = make_v(params)
    left = c1 * compose(v, commutator(a, x)) * ~c1
    right = compose(v, commutator(b, x))
    return commutator(left, right)


def v_identity_cut_holds(params: Params) -> bool:
    """Does the length cut alone certify v(1) != 1?

    |v(1)| = h(2n+1) and every generated relator is at least 3h(n-d-2) long, so the
    cut needs (1 - alpha) * 3h(n-d-2) >= h(2n+1).
    """
    v_length = params.h * (2 * params.n + 1)
    return (1 - params.alpha) * min_relator_length(params, 3) >= v_length


@dataclass(frozen=True)
class CommutatorWitness:
    """Data that makes v(g) a conjugate of a generated relator."""

    g: Word
    target: Word
    period: Word
    conjugator: Word
    conjugator_bound: int

    @property
    def within_bound(self) -> bool:
        return len(self.conjugator) <= self.conjugator_bound

    @property
    def rank(self) -> int:
        return len(self.period)

    def pieces(self) -> list[Word]:
        """T_j = Z c_j Z^-1 for j = 1..h."""
        alphabet = self.g.alphabet
        z = self.conjugator
        return [
            product(alphabet, (z, Word.generator(alphabet, alphabet.c(j)), ~z))
            for j in range(1, alphabet.h + 1)
        ]


def commutator_witness(g: Word, d: Optional[int] = None) -> CommutatorWitness:
    """For g in [F, F]: the period A and conjugator Z with Z^-1 A Z = g^-1 a g b in F."""
    alphabet = g.alphabet
    if any(g.exponent_sum(i) for i in range(alphabet.size)):
        raise ValueError("g must lie in the commutator subgroup")
    if g.is_empty():
        raise ValueError("g must be nontrivial")
    a = Word.generator(alphabet, 0)
    b = Word.generator(alphabet, 1)
    target = product(alphabet, (~g, a, g, b))
    _, core = cyclic_core(target)
    period = CyclicWord.of(core).word
    z = is_conjugate_free(period, target)
    if z is None:
        raise ValueError("Canonical period is not conjugate to the target")
    bound = power_conjugator_bound(d if d is not None else 8, len(period))
    if len(z) > bound:
        logger.warning(f"Conjugator length {len(z)} exceeds the bound {bound}")
    return CommutatorWitness(g, target, period, z, bound)
