"""Finite groups given by multiplication tables.

Text format:

    order 3
    names "0" "1" "2"
    0 1 2
    1 2 0
    2 0 1

The names line is optional (defaults to the element indices).
"""

from __future__ import annotations

import logging
import re
import shlex
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup

from ..words.word import Word

logger = logging.getLogger(__name__)


class GroupTableError(ValueError):
    """Raised for malformed tables or tables that are not groups."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self):
        table = np.asarray(self.table)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupTableError(f"Table must be a nonempty square array, got shape {table.shape}")
        if not np.issubdtype(table.dtype, np.integer):
            raise GroupTableError("Table entries must be integers")
        order = table.shape[0]
        if len(self.names) != order:
            raise GroupTableError(f"Expected {order} element names, got {len(self.names)}")
        if len(set(self.names)) != order:
            raise GroupTableError("Element names must be distinct")
        if table.min() < 0 or table.max() >= order:
            raise GroupTableError(f"Table entries must lie in 0..{order - 1}")

        expected = np.arange(order)
        rows_ok = (np.sort(table, axis=1) == expected).all()
        cols_ok = (np.sort(table, axis=0) == expected[:, None]).all()
        if not (rows_ok and cols_ok):
            raise GroupTableError("Table is not a Latin square")

        left = table[table]
        right = table[np.arange(order)[:, None, None], table[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise GroupTableError(f"Multiplication is not associative at ({a}, {b}, {c})")

        identities = [e for e in range(order) if np.array_equal(table[e], expected)]
        if not identities:
            raise GroupTableError("Table has no identity element")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_identity", identities[0])
        object.__setattr__(self, "_inverses", np.argmax(table == identities[0], axis=1))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inverse(self, x: int) -> int:
        return int(self._inverses[x])

    def power(self, x: int, k: int) -> int:
        base = x if k >= 0 else self.inverse(x)
        result = self.identity
        for _ in range(abs(k)):
            result = self.mul(result, base)
        return result

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def name(self, x: int) -> str:
        return self.names[x]

    def element(self, text: str) -> int:
        """Element by name (whitespace-insensitive) or by decimal index."""
        wanted = _normalize(text)
        for i, name in enumerate(self.names):
            if _normalize(name) == wanted:
                return i
        if wanted.isdigit() and int(wanted) < self.order:
            return int(wanted)
        raise ValueError(f"No element named {text!r}")

    def elements(self) -> range:
        return range(self.order)


def _normalize(name: str) -> str:
    return re.sub(r"\s+", " ", name.strip())


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError(f"Cyclic group order must be >= 1, got {m}")
    idx = np.arange(m)
    return FiniteGroup((idx[:, None] + idx[None, :]) % m, tuple(str(i) for i in range(m)))


def _cycle_name(p: Permutation) -> str:
    if p.is_Identity:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in cycle) + ")" for cycle in p.cyclic_form)


def symmetric_group(k: int) -> FiniteGroup:
    """S_k on 1..k; elements named in cycle notation, identity first."""
    if k < 1:
        raise ValueError(f"Symmetric group degree must be >= 1, got {k}")
    elements = sorted(SymmetricGroup(k).generate(), key=lambda p: p.array_form)
    position = {tuple(p.array_form): i for i, p in enumerate(elements)}
    table = np.array(
        [[position[tuple((p * q).array_form)] for q in elements] for p in elements], dtype=int
    )
    return FiniteGroup(table, tuple(_cycle_name(p) for p in elements))


# ============================================================
# Text format
# ============================================================


def serialize_group(G: FiniteGroup) -> str:
    lines = [f"order {G.order}", "names " + " ".join(shlex.quote(n) for n in G.names)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in G.table)
    return "\n".join(lines) + "\n"


def parse_group(text: str) -> FiniteGroup:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines or not lines[0].startswith("order"):
        raise GroupTableError("Group table must start with an order line")
    try:
        order = int(lines[0].split()[1])
    except (IndexError, ValueError) as e:
        raise GroupTableError(f"Bad order line {lines[0]!r}") from e
    rows = lines[1:]
    names: Optional[tuple[str, ...]] = None
    if rows and rows[0].startswith("names"):
        names = tuple(shlex.split(rows[0])[1:])
        rows = rows[1:]
    if len(rows) != order:
        raise GroupTableError(f"Expected {order} table rows, got {len(rows)}")
    try:
        table = np.array([[int(v) for v in row.split()] for row in rows], dtype=int)
    except ValueError as e:
        raise GroupTableError(f"Non-integer table entry: {e}") from e
    if table.shape != (order, order):
        raise GroupTableError(f"Table rows must have {order} entries")
    return FiniteGroup(table, names if names is not None else tuple(str(i) for i in range(order)))


def load_group(path: Union[str, Path]) -> FiniteGroup:
    path = Path(path)
    if not path.exists():
        raise GroupTableError(f"No such group table file: {path}")
    return parse_group(path.read_text())


def dump_group(G: FiniteGroup, path: Union[str, Path]):
    Path(path).write_text(serialize_group(G))


def resolve_group(spec: str) -> FiniteGroup:
    """Z<m> and S<k> name built-in groups; anything else is a table file path."""
    match = re.fullmatch(r"([ZS])(\d+)", spec.strip())
    if match:
        kind, size = match.group(1), int(match.group(2))
        return cyclic_group(size) if kind == "Z" else symmetric_group(size)
    return load_group(spec)


# ============================================================
# Evaluation
# ============================================================


def evaluate(G: FiniteGroup, word: Union[Word, Sequence[int]], assignment: Mapping[int, int]) -> int:
    """Image of a word under the homomorphism sending generator index i to assignment[i].

    Plain code sequences are accepted so that equations (with their extra letter)
    evaluate the same way.
    """
    codes = word.codes if isinstance(word, Word) else word
    result = G.identity
    for c in codes:
        index = abs(c) - 1
        if index not in assignment:
            raise ValueError(f"Generator index {index} has no assigned element")
        value = assignment[index]
        result = G.mul(result, value if c > 0 else G.inverse(value))
    return result
