"""Greedy Dehn shortening and the relator insertion search."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from ..grading.models import Relator
from ..words.word import (
    Word,
    codes_key,
    free_reduce,
    invert_codes,
    rotate_codes,
    splice_bounds,
    split_cyclic_core,
)
from .verdict import RelatorApplication

logger = logging.getLogger(__name__)

RelatorLike = Union[Word, Relator]


@dataclass(frozen=True)
class RelatorForm:
    """Cyclic core of relator `index`, inverted when sign is -1."""

    index: int
    sign: int
    codes: tuple[int, ...]
    doubled: str
    # every window of length // 2 + 1 letters contains one of these
    anchors: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.codes)


def as_word(relator: RelatorLike) -> Word:
    return relator.flattened if isinstance(relator, Relator) else relator


def relator_forms(indexed: Sequence[tuple[int, RelatorLike]]) -> list[RelatorForm]:
    forms = []
    for index, relator in indexed:
        _, core = split_cyclic_core(as_word(relator).codes)
        if not core:
            continue
        for sign, codes in ((1, core), (-1, invert_codes(core))):
            key = codes_key(codes)
            doubled = key + key
            forms.append(RelatorForm(index, sign, codes, doubled, _anchors(doubled, len(codes))))
    return forms


def _anchors(doubled: str, size: int) -> tuple[str, ...]:
    step = max(1, (size // 2 + 1) // 2)
    return tuple(dict.fromkeys(doubled[s : s + step] for s in range(0, size + step, step)))


def _dehn_step(
    codes: tuple[int, ...], forms: Sequence[RelatorForm]
) -> Optional[tuple[tuple[int, ...], RelatorApplication]]:
    key = codes_key(codes)
    n = len(key)
    for form in forms:
        size = form.length
        need = size // 2 + 1
        if need > n:
            continue
        if form.anchors and not any(anchor in key for anchor in form.anchors):
            continue
        doubled = form.doubled
        for s in range(size):
            pos = key.find(doubled[s : s + need])
            if pos < 0:
                continue
            m = need
            while m < size and pos + m < n and key[pos + m] == doubled[s + m]:
                m += 1
            complement = rotate_codes(form.codes, s)[m:]
            new = codes[:pos] + invert_codes(complement) + codes[pos + m :]
            step = RelatorApplication(form.index, pos, (size - s) % size, -form.sign)
            return free_reduce(new), step
    return None


def dehn_reduce_forms(w: Word, forms: Sequence[RelatorForm]) -> tuple[Word, list[RelatorApplication]]:
    codes = w.codes
    steps: list[RelatorApplication] = []
    while codes:
        found = _dehn_step(codes, forms)
        if found is None:
            break
        codes, step = found
        steps.append(step)
    return Word._trusted(w.alphabet, codes), steps


def dehn_reduce(w: Word, relators: Sequence[RelatorLike]) -> Word:
    """Replace subwords longer than half a relator rotation by the shorter complement."""
    reduced, _ = dehn_reduce_forms(w, relator_forms(list(enumerate(relators))))
    return reduced


def insertion_search(
    start: Word,
    forms: Sequence[RelatorForm],
    node_budget: int,
    length_cap: int,
) -> tuple[Optional[list[RelatorApplication]], bool]:
    """Breadth-first search for a sequence of insertions reaching the empty word.

    Returns (path, budget_exhausted). A path of None means the empty word was
    not reached within the budget or the length cap.

    Each state is stored as (parent, form, position, shift) and its word is
    rebuilt from the parent when it leaves the queue, so memory grows with the
    number of states rather than with their length.
    """
    if start.is_empty():
        return [], False
    # Visited words are keyed by hash; a collision only prunes a branch.
    seen = {hash(start.codes)}
    nodes: list[_Node] = [_Node(-1, -1, 0, 0)]
    queue = deque([0])
    # Siblings leave the queue together, so the last parent word is kept.
    parent_id, parent_codes = 0, start.codes
    while queue:
        node_id = queue.popleft()
        if node_id == 0:
            current = start.codes
        else:
            node = nodes[node_id]
            if node.parent != parent_id:
                parent_id = node.parent
                parent_codes = _codes_at(start.codes, forms, nodes, parent_id)
            current = _splice(parent_codes, forms[node.form], node.pos, node.shift)
        for pos in range(len(current) + 1):
            head, tail = current[:pos], current[pos:]
            for form_no, form in enumerate(forms):
                for shift in range(form.length):
                    inserted = rotate_codes(form.codes, shift)
                    k, i, j, t = splice_bounds(head, inserted, tail)
                    if k + (j - i) + (len(tail) - t) > length_cap:
                        continue
                    new = head[:k] + inserted[i:j] + tail[t:]
                    key = hash(new)
                    if key in seen:
                        continue
                    seen.add(key)
                    nodes.append(_Node(node_id, form_no, pos, shift))
                    if not new:
                        return _path(forms, nodes, len(nodes) - 1), False
                    if len(nodes) >= node_budget:
                        logger.debug(f"Insertion search stopped at node budget {node_budget}")
                        return None, True
                    queue.append(len(nodes) - 1)
    return None, False


class _Node(NamedTuple):
    parent: int
    form: int
    pos: int
    shift: int


def _splice(codes: tuple[int, ...], form: RelatorForm, pos: int, shift: int) -> tuple[int, ...]:
    head, tail = codes[:pos], codes[pos:]
    inserted = rotate_codes(form.codes, shift)
    k, i, j, t = splice_bounds(head, inserted, tail)
    return head[:k] + inserted[i:j] + tail[t:]


def _codes_at(
    start: tuple[int, ...],
    forms: Sequence[RelatorForm],
    nodes: Sequence[_Node],
    node_id: int,
) -> tuple[int, ...]:
    chain = []
    while node_id > 0:
        chain.append(nodes[node_id])
        node_id = nodes[node_id].parent
    codes = start
    for node in reversed(chain):
        codes = _splice(codes, forms[node.form], node.pos, node.shift)
    return codes


def _path(
    forms: Sequence[RelatorForm], nodes: Sequence[_Node], end: int
) -> list[RelatorApplication]:
    steps = []
    while end > 0:
        node = nodes[end]
        form = forms[node.form]
        steps.append(RelatorApplication(form.index, node.pos, node.shift, form.sign))
        end = node.parent
    steps.reverse()
    return steps
