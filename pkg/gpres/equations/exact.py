"""Exact solution counts in free products and direct products with finite factors."""

from __future__ import annotations

import itertools
import logging
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from ..grading.models import GradedPresentation
from ..solver.config import SolverConfig
from ..solver.verdict import Obstruction, Verdict
from .census import CensusReport, eval_at
from .equation import Equation, x_code, x_exponent_sum
from .finite_group import FiniteGroup, evaluate
from .free_product import LEFT, FreeProduct

logger = logging.getLogger(__name__)

Evaluator = Callable[[Equation, Any], Verdict]


# ============================================================
# Free products: x a = a x in A * B
# ============================================================


def free_product_census(A: FiniteGroup, B: FiniteGroup, a: int, radius: int) -> CensusReport:
    """Solutions of x a = a x among normal forms with at most `radius` syllables."""
    if not A.is_abelian():
        raise ValueError("The left factor must be abelian")
    if a == A.identity:
        raise ValueError("a must not be the identity")
    fp = FreeProduct(A, B)
    a_elem = fp.element(LEFT, a)
    report = CensusReport(radius=radius)
    for g in fp.normal_forms(radius):
        left = fp.mul(g, a_elem)
        right = fp.mul(a_elem, g)
        if left == right:
            report.add(fp.format(g), Verdict.trivial())
        else:
            commutator = fp.mul(left, fp.inverse(right))
            verdict = Verdict.nontrivial(Obstruction.FINITE_EVALUATION, fp.format(commutator))
            report.add(fp.format(g), verdict)
    return report


def embedded_factor(A: FiniteGroup, B: FiniteGroup, radius: int) -> list[str]:
    """Labels of A's elements inside the free product ball."""
    fp = FreeProduct(A, B)
    forms = fp.normal_forms(min(radius, 1))
    return [fp.format(g) for g in forms if all(f == LEFT for f, _ in g.syllables)]


# ============================================================
# Direct products H x K
# ============================================================


def finite_evaluator(G: FiniteGroup, assignment: Mapping[int, int]) -> Evaluator:
    """Evaluate equations over a finite group; constants take the assigned values."""

    def evaluate_at(eq: Equation, g: int) -> Verdict:
        values = dict(assignment)
        values[x_code(eq.alphabet) - 1] = g
        result = evaluate(G, eq.codes, values)
        if result == G.identity:
            return Verdict.trivial()
        return Verdict.nontrivial(Obstruction.FINITE_EVALUATION, G.name(result))

    return evaluate_at


def presentation_evaluator(P: GradedPresentation, cfg: SolverConfig) -> Evaluator:
    def evaluate_at(eq: Equation, g) -> Verdict:
        return eval_at(P, eq, g, cfg)

    return evaluate_at


def direct_product_eval(
    h_side: Evaluator, K: FiniteGroup, eq: Equation, pair: tuple[Any, int]
) -> Verdict:
    """Evaluate eq at (h, k) in H x K.

    Constants live in H, so the K-coordinate of eq(h, k) is k to the x-exponent sum.
    """
    h_elem, k_elem = pair
    k_value = K.power(k_elem, x_exponent_sum(eq))
    if k_value != K.identity:
        return Verdict.nontrivial(Obstruction.DIRECT_FACTOR, K.name(k_value))
    return h_side(eq, h_elem)


def direct_product_census(
    H: FiniteGroup, assignment: Mapping[int, int], K: FiniteGroup, eq: Equation
) -> CensusReport:
    h_side = finite_evaluator(H, assignment)
    report = CensusReport()
    for h in H.elements():
        for k in K.elements():
            label = f"({H.name(h)}, {K.name(k)})"
            report.add(label, direct_product_eval(h_side, K, eq, (h, k)))
    return report


def direct_product_group(H: FiniteGroup, K: FiniteGroup) -> FiniteGroup:
    """H x K with element (h, k) at index h * |K| + k."""
    m = K.order
    h_idx = np.arange(H.order * m) // m
    k_idx = np.arange(H.order * m) % m
    table = H.table[h_idx[:, None], h_idx[None, :]] * m + K.table[k_idx[:, None], k_idx[None, :]]
    names = tuple(f"({H.name(h)}, {K.name(k)})" for h in H.elements() for k in K.elements())
    return FiniteGroup(table, names)


def brute_direct_solutions(
    H: FiniteGroup, assignment: Mapping[int, int], K: FiniteGroup, eq: Equation
) -> int:
    """Solution count computed in the product table directly."""
    G = direct_product_group(H, K)
    lifted = {i: v * K.order + K.identity for i, v in assignment.items()}
    xi = x_code(eq.alphabet) - 1
    count = 0
    for g in G.elements():
        if evaluate(G, eq.codes, {**lifted, xi: g}) == G.identity:
            count += 1
    return count


# ============================================================
# Equations over a finite group with constants from the group
# ============================================================

# A token is ("x", 1), ("x", -1) or ("g", element).
Token = tuple[str, int]


def count_solutions(G: FiniteGroup, tokens: Sequence[Token]) -> int:
    xs = np.arange(G.order)
    inverses = np.array([G.inverse(x) for x in xs])
    current = np.full(G.order, G.identity)
    for kind, value in tokens:
        if kind == "x":
            current = G.table[current, xs if value > 0 else inverses]
        else:
            current = G.table[current, value]
    return int((current == G.identity).sum())


def degenerate_census(G: FiniteGroup) -> dict[str, int]:
    """Solution counts of 1 = 1, g = 1 for some g != 1, and x = 1."""
    counts = {"1=1": count_solutions(G, [])}
    nonidentity = [g for g in G.elements() if g != G.identity]
    if nonidentity:
        counts["g=1"] = count_solutions(G, [("g", nonidentity[0])])
    counts["x=1"] = count_solutions(G, [("x", 1)])
    return counts


def solution_count_spectrum(G: FiniteGroup, max_length: int) -> list[int]:
    """Every solution count achieved by an equation with at most max_length tokens."""
    tokens: list[Token] = [("x", 1), ("x", -1)]
    tokens.extend(("g", g) for g in G.elements() if g != G.identity)
    seen = set()
    for length in range(max_length + 1):
        for sequence in itertools.product(tokens, repeat=length):
            seen.add(count_solutions(G, sequence))
    logger.debug(f"Spectrum over order {G.order} up to length {max_length}: {sorted(seen)}")
    return sorted(seen)
