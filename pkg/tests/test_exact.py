"""Tests for exact solution counts over free and direct products with finite factors."""
from __future__ import annotations

import pytest

from gpres.equations.equation import parse_equation
from gpres.equations.exact import (
    brute_direct_solutions,
    count_solutions,
    degenerate_census,
    direct_product_census,
    direct_product_eval,
    direct_product_group,
    embedded_factor,
    finite_evaluator,
    free_product_census,
    presentation_evaluator,
    solution_count_spectrum,
)
from gpres.equations.finite_group import cyclic_group, symmetric_group
from gpres.grading.models import GradedPresentation, default_params
from gpres.solver.verdict import Obstruction


@pytest.fixture
def eq(alphabet):
    return lambda text: parse_equation(alphabet, text)


class TestFreeProductCensus:
    @pytest.mark.parametrize(
        "A, B, expected",
        [
            (cyclic_group(3), cyclic_group(2), 3),
            (cyclic_group(2), symmetric_group(3), 2),
            (cyclic_group(4), cyclic_group(3), 4),
        ],
    )
    def test_solutions_are_the_abelian_factor(self, A, B, expected):
        report = free_product_census(A, B, 1, 2)
        assert len(report.solutions) == expected
        assert report.solutions == embedded_factor(A, B, 2)
        assert report.unknowns == []

    def test_non_solutions_carry_commutator(self):
        report = free_product_census(cyclic_group(3), cyclic_group(2), 1, 1)
        by_label = {e.label: e.verdict for e in report.entries}
        verdict = by_label["B[1]"]
        assert verdict.obstruction is Obstruction.FINITE_EVALUATION
        assert verdict.datum == "B[1] A[1] B[1] A[2]"

    def test_left_factor_must_be_abelian(self):
        with pytest.raises(ValueError):
            free_product_census(symmetric_group(3), cyclic_group(2), 1, 1)

    def test_a_must_be_nontrivial(self):
        with pytest.raises(ValueError):
            free_product_census(cyclic_group(3), cyclic_group(2), 0, 1)


class TestDirectProduct:
    def test_centralizer_times_k(self, eq):
        H, K = symmetric_group(3), cyclic_group(2)
        assignment = {0: H.element("(1 2)")}
        equation = eq("x a x' a'")
        report = direct_product_census(H, assignment, K, equation)
        assert report.size == 12
        assert len(report.solutions) == 4
        assert brute_direct_solutions(H, assignment, K, equation) == 4

    def test_k_coordinate_blocks_solutions(self, eq):
        H, K = symmetric_group(3), cyclic_group(3)
        assignment = {0: H.element("(1 2)")}
        equation = eq("x a")
        report = direct_product_census(H, assignment, K, equation)
        assert report.solutions == ["((1 2), 0)"]
        by_label = {e.label: e.verdict for e in report.entries}
        assert by_label["((), 1)"].obstruction is Obstruction.DIRECT_FACTOR
        assert by_label["((), 0)"].obstruction is Obstruction.FINITE_EVALUATION
        assert brute_direct_solutions(H, assignment, K, equation) == 1

    @pytest.mark.parametrize("text", ["x x a x' a'", "x a x a'", "x x x"])
    def test_matches_product_table(self, eq, text):
        H, K = symmetric_group(3), cyclic_group(2)
        assignment = {0: H.element("(1 2 3)")}
        report = direct_product_census(H, assignment, K, eq(text))
        assert len(report.solutions) == brute_direct_solutions(H, assignment, K, eq(text))

    @pytest.mark.parametrize("text", ["x a x' a'", "x a x'", "x x a x' x' a", "a x' a x"])
    def test_balanced_equation_ignores_k(self, eq, text):
        H, K = symmetric_group(3), cyclic_group(3)
        h_side = finite_evaluator(H, {0: H.element("(1 2)")})
        equation = eq(text)
        for h in H.elements():
            base = direct_product_eval(h_side, K, equation, (h, K.identity))
            for k in K.elements():
                assert direct_product_eval(h_side, K, equation, (h, k)) == base

    def test_presentation_side(self, eq, word, small_cfg):
        h_side = presentation_evaluator(GradedPresentation.free(default_params(2)), small_cfg)
        K = cyclic_group(2)
        assert direct_product_eval(h_side, K, eq("x a x' a'"), (word("a"), 1)).is_trivial
        verdict = direct_product_eval(h_side, K, eq("x a x' a'"), (word("b"), 0))
        assert verdict.obstruction is Obstruction.FREE_QUOTIENT
        verdict = direct_product_eval(h_side, K, eq("x a"), (word("a'"), 1))
        assert verdict.obstruction is Obstruction.DIRECT_FACTOR

    def test_product_group(self):
        G = direct_product_group(cyclic_group(2), cyclic_group(3))
        assert G.order == 6
        assert G.is_abelian()
        assert G.name(G.identity) == "(0, 0)"

    def test_finite_evaluator(self, eq):
        G = cyclic_group(3)
        at = finite_evaluator(G, {0: 1})
        assert at(eq("x a"), 2).is_trivial
        assert at(eq("x a"), 1).datum == "2"


class TestDegenerate:
    @pytest.mark.parametrize("G", [cyclic_group(3), symmetric_group(3)])
    def test_three_equations(self, G):
        counts = degenerate_census(G)
        assert counts == {"1=1": G.order, "g=1": 0, "x=1": 1}

    def test_trivial_group(self):
        assert degenerate_census(cyclic_group(1)) == {"1=1": 1, "x=1": 1}

    def test_count_solutions(self):
        G = cyclic_group(4)
        assert count_solutions(G, [("x", 1), ("x", 1)]) == 2
        assert count_solutions(G, [("x", 1), ("x", 1), ("g", 1)]) == 0

    def test_spectrum_of_z3(self):
        assert solution_count_spectrum(cyclic_group(3), 3) == [0, 1, 3]
