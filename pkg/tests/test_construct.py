"""Tests for period selection, piece search and the rank-by-rank builder."""
from __future__ import annotations

from fractions import Fraction

import pytest

from gpres.construct.builder import (
    BuildConfig,
    PresentationBuilder,
    ZPool,
    build,
    extend_rank,
    format_event,
)
from gpres.construct.periods import period_candidates, select_periods
from gpres.construct.pieces import build_relator, conjugated_generator, minimal_conjugate_words
from gpres.grading.models import GradedPresentation, Params, Period, min_relator_length
from gpres.grading.serialization import serialize
from gpres.words.abelian import AbelianVector, abelian_congruent, abelianize
from gpres.words.syntax import format_word


@pytest.fixture
def params2():
    return Params(alpha=Fraction(3, 10), h=2, d=3, n=5)


def events_of(generator):
    events = []
    while True:
        try:
            events.append(next(generator))
        except StopIteration as stop:
            return events, stop.value


class TestZPool:
    def test_ball_members(self, alphabet):
        assert [format_word(z) for z in ZPool.ball(1).members(alphabet)][:3] == ["1", "a", "a'"]

    def test_explicit_members_sorted_and_unique(self, alphabet, word):
        pool = ZPool.explicit([word("b a"), word("a"), word("a")])
        assert [format_word(z) for z in pool.members(alphabet)] == ["a", "b a"]
        assert pool.describe() == "{a, b a}"

    def test_rejects_empty_explicit(self):
        with pytest.raises(ValueError):
            ZPool.explicit([])

    def test_rejects_negative_radius(self):
        with pytest.raises(ValueError):
            ZPool.ball(-1)


class TestBuildConfig:
    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            BuildConfig(mode="random")

    def test_rejects_low_cap(self):
        with pytest.raises(ValueError):
            BuildConfig(exhaustive_rank_cap=2)


class TestPeriods:
    def test_targeted_candidates_filter_congruence(self, params2, word):
        P = GradedPresentation.free(params2)
        cfg = BuildConfig(mode="targeted", targeted={2: (word("b a"), word("a b"), word("a a"))})
        assert [format_word(w) for w in period_candidates(P, 2, cfg)] == ["a b", "b a"]

    def test_targeted_candidate_of_wrong_length(self, params2, word):
        P = GradedPresentation.free(params2)
        cfg = BuildConfig(mode="targeted", targeted={3: (word("a b"),)})
        with pytest.raises(ValueError):
            list(period_candidates(P, 3, cfg))

    def test_conjugate_candidates_collapse(self, params2, word, small_cfg):
        P = GradedPresentation.free(params2, 3)
        cfg = BuildConfig(solver=small_cfg)
        periods = select_periods(P, 4, [word("a c1 b c1'"), word("c1 b c1' a")], cfg)
        assert [format_word(p.word) for p in periods] == ["a c1 b c1'"]

    def test_exhaustive_cap(self, params2):
        P = GradedPresentation.free(params2)
        with pytest.raises(ValueError):
            list(period_candidates(P, 5, BuildConfig()))

    def test_candidates_congruent_to_ab(self, params2):
        P = GradedPresentation.free(params2)
        ab = params2.ab()
        gens = [params2.relator_vector()]
        for w in period_candidates(P, 4, BuildConfig()):
            assert abelian_congruent(w, ab, gens)

    def test_odd_rank_has_no_candidates(self, params2):
        P = GradedPresentation.free(params2)
        assert list(period_candidates(P, 3, BuildConfig())) == []


class TestPieces:
    def test_conjugated_generator(self, params2, word):
        P = GradedPresentation.free(params2)
        assert format_word(conjugated_generator(P, 1, word("a b"))) == "a b c1 b' a'"

    def test_minimal_words_in_free_group(self, params2, word, small_cfg):
        P = GradedPresentation.free(params2, 3)
        words = minimal_conjugate_words(P, 4, 2, word("a"), small_cfg)
        assert [format_word(w) for w in words] == ["a c2 a'"]

    def test_piece_index_checked(self, params2, word, small_cfg):
        P = GradedPresentation.free(params2, 3)
        with pytest.raises(ValueError):
            minimal_conjugate_words(P, 4, 3, word("1"), small_cfg)

    def test_too_long_for_rank(self, params2, word, small_cfg):
        P = GradedPresentation.free(params2, 3)
        z = word("a b a b a b a b a b a b a b a b")
        assert minimal_conjugate_words(P, 4, 1, z, small_cfg) == []

    def test_build_relator(self, word):
        period = Period(word("a c1 b c1'"), 4)
        relator = build_relator(period, [word("c1"), word("c2")], 3)
        assert relator.exponents == (-3, 3)
        assert len(relator.literal_codes()) == 2 + 2 * 3 * 4
        assert abelianize(relator.flattened) == AbelianVector((0, 0, 1, 1))

    def test_build_relator_piece_count(self, word):
        period = Period(word("a c1 b c1'"), 4)
        with pytest.raises(ValueError):
            build_relator(period, [word("c1")], 3)

    def test_build_relator_piece_length(self, word):
        period = Period(word("a b"), 2)
        with pytest.raises(ValueError):
            build_relator(period, [word("c1"), word("a b a b c2 b' a' b' a'")], 3, d=4)


class TestBuilder:
    def test_max_rank_two_is_free(self, params2):
        P = build(params2, 2, ZPool.ball(0), BuildConfig())
        assert P.built_rank == 2
        assert P.relators() == []

    def test_rejects_low_max_rank(self, params2):
        with pytest.raises(ValueError):
            build(params2, 1, ZPool.ball(0), BuildConfig())

    def test_rank_three_has_no_periods(self, params2):
        P = build(params2, 3, ZPool.ball(1), BuildConfig())
        assert P.built_rank == 3
        assert P.periods(3) == ()
        assert P.relators() == []

    def test_event_stream(self, params2):
        builder = PresentationBuilder(params2, ZPool.ball(0), BuildConfig())
        events, P = events_of(builder.build(3))
        names = [e["event"] for e in events]
        assert names == ["start", "rank_start", "rank_done", "done"]
        assert P.built_rank == 3

    def test_extend_rank_checks_built_rank(self, params2):
        P = GradedPresentation.free(params2)
        with pytest.raises(ValueError):
            extend_rank(P, 4, ZPool.ball(0), BuildConfig())

    def test_format_event(self):
        line = format_event({"event": "relator_accepted", "rank": 4, "z": "1", "length": 14})
        assert line == 'relator_accepted rank=4 z="1" length=14'


class TestDeskBuild:
    def test_periods_and_relators(self, desk):
        assert desk.built_rank == 4
        assert len(desk.periods(4)) == 8
        assert len(desk.relators()) == 8
        assert format_word(desk.periods(4)[0].word) == "a c1 b c1'"

    def test_relator_abelianization(self, desk):
        for relator in desk.relators():
            assert abelianize(relator.flattened) == desk.params.relator_vector()

    def test_relator_lengths(self, desk):
        bound = min_relator_length(desk.params, 4)
        for relator in desk.relators():
            assert len(relator) >= bound

    def test_periods_congruent_to_ab(self, desk):
        gens = [desk.params.relator_vector()]
        for period in desk.periods(4):
            assert len(period.word) == 4
            assert abelian_congruent(period.word, desk.params.ab(), gens)

    def test_lower_rank_build_is_a_prefix(self, desk, desk_params):
        lower = build(desk_params, 3, ZPool.ball(0), BuildConfig())
        assert serialize(desk.truncate(3)) == serialize(lower)
        assert serialize(extend_rank(lower, 4, ZPool.ball(0), BuildConfig())) == serialize(desk)

    def test_deterministic(self, desk, desk_params):
        again = build(desk_params, 4, ZPool.ball(0), BuildConfig())
        assert serialize(again) == serialize(desk)
