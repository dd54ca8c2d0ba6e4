"""Tests for free-group words: reduction, syntax, cyclic words and abelianization."""
from __future__ import annotations

import itertools

import pytest

from gpres.words.abelian import AbelianVector, IntegerLattice, abelian_congruent, abelianize, igcdex
from gpres.words.alphabet import Alphabet, Letter
from gpres.words.cyclic import (
    CyclicWord,
    cyclic_reduce,
    cyclic_subword_of,
    is_conjugate_free,
    least_rotation,
    proper_power_root,
)
from gpres.words.enumerate import ball, count_reduced, enumerate_reduced
from gpres.words.syntax import WordSyntaxError, format_word, parse_word
from gpres.words.word import (
    Word,
    concat,
    free_reduce,
    invert,
    is_freely_reduced,
    kill_generators,
    product,
    reduce,
    splice_bounds,
)


class TestAlphabet:
    def test_names_in_order(self, alphabet4):
        assert alphabet4.names == ("a", "b", "c1", "c2", "c3", "c4")
        assert alphabet4.size == 6

    def test_rejects_odd_h(self):
        with pytest.raises(ValueError):
            Alphabet(3)

    def test_index_roundtrip(self, alphabet4):
        for i, name in enumerate(alphabet4.names):
            assert alphabet4.index(name) == i
            assert alphabet4.name(i) == name

    def test_unknown_generator(self, alphabet):
        with pytest.raises(ValueError):
            alphabet.index("c3")

    def test_letter_order(self, alphabet):
        codes = [letter.code for letter in alphabet.letters()]
        assert codes == [1, -1, 2, -2, 3, -3, 4, -4]

    def test_letter_inverse(self):
        assert Letter(2, 1).inverse() == Letter(2, -1)


class TestReduction:
    def test_free_reduce_cascades(self):
        assert free_reduce([1, 2, -2, -1, 3]) == (3,)

    def test_word_rejects_unreduced(self, alphabet):
        with pytest.raises(ValueError):
            Word(alphabet, (1, -1))

    def test_reduce_letters(self, alphabet):
        w = reduce(alphabet, [Letter(0, 1), Letter(1, 1), Letter(1, -1)])
        assert w.codes == (1,)

    def test_inverse_and_power(self, word):
        w = word("a b")
        assert (w * ~w).is_empty()
        assert format_word(w ** 3) == "a b a b a b"
        assert format_word(w ** -1) == "b' a'"

    def test_power_keeps_conjugating_prefix(self, word):
        w = word("c1 a c1'")
        assert format_word(w ** 2) == "c1 a a c1'"

    def test_product_reduces_across_words(self, alphabet, word):
        w = product(alphabet, [word("a b"), word("b' c1"), word("c1' a'")])
        assert w.is_empty()

    def test_kill_generators(self, alphabet, word):
        w = word("a c1 b c1' a'")
        assert format_word(kill_generators(w, alphabet.c_indices)) == "a b a'"

    def test_exponent_sum(self, word):
        assert word("a b a' b' a").exponent_sum(0) == 1
        assert word("a b a' b' a").exponent_sum(1) == 0

    def test_free_reduce_is_idempotent(self):
        for length in range(5):
            for codes in itertools.product((1, -1, 2, -2), repeat=length):
                once = free_reduce(codes)
                assert is_freely_reduced(once)
                assert free_reduce(once) == once

    def test_group_laws(self, alphabet, ab_words):
        words = list(ball(alphabet, 2, ab_words))
        one = Word.empty(alphabet)
        for x in words:
            assert concat(x, one) == x == concat(one, x)
            assert concat(x, invert(x)).is_empty()
            assert invert(invert(x)) == x
            for y in words:
                assert invert(concat(x, y)) == concat(invert(y), invert(x))
                for z in words:
                    assert concat(concat(x, y), z) == concat(x, concat(y, z))

    def test_kill_generators_is_a_homomorphism(self, alphabet):
        words = list(ball(alphabet, 2))
        for x in words:
            for y in words:
                c = alphabet.c_indices
                assert kill_generators(x * y, c) == kill_generators(x, c) * kill_generators(y, c)

    def test_splice_bounds_matches_free_reduce(self):
        head, middle, tail = (1, 2, 3), (-3, -2, 4), (-4, 2)
        k, i, j, t = splice_bounds(head, middle, tail)
        assert head[:k] + middle[i:j] + tail[t:] == free_reduce(head + middle + tail)

    def test_splice_bounds_when_middle_vanishes(self):
        head, middle, tail = (1, 2), (-2, 3), (-3, -1)
        k, i, j, t = splice_bounds(head, middle, tail)
        assert head[:k] + middle[i:j] + tail[t:] == ()


class TestSyntax:
    def test_parse_and_format(self, word):
        w = word("a b' c2")
        assert w.codes == (1, -2, 4)
        assert format_word(w) == "a b' c2"

    def test_identity_is_one(self, word):
        assert word("1").is_empty()
        assert format_word(word("1")) == "1"

    def test_parse_reduces(self, word):
        assert format_word(word("a b b' c1")) == "a c1"

    def test_empty_text_rejected(self, alphabet):
        with pytest.raises(WordSyntaxError):
            parse_word(alphabet, "   ")

    def test_double_prime_rejected(self, alphabet):
        with pytest.raises(WordSyntaxError):
            parse_word(alphabet, "a''")

    def test_unknown_name_rejected(self, alphabet):
        with pytest.raises(WordSyntaxError):
            parse_word(alphabet, "a d")


class TestEnumeration:
    def test_counts(self, alphabet):
        for length in range(4):
            assert len(list(enumerate_reduced(alphabet, length))) == count_reduced(alphabet, length)

    def test_shortlex_order(self, alphabet):
        words = list(ball(alphabet, 2))
        assert words[0].is_empty()
        assert format_word(words[1]) == "a"
        assert format_word(words[2]) == "a'"
        keys = [w.shortlex_key() for w in words]
        assert keys == sorted(keys)

    def test_filter(self, alphabet):
        words = list(enumerate_reduced(alphabet, 2, lambda w: w.exponent_sum(0) == 2))
        assert [format_word(w) for w in words] == ["a a"]

    def test_negative_length(self, alphabet):
        with pytest.raises(ValueError):
            list(enumerate_reduced(alphabet, -1))


class TestCyclic:
    def test_least_rotation(self):
        assert least_rotation("bca") == 2
        assert least_rotation("") == 0

    def test_canonical_form(self, word):
        canonical = CyclicWord.of(word("b a b' a b a'"))
        assert format_word(canonical.word) == "a b a' b a b'"

    def test_cyclic_word_rejects_noncanonical(self, word):
        with pytest.raises(ValueError):
            CyclicWord(word("b a"))

    def test_cyclic_reduce_conjugator(self, alphabet, word):
        w = word("c1 b a c1'")
        core, z = cyclic_reduce(w)
        assert format_word(core.word) == "a b"
        assert product(alphabet, [z, core.word, ~z]) == w

    def test_conjugate_free(self, alphabet, word):
        x, y = word("a b c1"), word("b' c1 a b b")
        z = is_conjugate_free(x, y)
        assert z is not None
        assert product(alphabet, [~z, x, z]) == y

    def test_not_conjugate(self, word):
        assert is_conjugate_free(word("a b"), word("a b'")) is None

    def test_conjugacy_agrees_with_conjugator_search(self, alphabet, ab_words):
        # a shortest conjugator between words of length <= 4 has length <= 4
        words = list(ball(alphabet, 4, ab_words))
        for x in words:
            conjugates = {product(alphabet, [~z, x, z]) for z in words}
            for y in words:
                assert (is_conjugate_free(x, y) is not None) == (y in conjugates), (x, y)

    def test_proper_power(self, word):
        root, k = proper_power_root(word("c1 a b a b c1'"))
        assert k == 2
        assert format_word(root) == "c1 a b c1'"

    def test_not_a_power(self, word):
        w = word("a b a' b'")
        assert proper_power_root(w) == (w, 1)

    def test_cyclic_subword(self, word):
        assert cyclic_subword_of(word("b' a"), word("a b c1 b'"))
        assert not cyclic_subword_of(word("a a"), word("a b c1 b'"))


class TestAbelian:
    def test_abelianize(self, word):
        assert abelianize(word("a b a c1'")).coords == (2, 1, -1, 0)

    def test_lattice_membership(self):
        lattice = IntegerLattice([AbelianVector((2, 0, 0)), AbelianVector((0, 3, 1))], 3)
        assert lattice.contains(AbelianVector((4, -3, -1)))
        assert not lattice.contains(AbelianVector((1, 0, 0)))
        assert not lattice.contains(AbelianVector((0, 3, 0)))

    def test_abelianize_is_a_homomorphism(self, alphabet):
        words = list(ball(alphabet, 2))
        for x in words:
            assert abelianize(~x) == -abelianize(x)
            for y in words:
                assert abelianize(x * y) == abelianize(x) + abelianize(y)

    def test_extended_gcd(self):
        s, t, g = igcdex(12, 18)
        assert g == 6
        assert s * 12 + t * 18 == 6

    def test_gcd_combination(self):
        lattice = IntegerLattice([AbelianVector((4, 0)), AbelianVector((6, 0))], 2)
        assert lattice.contains(AbelianVector((2, 0)))
        assert lattice.rank == 1

    def test_congruent_modulo_relator_vector(self, word4):
        gens = [AbelianVector((0, 0, 1, 1, 1, 1))]
        ab = word4("a b")
        assert abelian_congruent(word4("a c1 b c1'"), ab, gens)
        assert abelian_congruent(word4("a b c1 c2 c3 c4"), ab, gens)
        assert not abelian_congruent(word4("a b c1"), ab, gens)
