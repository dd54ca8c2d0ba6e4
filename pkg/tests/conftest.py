"""Shared test fixtures for gpres tests."""
from __future__ import annotations

from fractions import Fraction

import pytest
from click.testing import CliRunner

from gpres.construct.builder import BuildConfig, ZPool, build
from gpres.equations.equation import commutator_witness
from gpres.grading.models import Params, toy_presentation
from gpres.grading.serialization import dump_presentation
from gpres.solver.config import SolverConfig
from gpres.words.alphabet import Alphabet
from gpres.words.syntax import parse_word


@pytest.fixture
def alphabet():
    return Alphabet(2)


@pytest.fixture
def alphabet4():
    return Alphabet(4)


@pytest.fixture
def word(alphabet):
    """Parse words over the h=2 alphabet."""
    return lambda text: parse_word(alphabet, text)


@pytest.fixture
def word4(alphabet4):
    """Parse words over the h=4 alphabet."""
    return lambda text: parse_word(alphabet4, text)


@pytest.fixture
def small_cfg():
    """Solver settings with a budget small enough for fast tests."""
    return SolverConfig(node_budget=500)


@pytest.fixture(scope="session")
def desk_params():
    return Params(alpha=Fraction(3, 10), h=4, d=8, n=256)


@pytest.fixture(scope="session")
def desk(desk_params):
    """Exhaustive build to rank 4 with only the empty conjugating base."""
    return build(desk_params, 4, ZPool.ball(0), BuildConfig())


@pytest.fixture(scope="session")
def commutator_presentation(desk_params):
    """Targeted build to rank 6 holding the relator that v([a, b]) is conjugate to."""
    alphabet = desk_params.alphabet
    found = commutator_witness(parse_word(alphabet, "a b a' b'"), desk_params.d)
    cfg = BuildConfig(mode="targeted", targeted={6: (found.period,)})
    return build(desk_params, 6, ZPool.explicit([found.conjugator]), cfg)


@pytest.fixture
def cyclic3(alphabet):
    """<a | a^3> with b, c1, c2 free."""
    return toy_presentation([parse_word(alphabet, "a a a")])


@pytest.fixture
def free_abelian(alphabet):
    """<a, b | [a, b]> with c1, c2 free."""
    return toy_presentation([parse_word(alphabet, "a b a' b'")])


@pytest.fixture
def involutions(alphabet):
    """<a, b | a^2, b^2> with c1, c2 free."""
    return toy_presentation([parse_word(alphabet, "a a"), parse_word(alphabet, "b b")])


@pytest.fixture
def ab_words():
    """Reduced words in a and b only."""
    return lambda w: all(abs(c) <= 2 for c in w.codes)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def desk_file(tmp_path, desk):
    path = tmp_path / "desk.gp"
    dump_presentation(desk, path)
    return path


@pytest.fixture
def cyclic3_file(tmp_path, cyclic3):
    path = tmp_path / "cyclic3.gp"
    dump_presentation(cyclic3, path)
    return path
