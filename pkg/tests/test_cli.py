"""Tests for the gpres command line: output lines and exit codes."""
from __future__ import annotations

import pytest

from gpres.cli import cli
from gpres.grading.models import GradedPresentation, default_params
from gpres.grading.serialization import dump_presentation, load_presentation


@pytest.fixture
def free_file(tmp_path):
    path = tmp_path / "free.gp"
    dump_presentation(GradedPresentation.free(default_params(2)), path)
    return path


def run(runner, *args):
    return runner.invoke(cli, ["--no-banner", *[str(a) for a in args]])


class TestWordProblem:
    def test_trivial(self, runner, cyclic3_file):
        result = run(runner, "wp", cyclic3_file, "b a a a b'")
        assert result.exit_code == 0
        assert "length=5 verdict=trivial certificate=" in result.output

    def test_nontrivial(self, runner, cyclic3_file):
        result = run(runner, "wp", cyclic3_file, "a a")
        assert result.exit_code == 1
        assert "verdict=nontrivial obstruction=abelian" in result.output

    def test_unknown_in_unbuilt_ranks(self, runner, free_file):
        result = run(runner, "wp", free_file, "--limit", "c1 c2 c1' c2' " * 300)
        assert result.exit_code == 2
        assert "verdict=unknown" in result.output

    def test_v_at_identity(self, runner, desk_file):
        result = run(runner, "wp", desk_file, "--eq-const", "v", "--limit")
        assert result.exit_code == 1
        assert "length=2052 verdict=nontrivial obstruction=length-cut-free datum=2052" in result.output

    def test_needs_word(self, runner, cyclic3_file):
        result = run(runner, "wp", cyclic3_file)
        assert result.exit_code == 3
        assert "Error:" in result.output

    def test_bad_word(self, runner, cyclic3_file):
        assert run(runner, "wp", cyclic3_file, "a d").exit_code == 3

    def test_missing_file(self, runner, tmp_path):
        assert run(runner, "wp", tmp_path / "absent.gp", "a").exit_code == 3

    def test_rank_above_built(self, runner, cyclic3_file):
        assert run(runner, "wp", cyclic3_file, "a", "--rank", "9").exit_code == 3


class TestConjugacy:
    def test_conjugate(self, runner, cyclic3_file):
        result = run(runner, "conj", cyclic3_file, "a", "a' a'")
        assert result.exit_code == 0
        assert 'conjugator="1"' in result.output

    def test_not_conjugate(self, runner, cyclic3_file):
        result = run(runner, "conj", cyclic3_file, "a", "b")
        assert result.exit_code == 1
        assert "obstruction=abelian" in result.output


class TestCheckR:
    def test_desk_passes(self, runner, desk_file):
        result = run(runner, "check-r", desk_file, "--budget", 2000)
        assert result.exit_code == 0
        assert "clause=R6 result=pass" in result.output

    def test_power_relator_fails(self, runner, cyclic3_file):
        result = run(runner, "check-r", cyclic3_file)
        assert result.exit_code == 1
        assert "clause=R5 result=fail" in result.output

    def test_unstructured_relator_is_unknown(self, runner, tmp_path, free_abelian):
        path = tmp_path / "comm.gp"
        dump_presentation(free_abelian, path)
        assert run(runner, "check-r", path).exit_code == 2


class TestEq:
    def test_star_at_identity(self, runner, desk_file):
        result = run(runner, "eq", desk_file, "--eq", "star", "--at", "1")
        assert result.exit_code == 1
        assert "1 verdict=nontrivial obstruction=length-cut-free" in result.output

    def test_custom_census(self, runner, free_file, tmp_path):
        eq_file = tmp_path / "comm.eq"
        eq_file.write_text("# commutator with a\nx a x' a'\n")
        result = run(runner, "eq", free_file, eq_file, "--eq", "custom", "--census", 1)
        assert result.exit_code == 0
        assert "a' verdict=trivial" in result.output
        assert "b verdict=nontrivial obstruction=free-quotient" in result.output

    def test_custom_needs_file(self, runner, free_file):
        assert run(runner, "eq", free_file, "--eq", "custom", "--at", "a").exit_code == 3

    def test_exactly_one_mode(self, runner, free_file):
        assert run(runner, "eq", free_file, "--eq", "star").exit_code == 3
        assert run(runner, "eq", free_file, "--eq", "star", "--at", "a", "--census", 1).exit_code == 3


class TestDemoExact:
    def test_free(self, runner):
        result = run(runner, "demo-exact", "--case", "free", "--A", "Z3", "--B", "Z2")
        assert result.exit_code == 0
        assert "solutions=3 expected=3" in result.output

    def test_free_needs_abelian_left_factor(self, runner):
        result = run(runner, "demo-exact", "--case", "free", "--A", "S3", "--B", "Z2")
        assert result.exit_code == 3

    def test_free_needs_both_factors(self, runner):
        assert run(runner, "demo-exact", "--case", "free", "--A", "Z3").exit_code == 3

    def test_direct(self, runner):
        result = run(
            runner, "demo-exact", "--case", "direct", "--H", "S3", "--K", "Z2",
            "--eq", "x a x' a'", "--assign", "a=(1 2)",
        )
        assert result.exit_code == 0
        assert "x_exponent_sum=0 solutions=4 of=12 expected=4" in result.output

    def test_direct_bad_assignment(self, runner):
        result = run(
            runner, "demo-exact", "--case", "direct", "--H", "S3", "--K", "Z2",
            "--eq", "x a x' a'", "--assign", "a",
        )
        assert result.exit_code == 3

    def test_degenerate(self, runner):
        result = run(runner, "demo-exact", "--case", "degenerate", "--G", "Z3", "--radius", 3)
        assert result.exit_code == 0
        assert "equation=1=1 solutions=3" in result.output
        assert "equation=g=1 solutions=0" in result.output
        assert "spectrum=0,1,3" in result.output


class TestWitness:
    def test_commutator(self, runner):
        result = run(runner, "witness", "a b a' b'")
        assert result.exit_code == 0
        assert 'period="a b a\' b a b\'" rank=6' in result.output
        assert 'conjugator="a b a\'" bound=16 within_bound=true' in result.output
        assert result.output.count("piece j=") == 4
        assert "v_identity_cut=true" in result.output

    def test_outside_commutator_subgroup(self, runner):
        assert run(runner, "witness", "a").exit_code == 3


class TestBuild:
    def test_small_build(self, runner, tmp_path):
        out = tmp_path / "small.gp"
        result = run(runner, "build", "--h", 2, "--d", 3, "--n", 5, "--max-rank", 3, "-o", out)
        assert result.exit_code == 0
        assert f"wrote {out} built_rank=3 relators=0 excluded=0" in result.output
        assert load_presentation(out).built_rank == 3
        log = (tmp_path / "small.gp.log").read_text().splitlines()
        assert log[0].startswith("start ")
        assert log[-1] == "done built_rank=3 relators=0"

    def test_z_options_exclusive(self, runner, tmp_path):
        z_file = tmp_path / "z.txt"
        z_file.write_text("a\n")
        result = run(
            runner, "build", "--h", 2, "--max-rank", 3, "--z-radius", 0, "--z-list", z_file,
            "-o", tmp_path / "x.gp",
        )
        assert result.exit_code == 3

    def test_targeted_needs_periods(self, runner, tmp_path):
        result = run(
            runner, "build", "--h", 2, "--max-rank", 3, "--mode", "targeted", "-o", tmp_path / "x.gp"
        )
        assert result.exit_code == 3

    def test_rejects_odd_h(self, runner, tmp_path):
        result = run(runner, "build", "--h", 3, "--max-rank", 3, "-o", tmp_path / "x.gp")
        assert result.exit_code == 3
