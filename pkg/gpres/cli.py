from __future__ import annotations

import logging
import sys
from dataclasses import replace
from datetime import datetime
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
from rich.table import Table

from . import __version__
from .config import get_build_config, get_census_config, get_solver_config, load_config
from .construct.builder import BuildConfig, PresentationBuilder, ZPool, format_event
from .equations.census import census, eval_at
from .equations.equation import (
    Equation,
    commutator_witness,
    load_equation,
    make_v,
    make_w,
    substitute,
    v_identity_cut_holds,
    x_exponent_sum,
)
from .equations.exact import (
    brute_direct_solutions,
    direct_product_census,
    embedded_factor,
    solution_count_spectrum,
    degenerate_census,
    free_product_census,
)
from .equations.finite_group import FiniteGroup, resolve_group
from .grading.conditions import check_presentation
from .grading.models import GradedPresentation, Params
from .grading.serialization import dump_presentation, load_presentation
from .solver.config import SolverConfig, parse_alpha
from .solver.conjugacy import are_conjugate
from .solver.identity import is_identity, is_identity_in_limit
from .solver.verdict import Verdict
from .utils.logging_config import setup_logging
from .words.alphabet import Alphabet
from .words.syntax import format_word, parse_word
from .words.word import Word

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class GpresGroup(click.Group):
    """Click group whose commands return exit codes; usage and parse errors exit with 3."""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop("standalone_mode", None)
        try:
            rv = super().main(args=args, prog_name=prog_name, standalone_mode=False, **extra)
        except click.ClickException as e:
            err_console.print(f"[red]Error:[/red] {e.format_message()}", highlight=False)
            sys.exit(EXIT_USAGE)
        except click.Abort:
            err_console.print("[red]Aborted[/red]")
            sys.exit(EXIT_USAGE)
        except ValueError as e:
            err_console.print(f"[red]Error:[/red] {e}", highlight=False)
            sys.exit(EXIT_USAGE)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def _emit(line: str):
    """Machine-readable output line: no markup, no wrapping."""
    console.print(line, soft_wrap=True, markup=False, highlight=False)


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.is_trivial:
        return EXIT_OK
    if verdict.is_nontrivial:
        return EXIT_FAIL
    return EXIT_UNKNOWN


def _solver(ctx, P: Optional[GradedPresentation] = None, budget: Optional[int] = None) -> SolverConfig:
    """Configured solver settings, with the presentation's alpha and an optional budget."""
    cfg = ctx.obj["solver"]
    if P is not None:
        cfg = replace(cfg, alpha=P.params.alpha)
    if budget is not None:
        cfg = cfg.with_budget(budget)
    return cfg


def _read_words(alphabet: Alphabet, path: str) -> list:
    """One word per line; blank lines and # comments are skipped."""
    text = Path(path).read_text()
    return [
        parse_word(alphabet, line.strip())
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]


budget_option = click.option(
    "--budget", type=int, default=None, help="Node budget (overrides config and GPRES_BUDGET)"
)


@click.group(cls=GpresGroup)
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.option("--no-banner", is_flag=True, help="Do not print the timestamped banner")
@click.version_option(__version__, prog_name="gpres")
@click.pass_context
def cli(ctx, verbose, no_banner):
    """gpres - graded presentations, condition R, and equations over groups."""
    ctx.ensure_object(dict)
    config = load_config()
    if verbose:
        config["log_level"] = "DEBUG"
        config["log_levels"] = {}
    setup_logging(config.get("log_file"), config["log_level"], config.get("log_levels"))
    ctx.obj["config"] = config
    ctx.obj["solver"] = get_solver_config(config)
    if not no_banner:
        stamp = datetime.now().isoformat(timespec="seconds")
        console.print(f"[dim]gpres {__version__} {stamp}[/dim]")


def main():
    cli()


# ============================================================
# build
# ============================================================


@cli.command()
@click.option("--alpha", default="3/10", show_default=True, help="alpha as p/q")
@click.option("--h", "h", type=int, default=4, show_default=True, help="Number of c generators (even)")
@click.option("--d", "d", type=int, default=8, show_default=True)
@click.option("--n", "n", type=int, default=256, show_default=True)
@click.option("--max-rank", type=int, required=True, help="Build ranks 3..MAX_RANK")
@click.option("--z-radius", type=int, default=None, help="Z pool: all words up to this length")
@click.option("--z-list", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Z pool: one word per line")
@click.option("--mode", type=click.Choice(["exhaustive", "targeted"]), default="exhaustive",
              show_default=True)
@click.option("--periods", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Targeted mode: candidate periods, one word per line")
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False), help="Output file")
@budget_option
@click.pass_context
def build(ctx, alpha, h, d, n, max_rank, z_radius, z_list, mode, periods, out, budget):
    """Build a graded presentation rank by rank and write it to OUT.

    A build log with every accepted and excluded candidate is written to OUT.log.

    \b
    Examples:
        gpres build --h 4 --max-rank 4 --z-radius 0 -o desk.gp
        gpres build --max-rank 6 --mode targeted --periods p.txt --z-list z.txt -o t.gp
    """
    params = Params(alpha=parse_alpha(alpha), h=h, d=d, n=n)
    alphabet = params.alphabet

    if z_radius is not None and z_list is not None:
        raise click.UsageError("Use either --z-radius or --z-list, not both")
    if z_list is not None:
        zpool = ZPool.explicit(_read_words(alphabet, z_list))
    else:
        zpool = ZPool.ball(z_radius if z_radius is not None else 0)

    targeted: dict = {}
    if mode == "targeted":
        if periods is None:
            raise click.UsageError("Targeted mode needs --periods")
        for w in _read_words(alphabet, periods):
            targeted.setdefault(len(w), []).append(w)
    elif periods is not None:
        raise click.UsageError("--periods is only used in targeted mode")

    build_settings = get_build_config(ctx.obj["config"])
    cfg = BuildConfig(
        mode=mode,
        targeted={rank: tuple(words) for rank, words in targeted.items()},
        solver=replace(_solver(ctx, budget=budget), alpha=params.alpha),
        exhaustive_rank_cap=build_settings["exhaustive_rank_cap"],
    )
    builder = PresentationBuilder(params, zpool, cfg)

    log_lines = []
    excluded = 0
    P = None
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        console=err_console,
        transient=True,
    ) as progress:
        task = progress.add_task("Building", total=max(max_rank - 2, 0))
        events = builder.build(max_rank)
        while True:
            try:
                event = next(events)
            except StopIteration as stop:
                P = stop.value
                break
            log_lines.append(format_event(event))
            if event["event"] == "rank_start":
                progress.update(task, description=f"Rank {event['rank']}")
            elif event["event"] == "rank_done":
                progress.advance(task)
            elif event["event"] in ("period_excluded", "relator_excluded"):
                excluded += 1

    dump_presentation(P, out)
    Path(str(out) + ".log").write_text("\n".join(log_lines) + "\n")

    table = Table(title="Build")
    table.add_column("Rank", justify="right")
    table.add_column("Periods", justify="right")
    table.add_column("Relators", justify="right")
    for i in range(3, P.built_rank + 1):
        table.add_row(str(i), str(len(P.periods(i))), str(len(P.new_relators(i))))
    console.print(table)
    _emit(f"wrote {out} built_rank={P.built_rank} relators={len(P.relators())} excluded={excluded}")
    return EXIT_OK


# ============================================================
# check-r
# ============================================================


@cli.command("check-r")
@click.argument("file", type=click.Path(dir_okay=False))
@budget_option
@click.pass_context
def check_r(ctx, file, budget):
    """Check condition R on a presentation file.

    Exit 0 if every clause passes, 1 if any clause fails, 2 if some are undecided.
    """
    P = load_presentation(file)
    report = check_presentation(P, _solver(ctx, P, budget))
    for result in report.results:
        _emit(result.to_line())
    for note in report.notes:
        _emit(f"note {note}")

    table = Table(title="Condition R")
    table.add_column("Clause")
    table.add_column("pass", justify="right")
    table.add_column("fail", justify="right")
    table.add_column("unknown", justify="right")
    for clause, row in report.clause_counts().items():
        table.add_row(clause, str(row["pass"]), str(row["fail"]), str(row["unknown"]))
    console.print(table)
    return report.exit_code


# ============================================================
# wp / conj
# ============================================================


def _eq_constant(P: GradedPresentation, name: str):
    eq = make_v(P.params) if name == "v" else make_w(P.params)
    return substitute(eq, Word.empty(P.alphabet))


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("word", required=False)
@click.option("--rank", type=int, default=None, help="Decide in G(RANK) (default: built rank)")
@click.option("--limit", is_flag=True, help="Decide in the limit group of the presentation")
@click.option("--eq-const", type=click.Choice(["v", "w"]), default=None,
              help="Use v(1) or w(1) instead of WORD")
@budget_option
@click.pass_context
def wp(ctx, file, word, rank, limit, eq_const, budget):
    """Word problem: is WORD trivial?

    Exit 0 for trivial, 1 for nontrivial, 2 for unknown.

    \b
    Examples:
        gpres wp free.gp "a b a' b'"
        gpres wp desk.gp --eq-const v
    """
    P = load_presentation(file)
    if eq_const:
        w = _eq_constant(P, eq_const)
    elif word is not None:
        w = parse_word(P.alphabet, word)
    else:
        raise click.UsageError("Give WORD or --eq-const")
    cfg = _solver(ctx, P, budget)
    if limit:
        verdict = is_identity_in_limit(P, w, cfg)
    else:
        verdict = is_identity(P, P.built_rank if rank is None else rank, w, cfg)
    _emit(f"length={len(w)} {verdict.to_record()}")
    return _verdict_exit(verdict)


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("w1")
@click.argument("w2")
@click.option("--rank", type=int, default=None, help="Decide in G(RANK) (default: built rank)")
@budget_option
@click.pass_context
def conj(ctx, file, w1, w2, rank, budget):
    """Conjugacy: is there Z with Z^-1 W1 Z = W2?"""
    P = load_presentation(file)
    x = parse_word(P.alphabet, w1)
    y = parse_word(P.alphabet, w2)
    rank = P.built_rank if rank is None else rank
    verdict, z = are_conjugate(P, rank, x, y, _solver(ctx, P, budget))
    line = verdict.to_record()
    if z is not None:
        line += f' conjugator="{format_word(z)}"'
    _emit(line)
    return _verdict_exit(verdict)


# ============================================================
# eq
# ============================================================


def _resolve_equation(P: GradedPresentation, which: str, eq_file: Optional[str]) -> Equation:
    if which == "star":
        return make_v(P.params)
    if which == "main":
        return make_w(P.params)
    if eq_file is None:
        raise click.UsageError("--eq custom needs an equation file")
    return load_equation(P.alphabet, Path(eq_file).read_text())


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("eq_file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--eq", "which", type=click.Choice(["star", "main", "custom"]), required=True,
              help="star: v(x); main: [c1 v([a,x]) c1', v([b,x])]; custom: EQ_FILE")
@click.option("--at", "at", default=None, help="Evaluate at this word")
@click.option("--census", "radius", type=int, default=None, help="Classify the ball of this radius")
@click.option("--dedupe", is_flag=True, help="Skip words certified equal to earlier ones")
@budget_option
@click.pass_context
def eq(ctx, file, eq_file, which, at, radius, dedupe, budget):
    """Evaluate an equation in the limit group of a presentation.

    \b
    Examples:
        gpres eq desk.gp --eq star --at 1
        gpres eq desk.gp --eq main --census 1
        gpres eq desk.gp --eq custom comm.eq --at a
    """
    P = load_presentation(file)
    equation = _resolve_equation(P, which, eq_file)
    cfg = _solver(ctx, P, budget)
    if (at is None) == (radius is None):
        raise click.UsageError("Give exactly one of --at and --census")

    if at is not None:
        verdict = eval_at(P, equation, parse_word(P.alphabet, at), cfg)
        _emit(f"{at} {verdict.to_record()}")
        return _verdict_exit(verdict)

    dedupe = dedupe or get_census_config(ctx.obj["config"])["dedupe"]
    report = census(P, equation, radius, cfg, dedupe=dedupe)
    for line in report.to_lines():
        _emit(line)
    _counts_table(f"Census radius {radius}", report.counts())
    return report.exit_code


def _counts_table(title: str, counts: dict):
    table = Table(title=title)
    table.add_column("Class")
    table.add_column("Count", justify="right")
    for name, value in counts.items():
        table.add_row(name, str(value))
    console.print(table)


# ============================================================
# demo-exact
# ============================================================


def _parse_assignment(G: FiniteGroup, alphabet: Alphabet, items) -> dict[int, int]:
    assignment = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected NAME=ELEMENT, got {item!r}", param_hint="--assign")
        assignment[alphabet.index(name.strip())] = G.element(value)
    return assignment


@cli.command("demo-exact")
@click.option("--case", type=click.Choice(["free", "direct", "degenerate"]), required=True)
@click.option("--A", "a_spec", default=None, help="Abelian factor: Z<m>, S<k> or a table file")
@click.option("--B", "b_spec", default=None, help="Second free factor")
@click.option("--a", "a_elem", default=None, help="Element of A for x a = a x (default: first non-identity)")
@click.option("--radius", type=int, default=2, show_default=True, help="Syllables (free) or length (degenerate)")
@click.option("--H", "h_spec", default=None, help="Finite H-side group")
@click.option("--K", "k_spec", default=None, help="Direct factor K")
@click.option("--G", "g_spec", default=None, help="Group for the degenerate equations")
@click.option("--eq", "eq_text", default=None, help="Equation file or text over a, b, c1.. and x")
@click.option("--assign", multiple=True, help="Constant values, e.g. \"a=(1 2)\"")
@click.option("--h", "h", type=int, default=2, show_default=True, help="Alphabet size for --eq")
@click.pass_context
def demo_exact(
    ctx, case, a_spec, b_spec, a_elem, radius, h_spec, k_spec, g_spec, eq_text, assign, h
):
    """Exact solution counts in free and direct products with finite factors.

    Exit 0 iff the counts match a brute-force recount.

    \b
    Examples:
        gpres demo-exact --case free --A Z3 --B Z2 --radius 2
        gpres demo-exact --case direct --H S3 --K Z2 --eq "x a x' a'" --assign "a=(1 2)"
        gpres demo-exact --case degenerate --G Z3 --radius 4
    """
    if case == "free":
        if not a_spec or not b_spec:
            raise click.UsageError("The free case needs --A and --B")
        A, B = resolve_group(a_spec), resolve_group(b_spec)
        if not A.is_abelian():
            raise click.UsageError("--A must be abelian")
        a = A.element(a_elem) if a_elem else next(g for g in A.elements() if g != A.identity)
        report = free_product_census(A, B, a, radius)
        for line in report.to_lines():
            _emit(line)
        expected = embedded_factor(A, B, radius)
        _counts_table(f"x a = a x in A * B, radius {radius}", report.counts())
        _emit(f"solutions={len(report.solutions)} expected={len(expected)}")
        return EXIT_OK if sorted(report.solutions) == sorted(expected) else EXIT_FAIL

    if case == "direct":
        if not h_spec or not k_spec or not eq_text:
            raise click.UsageError("The direct case needs --H, --K and --eq")
        H, K = resolve_group(h_spec), resolve_group(k_spec)
        alphabet = Alphabet(h)
        source = Path(eq_text).read_text() if Path(eq_text).is_file() else eq_text
        equation = load_equation(alphabet, source)
        assignment = _parse_assignment(H, alphabet, assign)
        report = direct_product_census(H, assignment, K, equation)
        for line in report.to_lines():
            _emit(line)
        expected = brute_direct_solutions(H, assignment, K, equation)
        _counts_table("Equation over H x K", report.counts())
        _emit(
            f"x_exponent_sum={x_exponent_sum(equation)} solutions={len(report.solutions)} "
            f"of={report.size} expected={expected}"
        )
        return EXIT_OK if len(report.solutions) == expected else EXIT_FAIL

    if not g_spec:
        raise click.UsageError("The degenerate case needs --G")
    G = resolve_group(g_spec)
    counts = degenerate_census(G)
    for name, count in counts.items():
        _emit(f"equation={name} solutions={count}")
    spectrum = solution_count_spectrum(G, radius)
    _emit("spectrum=" + ",".join(str(s) for s in spectrum))
    ok = counts["1=1"] == G.order and counts["x=1"] == 1 and counts.get("g=1", 0) == 0
    return EXIT_OK if ok else EXIT_FAIL


# ============================================================
# witness
# ============================================================


@cli.command()
@click.argument("word")
@click.option("--h", "h", type=int, default=4, show_default=True)
@click.option("--d", "d", type=int, default=8, show_default=True)
@click.option("--n", "n", type=int, default=256, show_default=True)
@click.option("--alpha", default="3/10", show_default=True)
def witness(word, h, d, n, alpha):
    """Period, conjugator and pieces that make v(WORD) a conjugate of a relator.

    WORD must lie in the commutator subgroup. Exit 1 if the conjugator is longer
    than the bound d|A|/3.
    """
    params = Params(alpha=parse_alpha(alpha), h=h, d=d, n=n)
    g = parse_word(params.alphabet, word)
    found = commutator_witness(g, d)
    _emit(f'target="{format_word(found.target)}"')
    _emit(f'period="{format_word(found.period)}" rank={found.rank}')
    _emit(f'conjugator="{format_word(found.conjugator)}" bound={found.conjugator_bound} '
          f"within_bound={str(found.within_bound).lower()}")
    for j, t in enumerate(found.pieces(), start=1):
        _emit(f'piece j={j} t="{format_word(t)}"')
    _emit(f"v_identity_cut={str(v_identity_cut_holds(params)).lower()}")
    return EXIT_OK if found.within_bound else EXIT_FAIL
