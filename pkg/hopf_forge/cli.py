"""
The ``hopf-forge`` command line.

    hopf-forge check corpus/prop4_1.plan [--json] [--seed N] [--bound L,P]
    hopf-forge properties corpus/prop4_2.plan [--json] [--seed N] [--cases N]
    hopf-forge reduce --plan corpus/prop4_1.plan H "k s^-3 k^-1 b k s^3 k^-1 c^3 b^-1"
    hopf-forge equal  --plan corpus/thm1_1.plan H1 "s^-1 b s" "b c^-3"
    hopf-forge order  --plan corpus/prop4_2.plan H "s^-1 a s a^-2"
    hopf-forge member --plan corpus/prop4_2.plan H "a^2" "s^-1 a^2 s"
    hopf-forge tower  --plan corpus/thm1_1.plan G

Exit codes: 0 all entries pass, 1 some entry fails (or an ad-hoc query
errors), 2 the plan does not parse or resolve.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

import click

from .config import load_settings, parse_bound
from .dsl import parse_word
from .errors import ConfigError, HopfForgeError
from .plan import EXIT_FAILED, EXIT_INVALID, Environment, RunOptions, check_file, load, resolve, run_properties
from .report import Status
from .tower import GroupNode, tower_to_json
from .words import Word, format_word

logger = logging.getLogger(__name__)

MARKERS = {
    Status.PASS: "[OK]",
    Status.FAIL: "[FAIL]",
    Status.INCONCLUSIVE: "[??]",
    Status.ASSUMED: "[ASSUMED]",
}


def _configure_logging(verbose: int, default_level: str) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, default_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


class _Bound(click.ParamType):
    name = "L,P"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_bound(value)
        except ConfigError as exc:
            self.fail(str(exc), param, ctx)


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output")
@click.pass_context
def main(ctx: click.Context, verbose: int):
    """Verify image-extension constructions and non-Hopf witnesses."""
    try:
        settings = load_settings()
    except ConfigError as exc:
        click.echo(f"[ERROR] {exc}", err=True)
        ctx.exit(EXIT_INVALID)
    _configure_logging(verbose, settings.log_level)
    ctx.obj = settings


@main.command()
@click.argument("plan", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Emit the report as one JSON document")
@click.option("--seed", type=int, default=None, help="Seed for the randomized property suites")
@click.option("--bound", type=_Bound(), default=None, help="Elementary-search bound, e.g. 4,2")
@click.option("--cases", type=int, default=None, help="Cases per property entry")
@click.pass_obj
def check(settings, plan: Path, as_json: bool, seed: Optional[int], bound: Optional[Tuple[int, int]], cases: Optional[int]):
    """Run every declaration and check of PLAN."""
    options = RunOptions.from_settings(
        settings, plan_name=plan.stem, seed=seed, bound=bound, property_cases=cases
    )
    report, code, message = check_file(plan, options)
    if report is None:
        click.echo(f"[ERROR] {plan}: {message}", err=True)
        sys.exit(code)

    _emit(report, code, as_json, f"hopf-forge check: {plan}")


@main.command()
@click.argument("plan", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Emit the report as one JSON document")
@click.option("--seed", type=int, default=None, help="Seed for the randomized property suites")
@click.option("--cases", type=int, default=None, help="Cases per property suite")
@click.pass_obj
def properties(settings, plan: Path, as_json: bool, seed: Optional[int], cases: Optional[int]):
    """Run only the seeded property suites of PLAN."""
    env = _environment(plan, settings)
    options = RunOptions.from_settings(settings, plan_name=plan.stem, seed=seed)
    options.property_cases = cases if cases is not None else settings.property_cases
    report, code = run_properties(env, options)
    _emit(report, code, as_json, f"hopf-forge properties: {plan}")


def _emit(report, code: int, as_json: bool, title: str) -> None:
    if as_json:
        click.echo(report.dumps())
        sys.exit(code)

    click.echo("=" * 70)
    click.echo(title)
    click.echo("=" * 70)
    for entry in report.entries:
        click.echo(f"{MARKERS[entry.status]:<10}{entry.id}  ({entry.elapsed_ms} ms)")
        if entry.status is not Status.PASS:
            click.echo(f"{'':<10}{entry.evidence}")
    click.echo()
    click.echo(report.render_table())
    click.echo()
    click.echo(f"Verdict: {report.verdict}")
    sys.exit(code)


def _environment(plan: Path, settings) -> Environment:
    try:
        return resolve(load(plan), settings.max_cosets)
    except (HopfForgeError, OSError) as exc:
        click.echo(f"[ERROR] {plan}: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _query(plan: Path, settings, group: str, texts) -> Tuple[GroupNode, Tuple[Word, ...]]:
    env = _environment(plan, settings)
    try:
        lookup = env.generators_of(group)
        words = tuple(parse_word(text, lookup) for text in texts)
        return env.group(group), words
    except HopfForgeError as exc:
        click.echo(f"[ERROR] {exc}", err=True)
        sys.exit(EXIT_FAILED)


def _answer(compute) -> None:
    try:
        click.echo(compute())
    except HopfForgeError as exc:
        click.echo(f"[ERROR] {exc}", err=True)
        sys.exit(EXIT_FAILED)


plan_option = click.option(
    "--plan", "plan", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Plan file declaring GROUP"
)


@main.command()
@plan_option
@click.argument("group")
@click.argument("word")
@click.pass_obj
def reduce(settings, plan: Path, group: str, word: str):
    """Print the reduced form of WORD in GROUP (1 is the identity)."""
    node, (w,) = _query(plan, settings, group, [word])
    _answer(lambda: format_word(node.reduce(w)))


@main.command()
@plan_option
@click.argument("group")
@click.argument("first")
@click.argument("second")
@click.pass_obj
def equal(settings, plan: Path, group: str, first: str, second: str):
    """Print true when FIRST and SECOND are equal in GROUP."""
    node, (u, v) = _query(plan, settings, group, [first, second])
    _answer(lambda: "true" if node.are_equal(u, v) else "false")


@main.command()
@plan_option
@click.argument("group")
@click.argument("word")
@click.pass_obj
def order(settings, plan: Path, group: str, word: str):
    """Print the order of WORD in GROUP: Finite(n) or Infinite."""
    node, (w,) = _query(plan, settings, group, [word])
    _answer(lambda: str(node.order(w)))


@main.command()
@plan_option
@click.argument("group")
@click.argument("generator")
@click.argument("word")
@click.pass_obj
def member(settings, plan: Path, group: str, generator: str, word: str):
    """Print n with WORD = GENERATOR^n in GROUP, or none."""
    node, (g, w) = _query(plan, settings, group, [generator, word])

    def compute():
        n = node.cyclic_member(g, w)
        return "none" if n is None else str(n)

    _answer(compute)


@main.command()
@plan_option
@click.argument("group")
@click.pass_obj
def tower(settings, plan: Path, group: str):
    """Print GROUP and every level below it as JSON."""
    node, _ = _query(plan, settings, group, [])
    _answer(lambda: json.dumps(tower_to_json(node), indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()
