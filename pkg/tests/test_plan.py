"""Tests for resolving and running plans."""

import numpy as np
import pytest

from hopf_forge.dsl import parse
from hopf_forge.errors import DuplicateName, ResolveError, UndefinedName
from hopf_forge.plan import (
    EXIT_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    RunOptions,
    check_file,
    resolve,
    run,
)
from hopf_forge.report import Status
from hopf_forge.tower import AutomorphismHnnExtension, CyclicHnnExtension, FiniteGroup

FAST = dict(bound=(1, 1), property_cases=10)

SMALL_PLAN = """
group D = presentation { gens r f; rels r^4, f^2, f r f r; }
group A = free(a)
group P = free_product(D, A)
group T = hnn(P, t, cyclic { a -> r a r^-1 })

check "r has order 4" { order(D, r) = 4 }
check "conjugation" { equal(T, t^-1 a t, r a r^-1) }
check "a is not a power of r a" { member(P, r a, a) = none }
"""


def resolve_text(text, max_cosets=None):
    return resolve(parse(text), max_cosets)


def test_resolve_builds_every_node():
    """Groups of every kind are elaborated in declaration order."""
    env = resolve_text(SMALL_PLAN)
    assert isinstance(env.groups["D"], FiniteGroup)
    assert env.groups["D"].table.order == 8
    assert isinstance(env.groups["T"], CyclicHnnExtension)
    assert [g.name for g in env.groups["T"].generators] == ["r", "f", "a", "t"]


def test_corpus_environment(prop41):
    """The prop4_1 plan yields the tower, a verified psi, the certificate and the recipe."""
    assert isinstance(prop41.groups["H1"], AutomorphismHnnExtension)
    assert prop41.endos["psi"].verified
    assert prop41.certs["mod3"].target.name == "D3"
    assert set(prop41.recipes) == {"G"}


def test_recipe_group_is_built_on_demand(prop42):
    """A recipe's G is built the first time it is asked for, and x and t resolve."""
    lookup = prop42.generators_of("G")
    assert lookup("x").scope == "G.X"
    assert lookup("t").scope == "G"
    G = prop42.group("G")
    assert prop42.group("G") is G
    assert G.has_generator_named("x")
    with pytest.raises(UndefinedName):
        prop42.group("nowhere")


def test_unknown_generator_has_span():
    """A word naming a generator the group lacks points at its declaration."""
    text = "group A = free(a)\n\ngroup T = hnn(A, t, cyclic { a -> b })\n"
    with pytest.raises(UndefinedName) as info:
        resolve_text(text)
    assert info.value.name == "b"
    assert info.value.span[0] == 3


def test_stable_letter_clash():
    """The stable letter must be a new name."""
    with pytest.raises(DuplicateName):
        resolve_text("group A = free(a)\ngroup T = hnn(A, a, cyclic { a -> a })\n")


def test_construction_failures_are_wrapped():
    """Finite associated generators and non-homomorphisms become ResolveErrors with spans."""
    finite_assoc = (
        "group D = presentation { gens r; rels r^5; }\n"
        "group T = hnn(D, t, cyclic { r -> r^2 })\n"
    )
    with pytest.raises(ResolveError) as info:
        resolve_text(finite_assoc)
    assert info.value.span[0] == 2

    not_a_hom = (
        "group Z = free_abelian(a b)\n"
        "group F = free(c d)\n"
        "group P = free_product(Z, F)\n"
        "endo e : P { a -> c; b -> d; c -> c; d -> d; }\n"
    )
    with pytest.raises(ResolveError) as info:
        resolve_text(not_a_hom)
    assert "not a homomorphism" in str(info.value)


def test_auto_needs_inverse_over_infinite_base():
    """Only finite bases get their automorphism inverse computed."""
    text = "group Z = free_abelian(a b)\ngroup S = hnn(Z, t, auto { a -> b; b -> a; })\n"
    with pytest.raises(ResolveError):
        resolve_text(text)
    with_inverse = text.replace("})", "} inverse { a -> b; b -> a; })")
    env = resolve_text(with_inverse)
    assert isinstance(env.groups["S"], AutomorphismHnnExtension)


def test_certificate_target_must_be_finite():
    """A quotient certificate maps onto a finite presentation."""
    text = (
        "group A = free(a)\n"
        "group B = free(b)\n"
        "cert q : A { target B; map { a -> b; } }\n"
    )
    with pytest.raises(ResolveError):
        resolve_text(text)


def test_coset_limit_applies():
    """An infinite presentation overflows a small coset limit."""
    with pytest.raises(ResolveError) as info:
        resolve_text("group M = presentation { gens a b; rels a^2, b^3; }\n", max_cosets=200)
    assert "200" in str(info.value)


def test_run_small_plan():
    """Checks and property entries all pass on a small tower."""
    report, code = run(parse(SMALL_PLAN), RunOptions(plan_name="small", **FAST))
    assert code == EXIT_OK
    ids = [e.id for e in report.entries]
    assert ids[:4] == ["group.D", "group.A", "group.P", "group.T"]
    assert {"check.5", "check.6", "check.7"} <= set(ids)
    assert "property.table.D" in ids
    assert any(i.startswith("property.member.P") for i in ids)
    assert report.verdict == "all checks passed"


def test_failing_check_gives_exit_one():
    """A false assertion is a failing entry, not an error."""
    text = SMALL_PLAN + 'check "wrong" { order(D, r) = 3 }\n'
    report, code = run(parse(text), RunOptions(properties=False, **FAST))
    assert code == EXIT_FAILED
    assert report.entries[-1].status is Status.FAIL
    assert report.entries[-1].evidence == "order = Finite(4)"


def test_unresolvable_plan_gives_exit_two():
    """run reports resolution failures with exit code 2."""
    report, code = run(parse("group A = free(a)\ngroup T = hnn(A, t, cyclic { a -> b })\n"))
    assert code == EXIT_INVALID
    assert report.entries[0].id == "resolve"


def test_check_file_errors(tmp_path):
    """Missing files and syntax errors both give exit code 2 and a message."""
    report, code, message = check_file(tmp_path / "missing.plan")
    assert (report, code) == (None, EXIT_INVALID)
    assert message

    bad = tmp_path / "bad.plan"
    bad.write_text("group A = \n", encoding="utf-8")
    report, code, message = check_file(bad)
    assert code == EXIT_INVALID
    assert "line" in message


def mutate(text, rng):
    """Delete, duplicate or replace one character."""
    i = int(rng.integers(0, len(text)))
    choice = int(rng.integers(0, 3))
    if choice == 0:
        return text[:i] + text[i + 1 :]
    if choice == 1:
        return text[:i] + text[i] + text[i:]
    replacement = "ab19^-,;{}()[]# \nxt"[int(rng.integers(0, 19))]
    return text[:i] + replacement + text[i + 1 :]


@pytest.mark.slow
def test_corrupted_plans_never_crash(corpus, tmp_path):
    """200 seeded corruptions of the corpus end in exit 0, 1 or 2, never an exception."""
    rng = np.random.default_rng(2024)
    sources = [(corpus / name).read_text(encoding="utf-8") for name in ("prop4_2.plan", "thm1_1.plan", "prop4_1.plan")]
    options = RunOptions(bound=(1, 1), property_cases=5, max_cosets=2000)
    codes = []
    for k in range(200):
        text = sources[k % len(sources)]
        for _ in range(int(rng.integers(1, 4))):
            text = mutate(text, rng)
        path = tmp_path / f"mutant_{k}.plan"
        path.write_text(text, encoding="utf-8")
        report, code, message = check_file(path, options)
        assert code in (EXIT_OK, EXIT_FAILED, EXIT_INVALID)
        assert (report is None) == (code == EXIT_INVALID)
        codes.append(code)
    assert EXIT_INVALID in codes


def test_recipe_named_like_an_entry_prefix(corpus, tmp_path):
    """A recipe called group next to a group called extension is rejected, not crashed on."""
    text = (corpus / "prop4_1.plan").read_text(encoding="utf-8")
    text = text.replace("recipe G {", "recipe group {")
    text += "\ngroup extension = presentation { gens q; rels q^2; }\n"
    path = tmp_path / "clash.plan"
    path.write_text(text, encoding="utf-8")
    report, code, message = check_file(path, RunOptions(**FAST))
    assert (report, code) == (None, EXIT_INVALID)
    assert "reserved" in message
