"""Tests for the plan language: parsing, name checks and printing."""

import pytest

from hopf_forge.dsl import (
    AutoBody,
    CertDecl,
    CheckDecl,
    CommutatorTerm,
    CyclicBody,
    GroupDecl,
    NameTerm,
    ParenTerm,
    RecipeDecl,
    build_word,
    format_expr,
    parse,
    parse_word,
    parse_word_expr,
    print_plan,
)
from hopf_forge.errors import DuplicateName, PlanSyntaxError, UndefinedName, WordSyntaxError
from hopf_forge.words import EMPTY, GeneratorId, Word, commutator

CORPUS_FILES = ["prop4_1.plan", "prop4_2.plan", "thm1_1.plan"]

a, b, s = (GeneratorId(n, "T") for n in "abs")
LOOKUP = {"a": a, "b": b, "s": s}.__getitem__


@pytest.mark.parametrize("filename", CORPUS_FILES)
def test_corpus_round_trip(corpus, filename):
    """Printing a parsed corpus plan and parsing it again gives the same tree."""
    plan = parse((corpus / filename).read_text(encoding="utf-8"))
    assert parse(print_plan(plan)) == plan


def test_prop42_declarations(corpus):
    """Both recipes, the certificate domain and the note are read."""
    plan = parse((corpus / "prop4_2.plan").read_text(encoding="utf-8"))
    named = plan.named()
    assert isinstance(named["Z2"], GroupDecl)
    assert isinstance(named["H"].body.assoc, CyclicBody)
    cert = named["mod6"]
    assert isinstance(cert, CertDecl)
    assert cert.domain == "H"
    recipes = [d for d in plan.declarations if isinstance(d, RecipeDecl)]
    assert [r.name for r in recipes] == ["G", "G_b2"]
    assert "Hopfian" in recipes[0].note
    assert recipes[1].note is None
    assert all(isinstance(d, CheckDecl) for d in plan.declarations[-8:])


def test_spans_point_at_declarations():
    """Each declaration remembers the line it starts on."""
    plan = parse("group A = free(a)\n\ngroup B = free_abelian(b c)\n")
    assert [span[0] for span in plan.source_spans] == [1, 3]


def test_auto_with_inverse_block():
    """An explicit inverse block is kept on the automorphism body."""
    plan = parse(
        "group Z = free_abelian(a b)\n"
        "group S = hnn(Z, t, auto { a -> b; b -> a; } inverse { a -> b; b -> a; })\n"
    )
    body = plan.named()["S"].body.assoc
    assert isinstance(body, AutoBody)
    assert [name for name, _ in body.inverse] == ["a", "b"]


def test_word_syntax_tree():
    """Exponents attach to letters, parentheses and commutators."""
    expr = parse_word_expr("[s a s^-1, b]^2 (a b)^-1 a^3")
    kinds = [type(t) for t in expr.terms]
    assert kinds == [CommutatorTerm, ParenTerm, NameTerm]
    assert expr.terms[0].exponent == 2
    assert expr.terms[2] == NameTerm("a", 3)
    assert format_expr(expr) == "[s a s^-1, b]^2 (a b)^-1 a^3"


def test_build_word_expands_commutators():
    """[p, q] is p q p^-1 q^-1."""
    word = build_word(parse_word_expr("[s a s^-1, b]"), LOOKUP)
    sas = Word.of(s) * Word.of(a) * Word.of(s, -1)
    assert word == commutator(sas, Word.of(b))


def test_identity_literals():
    """1, ε and the empty string all denote the identity."""
    for text in ("1", "ε", "", "   "):
        assert parse_word(text, LOOKUP) == EMPTY


def test_word_syntax_error():
    """A dangling caret is a word syntax error with a position."""
    with pytest.raises(WordSyntaxError) as info:
        parse_word("a ^", LOOKUP)
    assert info.value.position >= 0


def test_plan_syntax_error_location():
    """Syntax errors carry the line and column of the offending token."""
    with pytest.raises(PlanSyntaxError) as info:
        parse("group A = free(a)\ngroup B = hnn(A, t cyclic { a -> a^2 })\n")
    assert info.value.line == 2
    assert info.value.column > 1
    assert info.value.expected


def test_forward_reference_is_undefined():
    """Names must be declared before use."""
    with pytest.raises(UndefinedName) as info:
        parse("group B = hnn(A, t, cyclic { a -> a^2 })\ngroup A = free(a)\n")
    assert info.value.name == "A"
    assert info.value.span[0] == 1


def test_reference_of_wrong_kind():
    """An endomorphism must be declared with endo, not group."""
    text = (
        "group A = free(a)\n"
        "group D = presentation { gens a; rels a^2; }\n"
        "cert q : A { target D; map { a -> a; } }\n"
        "check \"hom\" { homomorphism(q) }\n"
    )
    with pytest.raises(UndefinedName):
        parse(text)


def test_duplicate_declaration():
    """A name can be declared once."""
    with pytest.raises(DuplicateName):
        parse("group A = free(a)\ngroup A = free(b)\n")


def test_comments_are_ignored():
    """# starts a comment that runs to the end of the line."""
    plan = parse("# header\ngroup A = free(a) # trailing\n")
    assert len(plan.declarations) == 1
