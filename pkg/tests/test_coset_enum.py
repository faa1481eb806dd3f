"""Tests for coset enumeration, checked against sympy and a brute-force semidirect product."""

import functools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from hopf_forge.coset_enum import (
    FinitePresentation,
    element_order,
    enumerate_group,
    table_to_json,
)
from hopf_forge.errors import CosetOverflow, EmptyPresentation, UnknownGenerator
from hopf_forge.words import GeneratorId, Word

# (generator names, relators as lists of (name, exponent))
PRESENTATIONS = {
    "D3": ("b c", [[("b", 2)], [("c", 3)], [("b", -1), ("c", 1), ("b", 1), ("c", 1)]]),
    "H0": ("b c", [[("b", 2)], [("c", 9)], [("b", -1), ("c", 1), ("b", 1), ("c", 1)]]),
    "Q8": ("i j", [[("i", 4)], [("i", 2), ("j", -2)], [("j", -1), ("i", 1), ("j", 1), ("i", 1)]]),
    "A4": ("a b", [[("a", 2)], [("b", 3)], [("a", 1), ("b", 1)] * 3]),
    "S4": ("a b", [[("a", 2)], [("b", 3)], [("a", 1), ("b", 1)] * 4]),
    "A5": ("a b", [[("a", 2)], [("b", 3)], [("a", 1), ("b", 1)] * 5]),
    "Z6": ("a b", [[("a", 2)], [("b", 3)], [("a", 1), ("b", 1), ("a", -1), ("b", -1)]]),
}


def build(name):
    names, rels = PRESENTATIONS[name]
    gens = {n: GeneratorId(n, name) for n in names.split()}
    presentation = FinitePresentation(
        tuple(gens.values()), tuple(Word((gens[g], e) for g, e in r) for r in rels)
    )
    return gens, presentation


def sympy_order(name):
    names, rels = PRESENTATIONS[name]
    F, *symbols = free_group(names.replace(" ", ","))
    by_name = dict(zip(names.split(), symbols))
    relators = []
    for r in rels:
        word = F.identity
        for g, e in r:
            word = word * by_name[g] ** e
        relators.append(word)
    return FpGroup(F, relators).order()


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_order_matches_sympy(name):
    """Enumerated order agrees with sympy's coset enumeration."""
    _, presentation = build(name)
    table = enumerate_group(presentation)
    assert table.order == sympy_order(name)


def test_table_respects_relators_and_representatives():
    """Every relator fixes every element and representative i evaluates to i."""
    _, presentation = build("H0")
    table = enumerate_group(presentation)
    assert table.order == 18
    assert table.respects(presentation.relators)
    assert table.representatives[0] == Word()
    for i, rep in enumerate(table.representatives):
        assert table.evaluate(rep) == i


def test_element_orders_in_h0():
    """b has order 2, c order 9, c^3 order 3 and b c is an involution."""
    gens, presentation = build("H0")
    table = enumerate_group(presentation)
    b, c = Word.of(gens["b"]), Word.of(gens["c"])
    assert element_order(table, b) == 2
    assert element_order(table, c) == 9
    assert element_order(table, c ** 3) == 3
    assert element_order(table, b * c) == 2
    assert element_order(table, Word()) == 1


def test_multiply_and_inverse():
    """multiply follows the right action and inverse undoes it."""
    _, presentation = build("S4")
    table = enumerate_group(presentation)
    for i in range(table.order):
        assert table.multiply(i, table.inverse(i)) == 0
        assert table.multiply(0, i) == i


def test_infinite_presentation_overflows():
    """<a, b | a^2, b^3> is infinite, so enumeration hits the limit."""
    a, b = GeneratorId("a", "M"), GeneratorId("b", "M")
    presentation = FinitePresentation((a, b), (Word.of(a, 2), Word.of(b, 3)))
    with pytest.raises(CosetOverflow) as info:
        enumerate_group(presentation, max_cosets=500)
    assert info.value.limit == 500


def test_empty_presentation():
    """A presentation without generators is rejected."""
    with pytest.raises(EmptyPresentation):
        enumerate_group(FinitePresentation(()))


def test_trivial_and_cyclic_groups():
    """<a | a> is trivial and <a | a^5> has order 5."""
    a = GeneratorId("a", "Z")
    assert enumerate_group(FinitePresentation((a,), (Word.of(a),))).order == 1
    assert enumerate_group(FinitePresentation((a,), (Word.of(a, 5),))).order == 5


def test_relator_with_unknown_generator():
    """Relators may only use the listed generators."""
    a, z = GeneratorId("a", "Z"), GeneratorId("z", "Z")
    with pytest.raises(UnknownGenerator):
        FinitePresentation((a,), (Word.of(z, 2),))


def test_table_json():
    """The JSON form carries the order and one row per element."""
    _, presentation = build("D3")
    data = table_to_json(enumerate_group(presentation))
    assert data["order"] == 6
    assert len(data["action"]) == 6
    assert data["representatives"][0] == "1"


def semidirect(letters, modulus):
    """Brute force in Z2 x| Z_modulus: the pair (i, j) stands for b^i c^j, with c b = b c^-1."""
    i, j = 0, 0
    for name, e in letters:
        for _ in range(abs(e)):
            if name == "c":
                j = (j + (1 if e > 0 else -1)) % modulus
            else:
                # b^-1 = b; b^i c^j b = b^(i+1) c^-j
                i, j = (i + 1) % 2, (-j) % modulus
    return i, j


def semidirect_mul(x, y, modulus):
    """(b^i1 c^j1)(b^i2 c^j2) = b^(i1+i2) c^((-1)^i2 j1 + j2)."""
    (i1, j1), (i2, j2) = x, y
    return (i1 + i2) % 2, ((-j1 if i2 else j1) + j2) % modulus


@functools.lru_cache(maxsize=None)
def enumerated(name):
    gens, presentation = build(name)
    return gens, enumerate_group(presentation)


LETTERS = st.lists(st.tuples(st.sampled_from(["b", "c"]), st.integers(-4, 4)), max_size=20)


@pytest.mark.parametrize("name, modulus", [("H0", 9), ("D3", 3)])
@settings(max_examples=1000, derandomize=True, deadline=None)
@given(raw=LETTERS)
def test_identity_matches_semidirect_oracle(name, modulus, raw):
    """The table decides triviality exactly as the semidirect-product model does."""
    gens, table = enumerated(name)
    word = Word((gens[g], e) for g, e in raw)
    # free reduction does not change the element, so evaluate the raw letters
    assert (table.evaluate(word) == 0) == (semidirect(raw, modulus) == (0, 0))


def test_h0_table_is_the_semidirect_product():
    """Representatives map one-to-one onto Z2 x| Z9 and the generator actions agree."""
    gens, table = enumerated("H0")
    model = [semidirect([(g.name, e) for g, e in rep], 9) for rep in table.representatives]
    assert len(set(model)) == table.order == 18
    assert set(model) == {(i, j) for i in range(2) for j in range(9)}
    images = {"b": (1, 0), "c": (0, 1)}
    for i in range(table.order):
        for name, image in images.items():
            j = table.act(i, Word.of(gens[name]))
            assert model[j] == semidirect_mul(model[i], image, 9)
        for j in range(table.order):
            assert model[table.multiply(i, j)] == semidirect_mul(model[i], model[j], 9)


@settings(max_examples=500, derandomize=True, deadline=None)
@given(left=LETTERS, right=LETTERS)
def test_evaluation_is_multiplicative(left, right):
    """evaluate(u v) is the table product of evaluate(u) and evaluate(v)."""
    gens, table = enumerated("H0")
    u = Word((gens[g], e) for g, e in left)
    v = Word((gens[g], e) for g, e in right)
    assert table.evaluate(u * v) == table.multiply(table.evaluate(u), table.evaluate(v))


def test_huge_exponents_reduce_by_power_relators():
    """c^900000001 is read modulo c^9 instead of being spelled out letter by letter."""
    b, c = GeneratorId("b", "H0"), GeneratorId("c", "H0")
    presentation = FinitePresentation(
        (b, c),
        (Word.of(b, 2), Word.of(c, 9), Word([(b, -1), (c, 900_000_001), (b, 1), (c, 900_000_001)])),
    )
    table = enumerate_group(presentation)
    assert table.order == 18
    assert element_order(table, Word.of(c)) == 9


def test_power_relators_combine_by_gcd():
    """a^6 and a^4 together leave a of order 2."""
    a = GeneratorId("a", "Z")
    table = enumerate_group(FinitePresentation((a,), (Word.of(a, 6), Word.of(a, 4))))
    assert table.order == 2
