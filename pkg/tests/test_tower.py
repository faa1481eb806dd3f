"""Tests for tower nodes: reduction, orders, cyclic membership and construction checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_forge.errors import (
    AssocValidationFailed,
    NotAFreeProduct,
    TowerConstructionError,
    TrivialGenerator,
    UnknownGenerator,
)
from hopf_forge.tower import (
    INFINITE,
    BaseAutomorphism,
    CyclicAssoc,
    FreeGroup,
    FreeProduct,
    GroupElementOrder,
    finite_automorphism_inverse,
    has_pinch,
    hnn,
    syllables,
    tower_to_json,
)
from hopf_forge.words import EMPTY, GeneratorId, Word


@pytest.fixture
def bs12(w):
    """<a, t | t^-1 a t = a^2>."""
    F = FreeGroup("A", (GeneratorId("a", "A"),))
    a = Word.of(F.generator("a"))
    return hnn("BS", F, GeneratorId("t", "BS"), CyclicAssoc(a, a ** 2))


def test_order_display():
    """Orders print as Finite(n) or Infinite."""
    assert str(GroupElementOrder.finite(9)) == "Finite(9)"
    assert str(INFINITE) == "Infinite"
    assert INFINITE.is_infinite


def test_finite_node(h0, w):
    """Finite nodes reduce to table representatives."""
    assert h0.reduce(w(h0, "c^9 b^2")) == EMPTY
    assert h0.are_equal(w(h0, "c^10"), w(h0, "c"))
    assert h0.are_equal(w(h0, "b^-1 c b"), w(h0, "c^-1"))
    assert h0.order(w(h0, "c^3")) == GroupElementOrder.finite(3)
    assert h0.cyclic_member(w(h0, "c^3"), w(h0, "c^6")) == 2
    assert h0.cyclic_member(w(h0, "c^3"), w(h0, "c")) is None
    with pytest.raises(TrivialGenerator):
        h0.cyclic_member(w(h0, "c^9"), w(h0, "c"))


def test_unknown_generator(h0, d3, w):
    """Words over another node's generators are rejected, even with equal names."""
    with pytest.raises(UnknownGenerator):
        h0.reduce(w(d3, "b c"))
    with pytest.raises(UnknownGenerator):
        h0.generator("s")


def test_free_abelian_node(z2, w):
    """Z^2: commutators vanish and membership is exact division of vectors."""
    assert z2.is_identity(w(z2, "[a, b]"))
    assert z2.order(w(z2, "a^2")).is_infinite
    assert z2.order(w(z2, "a b a^-1 b^-1")) == GroupElementOrder.finite(1)
    assert z2.cyclic_member(w(z2, "a^2 b"), w(z2, "b^2 a^4")) == 2
    assert z2.cyclic_member(w(z2, "a^2"), w(z2, "a^3")) is None
    assert z2.cyclic_member(w(z2, "a^2"), w(z2, "a^-4 b")) is None
    with pytest.raises(TrivialGenerator):
        z2.cyclic_member(w(z2, "[a, b]"), w(z2, "a"))


def test_free_node(free2, w):
    """Free groups: reduced words are normal forms; roots are exact."""
    assert free2.order(w(free2, "a b")).is_infinite
    assert free2.cyclic_member(w(free2, "a b"), w(free2, "(a b)^3")) == 3
    assert free2.cyclic_member(w(free2, "a b"), w(free2, "b^-1 a^-1")) == -1
    assert free2.cyclic_member(w(free2, "a b"), w(free2, "b a")) is None
    assert free2.cyclic_member(w(free2, "b a b^-1"), w(free2, "b a^2 b^-1")) == 2


def test_free_product_syllables(h0, w):
    """Syllables alternate between factors and merge inside a factor."""
    E = FreeGroup("E", (GeneratorId("e", "E"),))
    P = FreeProduct("P", h0, E)
    word = w(P, "c e c^2 c^-2 e^-1 b")
    assert syllables(P, word) == [("H0", P.reduce(w(P, "c b")))]
    assert [name for name, _ in syllables(P, w(P, "c e b"))] == ["H0", "E", "H0"]
    with pytest.raises(NotAFreeProduct):
        syllables(h0, w(h0, "c"))


def test_free_product_orders_and_membership(h0, w):
    """Single-syllable cores take the factor's order; longer cores are infinite."""
    E = FreeGroup("E", (GeneratorId("e", "E"),))
    P = FreeProduct("P", h0, E)
    assert P.order(w(P, "e c^3 e^-1")) == GroupElementOrder.finite(3)
    assert P.order(w(P, "c e")).is_infinite
    assert P.cyclic_member(w(P, "c e"), w(P, "(c e)^2")) == 2
    assert P.cyclic_member(w(P, "c e"), w(P, "e c")) is None
    assert P.cyclic_member(w(P, "c^3"), w(P, "e c^3 e^-1")) is None
    assert P.cyclic_member(w(P, "e c e^-1"), w(P, "e c^4 e^-1")) == 4


def test_free_product_rejects_name_clash(h0, d3):
    """Two factors may not show the same generator name."""
    with pytest.raises(TowerConstructionError):
        FreeProduct("P", h0, d3)


def test_cyclic_hnn_pinches(bs12, w):
    """t^-1 a t = a^2, while t a t^-1 has no pinch."""
    assert bs12.are_equal(w(bs12, "t^-1 a t"), w(bs12, "a^2"))
    assert bs12.are_equal(w(bs12, "t a^2 t^-1"), w(bs12, "a"))
    assert bs12.reduce(w(bs12, "t a t^-1")) == w(bs12, "t a t^-1")
    assert has_pinch(bs12, w(bs12, "t^-1 a t"))
    assert not has_pinch(bs12, w(bs12, "t a t^-1"))
    assert bs12.is_identity(w(bs12, "t^-1 a t a^-2"))


def test_cyclic_hnn_orders_and_membership(bs12, w):
    """Stable letters survive cyclic reduction, so such elements have infinite order."""
    assert bs12.order(w(bs12, "t")).is_infinite
    assert bs12.order(w(bs12, "a t a^-1")).is_infinite
    assert bs12.order(w(bs12, "t a t^-1")).is_infinite
    assert bs12.cyclic_member(w(bs12, "t a"), w(bs12, "(t a)^3")) == 3
    assert bs12.cyclic_member(w(bs12, "t"), w(bs12, "t^-2")) == -2
    assert bs12.cyclic_member(w(bs12, "t"), w(bs12, "a")) is None
    assert bs12.cyclic_member(w(bs12, "a"), w(bs12, "t^-1 a^3 t")) == 6


def test_cyclic_hnn_validation(h0, free2):
    """Associated generators must have infinite order and stable letters must be new."""
    c = Word.of(h0.generator("c"))
    with pytest.raises(AssocValidationFailed):
        hnn("Bad", h0, GeneratorId("t", "Bad"), CyclicAssoc(c, c ** 2))
    a = Word.of(free2.generator("a"))
    with pytest.raises(TowerConstructionError):
        hnn("Bad", free2, GeneratorId("a", "Bad"), CyclicAssoc(a, a))


def test_automorphism_hnn(h0, w):
    """s^-1 b s = b c^-3 and s^-1 c s = c, with normal form s^n h."""
    b, c = h0.generator("b"), h0.generator("c")
    mapping = {b: Word.of(b) * Word.of(c, -3), c: Word.of(c)}
    H1 = hnn("H1", h0, GeneratorId("s", "H1"), BaseAutomorphism(mapping, finite_automorphism_inverse(h0, mapping)))
    assert H1.are_equal(w(H1, "s^-1 b s"), w(H1, "b c^-3"))
    assert H1.are_equal(w(H1, "s^-1 c s"), w(H1, "c"))
    n, h = H1.normal_form(w(H1, "b s"))
    assert n == 1
    assert h0.are_equal(h, w(h0, "b c^-3"))
    assert H1.order(w(H1, "s b")).is_infinite
    assert H1.order(w(H1, "s^-1 b s")) == GroupElementOrder.finite(2)
    assert H1.cyclic_member(w(H1, "s b"), w(H1, "(s b)^4")) == 4
    assert H1.cyclic_member(w(H1, "c"), w(H1, "s")) is None
    assert len(H1.relators) == 3 + 2


def test_automorphism_hnn_validation(h0):
    """A map that is not an automorphism is rejected."""
    b, c = h0.generator("b"), h0.generator("c")
    mapping = {b: Word.of(b), c: Word.of(c, 3)}
    with pytest.raises(AssocValidationFailed):
        finite_automorphism_inverse(h0, mapping)
    with pytest.raises(AssocValidationFailed):
        hnn("S", h0, GeneratorId("s", "S"), BaseAutomorphism(mapping, mapping))


def test_prop41_tower(prop41, w):
    """The four-level tower decides the identities its recipe relies on."""
    H = prop41.groups["H"]
    assert H.is_identity(w(H, "k s^-3 k^-1 b k s^3 k^-1 c^3 b^-1"))
    assert H.order(w(H, "(k s^-1 k^-1) b (k s k^-1) c b^-1")).is_infinite
    assert H.order(w(H, "c^3")) == GroupElementOrder.finite(3)
    assert H.are_equal(w(H, "k s^3 k^-1"), w(H, "s"))
    assert H.cyclic_member(w(H, "s"), w(H, "k^-1 s k")) == 3
    assert len(H.relators) == 6


def test_prop42_tower(prop42, w):
    """<a, b, s | [a, b], s^-1 a^2 s = a^4>."""
    H = prop42.groups["H"]
    assert H.cyclic_member(w(H, "a^2"), w(H, "s^-1 a^2 s")) == 2
    assert H.cyclic_member(w(H, "a"), w(H, "s^-1 a s")) is None
    assert H.order(w(H, "s^-1 a s a^-2")).is_infinite
    assert not H.is_identity(w(H, "[s a^2 s^-1, b]"))
    assert H.is_identity(w(H, "[s a^4 s^-1, b]"))


def test_background_tower_identities(thm11, w):
    """Each level of the background tower satisfies its defining relation."""
    K, G = thm11.groups["K"], thm11.groups["G"]
    assert K.are_equal(w(K, "u^-1 b a c b^-1 u"), w(K, "a"))
    assert K.are_equal(w(K, "v^-1 a v"), w(K, "t s t^-1"))
    assert G.are_equal(w(G, "x^-1 u x"), w(G, "c^3 e c^3 e^-1"))
    assert G.order(w(G, "c")) == GroupElementOrder.finite(9)
    assert not G.is_identity(w(G, "[u, x]"))


def test_tower_json(thm11):
    """The JSON form nests every level down to the finite base."""
    data = tower_to_json(thm11.groups["G"])
    assert data["name"] == "G"
    assert data["assoc"]["type"] == "cyclic"
    depth, node = 0, data
    while "base" in node or "factors" in node:
        node = node["base"] if "base" in node else node["factors"][0]
        depth += 1
    assert node["kind"] == "finite"
    assert node["order"] == 18
    assert depth == 8


words_h1 = st.lists(st.tuples(st.sampled_from(["b", "c", "s", "k"]), st.integers(-2, 2)), max_size=10)


@settings(max_examples=50, derandomize=True, deadline=None)
@given(raw=words_h1)
def test_reduced_form_represents_word(prop41, raw):
    """reduce(w) w^-1 is trivial for random words of the prop4_1 tower."""
    H = prop41.groups["H"]
    word = Word((H.generator(n), e) for n, e in raw)
    assert H.is_identity(H.reduce(word) * word.inverse())
    assert H.reduce(H.reduce(word)) == H.reduce(word)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(raw=words_h1, conjugator=words_h1)
def test_reduction_commutes_with_conjugation(prop41, raw, conjugator):
    """Conjugating a word and conjugating its reduced form give the same element."""
    H = prop41.groups["H"]
    word = Word((H.generator(n), e) for n, e in raw)
    c = Word((H.generator(n), e) for n, e in conjugator)
    conjugate = c * word * c.inverse()
    assert H.is_identity(conjugate) == H.is_identity(word)
    assert H.are_equal(conjugate, c * H.reduce(word) * c.inverse())


def test_seam_multiplication_matches_reduction(h0, w):
    """Multiplying normal forms at the seam agrees with reducing the product."""
    x = GeneratorId("x", "X")
    HX = FreeProduct("H0*X", h0, FreeGroup("X", (x,)))
    left = HX.factor_syllables(w(HX, "b x c x^-1 c^2"))
    right = HX.factor_syllables(w(HX, "c^-2 x c^-1 b x"))
    product = HX.multiply_syllables(left, right)
    assert product == HX.factor_syllables(w(HX, "b x c x^-1 c^2 c^-2 x c^-1 b x"))
    assert HX.multiply_syllables(left, HX.invert_syllables(left)) == []
