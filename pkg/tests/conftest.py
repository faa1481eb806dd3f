"""Shared fixtures: small groups built directly, and the resolved corpus plans."""

from pathlib import Path

import pytest

from hopf_forge.coset_enum import FinitePresentation, enumerate_group
from hopf_forge.dsl import parse_word
from hopf_forge.plan import load, resolve
from hopf_forge.tower import FiniteGroup, FreeAbelianGroup, FreeGroup
from hopf_forge.words import GeneratorId

CORPUS = Path(__file__).parent.parent / "corpus"


def generators(scope, *names):
    return tuple(GeneratorId(n, scope) for n in names)


def finite(name, names, relators):
    """A FiniteGroup from generator names and relator strings in plan syntax."""
    gens = generators(name, *names)
    by_name = {g.name: g for g in gens}
    rels = tuple(parse_word(r, by_name.__getitem__) for r in relators)
    presentation = FinitePresentation(gens, rels)
    return FiniteGroup(name, presentation, enumerate_group(presentation))


@pytest.fixture
def make_finite():
    """Factory for FiniteGroup nodes: make_finite("D4", ["r", "f"], ["r^4", "f^2", "f r f r"])."""
    return finite


@pytest.fixture
def w():
    """Parse a word over a node's generators: w(node, "s^-1 b s")."""

    def parse(node, text):
        return parse_word(text, node.generator)

    return parse


@pytest.fixture
def h0():
    return finite("H0", ["b", "c"], ["b^2", "c^9", "b^-1 c b c"])


@pytest.fixture
def d3():
    return finite("D3", ["b", "c"], ["b^2", "c^3", "b^-1 c b c"])


@pytest.fixture
def free2():
    return FreeGroup("F", generators("F", "a", "b"))


@pytest.fixture
def z2():
    return FreeAbelianGroup("Z2", generators("Z2", "a", "b"))


@pytest.fixture(scope="session")
def prop41():
    return resolve(load(CORPUS / "prop4_1.plan"))


@pytest.fixture(scope="session")
def prop42():
    return resolve(load(CORPUS / "prop4_2.plan"))


@pytest.fixture(scope="session")
def thm11():
    return resolve(load(CORPUS / "thm1_1.plan"))


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
