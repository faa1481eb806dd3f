"""
Seeded randomized property suites run alongside every plan check.

Each suite returns (passed, evidence) so it can be recorded directly as a
report entry. Randomness comes from a numpy Generator built from the seed,
so a report is reproducible from its seed alone.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import TrivialGenerator
from .tower import CyclicHnnExtension, FiniteGroup, GroupNode
from .words import GeneratorId, Word, format_word

logger = logging.getLogger(__name__)

MAX_POWER = 8


def random_letters(
    rng: np.random.Generator,
    generators: Sequence[GeneratorId],
    max_len: int,
    min_len: int = 0,
    max_exp: int = 1,
):
    """Raw (unreduced) letters: random generators with exponents in [-max_exp, max_exp] minus 0."""
    length = int(rng.integers(min_len, max_len + 1))
    picks = rng.integers(0, len(generators), size=length)
    exps = rng.integers(1, max_exp + 1, size=length) * rng.choice([-1, 1], size=length)
    return [(generators[int(i)], int(e)) for i, e in zip(picks, exps)]


def random_word(
    rng: np.random.Generator,
    generators: Sequence[GeneratorId],
    max_len: int,
    min_len: int = 0,
    max_exp: int = 1,
) -> Word:
    return Word(random_letters(rng, generators, max_len, min_len, max_exp))


def free_reduction(rng: np.random.Generator, generators: Sequence[GeneratorId], cases: int) -> Tuple[bool, str]:
    """Reduction is idempotent and never lengthens a word."""
    for _ in range(cases):
        raw = random_letters(rng, generators, 12, max_exp=3)
        w = Word(raw)
        if Word(w.letters) != w or w.letter_length > sum(abs(e) for _, e in raw):
            return False, f"reduction of {raw} is unstable"
        if (w * w.inverse()) or (w.inverse() * w):
            return False, f"{format_word(w)} times its inverse is not freely trivial"
    return True, f"{cases} random words"


def inverse_triviality(node: GroupNode, rng: np.random.Generator, cases: int) -> Tuple[bool, str]:
    """reduce(w) * w^-1 is trivial: the reduced form represents w."""
    for _ in range(cases):
        w = random_word(rng, node.generators, 8)
        if not node.is_identity(node.reduce(w) * w.inverse()):
            return False, f"reduce({format_word(w)}) = {format_word(node.reduce(w))} is not equal to it"
    return True, f"{cases} random words of {node.name}"


def finite_oracle(node: FiniteGroup, rng: np.random.Generator, cases: int) -> Tuple[bool, str]:
    """is_identity agrees with the table, and the table respects every relator."""
    table = node.table
    if not table.respects(node.relators):
        return False, f"table of {node.name} violates a relator"
    for _ in range(cases):
        w = random_word(rng, node.generators, 12, max_exp=3)
        element = table.evaluate(w)
        if node.is_identity(w) != (element == 0):
            return False, f"{format_word(w)}: is_identity disagrees with table element {element}"
        if table.evaluate(table.representatives[element]) != element:
            return False, f"representative of element {element} evaluates elsewhere"
    return True, f"{cases} random words against the order-{table.order} table"


def order_consistency(node: GroupNode, rng: np.random.Generator, cases: int) -> Tuple[bool, str]:
    """Finite(n): w^n = 1 and no smaller power is; Infinite: no power up to 8 is trivial."""
    finite = 0
    for _ in range(cases):
        w = random_word(rng, node.generators, 6)
        o = node.order(w)
        if o.is_infinite:
            if any(node.is_identity(w ** k) for k in range(1, MAX_POWER + 1)):
                return False, f"{format_word(w)} has a trivial power but order Infinite"
            continue
        finite += 1
        n = o.value
        if not node.is_identity(w ** n):
            return False, f"{format_word(w)}^{n} is not trivial but order is {o}"
        if any(node.is_identity(w ** k) for k in range(1, min(n, MAX_POWER + 1))):
            return False, f"{format_word(w)} has a trivial power below its order {n}"
    return True, f"{cases} random words ({finite} of finite order)"


def cyclic_member_contract(
    node: GroupNode, g: Word, rng: np.random.Generator, cases: int, bound: int = 6
) -> Tuple[bool, str]:
    """Some(n) means w = g^n; None means w differs from every g^k with |k| <= bound."""
    try:
        powers = {k: g ** k for k in range(-bound, bound + 1)}
        hits = 0
        for i in range(cases):
            if i % 2 == 0:
                n = int(rng.integers(-bound, bound + 1))
                w = powers[n]
            else:
                w = random_word(rng, node.generators, 6)
            result = node.cyclic_member(g, w)
            if result is None:
                if any(node.are_equal(w, p) for p in powers.values()):
                    return False, f"{format_word(w)} is a power of {format_word(g)} but reported outside"
                continue
            hits += 1
            if not node.are_equal(w, g ** result):
                return False, f"{format_word(w)} reported as {format_word(g)}^{result}"
    except TrivialGenerator as exc:
        return False, str(exc)
    return True, f"{cases} cases, {hits} members of <{format_word(g)}>"


def associated_generators(node: GroupNode):
    """(base, generator) pairs for every cyclic HNN level of the tower."""
    out = []
    stack = [node]
    seen = set()
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if isinstance(n, CyclicHnnExtension):
            out.append((n.base, n.assoc.g_a))
            out.append((n.base, n.assoc.g_b))
        stack.extend(getattr(n, "factors", ()))
        base: Optional[GroupNode] = getattr(n, "base", None)
        if base is not None:
            stack.append(base)
    return out
