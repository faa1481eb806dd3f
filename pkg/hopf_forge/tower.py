"""
Towers of group constructions with a decidable word problem.

A tower is built bottom-up from Finite, FreeAbelian and Free nodes by taking
free products and HNN extensions. Every node can reduce words, decide
triviality, compute element orders and decide membership in a designated
cyclic subgroup. HNN extensions over cyclic associated subgroups reduce by
Britton pinches, which is exactly where the cyclic-membership oracle of the
level below is needed.

Throughout, ``node.reduce(w)`` returns a word equal to w that is empty if and
only if w represents the identity; is_identity is built on that invariant.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .coset_enum import FinitePresentation, MultiplicationTable, element_order
from .errors import (
    AssocValidationFailed,
    BoundUnavailable,
    NotAFreeProduct,
    TowerConstructionError,
    TrivialGenerator,
    UnknownGenerator,
)
from .words import (
    EMPTY,
    GeneratorId,
    Letter,
    Word,
    commutator,
    concat,
    cyclically_reduce,
    format_word,
    substitute,
)

logger = logging.getLogger(__name__)

CACHE_SIZE = 1 << 16


@dataclass(frozen=True)
class GroupElementOrder:
    """Finite(n) when ``value`` is an int, Infinite when it is None."""

    value: Optional[int] = None

    @classmethod
    def finite(cls, n: int) -> "GroupElementOrder":
        return cls(int(n))

    @classmethod
    def infinite(cls) -> "GroupElementOrder":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "Infinite" if self.value is None else f"Finite({self.value})"


INFINITE = GroupElementOrder.infinite()


@dataclass(frozen=True)
class CyclicAssoc:
    """t^-1 g_a^k t = g_b^k for all k."""

    g_a: Word
    g_b: Word


@dataclass(frozen=True, eq=False)
class BaseAutomorphism:
    """t^-1 h t = mapping(h) for every h in the base."""

    mapping: Mapping[GeneratorId, Word]
    inverse_mapping: Mapping[GeneratorId, Word]


class GroupNode:
    """Common interface of all tower nodes."""

    kind = "abstract"

    def __init__(self, name: str, generators: Sequence[GeneratorId]):
        self.name = name
        self._generators = tuple(generators)
        self._gen_set = frozenset(self._generators)
        self._by_name: Dict[str, GeneratorId] = {}
        for g in self._generators:
            if g.name in self._by_name:
                raise TowerConstructionError(
                    f"generator name {g.name!r} is visible twice in {name}"
                )
            self._by_name[g.name] = g
        self._reduce_cached = lru_cache(maxsize=CACHE_SIZE)(self._reduce)

    # --- generators and relators ------------------------------------------

    @property
    def generators(self) -> Tuple[GeneratorId, ...]:
        return self._generators

    @property
    def relators(self) -> Tuple[Word, ...]:
        raise NotImplementedError

    def generator(self, name: str) -> GeneratorId:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownGenerator(name, self.name) from None

    def has_generator_named(self, name: str) -> bool:
        return name in self._by_name

    def check(self, w: Word) -> None:
        for g, _ in w:
            if g not in self._gen_set:
                raise UnknownGenerator(g, self.name)

    # --- decisions ---------------------------------------------------------

    def reduce(self, w: Word) -> Word:
        return self._reduce_cached(w)

    def _reduce(self, w: Word) -> Word:
        raise NotImplementedError

    def is_identity(self, w: Word) -> bool:
        return not self.reduce(w)

    def are_equal(self, u: Word, v: Word) -> bool:
        return self.is_identity(u * v.inverse())

    def order(self, w: Word) -> GroupElementOrder:
        raise NotImplementedError

    def cyclic_core(self, w: Word) -> Tuple[Word, Word]:
        """(conjugator, core) with w = conjugator core conjugator^-1 in the group."""
        return EMPTY, self.reduce(w)

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        raise BoundUnavailable(f"no growth bound for cyclic membership in {self.name}")

    def has_pinch(self, w: Word) -> bool:
        return False

    def respects(self, images: Mapping[GeneratorId, Word], relators: Iterable[Word]) -> List[Word]:
        """Relators whose image under the generator map is not trivial here."""
        return [r for r in relators if not self.is_identity(substitute(r, images))]

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "generators": [g.name for g in self.generators],
            "relators": [format_word(r) for r in self.relators],
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class FiniteGroup(GroupNode):
    """A finite base group backed by its enumerated multiplication table."""

    kind = "finite"

    def __init__(self, name: str, presentation: FinitePresentation, table: MultiplicationTable):
        super().__init__(name, presentation.generators)
        self.presentation = presentation
        self.table = table

    @property
    def relators(self) -> Tuple[Word, ...]:
        return self.presentation.relators

    def element(self, w: Word) -> int:
        self.check(w)
        return self.table.evaluate(w)

    def _reduce(self, w: Word) -> Word:
        return self.table.representatives[self.element(w)]

    def order(self, w: Word) -> GroupElementOrder:
        self.check(w)
        return GroupElementOrder.finite(element_order(self.table, w))

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        gi, target = self.element(g), self.element(w)
        if gi == 0:
            raise TrivialGenerator(f"{format_word(g)} is trivial in {self.name}")
        x, n = 0, 0
        while True:
            if x == target:
                return n
            x = self.table.multiply(x, gi)
            n += 1
            if x == 0:
                return None

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["order"] = self.table.order
        return data


class FreeAbelianGroup(GroupNode):
    """Z^rank; elements are exponent vectors."""

    kind = "free_abelian"

    def __init__(self, name: str, generators: Sequence[GeneratorId]):
        super().__init__(name, generators)
        self._position = {g: i for i, g in enumerate(self.generators)}

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def relators(self) -> Tuple[Word, ...]:
        gens = self.generators
        return tuple(
            commutator(Word.of(gens[i]), Word.of(gens[j]))
            for i in range(len(gens))
            for j in range(i + 1, len(gens))
        )

    def vector(self, w: Word) -> np.ndarray:
        self.check(w)
        v = np.zeros(self.rank, dtype=np.int64)
        for g, e in w:
            v[self._position[g]] += e
        return v

    def _reduce(self, w: Word) -> Word:
        v = self.vector(w)
        return Word((g, int(e)) for g, e in zip(self.generators, v))

    def order(self, w: Word) -> GroupElementOrder:
        return GroupElementOrder.finite(1) if not self.vector(w).any() else INFINITE

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        vg, vw = self.vector(g), self.vector(w)
        nonzero = np.flatnonzero(vg)
        if nonzero.size == 0:
            raise TrivialGenerator(f"{format_word(g)} is trivial in {self.name}")
        k = int(nonzero[0])
        if int(vw[k]) % int(vg[k]) != 0:
            return None
        n = int(vw[k]) // int(vg[k])
        return n if np.array_equal(n * vg, vw) else None

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["rank"] = self.rank
        return data


class FreeGroup(GroupNode):
    """The free group on its generators; reduced words are normal forms."""

    kind = "free"

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def relators(self) -> Tuple[Word, ...]:
        return ()

    def _reduce(self, w: Word) -> Word:
        self.check(w)
        return w

    def order(self, w: Word) -> GroupElementOrder:
        return GroupElementOrder.finite(1) if not self.reduce(w) else INFINITE

    def cyclic_core(self, w: Word) -> Tuple[Word, Word]:
        self.check(w)
        return cyclically_reduce(w)

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        self.check(w)
        if not self.reduce(g):
            raise TrivialGenerator(f"trivial element in {self.name}")
        conj, core = self.cyclic_core(g)
        target = conj.inverse() * w * conj
        bound = target.letter_length // core.letter_length + 2
        for n in _signed_range(bound):
            if abs(n) * core.letter_length == target.letter_length and core ** n == target:
                return n
        return None

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["rank"] = self.rank
        return data


Syllable = Tuple[int, Word]


class FreeProduct(GroupNode):
    """left * right; elements are alternating sequences of nontrivial syllables."""

    kind = "free_product"

    def __init__(self, name: str, left: GroupNode, right: GroupNode):
        overlap = set(left.generators) & set(right.generators)
        if overlap:
            raise TowerConstructionError(
                f"free product factors share generators: {sorted(g.name for g in overlap)}"
            )
        super().__init__(name, left.generators + right.generators)
        self.factors = (left, right)
        self._factor_of = {g: 0 for g in left.generators}
        self._factor_of.update({g: 1 for g in right.generators})

    @property
    def left(self) -> GroupNode:
        return self.factors[0]

    @property
    def right(self) -> GroupNode:
        return self.factors[1]

    @property
    def relators(self) -> Tuple[Word, ...]:
        return self.left.relators + self.right.relators

    def factor_syllables(self, w: Word) -> List[Syllable]:
        """Normal form of w as (factor index, reduced nontrivial word) pairs."""
        self.check(w)
        raw: List[Tuple[int, List[Letter]]] = []
        for g, e in w:
            side = self._factor_of[g]
            if raw and raw[-1][0] == side:
                raw[-1][1].append((g, e))
            else:
                raw.append((side, [(g, e)]))

        stack: List[Syllable] = []
        for side, letters in raw:
            factor = self.factors[side]
            if stack and stack[-1][0] == side:
                merged = factor.reduce(stack.pop()[1] * Word(letters))
            else:
                merged = factor.reduce(Word(letters))
            if merged:
                stack.append((side, merged))
        return stack

    def multiply_syllables(self, left: Sequence[Syllable], right: Sequence[Syllable]) -> List[Syllable]:
        """Normal form of the product of two normal forms; only the seam is reduced."""
        out = list(left)
        rest = list(right)
        while out and rest and out[-1][0] == rest[0][0]:
            side = rest[0][0]
            merged = self.factors[side].reduce(out.pop()[1] * rest.pop(0)[1])
            if merged:
                out.append((side, merged))
                break
        return out + rest

    @staticmethod
    def invert_syllables(sylls: Sequence[Syllable]) -> List[Syllable]:
        return [(side, word.inverse()) for side, word in reversed(sylls)]

    def _reduce(self, w: Word) -> Word:
        return concat(*(word for _, word in self.factor_syllables(w)))

    def _cyclic_syllables(self, sylls: List[Syllable]) -> Tuple[Word, List[Syllable]]:
        conj = EMPTY
        core = list(sylls)
        while len(core) >= 2 and core[0][0] == core[-1][0]:
            side, last = core.pop()
            first = core.pop(0)[1]
            conj = conj * last.inverse()
            merged = self.factors[side].reduce(last * first)
            if merged:
                core.insert(0, (side, merged))
        return conj, core

    def cyclic_core(self, w: Word) -> Tuple[Word, Word]:
        conj, core = self._cyclic_syllables(self.factor_syllables(w))
        return conj, concat(*(word for _, word in core))

    def order(self, w: Word) -> GroupElementOrder:
        _, core = self._cyclic_syllables(self.factor_syllables(w))
        if not core:
            return GroupElementOrder.finite(1)
        if len(core) >= 2:
            return INFINITE
        side, word = core[0]
        return self.factors[side].order(word)

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        g_sylls = self.factor_syllables(g)
        if not g_sylls:
            raise TrivialGenerator(f"{format_word(g)} is trivial in {self.name}")
        conj, core = self._cyclic_syllables(g_sylls)
        target = self.factor_syllables(conj.inverse() * w * conj)
        if not target:
            return 0
        if len(core) == 1:
            side, h = core[0]
            if len(target) == 1 and target[0][0] == side:
                return self.factors[side].cyclic_member(h, target[0][1])
            return None

        # A cyclically reduced core of l >= 2 syllables has powers of
        # syllable length exactly |n| * l.
        ell = len(core)
        core_word = concat(*(word for _, word in core))
        target_word = concat(*(word for _, word in target))
        bound = len(target) // ell + 2
        for n in _signed_range(bound):
            if abs(n) * ell != len(target):
                continue
            if self.is_identity(target_word * core_word ** (-n)):
                return n
        return None

    def has_pinch(self, w: Word) -> bool:
        return any(self.factors[side].has_pinch(word) for side, word in self.factor_syllables(w))

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["factors"] = [self.left.to_json(), self.right.to_json()]
        return data


class HnnExtension(GroupNode):
    """Shared parts of both HNN flavours: a base and a stable letter."""

    kind = "hnn"

    def __init__(self, name: str, base: GroupNode, stable: GeneratorId):
        if stable in base.generators or base.has_generator_named(stable.name):
            raise TowerConstructionError(
                f"stable letter {stable.name!r} is already a generator of {base.name}"
            )
        super().__init__(name, base.generators + (stable,))
        self.base = base
        self.stable = stable
        self._t = Word.of(stable)

    def stable_count(self, w: Word) -> int:
        return sum(abs(e) for g, e in w if g == self.stable)

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["base"] = self.base.to_json()
        data["stable"] = self.stable.name
        return data


class CyclicHnnExtension(HnnExtension):
    """
    HNN extension identifying two infinite cyclic subgroups of the base.

    Words are kept as h0 t^e1 h1 ... t^ek hk with every e = +-1. A pinch is
    t^-1 h t with h in <g_a>, or t h t^-1 with h in <g_b>; Britton reduction
    removes pinches until none is left.
    """

    def __init__(self, name: str, base: GroupNode, stable: GeneratorId, assoc: CyclicAssoc):
        super().__init__(name, base, stable)
        for label, g in (("associated generator", assoc.g_a), ("image generator", assoc.g_b)):
            try:
                base.check(g)
                finite = not base.order(g).is_infinite
            except UnknownGenerator as exc:
                raise AssocValidationFailed(f"{label} {format_word(g)}: {exc}") from exc
            if finite:
                raise AssocValidationFailed(
                    f"{label} {format_word(g)} does not have infinite order in {base.name}"
                )
        self.assoc = assoc
        logger.info(
            "built HNN %s: %s^-1 (%s) %s = %s",
            name,
            stable.name,
            format_word(assoc.g_a),
            stable.name,
            format_word(assoc.g_b),
        )

    @property
    def relators(self) -> Tuple[Word, ...]:
        t = self._t
        return self.base.relators + (t.inverse() * self.assoc.g_a * t * self.assoc.g_b.inverse(),)

    def _pinch(self, left_exp: int, middle: Word) -> Optional[Word]:
        """Image of t^left middle t^-left when it is a pinch, else None."""
        if left_exp < 0:
            n = self.base.cyclic_member(self.assoc.g_a, middle)
            return None if n is None else self.assoc.g_b ** n
        n = self.base.cyclic_member(self.assoc.g_b, middle)
        return None if n is None else self.assoc.g_a ** n

    def britton(self, w: Word) -> Tuple[List[Word], List[int]]:
        """Segments and stable exponents of a reduced form of w."""
        self.check(w)
        base = self.base
        segments: List[Word] = [EMPTY]
        exps: List[int] = []
        pending: List[Letter] = []
        for gen, exp in w:
            if gen != self.stable:
                pending.append((gen, exp))
                continue
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                top = base.reduce(segments[-1] * Word(pending))
                pending = []
                segments[-1] = top
                if exps and exps[-1] == -step:
                    image = self._pinch(exps[-1], top)
                    if image is not None:
                        logger.debug("pinch in %s: %s", self.name, format_word(top))
                        exps.pop()
                        segments.pop()
                        segments[-1] = base.reduce(segments[-1] * image)
                        continue
                exps.append(step)
                segments.append(EMPTY)
        segments[-1] = base.reduce(segments[-1] * Word(pending))
        return segments, exps

    def _assemble(self, segments: Sequence[Word], exps: Sequence[int]) -> Word:
        letters: List[Letter] = list(segments[0])
        for e, seg in zip(exps, segments[1:]):
            letters.append((self.stable, e))
            letters.extend(seg)
        return Word(letters)

    def _reduce(self, w: Word) -> Word:
        return self._assemble(*self.britton(w))

    def _split(self, w: Word) -> Tuple[List[Word], List[int]]:
        segments: List[List[Letter]] = [[]]
        exps: List[int] = []
        for gen, exp in w:
            if gen != self.stable:
                segments[-1].append((gen, exp))
                continue
            for _ in range(abs(exp)):
                exps.append(1 if exp > 0 else -1)
                segments.append([])
        return [Word(s) for s in segments], exps

    def has_pinch(self, w: Word) -> bool:
        self.check(w)
        segments, exps = self._split(w)
        for i in range(1, len(exps)):
            if exps[i - 1] == -exps[i] and self._pinch(exps[i - 1], segments[i]) is not None:
                return True
        return any(self.base.has_pinch(seg) for seg in segments)

    def cyclic_core(self, w: Word) -> Tuple[Word, Word]:
        conj = EMPTY
        segments, exps = self.britton(w)
        while True:
            if not exps:
                base_conj, base_core = self.base.cyclic_core(segments[0])
                return conj * base_conj, base_core
            h0 = segments[0]
            conj = conj * h0
            tail = self.base.reduce(segments[-1] * h0)
            rotated_segments = [EMPTY] + list(segments[1:-1]) + [tail]
            if exps[-1] == -exps[0]:
                image = self._pinch(exps[-1], tail)
                if image is not None:
                    conj = conj * Word.of(self.stable, exps[0])
                    # t^-e1 (rotated) t^e1 = h1 t^e2 ... h_{k-1} image
                    k = len(exps)
                    inner = self._assemble(segments[1:k], exps[1 : k - 1])
                    segments, exps = self.britton(inner * image)
                    continue
            return conj, self._assemble(rotated_segments, exps)

    def order(self, w: Word) -> GroupElementOrder:
        _, core = self.cyclic_core(w)
        if self.stable_count(core):
            return INFINITE
        return self.base.order(core)

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        if self.is_identity(g):
            raise TrivialGenerator(f"{format_word(g)} is trivial in {self.name}")
        conj, core = self.cyclic_core(g)
        target = self.reduce(conj.inverse() * w * conj)
        k = self.stable_count(core)
        if k == 0:
            if self.stable_count(target):
                return None
            return self.base.cyclic_member(core, target)

        # Powers of a cyclically reduced core with k stable letters keep
        # exactly |n| * k stable letters after reduction.
        have = self.stable_count(target)
        bound = have // k + 2
        for n in _signed_range(bound):
            if abs(n) * k != have:
                continue
            if self.is_identity(target * core ** (-n)):
                return n
        return None

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["assoc"] = {
            "type": "cyclic",
            "from": format_word(self.assoc.g_a),
            "to": format_word(self.assoc.g_b),
        }
        return data


class AutomorphismHnnExtension(HnnExtension):
    """
    HNN extension whose associated subgroup is the whole base: base ⋊ Z.

    Every element has the normal form t^n h with h in the base, since
    h t = t phi(h) and h t^-1 = t^-1 phi^-1(h).
    """

    def __init__(self, name: str, base: GroupNode, stable: GeneratorId, assoc: BaseAutomorphism):
        super().__init__(name, base, stable)
        for label, mapping in (("map", assoc.mapping), ("inverse map", assoc.inverse_mapping)):
            missing = [g.name for g in base.generators if g not in mapping]
            if missing:
                raise AssocValidationFailed(f"{label} has no image for {', '.join(missing)}")
            try:
                for image in mapping.values():
                    base.check(image)
            except UnknownGenerator as exc:
                raise AssocValidationFailed(f"{label}: {exc}") from exc
            failing = base.respects(mapping, base.relators)
            if failing:
                shown = ", ".join(format_word(r) for r in failing)
                raise AssocValidationFailed(f"{label} is not a homomorphism of {base.name}: {shown}")
        for g in base.generators:
            there = substitute(assoc.mapping[g], assoc.inverse_mapping)
            back = substitute(assoc.inverse_mapping[g], assoc.mapping)
            if not (base.are_equal(there, Word.of(g)) and base.are_equal(back, Word.of(g))):
                raise AssocValidationFailed(f"maps are not mutually inverse on {g.name}")
        self.assoc = assoc
        logger.info("built HNN %s over the automorphism of %s", name, base.name)

    @property
    def relators(self) -> Tuple[Word, ...]:
        t = self._t
        return self.base.relators + tuple(
            t.inverse() * Word.of(g) * t * self.assoc.mapping[g].inverse()
            for g in self.base.generators
        )

    def normal_form(self, w: Word) -> Tuple[int, Word]:
        """(n, h) with w = t^n h."""
        self.check(w)
        base = self.base
        n = 0
        h: List[Letter] = []
        for gen, exp in w:
            if gen != self.stable:
                h.append((gen, exp))
                continue
            mapping = self.assoc.mapping if exp > 0 else self.assoc.inverse_mapping
            current = base.reduce(Word(h))
            for _ in range(abs(exp)):
                current = base.reduce(substitute(current, mapping))
            h = list(current)
            n += exp
        return n, base.reduce(Word(h))

    def _reduce(self, w: Word) -> Word:
        n, h = self.normal_form(w)
        return Word.of(self.stable, n) * h

    def order(self, w: Word) -> GroupElementOrder:
        n, h = self.normal_form(w)
        return INFINITE if n else self.base.order(h)

    def cyclic_core(self, w: Word) -> Tuple[Word, Word]:
        n, h = self.normal_form(w)
        if n:
            return EMPTY, Word.of(self.stable, n) * h
        return self.base.cyclic_core(h)

    def cyclic_member(self, g: Word, w: Word) -> Optional[int]:
        m, hg = self.normal_form(g)
        p, hw = self.normal_form(w)
        if m == 0:
            if not hg:
                raise TrivialGenerator(f"{format_word(g)} is trivial in {self.name}")
            return self.base.cyclic_member(hg, hw) if p == 0 else None
        if p % m != 0:
            return None
        n = p // m
        return n if self.are_equal(w, g ** n) else None

    def to_json(self) -> Dict[str, Any]:
        data = super().to_json()
        data["assoc"] = {
            "type": "automorphism",
            "map": {g.name: format_word(w) for g, w in self.assoc.mapping.items()},
            "inverse": {g.name: format_word(w) for g, w in self.assoc.inverse_mapping.items()},
        }
        return data


def _signed_range(bound: int) -> Iterable[int]:
    yield 0
    for n in range(1, bound + 1):
        yield n
        yield -n


# --- construction helpers ----------------------------------------------------


def finite_group(name: str, presentation: FinitePresentation, table: MultiplicationTable) -> FiniteGroup:
    return FiniteGroup(name, presentation, table)


def hnn(name: str, base: GroupNode, stable: GeneratorId, assoc) -> HnnExtension:
    """Build an HNN node of the flavour matching ``assoc``."""
    if isinstance(assoc, CyclicAssoc):
        return CyclicHnnExtension(name, base, stable, assoc)
    if isinstance(assoc, BaseAutomorphism):
        return AutomorphismHnnExtension(name, base, stable, assoc)
    raise TowerConstructionError(f"unsupported association {assoc!r}")


def finite_automorphism_inverse(
    base: FiniteGroup, mapping: Mapping[GeneratorId, Word]
) -> Dict[GeneratorId, Word]:
    """
    Invert a generator map of a finite group through its multiplication table.

    Args:
        base: Finite node the map acts on
        mapping: Image of each generator

    Returns:
        Image of each generator under the inverse automorphism

    Raises:
        AssocValidationFailed: If the induced map on elements is not a bijection
    """
    table = base.table
    images = [base.element(substitute(rep, mapping)) for rep in table.representatives]
    if len(set(images)) != table.order:
        raise AssocValidationFailed(f"map is not a bijection of {base.name}")
    preimage = {img: i for i, img in enumerate(images)}
    return {g: table.representatives[preimage[base.element(Word.of(g))]] for g in base.generators}


# --- module-level operations -------------------------------------------------


def britton_reduce(node: GroupNode, w: Word) -> Word:
    """Reduced form of w in node: pinch-free, syllable normal form, or base normal form."""
    return node.reduce(w)


def is_identity(node: GroupNode, w: Word) -> bool:
    return node.is_identity(w)


def are_equal(node: GroupNode, u: Word, v: Word) -> bool:
    return node.are_equal(u, v)


def order(node: GroupNode, w: Word) -> GroupElementOrder:
    return node.order(w)


def cyclic_member(node: GroupNode, g: Word, w: Word) -> Optional[int]:
    """
    Decide whether w is a power of g.

    Returns:
        n with w = g^n, or None when w is not in <g>

    Raises:
        TrivialGenerator: If g is trivial in node
    """
    return node.cyclic_member(g, w)


def cyclically_reduce_in(node: GroupNode, w: Word) -> Tuple[Word, Word]:
    return node.cyclic_core(w)


def has_pinch(node: GroupNode, w: Word) -> bool:
    return node.has_pinch(w)


def syllables(node: GroupNode, w: Word) -> List[Tuple[str, Word]]:
    """
    Free-product normal form of w as (factor name, syllable) pairs.

    Raises:
        NotAFreeProduct: If node is not a FreeProduct
    """
    if not isinstance(node, FreeProduct):
        raise NotAFreeProduct(f"{node.name} is a {node.kind} node, not a free product")
    return [(node.factors[side].name, word) for side, word in node.factor_syllables(w)]


def tower_to_json(node: GroupNode) -> Dict[str, Any]:
    return node.to_json()
