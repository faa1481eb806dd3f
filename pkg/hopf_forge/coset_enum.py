"""
Coset enumeration over the trivial subgroup.

Turns a finite presentation of a finite group into an explicit permutation
table, which then serves as the word-problem oracle for Finite tower nodes.

The enumerator is the relator-table (HLT) strategy: every live coset gets its
row filled, every relator is traced from it, and the two ends of each trace
are identified. Identifications go through a union-find structure whose
queue propagates the consequences (deductions) immediately.
"""

import logging
from collections import deque
from math import gcd
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_MAX_COSETS
from .errors import CosetOverflow, EmptyPresentation, UnknownGenerator
from .words import GeneratorId, Word, cyclically_reduce, format_word

logger = logging.getLogger(__name__)

UNDEFINED = -1


@dataclass(frozen=True)
class FinitePresentation:
    """Generators and relators; relators are stored cyclically reduced."""

    generators: Tuple[GeneratorId, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        known = set(gens)
        if len(known) != len(gens):
            raise ValueError("presentation lists a generator twice")
        cores = []
        for rel in self.relators:
            for g in rel.generators():
                if g not in known:
                    raise UnknownGenerator(g, "presentation")
            core = cyclically_reduce(rel)[1]
            if core:
                cores.append(core)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(cores))


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    """
    The right regular action of a finite group on its element indices.

    ``action[i, k]`` is the index of element i multiplied on the right by
    generator k; ``inverse_action`` does the same for the generator inverse.
    Index 0 is the identity and ``representatives[i]`` is a shortest word for
    element i.
    """

    generators: Tuple[GeneratorId, ...]
    action: np.ndarray
    inverse_action: np.ndarray
    representatives: Tuple[Word, ...]
    _index: Dict[GeneratorId, int] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: k for k, g in enumerate(self.generators)})

    @property
    def order(self) -> int:
        return int(self.action.shape[0])

    def generator_index(self, gen: GeneratorId) -> int:
        try:
            return self._index[gen]
        except KeyError:
            raise UnknownGenerator(gen, "multiplication table") from None

    def act(self, element: int, w: Word) -> int:
        """Multiply element on the right by the word w."""
        x = element
        for gen, exp in w:
            k = self.generator_index(gen)
            column = self.action[:, k] if exp > 0 else self.inverse_action[:, k]
            for _ in range(abs(exp) % self.order):
                x = int(column[x])
        return x

    def evaluate(self, w: Word) -> int:
        return self.act(0, w)

    def multiply(self, i: int, j: int) -> int:
        return self.act(i, self.representatives[j])

    def inverse(self, i: int) -> int:
        return self.act(0, self.representatives[i].inverse())

    def respects(self, relators: Sequence[Word]) -> bool:
        """True when every relator fixes every element index."""
        return all(self.act(i, r) == i for r in relators for i in range(self.order))

    def to_json(self) -> Dict[str, Any]:
        return table_to_json(self)


def table_to_json(t: MultiplicationTable) -> Dict[str, Any]:
    """Serialize a table as {order, generators, action (row-major), representatives}."""
    return {
        "order": t.order,
        "generators": [g.name for g in t.generators],
        "action": t.action.tolist(),
        "representatives": [format_word(w) for w in t.representatives],
    }


class _CosetTable:
    """Mutable working table; directions 2k and 2k+1 are generator k and its inverse."""

    def __init__(self, ngens: int, limit: int):
        self.width = 2 * ngens
        self.limit = limit
        self.rows: List[List[int]] = []
        self.parent: List[int] = []
        self.add_coset()

    def add_coset(self) -> int:
        if len(self.rows) >= self.limit:
            raise CosetOverflow(self.limit)
        self.rows.append([UNDEFINED] * self.width)
        self.parent.append(len(self.parent))
        return len(self.rows) - 1

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def follow(self, c: int, d: int) -> int:
        c = self.find(c)
        nxt = self.rows[c][d]
        if nxt == UNDEFINED:
            nxt = self.add_coset()
            self.rows[c][d] = nxt
            self.rows[nxt][d ^ 1] = c
        return self.find(nxt)

    def trace(self, c: int, directions: Sequence[int]) -> int:
        for d in directions:
            c = self.follow(c, d)
        return c

    def coincidence(self, a: int, b: int) -> None:
        queue = deque([(a, b)])
        while queue:
            a, b = queue.popleft()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            logger.debug("coincidence %d <- %d", a, b)
            self.parent[b] = a
            for d in range(self.width):
                nb = self.rows[b][d]
                if nb == UNDEFINED:
                    continue
                na = self.rows[a][d]
                if na == UNDEFINED:
                    self.rows[a][d] = nb
                else:
                    queue.append((na, nb))

    def is_live(self, c: int) -> bool:
        return self.find(c) == c


def _power_bounds(relators: Sequence[Word]) -> Dict[GeneratorId, int]:
    """n with gen^n = 1 read off the single-letter relators (the gcd of their exponents)."""
    bounds: Dict[GeneratorId, int] = {}
    for r in relators:
        if len(r.letters) == 1:
            gen, exp = r.letters[0]
            bounds[gen] = gcd(bounds.get(gen, 0), abs(exp))
    return bounds


def _directions(w: Word, index: Dict[GeneratorId, int], bounds: Optional[Dict[GeneratorId, int]] = None) -> List[int]:
    bounds = bounds or {}
    out = []
    for gen, exp in w:
        n = bounds.get(gen)
        if n:
            exp %= n
            if exp > n // 2:
                exp -= n
        d = 2 * index[gen] + (0 if exp > 0 else 1)
        out.extend([d] * abs(exp))
    return out


def _relator_directions(relators: Sequence[Word], index: Dict[GeneratorId, int]) -> List[List[int]]:
    bounds = _power_bounds(relators)
    out = [[2 * index[gen]] * n for gen, n in bounds.items()]
    for r in relators:
        if len(r.letters) == 1:
            continue
        directions = _directions(r, index, bounds)
        if directions:
            out.append(directions)
    return out


def enumerate_group(
    p: FinitePresentation, max_cosets: Optional[int] = None
) -> MultiplicationTable:
    """
    Enumerate the cosets of the trivial subgroup, i.e. the elements of the group.

    Args:
        p: The finite presentation
        max_cosets: Hard limit on cosets ever defined (default 100 000)

    Returns:
        MultiplicationTable of the whole group

    Raises:
        EmptyPresentation: If p has no generators
        CosetOverflow: If the limit is exceeded (group infinite or limit too small)
    """
    if not p.generators:
        raise EmptyPresentation()
    limit = DEFAULT_MAX_COSETS if max_cosets is None else max_cosets
    if limit < 1:
        raise ValueError("max_cosets must be positive")

    index = {g: k for k, g in enumerate(p.generators)}
    relators = _relator_directions(p.relators, index)
    table = _CosetTable(len(p.generators), limit)

    c = 0
    while c < len(table.rows):
        if table.is_live(c):
            for d in range(table.width):
                if not table.is_live(c):
                    break
                table.follow(c, d)
            for rel in relators:
                if not table.is_live(c):
                    break
                table.coincidence(table.trace(c, rel), c)
        c += 1

    return _compact(p.generators, table)


def _compact(generators: Tuple[GeneratorId, ...], table: _CosetTable) -> MultiplicationTable:
    # Breadth-first renumbering gives shortest representatives, ties broken
    # by generator declaration order (generator before its inverse).
    start = table.find(0)
    number = {start: 0}
    reps = [Word()]
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for d in range(table.width):
            n = table.find(table.rows[c][d])
            if n not in number:
                number[n] = len(reps)
                gen = generators[d // 2]
                reps.append(reps[number[c]] * Word.of(gen, 1 if d % 2 == 0 else -1))
                queue.append(n)

    order = len(reps)
    action = np.zeros((order, len(generators)), dtype=np.int64)
    inverse_action = np.zeros_like(action)
    for c, i in number.items():
        for k in range(len(generators)):
            action[i, k] = number[table.find(table.rows[c][2 * k])]
            inverse_action[i, k] = number[table.find(table.rows[c][2 * k + 1])]

    logger.info("enumerated group of order %d (%d cosets defined)", order, len(table.rows))
    return MultiplicationTable(
        generators=tuple(generators),
        action=action,
        inverse_action=inverse_action,
        representatives=tuple(reps),
    )


def evaluate(t: MultiplicationTable, w: Word) -> int:
    """Index of the element represented by w; evaluate(ε) = 0."""
    return t.evaluate(w)


def element_order(t: MultiplicationTable, w: Word) -> int:
    """Least n >= 1 with w^n = 1 in the table's group."""
    x = idx = t.evaluate(w)
    n = 1
    while x != 0:
        x = t.multiply(x, idx)
        n += 1
    return n
