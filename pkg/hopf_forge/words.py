"""
Words over generator alphabets.

A Word is stored in run-length form: a tuple of (generator, exponent) entries
in which adjacent entries never share a generator and no exponent is zero.
Building a Word always normalizes, so every Word is freely reduced; the empty
tuple is the identity.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Set, Tuple, Union

from .errors import UnmappedGenerator

TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class GeneratorId:
    """
    A generator symbol together with the tower node that introduced it.

    Two generators with the same name but different scopes are different
    letters, so free-product factors can never be confused.
    """

    name: str
    scope: str

    def __post_init__(self):
        if not TOKEN.match(self.name):
            raise ValueError(f"invalid generator name {self.name!r}")

    def __str__(self) -> str:
        return self.name


Letter = Tuple[GeneratorId, int]


def _normalize(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack.pop()[1] + exp
            if merged != 0:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


class Word:
    """An immutable, freely reduced word in run-length form."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", _normalize(letters))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls) -> "Word":
        return EMPTY

    @classmethod
    def of(cls, gen: GeneratorId, exp: int = 1) -> "Word":
        return cls(((gen, exp),))

    # --- structure -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index])
        return self.letters[index]

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    @property
    def letter_length(self) -> int:
        """Length counted in unit letters, so c^9 has length 9."""
        return sum(abs(e) for _, e in self.letters)

    def generators(self) -> Set[GeneratorId]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, gen: GeneratorId) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def unit_letters(self) -> List[Letter]:
        """Expand run-length entries into a list of (generator, +-1) letters."""
        out: List[Letter] = []
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            out.extend([(g, step)] * abs(e))
        return out

    # --- algebra ---------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if not other.letters:
            return self
        if not self.letters:
            return other
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n == 0 or not self.letters:
            return EMPTY
        base = self.letters if n > 0 else self.inverse().letters
        if len(base) == 1:
            g, e = base[0]
            return Word(((g, e * abs(n)),))
        return Word(base * abs(n))

    # --- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.letters))
        return self._hash

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


EMPTY = Word()


def format_letter(gen: GeneratorId, exp: int) -> str:
    return gen.name if exp == 1 else f"{gen.name}^{exp}"


def format_word(w: Word) -> str:
    """
    Render a word in the plan-file word syntax.

    Examples:
        >>> format_word(Word())
        '1'
        >>> format_word(commutator(c ** 3, x))
        'c^3 x c^-3 x^-1'
    """
    if not w.letters:
        return "1"
    return " ".join(format_letter(g, e) for g, e in w.letters)


def concat(*words: Word) -> Word:
    """Concatenate and freely reduce any number of words."""
    letters: List[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return Word(letters)


def invert(w: Word) -> Word:
    return w.inverse()


def power(w: Word, n: int) -> Word:
    return w ** n


def letter_length(w: Word) -> int:
    return w.letter_length


def free_reduce(w: Union[Word, Iterable[Letter]]) -> Word:
    """
    Freely reduce a word or a raw sequence of (generator, exponent) letters.

    Args:
        w: A Word (returned unchanged, already reduced) or raw letters

    Returns:
        The freely reduced Word; never longer than the input
    """
    if isinstance(w, Word):
        return w
    return Word(w)


def cyclically_reduce(w: Word) -> Tuple[Word, Word]:
    """
    Split a word into conjugator and cyclically reduced core.

    Args:
        w: Any word

    Returns:
        (conjugator, core) with w = conjugator * core * conjugator^-1 in the
        free group and core cyclically reduced

    Examples:
        >>> cyclically_reduce(b * a * c * ~b)
        (Word('b'), Word('a c'))
    """
    conjugator: List[Letter] = []
    core = list(w.letters)
    while len(core) >= 2 and core[0][0] == core[-1][0]:
        gen, first = core[0]
        last = core[-1][1]
        if (first > 0) == (last > 0):
            # b^2 ... b does not cancel; already cyclically reduced
            break
        conjugator.append((gen, first))
        middle = core[1:-1]
        if first + last != 0:
            middle.append((gen, first + last))
        core = list(_normalize(middle))
    return Word(conjugator), Word(core)


def is_cyclically_reduced(w: Word) -> bool:
    if len(w.letters) < 2:
        return True
    (g0, e0), (g1, e1) = w.letters[0], w.letters[-1]
    return g0 != g1 or (e0 > 0) == (e1 > 0)


@dataclass(frozen=True)
class CyclicWord:
    """
    The cyclic word of a cyclically reduced core.

    Two cyclic words are equal when one core is a letter-level rotation of
    the other; ``marker`` records which rotation this instance was read from.
    """

    core: Word
    marker: int = 0

    def __post_init__(self):
        if not is_cyclically_reduced(self.core):
            raise ValueError(f"{self.core} is not cyclically reduced")

    def rotations(self) -> List[Word]:
        units = self.core.unit_letters()
        return [Word(units[i:] + units[:i]) for i in range(max(1, len(units)))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        if self.core.letter_length != other.core.letter_length:
            return False
        mine = self.core.unit_letters()
        theirs = other.core.unit_letters()
        if not mine:
            return not theirs
        doubled = mine + mine
        n = len(mine)
        return any(doubled[i : i + n] == theirs for i in range(n))

    def __hash__(self) -> int:
        return hash(frozenset(self.core.unit_letters()))


def cyclic_word(w: Word) -> CyclicWord:
    """The cyclic word associated with w (after cyclic reduction)."""
    return CyclicWord(cyclically_reduce(w)[1])


def commutator(a: Word, b: Word) -> Word:
    """Return [a, b] = a b a^-1 b^-1, freely reduced."""
    return concat(a, b, a.inverse(), b.inverse())


def substitute(w: Word, mapping: Mapping[GeneratorId, Word]) -> Word:
    """
    Apply the free extension of a generator-image map.

    Args:
        w: Word to map
        mapping: Image of every generator occurring in w

    Returns:
        The freely reduced image

    Raises:
        UnmappedGenerator: If a generator of w has no image
    """
    letters: List[Letter] = []
    for gen, exp in w.letters:
        try:
            image = mapping[gen]
        except KeyError:
            raise UnmappedGenerator(gen) from None
        letters.extend((image ** exp).letters)
    return Word(letters)


def generator_map(pairs: Iterable[Tuple[GeneratorId, Word]]) -> Dict[GeneratorId, Word]:
    return {g: w for g, w in pairs}
