"""
Endomorphisms given by generator images, and finite-quotient certificates.

An Endomorphism is only applied after its homomorphism check has passed.
Image non-membership cannot be decided in general, so it is certified through
a map onto a small finite group: if the image of an element falls outside the
(exhaustively closed) image of the subgroup, the element is outside the
subgroup itself.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .coset_enum import MultiplicationTable
from .errors import InvalidCertificate, UnknownGenerator, UnmappedGenerator, Unverified
from .tower import FiniteGroup, GroupNode
from .words import GeneratorId, Word, format_word, substitute

logger = logging.getLogger(__name__)


def _require_total(domain: GroupNode, images: Mapping[GeneratorId, Word]) -> None:
    for g in domain.generators:
        if g not in images:
            raise UnmappedGenerator(g)


def verify_homomorphism(
    domain: GroupNode, images: Mapping[GeneratorId, Word]
) -> Tuple[bool, List[Word]]:
    """
    Check a generator map against every relator of every level of the tower.

    Args:
        domain: Tower node the map acts on
        images: Image word of each generator

    Returns:
        (ok, failing relators)

    Raises:
        UnmappedGenerator: If some generator of domain has no image
    """
    _require_total(domain, images)
    failing = domain.respects(images, domain.relators)
    return not failing, failing


@dataclass(eq=False)
class Endomorphism:
    """A generator-image map of a tower node; usable once ``verified`` is set."""

    domain: GroupNode
    images: Dict[GeneratorId, Word]
    name: str = "endo"
    verified: bool = False
    failing: List[Word] = field(default_factory=list)

    def __post_init__(self):
        for g, w in self.images.items():
            if g not in self.domain.generators:
                raise UnknownGenerator(g, self.domain.name)
            self.domain.check(w)

    def verify(self) -> bool:
        """Run the homomorphism check and record the outcome."""
        ok, failing = verify_homomorphism(self.domain, self.images)
        self.verified, self.failing = ok, failing
        if ok:
            logger.info("%s verified on %d relators of %s", self.name, len(self.domain.relators), self.domain.name)
        else:
            logger.info("%s fails %d relator(s) of %s", self.name, len(failing), self.domain.name)
        return ok

    def image_of(self, gen: GeneratorId) -> Word:
        try:
            return self.images[gen]
        except KeyError:
            raise UnmappedGenerator(gen) from None

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "domain": self.domain.name,
            "images": {g.name: format_word(w) for g, w in self.images.items()},
            "verified": self.verified,
        }


def apply(e: Endomorphism, w: Word) -> Word:
    if not e.verified:
        raise Unverified(f"{e.name} has not passed its homomorphism check")
    e.domain.check(w)
    return substitute(w, e.images)


def in_kernel(e: Endomorphism, w: Word) -> bool:
    return e.domain.is_identity(apply(e, w))


def verify_preimage(e: Endomorphism, target: Word, witness: Word) -> bool:
    """True when e(witness) equals target in the domain."""
    return e.domain.are_equal(apply(e, witness), target)


@dataclass(frozen=True, eq=False)
class QuotientCertificate:
    """
    A homomorphism from ``domain`` onto the finite group ``target``.

    The projection is checked against every relator of the domain when the
    certificate is built, so an existing certificate is always valid.
    """

    domain: GroupNode
    target: FiniteGroup
    projection: Mapping[GeneratorId, Word]
    name: str = "cert"

    def __post_init__(self):
        _require_total(self.domain, self.projection)
        for w in self.projection.values():
            self.target.check(w)
        failing = self.target.respects(self.projection, self.domain.relators)
        if failing:
            raise InvalidCertificate(failing)
        logger.info(
            "certificate %s: %s -> %s (order %d)",
            self.name,
            self.domain.name,
            self.target.name,
            self.table.order,
        )

    @property
    def table(self) -> MultiplicationTable:
        return self.target.table

    def project(self, w: Word) -> int:
        self.domain.check(w)
        return self.target.element(substitute(w, self.projection))

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "domain": self.domain.name,
            "target": self.target.name,
            "order": self.table.order,
            "map": {g.name: format_word(w) for g, w in self.projection.items()},
        }


def subgroup_closure(table: MultiplicationTable, generators: Sequence[int]) -> Set[int]:
    """Elements of the subgroup generated by ``generators``, by breadth-first orbit of the identity."""
    steps = set(generators) | {table.inverse(g) for g in generators}
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in steps:
            y = table.multiply(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@dataclass(frozen=True)
class NonmembershipResult:
    """Outcome of a certificate check, with the data shown as evidence."""

    holds: bool
    image: Word
    closure: Tuple[Word, ...]

    @property
    def evidence(self) -> str:
        members = ", ".join(format_word(w) for w in self.closure)
        verdict = "outside" if self.holds else "inside"
        return f"image {format_word(self.image)} lies {verdict} closure {{{members}}}"


def certify_nonmembership(
    domain: GroupNode,
    subgroup_gens: Sequence[Word],
    element: Word,
    cert: QuotientCertificate,
) -> NonmembershipResult:
    if cert.domain is not domain:
        failing = cert.target.respects(cert.projection, domain.relators)
        if failing:
            raise InvalidCertificate(failing)
    table = cert.table
    closure = subgroup_closure(table, [cert.project(g) for g in subgroup_gens])
    image = cert.project(element)
    return NonmembershipResult(
        holds=image not in closure,
        image=table.representatives[image],
        closure=tuple(table.representatives[i] for i in sorted(closure)),
    )


def verify_nonmembership(
    domain: GroupNode,
    subgroup_gens: Sequence[Word],
    element: Word,
    cert: QuotientCertificate,
) -> bool:
    """
    Certify that element is not in the subgroup generated by subgroup_gens.

    True is a proof of non-membership; False only means this quotient cannot
    separate the element (callers report it as inconclusive).

    Raises:
        InvalidCertificate: If the projection does not respect the domain relators
    """
    return certify_nonmembership(domain, subgroup_gens, element, cert).holds


def endomorphism(
    domain: GroupNode, images: Mapping[GeneratorId, Word], name: Optional[str] = None
) -> Endomorphism:
    """Build and immediately verify an endomorphism."""
    e = Endomorphism(domain, dict(images), name=name or f"endo({domain.name})")
    e.verify()
    return e
