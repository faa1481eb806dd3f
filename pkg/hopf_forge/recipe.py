"""
The image-extension construction and the non-Hopf witness built from it.

Given H, an endomorphism psi of H and elements u, v with

    u != 1, u^2 != 1, v of infinite order,
    u in ker psi and im psi, v in ker psi but not in im psi,

the group G = < H, x, t | t^-1 v t = [u, x] > carries the endomorphism
psi~ that restricts to psi on H and fixes x and t. psi~ kills u, and when it
is onto, G is not Hopfian. Every step below is a mechanical check; the
relative hyperbolicity of G and the Hopf property of H are recorded as
assumptions with a citation.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_BOUND, DEFAULT_EMBEDDING_CASES, DEFAULT_SEED
from .errors import (
    CertificateInconclusive,
    HomomorphismCheckFailed,
    HopfForgeError,
    HypothesesNotChecked,
    NonInjectivityFailed,
    RecipeInputError,
    SurjectivityWitnessFailed,
    TrivialU,
)
from .morphism import (
    Endomorphism,
    QuotientCertificate,
    apply,
    certify_nonmembership,
    in_kernel,
    verify_preimage,
)
from .properties import random_word
from .report import Status, VerificationReport
from .tower import (
    CyclicAssoc,
    FreeGroup,
    FreeProduct,
    GroupNode,
    HnnExtension,
    Syllable,
    cyclically_reduce_in,
    hnn,
    syllables,
)
from .words import GeneratorId, Letter, Word, commutator, format_word, substitute

logger = logging.getLogger(__name__)

RELATIVE_HYPERBOLICITY_CITATION = (
    "combination theorem for HNN extensions over cyclic subgroups: G is hyperbolic "
    "relative to H because v and [u,x] have infinite order and [u,x] is hyperbolic in H*<x>"
)
HOPFIAN_CITATION = "H is Hopfian (external result cited for the base group)"


@dataclass(eq=False)
class RecipeInput:
    """
    Everything the construction consumes.

    ``witnesses`` maps each generator of H to a word over the generators of G
    (those of H plus x and t) whose image under psi~ is that generator.
    """

    name: str
    H: GroupNode
    psi: Endomorphism
    u: Word
    v: Word
    y: Word
    cert: QuotientCertificate
    witnesses: Dict[GeneratorId, Word]
    hopfian_citation: str = HOPFIAN_CITATION
    note: Optional[str] = None

    def __post_init__(self):
        for reserved in ("x", "t"):
            if self.H.has_generator_named(reserved):
                raise RecipeInputError(
                    f"{self.H.name} already has a generator named {reserved!r}"
                )
        if self.psi.domain is not self.H:
            raise RecipeInputError(f"{self.psi.name} is not an endomorphism of {self.H.name}")
        if self.cert.domain is not self.H:
            raise RecipeInputError(f"{self.cert.name} does not certify a quotient of {self.H.name}")
        for w in (self.u, self.v, self.y):
            self.H.check(w)
        missing = [g.name for g in self.H.generators if not self.witnesses.get(g)]
        if missing:
            raise RecipeInputError(f"no surjectivity witness for {', '.join(missing)}")
        allowed = set(self.H.generators) | {self.x, self.t}
        for g, w in self.witnesses.items():
            unknown = w.generators() - allowed
            if g not in self.H.generators or unknown:
                raise RecipeInputError(f"witness for {g.name} uses generators outside G")

    @property
    def x(self) -> GeneratorId:
        return GeneratorId("x", f"{self.name}.X")

    @property
    def t(self) -> GeneratorId:
        return GeneratorId("t", self.name)

    def extension_generators(self) -> Tuple[GeneratorId, ...]:
        return self.H.generators + (self.x, self.t)

    @property
    def relator(self) -> Word:
        """u x u^-1 x^-1, the image of v under conjugation by t."""
        return commutator(self.u, Word.of(self.x))


@dataclass(eq=False)
class NonHopfWitness:
    G: GroupNode
    psi_tilde: Endomorphism
    kernel_element: Word
    checks: VerificationReport
    hopfian_assumption: str

    def to_json(self) -> Dict[str, object]:
        return {
            "group": self.G.to_json(),
            "psi_tilde": self.psi_tilde.to_json(),
            "kernel_element": format_word(self.kernel_element),
            "hopfian_assumption": self.hopfian_assumption,
        }


# --- hypotheses -------------------------------------------------------------


def _shown(node: GroupNode, w: Word) -> str:
    return format_word(node.reduce(w))


def check_hypotheses(inp: RecipeInput) -> VerificationReport:
    """One report entry per hypothesis of the construction; failures are entries, not errors."""
    H, psi, u, v = inp.H, inp.psi, inp.u, inp.v
    report = VerificationReport(inp.name)
    prefix = f"{inp.name}.hypothesis"

    def nontrivial(w: Word, label: str):
        return lambda: (not H.is_identity(w), f"{label} reduces to {_shown(H, w)}")

    def infinite_order():
        o = H.order(v)
        return o.is_infinite, f"order(v) = {o}"

    def u_square():
        return not H.is_identity(u ** 2), f"order(u) = {H.order(u)}"

    def kernel(w: Word, label: str):
        def check():
            image = apply(psi, w)
            return H.is_identity(image), f"{psi.name}({label}) = {format_word(image)} reduces to {_shown(H, image)}"

        return check

    def preimage():
        image = apply(psi, inp.y)
        ok = verify_preimage(psi, u, inp.y)
        return ok, f"{psi.name}(y) = {format_word(image)}; y = {format_word(inp.y)}"

    def nonmembership():
        gens = [psi.image_of(g) for g in H.generators]
        result = certify_nonmembership(H, gens, v, inp.cert)
        if not result.holds:
            raise CertificateInconclusive(f"{inp.cert.name}: {result.evidence}")
        return True, f"{inp.cert.name} (order {inp.cert.table.order}): {result.evidence}"

    report.record(f"{prefix}.u_nontrivial", "u is nontrivial in H", nontrivial(u, "u"))
    report.record(f"{prefix}.u_square_nontrivial", "u^2 is nontrivial in H", u_square)
    report.record(f"{prefix}.v_nontrivial", "v is nontrivial in H", nontrivial(v, "v"))
    report.record(f"{prefix}.v_infinite_order", "v has infinite order in H", infinite_order)
    report.record(f"{prefix}.u_in_kernel", "u lies in the kernel of psi", kernel(u, "u"))
    report.record(f"{prefix}.v_in_kernel", "v lies in the kernel of psi", kernel(v, "v"))
    report.record(f"{prefix}.u_in_image", "u = psi(y) lies in the image of psi", preimage)
    report.record(
        f"{prefix}.v_not_in_image", "v is outside the image of psi (quotient certificate)", nonmembership
    )
    return report


# --- construction -----------------------------------------------------------


def build_extension(inp: RecipeInput, hypotheses: Optional[VerificationReport] = None) -> HnnExtension:
    """
    Build G = Hnn(H * <x>, t, v -> [u, x]).

    Args:
        inp: The recipe input
        hypotheses: A finished check_hypotheses report; computed when omitted

    Raises:
        HypothesesNotChecked: If some hypothesis entry did not pass
        AssocValidationFailed: If v or [u, x] is not of infinite order
    """
    if hypotheses is None:
        hypotheses = check_hypotheses(inp)
    pending = [e.id for e in hypotheses.entries if e.status is not Status.PASS]
    if pending:
        raise HypothesesNotChecked(f"hypotheses not established: {', '.join(pending)}")
    X = FreeGroup(inp.x.scope, (inp.x,))
    HX = FreeProduct(f"{inp.name}.HX", inp.H, X)
    G = hnn(inp.name, HX, inp.t, CyclicAssoc(inp.v, inp.relator))
    logger.info("built %s with t^-1 (%s) t = %s", inp.name, format_word(inp.v), format_word(inp.relator))
    return G


def extend_endomorphism(inp: RecipeInput, G: GroupNode) -> Endomorphism:
    """
    psi~: psi on H, identity on x and t, verified against every relator of G.

    Raises:
        HomomorphismCheckFailed: If some relator of G is not killed
    """
    images = dict(inp.psi.images)
    images[inp.x] = Word.of(inp.x)
    images[inp.t] = Word.of(inp.t)
    e = Endomorphism(G, images, name=f"{inp.psi.name}~")
    if not e.verify():
        raise HomomorphismCheckFailed(e.failing)
    return e


def image_witness(inp: RecipeInput) -> Word:
    """t [y, x] t^-1, whose image under psi~ is v."""
    t = Word.of(inp.t)
    return t * commutator(inp.y, Word.of(inp.x)) * t.inverse()


# --- hyperbolicity and the elementary subgroup ----------------------------------


def _free_letter(H: GroupNode, preferred: str = "x") -> GeneratorId:
    name, k = preferred, 0
    while H.has_generator_named(name):
        k += 1
        name = f"{preferred}{k}"
    return GeneratorId(name, f"{H.name}.{name}")


def _with_free_letter(H: GroupNode, x: Optional[GeneratorId] = None) -> Tuple[FreeProduct, GeneratorId]:
    x = x or _free_letter(H)
    return FreeProduct(f"{H.name}*<{x.name}>", H, FreeGroup(x.scope, (x,))), x


def hyperbolic_syllable_count(H: GroupNode, u: Word, x: Optional[GeneratorId] = None) -> int:
    """Syllables of the cyclically reduced form of [u, x] in H * <x>."""
    if H.is_identity(u):
        raise TrivialU(f"{format_word(u)} is trivial in {H.name}")
    HX, x = _with_free_letter(H, x)
    _, core = cyclically_reduce_in(HX, commutator(u, Word.of(x)))
    return len(syllables(HX, core))


def certify_hyperbolic(H: GroupNode, u: Word) -> bool:
    """
    [u, x] is cyclically reduced of syllable length >= 2 in H * <x>.

    Such an element has infinite order and is not conjugate into a factor.

    Raises:
        TrivialU: If u is trivial in H
    """
    return hyperbolic_syllable_count(H, u) >= 2


def _alphabet(generators: Sequence[GeneratorId]) -> List[Letter]:
    out: List[Letter] = []
    for g in generators:
        out.extend([(g, 1), (g, -1)])
    return out


def reduced_words(generators: Sequence[GeneratorId], max_len: int) -> Iterator[Word]:
    """Freely reduced words of letter-length <= max_len in length-lexicographic order."""
    alphabet = _alphabet(generators)
    level: List[Tuple[Letter, ...]] = [()]
    yield Word()
    for _ in range(max_len):
        following = []
        for prefix in level:
            for letter in alphabet:
                if prefix and prefix[-1] == (letter[0], -letter[1]):
                    continue
                following.append(prefix + (letter,))
        for letters in following:
            yield Word(letters)
        level = following


def _normalizes(HX: FreeProduct, f: List[Syllable], powers) -> bool:
    f_inv = HX.invert_syllables(f)
    for positive, negative in powers:
        conjugate = HX.multiply_syllables(HX.multiply_syllables(f, positive), f_inv)
        # syllable length is an invariant of the free product normal form
        if len(conjugate) != len(positive):
            continue
        if not HX.multiply_syllables(conjugate, negative) or not HX.multiply_syllables(conjugate, positive):
            return True
    return False


def _search(H: GroupNode, u: Word, max_len: int, max_pow: int, x: Optional[GeneratorId] = None):
    if H.is_identity(u):
        raise TrivialU(f"{format_word(u)} is trivial in {H.name}")
    HX, x = _with_free_letter(H, x)
    g = commutator(u, Word.of(x))
    powers = []
    for n in range(1, max_pow + 1):
        positive = HX.factor_syllables(g ** n)
        powers.append((positive, HX.invert_syllables(positive)))
    found: List[Word] = []
    settled = set()
    examined = 0
    for f in reduced_words(HX.generators, max_len):
        examined += 1
        if examined % 1000 == 0:
            logger.debug("elementary search: %d words examined", examined)
        f_sylls = HX.factor_syllables(f)
        key = tuple(f_sylls)
        if key in settled:
            continue
        # f and f^-1 normalize the same powers
        settled.add(key)
        settled.add(tuple(HX.invert_syllables(f_sylls)))
        if not _normalizes(HX, f_sylls, powers):
            continue
        if HX.cyclic_member(g, f) is not None:
            continue
        logger.warning("elementary search: %s normalizes <[u,x]>", format_word(f))
        found.append(f)
    return found, examined


def elementary_search(H: GroupNode, u: Word, max_len: int, max_pow: int) -> List[Word]:
    """
    Look for elements outside <[u,x]> that conjugate a power of [u,x] to +-itself.

    Any such element would show the maximal elementary subgroup of [u,x] is
    larger than <[u,x]>. The search is exhaustive over freely reduced words
    of H * <x> up to the length bound.

    Args:
        H: The base group
        u: Nontrivial element of H
        max_len: Longest candidate word, counted in letters
        max_pow: Largest power n of [u,x] tried

    Returns:
        One word per counterexample element (an element and its inverse
        count once); empty when there is none at this scale

    Raises:
        TrivialU: If u is trivial in H
    """
    return _search(H, u, max_len, max_pow)[0]


# --- assembly ---------------------------------------------------------------


def embedding_check(
    H: GroupNode, G: GroupNode, cases: int, seed: int = DEFAULT_SEED, max_len: int = 8
) -> Tuple[bool, str]:
    """Random words nontrivial in H stay nontrivial in G."""
    rng = np.random.default_rng(seed)
    tried = 0
    for _ in range(cases):
        w = random_word(rng, H.generators, max_len, min_len=1)
        if H.is_identity(w):
            continue
        tried += 1
        if G.is_identity(w):
            return False, f"{format_word(w)} is nontrivial in {H.name} but trivial in {G.name}"
    return True, f"{tried} random nontrivial words of {H.name} stay nontrivial in {G.name}"


@dataclass
class RecipeRun:
    """Everything produced by running the stages of one recipe."""

    report: VerificationReport
    G: Optional[GroupNode] = None
    psi_tilde: Optional[Endomorphism] = None
    witness: Optional[NonHopfWitness] = None
    stage_errors: Dict[str, Exception] = field(default_factory=dict)


def run_recipe(
    inp: RecipeInput,
    bound: Tuple[int, int] = DEFAULT_BOUND,
    seed: int = DEFAULT_SEED,
    embedding_cases: int = DEFAULT_EMBEDDING_CASES,
    report: Optional[VerificationReport] = None,
) -> RecipeRun:
    """
    Run every stage and record one entry per check, in a fixed order.

    Stages after a failed construction of G or psi~ are not recorded, since
    they have nothing to act on.
    """
    report = report if report is not None else VerificationReport(inp.name)
    run = RecipeRun(report)
    name, H, psi = inp.name, inp.H, inp.psi

    hypotheses = check_hypotheses(inp)
    report.extend(hypotheses)

    for i, r in enumerate(H.relators, start=1):

        def relator_check(r=r):
            image = substitute(r, psi.images)
            return H.is_identity(image), f"{psi.name}({format_word(r)}) = {format_word(image)}"

        report.record(f"{name}.psi.relator_{i}", f"{psi.name} kills relator {format_word(r)}", relator_check)

    def construct():
        run.G = build_extension(inp, hypotheses)
        return True, f"t^-1 ({format_word(inp.v)}) t = {format_word(inp.relator)}; {len(run.G.relators)} relators"

    if report.record(f"{name}.extension", "G = Hnn(H * <x>, t, v -> [u, x]) is well defined", construct).status is not Status.PASS:
        return run
    G = run.G

    report.record(
        f"{name}.embedding",
        "H embeds in G (random nontrivial words stay nontrivial)",
        lambda: embedding_check(H, G, embedding_cases, seed),
    )

    def extend():
        run.psi_tilde = extend_endomorphism(inp, G)
        return True, f"{run.psi_tilde.name} kills all {len(G.relators)} relators of G"

    if report.record(f"{name}.psi_tilde", "psi~ (psi on H, fixing x and t) is a homomorphism of G", extend).status is not Status.PASS:
        return run
    psi_tilde = run.psi_tilde

    def v_in_image():
        w = image_witness(inp)
        image = apply(psi_tilde, w)
        return G.are_equal(image, inp.v), f"{psi_tilde.name}({format_word(w)}) reduces to {_shown(G, image * inp.v.inverse())} * v"

    report.record(f"{name}.v_in_image", "v = psi~(t [y, x] t^-1)", v_in_image)

    def hyperbolic():
        count = hyperbolic_syllable_count(H, inp.u, inp.x)
        return count >= 2, f"cyclically reduced [u, x] has {count} syllables in H * <x>"

    report.record(f"{name}.hyperbolic", "[u, x] is hyperbolic in H * <x>", hyperbolic)

    max_len, max_pow = bound

    def elementary():
        found, examined = _search(H, inp.u, max_len, max_pow, inp.x)
        if found:
            shown = ", ".join(format_word(f) for f in found[:5])
            return False, f"{len(found)} counterexample(s): {shown}"
        return True, f"{examined} words of length <= {max_len}, powers <= {max_pow}: no counterexample"

    report.record(
        f"{name}.elementary",
        f"maximal elementary subgroup of [u, x] is <[u, x]> (bounded search {max_len},{max_pow})",
        elementary,
    )

    def surjective(gen: GeneratorId, witness: Word):
        def check():
            image = apply(psi_tilde, witness)
            return G.are_equal(image, Word.of(gen)), f"{psi_tilde.name}({format_word(witness)}) = {_shown(G, image)}"

        return check

    for g in H.generators:
        report.record(f"{name}.surjective.{g.name}", f"{g.name} lies in the image of psi~", surjective(g, inp.witnesses[g]))
    for g in (inp.x, inp.t):
        report.record(f"{name}.surjective.{g.name}", f"{g.name} is fixed by psi~", surjective(g, Word.of(g)))

    def non_injective():
        killed = in_kernel(psi_tilde, inp.u)
        alive = not G.is_identity(inp.u)
        return killed and alive, f"u = {format_word(inp.u)} is {'non' if alive else ''}trivial in G; psi~(u) {'=' if killed else '!='} 1"

    report.record(f"{name}.non_injective", "psi~ kills the nontrivial element u", non_injective)

    report.assume(
        f"{name}.relatively_hyperbolic",
        "G is hyperbolic relative to H",
        RELATIVE_HYPERBOLICITY_CITATION,
    )
    hopfian_evidence = inp.hopfian_citation if not inp.note else f"{inp.hopfian_citation}; note: {inp.note}"
    report.assume(f"{name}.hopfian", "H is Hopfian", inp.hopfian_citation, hopfian_evidence)

    if report.passed:
        run.witness = NonHopfWitness(G, psi_tilde, inp.u, report, inp.hopfian_citation)
        report.witness_established = True
        logger.info("%s: non-Hopf witness established", name)
    return run


def assemble_nonhopf(
    inp: RecipeInput,
    bound: Tuple[int, int] = DEFAULT_BOUND,
    seed: int = DEFAULT_SEED,
    embedding_cases: int = DEFAULT_EMBEDDING_CASES,
) -> NonHopfWitness:
    """
    Run the whole construction and return the witness, or raise for the first stage that failed.

    Raises:
        HypothesesNotChecked, CertificateInconclusive, HomomorphismCheckFailed,
        SurjectivityWitnessFailed, NonInjectivityFailed
    """
    run = run_recipe(inp, bound, seed, embedding_cases)
    if run.witness is not None:
        return run.witness
    bad = [e for e in run.report.entries if e.status in (Status.FAIL, Status.INCONCLUSIVE)]
    if not bad:
        raise HypothesesNotChecked(f"{inp.name}: no witness was assembled and no stage reported a failure")
    first = bad[0]
    if ".surjective." in first.id:
        raise SurjectivityWitnessFailed(
            [e.id.rsplit(".", 1)[1] for e in bad if ".surjective." in e.id]
        )
    if first.id.endswith(".non_injective"):
        raise NonInjectivityFailed(first.evidence)
    if isinstance(first.error, HopfForgeError):
        raise first.error
    if ".hypothesis." in first.id:
        raise HypothesesNotChecked(f"{first.id}: {first.evidence}")
    if ".psi." in first.id:
        raise HomomorphismCheckFailed([first.evidence])
    raise HopfForgeError(f"{first.id}: {first.evidence}")
