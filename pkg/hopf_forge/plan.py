"""
Resolving a parsed plan into live objects, and running its checks.

Resolution is eager: every finite presentation is enumerated, every HNN
association validated and every endomorphism verified while the plan is
loaded, and any failure is reported with the span of its declaration.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .config import (
    DEFAULT_BOUND,
    DEFAULT_CHECK_CASES,
    DEFAULT_EMBEDDING_CASES,
    DEFAULT_MAX_COSETS,
    DEFAULT_PROPERTY_CASES,
    DEFAULT_SEED,
    Settings,
)
from .coset_enum import FinitePresentation, enumerate_group
from .dsl import (
    CertDecl,
    CheckDecl,
    CyclicBody,
    EndoDecl,
    FreeBody,
    FreeProductBody,
    GroupDecl,
    HnnBody,
    PlanFile,
    PresentationBody,
    RecipeDecl,
    WordExpr,
    build_word,
    parse,
)
from .errors import (
    DuplicateName,
    HopfForgeError,
    ResolveError,
    Span,
    TowerConstructionError,
    UndefinedName,
    UnknownGenerator,
)
from . import properties
from .morphism import Endomorphism, QuotientCertificate, apply, in_kernel
from .recipe import RecipeInput, build_extension, embedding_check, run_recipe
from .report import VerificationReport
from .tower import (
    BaseAutomorphism,
    CyclicAssoc,
    FiniteGroup,
    FreeAbelianGroup,
    FreeGroup,
    FreeProduct,
    GroupNode,
    finite_automorphism_inverse,
    hnn,
)
from .words import GeneratorId, Word, format_word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

# Report entry ids start with one of these or with a recipe name.
RESERVED_ENTRY_PREFIXES = frozenset({"group", "endo", "cert", "check", "property", "resolve", "embedding"})


@dataclass
class RunOptions:
    """Knobs for a plan run; defaults match the configuration defaults."""

    plan_name: str = "plan"
    seed: int = DEFAULT_SEED
    bound: Tuple[int, int] = DEFAULT_BOUND
    property_cases: int = DEFAULT_CHECK_CASES
    embedding_cases: int = DEFAULT_EMBEDDING_CASES
    max_cosets: int = DEFAULT_MAX_COSETS
    properties: bool = True

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "RunOptions":
        values = dict(
            seed=settings.seed,
            bound=settings.bound,
            property_cases=settings.check_cases,
            max_cosets=settings.max_cosets,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class Environment:
    """Everything a plan declares, by name."""

    groups: Dict[str, GroupNode] = field(default_factory=dict)
    endos: Dict[str, Endomorphism] = field(default_factory=dict)
    certs: Dict[str, QuotientCertificate] = field(default_factory=dict)
    recipes: Dict[str, RecipeInput] = field(default_factory=dict)
    pending_certs: Dict[str, CertDecl] = field(default_factory=dict)
    built: Dict[str, GroupNode] = field(default_factory=dict)

    def group(self, name: str) -> GroupNode:
        """A declared group, or the G of a recipe (built on first use)."""
        if name in self.groups:
            return self.groups[name]
        if name in self.recipes:
            if name not in self.built:
                self.built[name] = build_extension(self.recipes[name])
            return self.built[name]
        raise UndefinedName(name)

    def generators_of(self, name: str) -> Callable[[str], GeneratorId]:
        """Name lookup for words over a group, without building recipe groups."""
        if name in self.groups:
            return _lookup(self.groups[name])
        if name in self.recipes:
            inp = self.recipes[name]
            extra = {inp.x.name: inp.x, inp.t.name: inp.t}
            base = _lookup(inp.H)
            return lambda n: extra[n] if n in extra else base(n)
        raise UndefinedName(name)


def _lookup(node: GroupNode) -> Callable[[str], GeneratorId]:
    def resolve(name: str) -> GeneratorId:
        try:
            return node.generator(name)
        except UnknownGenerator:
            raise UndefinedName(name) from None

    return resolve


def _word(expr: WordExpr, lookup: Callable[[str], GeneratorId], span: Span) -> Word:
    try:
        return build_word(expr, lookup)
    except UndefinedName as exc:
        raise UndefinedName(exc.name, span) from None


def _images(
    items, domain: GroupNode, lookup: Callable[[str], GeneratorId], span: Span
) -> Dict[GeneratorId, Word]:
    out: Dict[GeneratorId, Word] = {}
    for name, expr in items:
        gen = _lookup(domain)(name)
        if gen in out:
            raise DuplicateName(name, span)
        out[gen] = _word(expr, lookup, span)
    return out


class _Resolver:
    def __init__(self, max_cosets: int):
        self.env = Environment()
        self.max_cosets = max_cosets

    def run(self, plan: PlanFile) -> Environment:
        for decl in plan.declarations:
            try:
                self.declare(decl)
            except (UndefinedName, DuplicateName) as exc:
                raise type(exc)(exc.name, exc.span or decl.span) from None
            except ResolveError:
                raise
            except HopfForgeError as exc:
                name = getattr(decl, "name", getattr(decl, "label", "?"))
                raise ResolveError(f"{name}: {exc}", decl.span, exc) from exc
            except (ValueError, KeyError) as exc:
                raise ResolveError(str(exc), decl.span, exc) from exc
        return self.env

    def declare(self, decl) -> None:
        if isinstance(decl, GroupDecl):
            self.env.groups[decl.name] = self.group(decl)
        elif isinstance(decl, EndoDecl):
            self.env.endos[decl.name] = self.endo(decl)
        elif isinstance(decl, CertDecl):
            if decl.domain is None:
                self.env.pending_certs[decl.name] = decl
            else:
                domain = self.env.group(decl.domain)
                self.env.certs[decl.name] = self.cert(decl, domain)
        elif isinstance(decl, RecipeDecl):
            self.env.recipes[decl.name] = self.recipe(decl)
        elif isinstance(decl, CheckDecl):
            self.check(decl)

    def group(self, decl: GroupDecl) -> GroupNode:
        name, body, span = decl.name, decl.body, decl.span
        if isinstance(body, PresentationBody):
            gens = tuple(GeneratorId(g, name) for g in body.generators)
            lookup = _lookup_in(gens)
            rels = tuple(_word(r, lookup, span) for r in body.relators)
            presentation = FinitePresentation(gens, rels)
            return FiniteGroup(name, presentation, enumerate_group(presentation, self.max_cosets))
        if isinstance(body, FreeBody):
            gens = tuple(GeneratorId(g, name) for g in body.generators)
            return FreeAbelianGroup(name, gens) if body.abelian else FreeGroup(name, gens)
        if isinstance(body, FreeProductBody):
            left, right = self.env.group(body.left), self.env.group(body.right)
            try:
                return FreeProduct(name, left, right)
            except TowerConstructionError:
                clash = sorted({g.name for g in left.generators} & {g.name for g in right.generators})
                if clash:
                    raise DuplicateName(clash[0], span) from None
                raise
        return self.hnn(decl, body)

    def hnn(self, decl: GroupDecl, body: HnnBody) -> GroupNode:
        base = self.env.group(body.base)
        if base.has_generator_named(body.stable):
            raise DuplicateName(body.stable, decl.span)
        stable = GeneratorId(body.stable, decl.name)
        lookup = _lookup(base)
        assoc = body.assoc
        if isinstance(assoc, CyclicBody):
            relation = CyclicAssoc(_word(assoc.source, lookup, decl.span), _word(assoc.target, lookup, decl.span))
        else:
            mapping = _images(assoc.mapping, base, lookup, decl.span)
            if assoc.inverse is not None:
                inverse = _images(assoc.inverse, base, lookup, decl.span)
            elif isinstance(base, FiniteGroup):
                inverse = finite_automorphism_inverse(base, mapping)
            else:
                raise TowerConstructionError(
                    f"auto over {base.kind} base {base.name} needs an explicit inverse block"
                )
            relation = BaseAutomorphism(mapping, inverse)
        return hnn(decl.name, base, stable, relation)

    def endo(self, decl: EndoDecl) -> Endomorphism:
        domain = self.env.group(decl.domain)
        images = _images(decl.images, domain, _lookup(domain), decl.span)
        e = Endomorphism(domain, images, name=decl.name)
        if not e.verify():
            shown = ", ".join(format_word(r) for r in e.failing)
            raise ResolveError(f"{decl.name} is not a homomorphism: fails {shown}", decl.span)
        return e

    def cert(self, decl: CertDecl, domain: GroupNode) -> QuotientCertificate:
        target = self.env.group(decl.target)
        if not isinstance(target, FiniteGroup):
            raise ResolveError(f"certificate target {decl.target} is not a finite presentation", decl.span)
        projection = _images(decl.projection, domain, _lookup(target), decl.span)
        return QuotientCertificate(domain, target, projection, name=decl.name)

    def recipe(self, decl: RecipeDecl) -> RecipeInput:
        if decl.name in RESERVED_ENTRY_PREFIXES:
            raise ResolveError(f"recipe name {decl.name!r} is reserved for report entries", decl.span)
        H = self.env.group(decl.group)
        psi = self.env.endos[decl.psi]
        if decl.cert in self.env.certs:
            cert = self.env.certs[decl.cert]
        else:
            cert = self.cert(self.env.pending_certs[decl.cert], H)
        lookup = _lookup(H)
        u, v, y = (_word(e, lookup, decl.span) for e in (decl.u, decl.v, decl.y))
        x, t = GeneratorId("x", f"{decl.name}.X"), GeneratorId("t", decl.name)
        extended = {"x": x, "t": t}

        def over_g(name: str) -> GeneratorId:
            return extended[name] if name in extended else lookup(name)

        witnesses = {}
        for name, expr in decl.witnesses:
            witnesses[lookup(name)] = _word(expr, over_g, decl.span)
        kwargs = {}
        if decl.hopfian is not None:
            kwargs["hopfian_citation"] = decl.hopfian
        return RecipeInput(decl.name, H, psi, u, v, y, cert, witnesses, note=decl.note, **kwargs)

    def check(self, decl: CheckDecl) -> None:
        a = decl.assertion
        if a.kind in ("kernel", "homomorphism"):
            domain = self.env.endos[a.subject].domain
            lookup = _lookup(domain)
        else:
            lookup = self.env.generators_of(a.subject)
        for w in a.words:
            _word(w, lookup, decl.span)


def _lookup_in(gens) -> Callable[[str], GeneratorId]:
    by_name = {g.name: g for g in gens}

    def resolve(name: str) -> GeneratorId:
        if name not in by_name:
            raise UndefinedName(name)
        return by_name[name]

    return resolve


def resolve(plan: PlanFile, max_cosets: Optional[int] = None) -> Environment:
    """
    Elaborate every declaration of a parsed plan.

    Raises:
        UndefinedName, DuplicateName: With the span of the offending declaration
        ResolveError: Wrapping any construction failure with its span
    """
    return _Resolver(max_cosets or DEFAULT_MAX_COSETS).run(plan)


# --- running ------------------------------------------------------------------


def _check_entry(env: Environment, decl: CheckDecl):
    a = decl.assertion

    def words(group_name: str) -> List[Word]:
        lookup = env.generators_of(group_name)
        return [build_word(w, lookup) for w in a.words]

    def check():
        if a.kind in ("kernel", "homomorphism"):
            e = env.endos[a.subject]
            if a.kind == "homomorphism":
                return e.verified, f"{e.name} kills all {len(e.domain.relators)} relators"
            w = build_word(a.words[0], _lookup(e.domain))
            image = apply(e, w)
            return in_kernel(e, w), f"{e.name}({format_word(w)}) = {format_word(image)} reduces to {format_word(e.domain.reduce(image))}"
        node = env.group(a.subject)
        ws = words(a.subject)
        if a.kind == "identity":
            reduced = node.reduce(ws[0])
            return not reduced, f"reduces to {format_word(reduced)}"
        if a.kind == "nontrivial":
            reduced = node.reduce(ws[0])
            return bool(reduced), f"reduces to {format_word(reduced)}"
        if a.kind in ("equal", "distinct"):
            quotient = node.reduce(ws[0] * ws[1].inverse())
            same = not quotient
            return same == (a.kind == "equal"), f"w1 w2^-1 reduces to {format_word(quotient)}"
        if a.kind == "order":
            o = node.order(ws[0])
            expected = None if a.expected == "infinite" else a.expected
            return o.value == expected, f"order = {o}"
        g, w = ws
        n = node.cyclic_member(g, w)
        expected = None if a.expected == "none" else a.expected
        if n is None or expected is None:
            return n == expected, f"member = {'none' if n is None else n}"
        # any n with g^n = w is acceptable when g has finite order
        return node.are_equal(g ** n, g ** expected), f"member = {n}"

    return check


def _declaration_entry(report: VerificationReport, env: Environment, decl) -> None:
    if isinstance(decl, GroupDecl):
        node = env.groups[decl.name]

        def built():
            detail = f"order {node.table.order}" if isinstance(node, FiniteGroup) else f"{len(node.relators)} relators"
            return True, f"{node.kind} node on {len(node.generators)} generators, {detail}"

        report.record(f"group.{decl.name}", f"construct {decl.name}", built)
    elif isinstance(decl, EndoDecl):
        e = env.endos[decl.name]
        report.record(
            f"endo.{decl.name}",
            f"{decl.name} is an endomorphism of {e.domain.name}",
            lambda: (e.verified, f"kills all {len(e.domain.relators)} relators"),
        )
    elif isinstance(decl, CertDecl) and decl.name in env.certs:
        c = env.certs[decl.name]
        report.record(
            f"cert.{decl.name}",
            f"{decl.name} maps {c.domain.name} onto {c.target.name}",
            lambda: (True, f"projection kills all {len(c.domain.relators)} relators; target order {c.table.order}"),
        )


def _property_entries(report: VerificationReport, env: Environment, options: RunOptions) -> None:
    rng = np.random.default_rng(options.seed)
    cases = options.property_cases
    all_gens = [g for node in env.groups.values() for g in node.generators]
    if all_gens:
        report.record(
            "property.free_reduction",
            "free reduction is idempotent",
            lambda: properties.free_reduction(rng, all_gens, cases),
        )
    checked_assoc = set()
    for name, node in env.groups.items():
        report.record(
            f"property.inverse.{name}",
            f"reduce(w) w^-1 is trivial in {name}",
            lambda node=node: properties.inverse_triviality(node, rng, cases),
        )
        if isinstance(node, FiniteGroup):
            report.record(
                f"property.table.{name}",
                f"is_identity agrees with the table of {name}",
                lambda node=node: properties.finite_oracle(node, rng, cases),
            )
        report.record(
            f"property.order.{name}",
            f"element orders are consistent in {name}",
            lambda node=node: properties.order_consistency(node, rng, cases),
        )
        for base, g in properties.associated_generators(node):
            key = (id(base), g)
            if key in checked_assoc:
                continue
            checked_assoc.add(key)
            index = len(checked_assoc)
            report.record(
                f"property.member.{base.name}.{index}",
                f"cyclic_member contract for <{format_word(g)}> in {base.name}",
                lambda base=base, g=g: properties.cyclic_member_contract(base, g, rng, cases),
            )


def run(plan: PlanFile, options: Optional[RunOptions] = None, env: Optional[Environment] = None) -> Tuple[VerificationReport, int]:
    """
    Resolve (unless env is given) and execute every declaration in order.

    Returns:
        (report, exit code): 0 when every entry passes or is assumed, 1 on any
        failing or inconclusive entry, 2 when the plan does not resolve
    """
    options = options or RunOptions()
    report = VerificationReport(options.plan_name)
    if env is None:
        try:
            env = resolve(plan, options.max_cosets)
        except HopfForgeError as exc:
            report.record("resolve", "plan resolves", lambda: (False, str(exc)))
            return report, EXIT_INVALID

    for i, decl in enumerate(plan.declarations, start=1):
        if isinstance(decl, RecipeDecl):
            inp = env.recipes[decl.name]
            result = run_recipe(
                inp,
                bound=options.bound,
                seed=options.seed,
                embedding_cases=options.embedding_cases,
                report=report,
            )
            if result.G is not None:
                env.built.setdefault(decl.name, result.G)
        elif isinstance(decl, CheckDecl):
            report.record(f"check.{i}", decl.label, _check_entry(env, decl))
        else:
            _declaration_entry(report, env, decl)

    if options.properties:
        _property_entries(report, env, options)
    return report, report.exit_code


def run_properties(env: Environment, options: Optional[RunOptions] = None) -> Tuple[VerificationReport, int]:
    """
    Only the seeded property suites of a resolved plan, with the embedding
    property for each recipe.
    """
    options = options or RunOptions(property_cases=DEFAULT_PROPERTY_CASES)
    report = VerificationReport(options.plan_name)
    _property_entries(report, env, options)
    for name, inp in env.recipes.items():

        def embeds(inp=inp):
            G = build_extension(inp)
            return embedding_check(inp.H, G, options.embedding_cases, options.seed)

        report.record(f"embedding.{name}", f"{inp.H.name} embeds in {name}", embeds)
    return report, report.exit_code


def load(path: Union[str, Path]) -> PlanFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def check_file(path: Union[str, Path], options: Optional[RunOptions] = None) -> Tuple[Optional[VerificationReport], int, str]:
    """
    Parse, resolve and run a plan file.

    Returns:
        (report or None, exit code, error message for exit code 2)
    """
    options = options or RunOptions(plan_name=Path(path).stem)
    try:
        plan = load(path)
        env = resolve(plan, options.max_cosets)
    except (HopfForgeError, OSError, UnicodeDecodeError) as exc:
        return None, EXIT_INVALID, str(exc)
    report, code = run(plan, options, env)
    return report, code, ""
