"""
The plan language: grammar, syntax tree and pretty-printer.

A plan declares groups, endomorphisms, quotient certificates, recipes and
checks. Parsing only builds the syntax tree (with source spans) and checks
that declaration names are unique and declared before use; generators are
looked up later, when the plan is resolved.

Word syntax::

    b^-1 c b c        letters with optional integer exponents
    (k s k^-1)^2      parenthesized subwords
    [s a s^-1, b]     commutators [p, q] = p q p^-1 q^-1
    1                 the identity (also written ε)
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import DuplicateName, PlanSyntaxError, Span, UndefinedName, WordSyntaxError
from .words import EMPTY, GeneratorId, Word, commutator, concat

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: decl*

?decl: group_decl | endo_decl | cert_decl | recipe_decl | check_decl

group_decl: "group" NAME "=" group_body
?group_body: presentation
    | "free" "(" names ")"                  -> free
    | "free_abelian" "(" names ")"          -> free_abelian
    | "free_product" "(" NAME "," NAME ")"  -> free_product
    | "hnn" "(" NAME "," NAME "," assoc ")" -> hnn
presentation: "presentation" "{" "gens" names ";" "rels" [word_list] ";" "}"
names: NAME+
word_list: word ("," word)*

?assoc: "cyclic" "{" word "->" word "}"                -> cyclic
    | "auto" "{" mapping "}" [inverse_block]          -> auto
inverse_block: "inverse" "{" mapping "}"
mapping: mapping_item+
mapping_item: NAME "->" word ";"

endo_decl: "endo" NAME ":" NAME "{" mapping "}"
cert_decl: "cert" NAME [":" NAME] "{" "target" NAME ";" "map" "{" mapping "}" "}"
recipe_decl: "recipe" NAME "{" "H" NAME ";" "psi" NAME ";" "u" word ";" "v" word ";" "y" word ";" "cert" NAME ";" "witness" "{" mapping "}" [hopfian_field] [note_field] "}"
hopfian_field: "hopfian" STRING ";"
note_field: "note" STRING ";"

check_decl: "check" STRING "{" assertion [";"] "}"
?assertion: "identity" "(" NAME "," word ")"                  -> identity
    | "nontrivial" "(" NAME "," word ")"                       -> nontrivial
    | "equal" "(" NAME "," word "," word ")"                   -> equal
    | "distinct" "(" NAME "," word "," word ")"                -> distinct
    | "order" "(" NAME "," word ")" "=" order_value            -> order
    | "member" "(" NAME "," word "," word ")" "=" member_value  -> member
    | "kernel" "(" NAME "," word ")"                           -> kernel
    | "homomorphism" "(" NAME ")"                              -> homomorphism
order_value: INT -> finite_value
    | "infinite" -> infinite_value
member_value: SIGNED_INT -> power_value
    | "none" -> none_value

word: "1"      -> one
    | "ε"      -> one
    | term+    -> product
term: atom ["^" SIGNED_INT]
?atom: NAME                      -> letter
    | "(" word ")"               -> paren
    | "[" word "," word "]"      -> bracket

NAME: /[A-Za-z][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.ESCAPED_STRING -> STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""


# --- word expressions -------------------------------------------------------


@dataclass(frozen=True)
class NameTerm:
    name: str
    exponent: int = 1


@dataclass(frozen=True)
class ParenTerm:
    body: "WordExpr"
    exponent: int = 1


@dataclass(frozen=True)
class CommutatorTerm:
    left: "WordExpr"
    right: "WordExpr"
    exponent: int = 1


Term = Union[NameTerm, ParenTerm, CommutatorTerm]


@dataclass(frozen=True)
class WordExpr:
    """An unresolved word: a product of terms; no terms means the identity."""

    terms: Tuple[Term, ...] = ()

    def names(self) -> List[str]:
        out: List[str] = []
        for t in self.terms:
            if isinstance(t, NameTerm):
                out.append(t.name)
            elif isinstance(t, ParenTerm):
                out.extend(t.body.names())
            else:
                out.extend(t.left.names())
                out.extend(t.right.names())
        return out


def build_word(expr: WordExpr, lookup: Callable[[str], GeneratorId]) -> Word:
    """Evaluate a word expression, resolving each name through lookup."""
    parts = []
    for t in expr.terms:
        if isinstance(t, NameTerm):
            parts.append(Word.of(lookup(t.name), t.exponent))
        elif isinstance(t, ParenTerm):
            parts.append(build_word(t.body, lookup) ** t.exponent)
        else:
            left, right = build_word(t.left, lookup), build_word(t.right, lookup)
            parts.append(commutator(left, right) ** t.exponent)
    return concat(*parts)


def _exp(e: int) -> str:
    return "" if e == 1 else f"^{e}"


def format_expr(expr: WordExpr) -> str:
    if not expr.terms:
        return "1"
    out = []
    for t in expr.terms:
        if isinstance(t, NameTerm):
            out.append(f"{t.name}{_exp(t.exponent)}")
        elif isinstance(t, ParenTerm):
            out.append(f"({format_expr(t.body)}){_exp(t.exponent)}")
        else:
            out.append(f"[{format_expr(t.left)}, {format_expr(t.right)}]{_exp(t.exponent)}")
    return " ".join(out)


# --- declarations -----------------------------------------------------------

Mapping_ = Tuple[Tuple[str, WordExpr], ...]


@dataclass(frozen=True)
class PresentationBody:
    generators: Tuple[str, ...]
    relators: Tuple[WordExpr, ...] = ()


@dataclass(frozen=True)
class FreeBody:
    generators: Tuple[str, ...]
    abelian: bool = False


@dataclass(frozen=True)
class FreeProductBody:
    left: str
    right: str


@dataclass(frozen=True)
class CyclicBody:
    source: WordExpr
    target: WordExpr


@dataclass(frozen=True)
class AutoBody:
    mapping: Mapping_
    inverse: Optional[Mapping_] = None


@dataclass(frozen=True)
class HnnBody:
    base: str
    stable: str
    assoc: Union[CyclicBody, AutoBody]


GroupBody = Union[PresentationBody, FreeBody, FreeProductBody, HnnBody]


@dataclass(frozen=True)
class GroupDecl:
    name: str
    body: GroupBody
    span: Span = field(default=(0, 0, 0, 0), compare=False)


@dataclass(frozen=True)
class EndoDecl:
    name: str
    domain: str
    images: Mapping_
    span: Span = field(default=(0, 0, 0, 0), compare=False)


@dataclass(frozen=True)
class CertDecl:
    name: str
    target: str
    projection: Mapping_
    domain: Optional[str] = None
    span: Span = field(default=(0, 0, 0, 0), compare=False)


@dataclass(frozen=True)
class RecipeDecl:
    name: str
    group: str
    psi: str
    u: WordExpr
    v: WordExpr
    y: WordExpr
    cert: str
    witnesses: Mapping_
    hopfian: Optional[str] = None
    note: Optional[str] = None
    span: Span = field(default=(0, 0, 0, 0), compare=False)


@dataclass(frozen=True)
class Assertion:
    """kind is one of identity, nontrivial, equal, distinct, order, member, kernel, homomorphism."""

    kind: str
    subject: str
    words: Tuple[WordExpr, ...] = ()
    expected: Optional[Union[int, str]] = None


@dataclass(frozen=True)
class CheckDecl:
    label: str
    assertion: Assertion
    span: Span = field(default=(0, 0, 0, 0), compare=False)


Declaration = Union[GroupDecl, EndoDecl, CertDecl, RecipeDecl, CheckDecl]


@dataclass(frozen=True)
class PlanFile:
    declarations: Tuple[Declaration, ...] = ()

    @property
    def source_spans(self) -> List[Span]:
        return [d.span for d in self.declarations]

    def named(self) -> Dict[str, Declaration]:
        return {d.name: d for d in self.declarations if not isinstance(d, CheckDecl)}


# --- parsing ------------------------------------------------------------------


def _span(meta) -> Span:
    if getattr(meta, "empty", True):
        return (0, 0, 0, 0)
    return (meta.line, meta.column, meta.end_line, meta.end_column)


def _string(token) -> str:
    try:
        return json.loads(str(token))
    except ValueError:
        return str(token)[1:-1]


class _ToAst(Transformer):
    """Turn the lark parse tree into the frozen declaration classes above."""

    # words
    def one(self, _):
        return WordExpr()

    def product(self, terms):
        return WordExpr(tuple(terms))

    def term(self, children):
        atom, exponent = children
        e = 1 if exponent is None else int(exponent)
        if isinstance(atom, str):
            return NameTerm(atom, e)
        if isinstance(atom, tuple):
            return CommutatorTerm(atom[0], atom[1], e)
        return ParenTerm(atom, e)

    def letter(self, children):
        return str(children[0])

    def paren(self, children):
        return children[0]

    def bracket(self, children):
        return (children[0], children[1])

    def word_list(self, words):
        return tuple(words)

    def names(self, tokens):
        return tuple(str(t) for t in tokens)

    def mapping_item(self, children):
        return (str(children[0]), children[1])

    def mapping(self, items):
        return tuple(items)

    # groups
    def presentation(self, children):
        gens, rels = children
        return PresentationBody(gens, rels or ())

    def free(self, children):
        return FreeBody(children[0])

    def free_abelian(self, children):
        return FreeBody(children[0], abelian=True)

    def free_product(self, children):
        return FreeProductBody(str(children[0]), str(children[1]))

    def cyclic(self, children):
        return CyclicBody(children[0], children[1])

    def inverse_block(self, children):
        return children[0]

    def auto(self, children):
        return AutoBody(children[0], children[1])

    def hnn(self, children):
        return HnnBody(str(children[0]), str(children[1]), children[2])

    @v_args(meta=True)
    def group_decl(self, meta, children):
        return GroupDecl(str(children[0]), children[1], _span(meta))

    @v_args(meta=True)
    def endo_decl(self, meta, children):
        return EndoDecl(str(children[0]), str(children[1]), children[2], _span(meta))

    @v_args(meta=True)
    def cert_decl(self, meta, children):
        name, domain, target, projection = children
        return CertDecl(
            str(name), str(target), projection, None if domain is None else str(domain), _span(meta)
        )

    def hopfian_field(self, children):
        return _string(children[0])

    def note_field(self, children):
        return _string(children[0])

    @v_args(meta=True)
    def recipe_decl(self, meta, children):
        name, group, psi, u, v, y, cert, witnesses, hopfian, note = children
        return RecipeDecl(
            str(name), str(group), str(psi), u, v, y, str(cert), witnesses, hopfian, note, _span(meta)
        )

    # checks
    def finite_value(self, children):
        return int(children[0])

    def infinite_value(self, _):
        return "infinite"

    def power_value(self, children):
        return int(children[0])

    def none_value(self, _):
        return "none"

    def identity(self, c):
        return Assertion("identity", str(c[0]), (c[1],))

    def nontrivial(self, c):
        return Assertion("nontrivial", str(c[0]), (c[1],))

    def equal(self, c):
        return Assertion("equal", str(c[0]), (c[1], c[2]))

    def distinct(self, c):
        return Assertion("distinct", str(c[0]), (c[1], c[2]))

    def order(self, c):
        return Assertion("order", str(c[0]), (c[1],), c[2])

    def member(self, c):
        return Assertion("member", str(c[0]), (c[1], c[2]), c[3])

    def kernel(self, c):
        return Assertion("kernel", str(c[0]), (c[1],))

    def homomorphism(self, c):
        return Assertion("homomorphism", str(c[0]))

    @v_args(meta=True)
    def check_decl(self, meta, children):
        return CheckDecl(_string(children[0]), children[1], _span(meta))

    def start(self, decls):
        return PlanFile(tuple(decls))


_PARSER = Lark(
    GRAMMAR,
    parser="lalr",
    start=["start", "word"],
    propagate_positions=True,
    maybe_placeholders=True,
)


def _describe(terminal: str) -> str:
    try:
        pattern = _PARSER.get_terminal(terminal).pattern
    except (KeyError, AttributeError):
        return terminal
    if pattern.type == "str":
        return repr(pattern.value)
    return terminal


def _syntax_error(text: str, exc: UnexpectedInput) -> PlanSyntaxError:
    expected = getattr(exc, "expected", None) or getattr(exc, "allowed", None) or ()
    line, column = getattr(exc, "line", -1), getattr(exc, "column", -1)
    if line is None or line < 1:
        lines = text.split("\n")
        line, column = len(lines), len(lines[-1]) + 1
    return PlanSyntaxError(line, column, [_describe(t) for t in expected])


def _referenced(decl: Declaration) -> List[Tuple[str, Tuple[type, ...]]]:
    """(name, allowed declaration kinds) pairs a declaration refers to."""
    if isinstance(decl, GroupDecl):
        body = decl.body
        if isinstance(body, FreeProductBody):
            return [(body.left, (GroupDecl, RecipeDecl)), (body.right, (GroupDecl, RecipeDecl))]
        if isinstance(body, HnnBody):
            return [(body.base, (GroupDecl, RecipeDecl))]
        return []
    if isinstance(decl, EndoDecl):
        return [(decl.domain, (GroupDecl, RecipeDecl))]
    if isinstance(decl, CertDecl):
        refs = [(decl.target, (GroupDecl,))]
        if decl.domain is not None:
            refs.append((decl.domain, (GroupDecl, RecipeDecl)))
        return refs
    if isinstance(decl, RecipeDecl):
        return [(decl.group, (GroupDecl, RecipeDecl)), (decl.psi, (EndoDecl,)), (decl.cert, (CertDecl,))]
    kind = decl.assertion.kind
    if kind in ("kernel", "homomorphism"):
        return [(decl.assertion.subject, (EndoDecl,))]
    return [(decl.assertion.subject, (GroupDecl, RecipeDecl))]


def check_names(plan: PlanFile) -> None:
    """
    Declaration names are unique and every reference points backwards.

    Raises:
        DuplicateName: If a name is declared twice
        UndefinedName: If a declaration refers to an undeclared or later name,
            or to a name of the wrong kind
    """
    seen: Dict[str, Declaration] = {}
    for decl in plan.declarations:
        for name, kinds in _referenced(decl):
            target = seen.get(name)
            if target is None or not isinstance(target, kinds):
                raise UndefinedName(name, decl.span)
        if not isinstance(decl, CheckDecl):
            if decl.name in seen:
                raise DuplicateName(decl.name, decl.span)
            seen[decl.name] = decl


def parse(text: str) -> PlanFile:
    """
    Parse plan text into a PlanFile.

    Raises:
        PlanSyntaxError: On the first syntax error, with line and column
        DuplicateName, UndefinedName: On declaration-level name errors
    """
    try:
        tree = _PARSER.parse(text, start="start")
        plan = _ToAst().transform(tree)
    except UnexpectedInput as exc:
        raise _syntax_error(text, exc) from None
    except VisitError as exc:
        raise PlanSyntaxError(0, 0, [str(exc.orig_exc)]) from exc
    check_names(plan)
    logger.info("parsed plan with %d declarations", len(plan.declarations))
    return plan


def parse_word_expr(text: str) -> WordExpr:
    if not text.strip():
        return WordExpr()
    try:
        return _ToAst().transform(_PARSER.parse(text, start="word"))
    except UnexpectedInput as exc:
        position = getattr(exc, "pos_in_stream", None)
        if position is None:
            position = len(text)
        raise WordSyntaxError(text, position, "unexpected input") from None


def parse_word(text: str, resolve: Callable[[str], GeneratorId]) -> Word:
    """
    Parse a standalone word literal; the empty string is the identity.

    Args:
        text: Word in plan syntax, e.g. ``"s^-1 a s a^-2"``
        resolve: Maps a generator name to its GeneratorId

    Raises:
        WordSyntaxError: If text is not a word
    """
    if not text.strip():
        return EMPTY
    return build_word(parse_word_expr(text), resolve)


# --- printing -----------------------------------------------------------------


def _mapping(items: Mapping_, indent: str) -> str:
    return "\n".join(f"{indent}{name} -> {format_expr(w)};" for name, w in items)


def _group_body(body: GroupBody) -> str:
    if isinstance(body, PresentationBody):
        rels = ", ".join(format_expr(r) for r in body.relators)
        return f"presentation {{ gens {' '.join(body.generators)}; rels {rels}; }}"
    if isinstance(body, FreeBody):
        keyword = "free_abelian" if body.abelian else "free"
        return f"{keyword}({' '.join(body.generators)})"
    if isinstance(body, FreeProductBody):
        return f"free_product({body.left}, {body.right})"
    assoc = body.assoc
    if isinstance(assoc, CyclicBody):
        text = f"cyclic {{ {format_expr(assoc.source)} -> {format_expr(assoc.target)} }}"
    else:
        inner = " ".join(f"{n} -> {format_expr(w)};" for n, w in assoc.mapping)
        text = f"auto {{ {inner} }}"
        if assoc.inverse is not None:
            inv = " ".join(f"{n} -> {format_expr(w)};" for n, w in assoc.inverse)
            text += f" inverse {{ {inv} }}"
    return f"hnn({body.base}, {body.stable}, {text})"


def _assertion(a: Assertion) -> str:
    args = ", ".join([a.subject] + [format_expr(w) for w in a.words])
    text = f"{a.kind}({args})"
    if a.expected is not None:
        text += f" = {a.expected}"
    return text


def print_decl(decl: Declaration) -> str:
    if isinstance(decl, GroupDecl):
        return f"group {decl.name} = {_group_body(decl.body)}"
    if isinstance(decl, EndoDecl):
        return f"endo {decl.name} : {decl.domain} {{\n{_mapping(decl.images, '    ')}\n}}"
    if isinstance(decl, CertDecl):
        domain = f" : {decl.domain}" if decl.domain else ""
        return (
            f"cert {decl.name}{domain} {{\n    target {decl.target};\n    map {{\n"
            f"{_mapping(decl.projection, '        ')}\n    }}\n}}"
        )
    if isinstance(decl, RecipeDecl):
        lines = [
            f"recipe {decl.name} {{",
            f"    H {decl.group};",
            f"    psi {decl.psi};",
            f"    u {format_expr(decl.u)};",
            f"    v {format_expr(decl.v)};",
            f"    y {format_expr(decl.y)};",
            f"    cert {decl.cert};",
            "    witness {",
            _mapping(decl.witnesses, "        "),
            "    }",
        ]
        if decl.hopfian is not None:
            lines.append(f"    hopfian {json.dumps(decl.hopfian, ensure_ascii=False)};")
        if decl.note is not None:
            lines.append(f"    note {json.dumps(decl.note, ensure_ascii=False)};")
        lines.append("}")
        return "\n".join(lines)
    return f"check {json.dumps(decl.label, ensure_ascii=False)} {{ {_assertion(decl.assertion)} }}"


def print_plan(plan: PlanFile) -> str:
    """Render a plan so that parse(print_plan(p)) == p."""
    return "\n\n".join(print_decl(d) for d in plan.declarations) + ("\n" if plan.declarations else "")
