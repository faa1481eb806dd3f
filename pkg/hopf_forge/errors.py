"""
Exception hierarchy for hopf_forge.

Every failure a caller can act on is a subclass of HopfForgeError and carries
the data needed to report it (generator, relators, source span, ...).
"""

from typing import Any, List, Optional, Tuple


class HopfForgeError(Exception):
    """Root of all hopf_forge errors."""


class ConfigError(HopfForgeError):
    """An environment variable holds a value that cannot be used."""

    def __init__(self, variable: str, value: str, expected: str):
        self.variable, self.value, self.expected = variable, value, expected
        super().__init__(f"{variable}={value!r} is invalid: expected {expected}")


# word-core


class WordSyntaxError(HopfForgeError):
    """A word literal could not be parsed."""

    def __init__(self, text: str, position: int, message: str):
        self.text, self.position = text, position
        super().__init__(f"{message} at offset {position} in {text!r}")


class UnmappedGenerator(HopfForgeError):
    """A substitution map has no image for a generator that occurs in the word."""

    def __init__(self, generator: Any):
        self.generator = generator
        super().__init__(f"no image given for generator {generator}")


# coset-enum and group-tower


class UnknownGenerator(HopfForgeError):
    """A word uses a generator the group (or table) does not know."""

    def __init__(self, generator: Any, where: str = ""):
        self.generator = generator
        suffix = f" in {where}" if where else ""
        super().__init__(f"unknown generator {generator}{suffix}")


class CosetOverflow(HopfForgeError):
    """Coset enumeration exceeded its limit; the group may be infinite."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"coset enumeration exceeded {limit} cosets")


class EmptyPresentation(HopfForgeError):
    """A presentation without generators was given to the enumerator."""

    def __init__(self):
        super().__init__("presentation has no generators")


class TowerConstructionError(HopfForgeError):
    """A tower node could not be built from the given parts."""


class AssocValidationFailed(TowerConstructionError):
    """Associated-subgroup data of an HNN node failed validation."""


class NotAFreeProduct(HopfForgeError):
    """A free-product-only operation was applied to another node kind."""


class TrivialGenerator(HopfForgeError):
    """cyclic_member was asked about the subgroup generated by the identity."""


class BoundUnavailable(HopfForgeError):
    """No level of the tower yields a growth bound for a membership question."""


# morphism


class Unverified(HopfForgeError):
    """An endomorphism was applied before its homomorphism check passed."""


class InvalidCertificate(HopfForgeError):
    """A quotient certificate's projection does not respect the domain relators."""

    def __init__(self, failing: List[Any]):
        self.failing = list(failing)
        super().__init__(f"projection violates {len(self.failing)} relator(s)")


class CertificateInconclusive(HopfForgeError):
    """The finite quotient cannot separate the element from the subgroup."""


# recipe


class RecipeInputError(HopfForgeError):
    """A recipe input is structurally unusable (name clashes, empty witnesses)."""


class HypothesesNotChecked(HopfForgeError):
    """build_extension was called on an input whose hypotheses did not all pass."""


class HomomorphismCheckFailed(HopfForgeError):
    """The extended endomorphism does not respect some relator of G."""

    def __init__(self, failing: List[Any]):
        self.failing = list(failing)
        super().__init__(f"extended map violates {len(self.failing)} relator(s)")


class TrivialU(HopfForgeError):
    """The element u is trivial, so [u,x] is trivial too."""


class SurjectivityWitnessFailed(HopfForgeError):
    """Some surjectivity witness does not map onto its generator."""

    def __init__(self, generators: List[str]):
        self.generators = list(generators)
        super().__init__(f"witness failed for {', '.join(self.generators)}")


class NonInjectivityFailed(HopfForgeError):
    """u is not a nontrivial kernel element of the extended endomorphism."""


# frontend


Span = Tuple[int, int, int, int]


class PlanSyntaxError(HopfForgeError):
    """A plan file does not match the grammar."""

    def __init__(self, line: int, column: int, expected: List[str]):
        self.line, self.column, self.expected = line, column, sorted(expected)
        shown = ", ".join(self.expected[:8]) or "end of input"
        super().__init__(f"line {line}, column {column}: expected {shown}")


class UndefinedName(HopfForgeError):
    """A declaration refers to a name that was not declared before it."""

    def __init__(self, name: str, span: Optional[Span] = None):
        self.name, self.span = name, span
        where = f" (line {span[0]}, column {span[1]})" if span else ""
        super().__init__(f"undefined name {name!r}{where}")


class DuplicateName(HopfForgeError):
    """A name is declared twice, or two generators share a visible name."""

    def __init__(self, name: str, span: Optional[Span] = None):
        self.name, self.span = name, span
        where = f" (line {span[0]}, column {span[1]})" if span else ""
        super().__init__(f"duplicate name {name!r}{where}")


class ResolveError(HopfForgeError):
    """A declaration failed to elaborate; wraps the cause with its source span."""

    def __init__(self, message: str, span: Optional[Span] = None, cause: Exception = None):
        self.span, self.cause = span, cause
        where = f"line {span[0]}, column {span[1]}: " if span else ""
        super().__init__(f"{where}{message}")
