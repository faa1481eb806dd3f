"""
hopf-forge: word problems in towers of HNN extensions and free products, and
a mechanical check of the image-extension construction of non-Hopfian
relatively hyperbolic groups.
"""

from .coset_enum import FinitePresentation, MultiplicationTable, enumerate_group
from .dsl import parse, parse_word, print_plan
from .errors import HopfForgeError
from .morphism import Endomorphism, QuotientCertificate, apply, in_kernel, verify_homomorphism
from .plan import RunOptions, check_file, resolve, run, run_properties
from .recipe import RecipeInput, assemble_nonhopf, check_hypotheses, run_recipe
from .report import VerificationReport
from .tower import (
    CyclicAssoc,
    BaseAutomorphism,
    FiniteGroup,
    FreeAbelianGroup,
    FreeGroup,
    FreeProduct,
    GroupNode,
    hnn,
)
from .words import GeneratorId, Word, format_word

__version__ = "0.1.0"

__all__ = [
    "BaseAutomorphism",
    "CyclicAssoc",
    "Endomorphism",
    "FiniteGroup",
    "FinitePresentation",
    "FreeAbelianGroup",
    "FreeGroup",
    "FreeProduct",
    "GeneratorId",
    "GroupNode",
    "HopfForgeError",
    "MultiplicationTable",
    "QuotientCertificate",
    "RecipeInput",
    "RunOptions",
    "VerificationReport",
    "Word",
    "apply",
    "assemble_nonhopf",
    "check_file",
    "check_hypotheses",
    "enumerate_group",
    "format_word",
    "hnn",
    "in_kernel",
    "parse",
    "parse_word",
    "print_plan",
    "resolve",
    "run",
    "run_properties",
    "run_recipe",
    "verify_homomorphism",
]
