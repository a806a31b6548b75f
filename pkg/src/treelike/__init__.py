"""Tree-like semilattices, tight spectra, inverse semigroup actions, and
contracting block systems over cylinder sets."""

from .blocks import BlockSystem, validate_system
from .contraction import (
    ContractionWitness,
    Exhausted,
    HypothesisViolation,
    NotApplicable,
    find_contracting_block,
    find_strictly_contracting_block,
)
from .cylinders import PrefixInjection, PrefixSet
from .errors import InvariantBroken, TreelikeError, ValidationError
from .lattice import FiniteSemilattice, validate_semilattice
from .semigroup import FiniteInverseSemigroup, validate_inverse_semigroup
from .setsystems import CylinderSystem, FiniteSetSystem

__all__ = [
    "BlockSystem",
    "ContractionWitness",
    "CylinderSystem",
    "Exhausted",
    "FiniteInverseSemigroup",
    "FiniteSemilattice",
    "FiniteSetSystem",
    "HypothesisViolation",
    "InvariantBroken",
    "NotApplicable",
    "PrefixInjection",
    "PrefixSet",
    "TreelikeError",
    "ValidationError",
    "find_contracting_block",
    "find_strictly_contracting_block",
    "validate_inverse_semigroup",
    "validate_semilattice",
    "validate_system",
]
