"""Contraction search on cylinder block systems, with independent re-checks.

The search itself runs through :class:`~treelike.setsystems.CylinderSystem`,
which computes ``f^m(X_i)`` by applying ``f`` one step at a time.  The
verification here recomputes the image from the composed rewrite system
``power(f, m)`` and then confirms it again by brute-force truncation, so a
witness is only reported after two routes that share nothing but the
normal form agree with the search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import BlockSystem, block_image
from .contraction import (
    DEFAULT_MAX_POWER,
    AlgorithmTrace,
    ContractionWitness,
    find_contracting_block,
    find_strictly_contracting_block,
)
from .cylinders import (
    PrefixSet,
    denotes_subset,
    first_word,
    is_disjoint,
    subtract,
    truncation_oracle_disjoint,
    truncation_oracle_subset,
)
from .errors import InvariantBroken
from .lattice import FiniteSemilattice, validate_semilattice
from .setsystems import CylinderSystem

DEFAULT_BUDGET = 4096


def find_block_witness(
    sys: BlockSystem,
    strict: bool = False,
    max_power: int = DEFAULT_MAX_POWER,
    budget: int | None = DEFAULT_BUDGET,
) -> tuple[ContractionWitness, AlgorithmTrace]:
    cs = CylinderSystem(sys, budget=budget)
    if strict:
        return find_strictly_contracting_block(cs, max_power)
    return find_contracting_block(cs, max_power)


def default_oracle_depth(sys: BlockSystem, m: int) -> int:
    """Longest word any ``f^m(X_i)`` can need: every step adds at most the growth."""
    return sys.max_word_length() + m * sys.map.max_growth()


@dataclass(frozen=True)
class Verification:
    block: int
    power: int
    image: PrefixSet
    contained: bool
    strict: bool
    separator: str | None
    oracle_depth: int
    oracle_contained: bool
    oracle_separator_ok: bool | None

    @property
    def agrees(self) -> bool:
        if self.contained != self.oracle_contained:
            return False
        return not self.strict or bool(self.oracle_separator_ok)


def verify_block_witness(
    sys: BlockSystem, i: int, m: int, oracle_depth: int | None = None
) -> Verification:
    """Recheck ``f^m(X_i) ⊆ X_i`` by composition, then by truncation.

    Every set involved is a union of cylinders no longer than the longest
    word among the image, the block and the separator, so truncating there
    already decides both questions exactly.  That is the default depth;
    ``oracle_depth`` asks for a deeper enumeration (e.g.
    :func:`default_oracle_depth`), never a shallower one.
    """
    X = sys.blocks[i]
    img = block_image(sys, i, m)
    contained = denotes_subset(img, X)
    strict = contained and img != X
    sep = first_word(subtract(X, img)) if strict else None
    exact = max(img.max_length(), X.max_length(), len(sep) if sep is not None else 0)
    L = exact if oracle_depth is None else max(oracle_depth, exact)
    oracle_contained = truncation_oracle_subset(img, X, L)
    sep_ok = None
    if sep is not None:
        Z = PrefixSet.of(sys.alphabet, [sep])
        sep_ok = truncation_oracle_subset(Z, X, L) and truncation_oracle_disjoint(Z, img, L)
    return Verification(i, m, img, contained, strict, sep, L, oracle_contained, sep_ok)


@dataclass(frozen=True)
class ContractionClaim:
    """``f^m(X_i) << X_i`` in the semilattice of clopen cylinder unions.

    The image is a proper subset of the block and ``separator`` names a
    nonzero cylinder below the block that is orthogonal to the image.
    """

    block_index: int
    block: PrefixSet
    image: PrefixSet
    power: int
    separator: str

    def as_dict(self) -> dict:
        return {
            "block": self.block_index,
            "block_set": self.block.sorted_words(),
            "image": self.image.sorted_words(),
            "power": self.power,
            "separator": self.separator,
        }


def extract_contraction_witness(
    sys: BlockSystem,
    max_power: int = DEFAULT_MAX_POWER,
    budget: int | None = DEFAULT_BUDGET,
) -> tuple[ContractionClaim, AlgorithmTrace]:
    w, trace = find_block_witness(sys, strict=True, max_power=max_power, budget=budget)
    X = sys.blocks[w.block]
    img = block_image(sys, w.block, w.power)
    Z = PrefixSet.of(sys.alphabet, [w.separator])
    if not (denotes_subset(img, X) and img != X):
        raise InvariantBroken("image is not a proper subset of the block")
    if not (denotes_subset(Z, X) and is_disjoint(Z, img)):
        raise InvariantBroken("separator is not a cylinder of the block missed by the image")
    return ContractionClaim(w.block, X, img, w.power, w.separator), trace


def cylinder_semilattice(alphabet: str, depth: int) -> tuple[FiniteSemilattice, list[str | None]]:
    """Cylinders of words up to ``depth`` plus the empty set, under intersection.

    Element 0 is the empty set (labelled None); the others are words.
    """
    words = [""]
    frontier = [""]
    for _ in range(depth):
        frontier = [w + a for w in frontier for a in alphabet]
        words.extend(frontier)
    labels: list[str | None] = [None] + words
    pos = {w: i + 1 for i, w in enumerate(words)}

    def meet(a: str | None, b: str | None) -> int:
        if a is None or b is None:
            return 0
        if a.startswith(b):
            return pos[a]
        if b.startswith(a):
            return pos[b]
        return 0

    table = [[meet(a, b) for b in labels] for a in labels]
    return validate_semilattice(table), labels
