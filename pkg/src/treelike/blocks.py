"""Block systems over cylinder sets: a universe split into blocks plus a map.

Block indices are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cylinders import (
    PrefixInjection,
    PrefixSet,
    apply_map,
    denotes_subset,
    is_disjoint,
    power,
    union,
)
from .errors import ValidationError


class EmptyBlock(ValidationError):
    pass


class BlocksOverlap(ValidationError):
    pass


class BlocksDontCover(ValidationError):
    pass


class DomainMismatch(ValidationError):
    pass


class ImageEscapesUniverse(ValidationError):
    pass


@dataclass(frozen=True)
class BlockSystem:
    alphabet: str
    universe: PrefixSet
    blocks: tuple[PrefixSet, ...]
    map: PrefixInjection
    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    def is_surjective(self) -> bool:
        return self.map.image() == self.universe

    def max_word_length(self) -> int:
        return max(
            [self.universe.max_length(), self.map.max_length()]
            + [b.max_length() for b in self.blocks]
        )


def validate_system(
    alphabet: str,
    universe: Iterable[str],
    blocks: Sequence[Iterable[str]],
    pairs: Iterable[tuple[str, str]],
    names: Sequence[str] | None = None,
) -> BlockSystem:
    """Build a :class:`BlockSystem`, checking every structural hypothesis.

    Surjectivity of the map is not required.
    """
    U = PrefixSet.of(alphabet, universe)
    Xs = tuple(PrefixSet.of(alphabet, b) for b in blocks)
    if not Xs:
        raise EmptyBlock("no blocks")
    if names is None:
        names = tuple(f"X{i + 1}" for i in range(len(Xs)))
    names = tuple(names)
    if len(names) != len(Xs) or len(set(names)) != len(names):
        raise ValidationError("block names must be distinct, one per block")
    for i, X in enumerate(Xs):
        if X.is_empty():
            raise EmptyBlock(i)
    for i in range(len(Xs)):
        for j in range(i + 1, len(Xs)):
            if not is_disjoint(Xs[i], Xs[j]):
                raise BlocksOverlap(i, j)
    if union(*Xs) != U:
        raise BlocksDontCover(str(union(*Xs)), str(U))
    f = PrefixInjection.of(alphabet, pairs)
    if f.domain() != U:
        raise DomainMismatch(str(f.domain()), str(U))
    if not denotes_subset(f.image(), U):
        raise ImageEscapesUniverse(str(f.image()), str(U))
    return BlockSystem(alphabet, U, Xs, f, names)


def block_image(sys: BlockSystem, i: int, m: int) -> PrefixSet:
    """``f^m(X_i)`` via the composed rewrite system ``power(f, m)``."""
    return apply_map(power(sys.map, m), sys.blocks[i])


@dataclass(frozen=True)
class IncidenceMatrix:
    power: int
    entries: tuple[tuple[int, ...], ...]

    def row_support(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, x in enumerate(self.entries[i]) if x)


def incidence_matrix(sys: BlockSystem, m: int) -> IncidenceMatrix:
    if m < 1:
        raise ValueError("power must be at least 1")
    fm = power(sys.map, m)
    rows = []
    for X in sys.blocks:
        img = apply_map(fm, X)
        rows.append(tuple(0 if is_disjoint(img, Y) else 1 for Y in sys.blocks))
    return IncidenceMatrix(m, tuple(rows))


def hypothesis_check_at(sys: BlockSystem, m: int) -> tuple[int, int] | None:
    """First ``(i, j)`` where ``f^m(X_i)`` and ``X_j`` are neither disjoint nor nested."""
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return None
    fm = power(sys.map, m)
    for i, X in enumerate(sys.blocks):
        img = apply_map(fm, X)
        for j, Y in enumerate(sys.blocks):
            if is_disjoint(img, Y) or denotes_subset(img, Y) or denotes_subset(Y, img):
                continue
            return (i, j)
    return None


def hypothesis_sweep(sys: BlockSystem, up_to: int) -> tuple[int, int, int] | None:
    """Check every power ``1..up_to``; returns ``(m, i, j)`` of the first failure."""
    for m in range(1, up_to + 1):
        v = hypothesis_check_at(sys, m)
        if v is not None:
            return (m, *v)
    return None
