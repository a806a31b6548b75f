"""The set-system interface consumed by the contraction algorithm.

The algorithm never looks at points.  It only asks questions about the
sets ``f^m(X_i)``: which blocks they meet, whether they are contained in or
equal to a block or a union of blocks, and for a point of ``X_i`` outside
``f^m(X_i)``.  Two concrete systems answer these questions, one over finite
sets (where ``f`` is necessarily a bijection) and one over cylinder sets.
Tests add scripted systems.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Hashable, Mapping, Sequence

from .blocks import BlockSystem
from .cylinders import (
    PrefixSet,
    apply_map,
    denotes_subset,
    first_word,
    is_disjoint,
    subtract,
    union,
)
from .errors import ValidationError

Matrix = tuple[tuple[int, ...], ...]


class SetSystem(ABC):
    """Blocks ``X_0..X_{n-1}`` and an injective self-map of their union."""

    n: int

    @abstractmethod
    def incidence(self, m: int) -> Matrix:
        """``A[i][j] = 1`` iff ``f^m(X_i)`` meets ``X_j``."""

    @abstractmethod
    def hypothesis_violation(self, m: int) -> tuple[int, int] | None:
        """First pair that is neither disjoint nor nested at power ``m``."""

    @abstractmethod
    def image_within(self, i: int, m: int, j: int) -> bool:
        ...

    @abstractmethod
    def image_is_union(self, i: int, m: int, indices: Sequence[int]) -> bool:
        ...

    @abstractmethod
    def image_equals_block(self, i: int, m: int) -> bool:
        ...

    @abstractmethod
    def is_surjective(self) -> bool:
        ...

    @abstractmethod
    def separator(self, i: int, m: int) -> Any:
        """Some piece of ``X_i`` missed by ``f^m(X_i)``."""

    @abstractmethod
    def restrict(self, indices: Sequence[int], stride: int) -> "SetSystem":
        """Blocks ``indices`` only, with ``f^stride`` as the map."""


class ConcreteSystem(SetSystem):
    """Answers the interface from set primitives and cached iterated images."""

    def __init__(self, n: int, stride: int):
        self.n = n
        self.stride = stride
        self._images: dict[tuple[int, int], Any] = {}

    # primitives ------------------------------------------------------------
    @abstractmethod
    def block(self, i: int) -> Any: ...

    @abstractmethod
    def step(self, s: Any) -> Any:
        """Image of a set under the base map ``f`` (not ``f^stride``)."""

    @abstractmethod
    def meets(self, a: Any, b: Any) -> bool: ...

    @abstractmethod
    def subset(self, a: Any, b: Any) -> bool: ...

    @abstractmethod
    def union_of(self, sets: list[Any]) -> Any: ...

    @abstractmethod
    def pick_outside(self, a: Any, b: Any) -> Any:
        """An element (or cylinder) of ``a`` not in ``b``; None if none."""

    # derived ---------------------------------------------------------------
    def image(self, i: int, m: int) -> Any:
        key = (i, m)
        if key not in self._images:
            if m == 0:
                self._images[key] = self.block(i)
            else:
                s = self.image(i, m - 1)
                for _ in range(self.stride):
                    s = self.step(s)
                self._images[key] = s
        return self._images[key]

    def incidence(self, m: int) -> Matrix:
        return tuple(
            tuple(1 if self.meets(self.image(i, m), self.block(j)) else 0 for j in range(self.n))
            for i in range(self.n)
        )

    def hypothesis_violation(self, m: int) -> tuple[int, int] | None:
        for i in range(self.n):
            img = self.image(i, m)
            for j in range(self.n):
                X = self.block(j)
                if not self.meets(img, X) or self.subset(img, X) or self.subset(X, img):
                    continue
                return (i, j)
        return None

    def image_within(self, i: int, m: int, j: int) -> bool:
        return self.subset(self.image(i, m), self.block(j))

    def image_is_union(self, i: int, m: int, indices: Sequence[int]) -> bool:
        u = self.union_of([self.block(q) for q in indices])
        img = self.image(i, m)
        return self.subset(img, u) and self.subset(u, img)

    def image_equals_block(self, i: int, m: int) -> bool:
        return self.image_is_union(i, m, [i])

    def universe(self) -> Any:
        return self.union_of([self.block(i) for i in range(self.n)])

    def is_surjective(self) -> bool:
        imgs = self.union_of([self.image(i, 1) for i in range(self.n)])
        return self.subset(self.universe(), imgs)

    def separator(self, i: int, m: int) -> Any:
        return self.pick_outside(self.block(i), self.image(i, m))


class FiniteSetSystem(ConcreteSystem):
    """Blocks are finite sets and ``f`` is a dict; injective means bijective here."""

    def __init__(
        self,
        blocks: Sequence[frozenset],
        f: Mapping[Hashable, Hashable],
        stride: int = 1,
        validate: bool = True,
    ):
        super().__init__(len(blocks), stride)
        self.blocks = tuple(frozenset(b) for b in blocks)
        self.f = dict(f)
        if validate:
            self._validate()

    def _validate(self) -> None:
        seen: set = set()
        for i, b in enumerate(self.blocks):
            if not b:
                raise ValidationError("empty block", i)
            if seen & b:
                raise ValidationError("blocks overlap", i)
            seen |= b
        if set(self.f) != seen:
            raise ValidationError("map domain differs from the union of blocks")
        values = list(self.f.values())
        if len(set(values)) != len(values):
            raise ValidationError("map is not injective")
        if not set(values) <= seen:
            raise ValidationError("map leaves the union of blocks")

    def block(self, i: int) -> frozenset:
        return self.blocks[i]

    def step(self, s: frozenset) -> frozenset:
        return frozenset(self.f[x] for x in s)

    def meets(self, a, b) -> bool:
        return not a.isdisjoint(b)

    def subset(self, a, b) -> bool:
        return a <= b

    def union_of(self, sets):
        return frozenset().union(*sets)

    def pick_outside(self, a, b):
        rest = a - b
        return min(rest) if rest else None

    def restrict(self, indices: Sequence[int], stride: int) -> "FiniteSetSystem":
        sub = FiniteSetSystem([self.blocks[q] for q in indices], self.f, self.stride * stride,
                              validate=False)
        return sub


class CylinderSystem(ConcreteSystem):
    """Blocks of a :class:`BlockSystem`, answering by prefix-set calculus."""

    def __init__(
        self,
        system: BlockSystem,
        indices: Sequence[int] | None = None,
        stride: int = 1,
        budget: int | None = None,
    ):
        idx = tuple(range(system.n)) if indices is None else tuple(indices)
        super().__init__(len(idx), stride)
        self.system = system
        self.indices = idx
        self.budget = budget

    def block(self, i: int) -> PrefixSet:
        return self.system.blocks[self.indices[i]]

    def step(self, s: PrefixSet) -> PrefixSet:
        return apply_map(self.system.map, s, self.budget)

    def meets(self, a: PrefixSet, b: PrefixSet) -> bool:
        return not is_disjoint(a, b)

    def subset(self, a: PrefixSet, b: PrefixSet) -> bool:
        return denotes_subset(a, b)

    def union_of(self, sets: list[PrefixSet]) -> PrefixSet:
        return union(*sets)

    def pick_outside(self, a: PrefixSet, b: PrefixSet) -> str | None:
        return first_word(subtract(a, b))

    def image_is_union(self, i: int, m: int, indices: Sequence[int]) -> bool:
        # normal forms are canonical, so equality of denoted sets is equality
        return self.image(i, m) == self.union_of([self.block(q) for q in indices])

    def restrict(self, indices: Sequence[int], stride: int) -> "CylinderSystem":
        return CylinderSystem(
            self.system,
            [self.indices[q] for q in indices],
            self.stride * stride,
            self.budget,
        )
