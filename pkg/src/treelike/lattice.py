"""Finite meet-semilattices with zero, given by their meet table.

Elements are plain ints ``0..n-1`` and element ``0`` is always the zero.
All order predicates are read off the meet table: ``e <= f`` iff
``meet(e, f) == e`` and ``e`` is orthogonal to ``f`` iff ``meet(e, f) == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import OutOfRange, ValidationError

ZERO = 0


class NotIdempotent(ValidationError):
    pass


class NotCommutative(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class ZeroNotAbsorbing(ValidationError):
    pass


@dataclass(frozen=True)
class FiniteSemilattice:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def zero(self) -> int:
        return ZERO

    def meet(self, e: int, f: int) -> int:
        return self.table[e][f]

    def elements(self) -> range:
        return range(len(self.table))

    def name(self, e: int) -> str:
        if self.names is None:
            return str(e)
        return self.names[e]

    @cached_property
    def _down(self) -> tuple[frozenset[int], ...]:
        t = self.table
        return tuple(
            frozenset(d for d in range(len(t)) if t[d][e] == d) for e in range(len(t))
        )

    @cached_property
    def _up(self) -> tuple[frozenset[int], ...]:
        t = self.table
        return tuple(
            frozenset(f for f in range(len(t)) if t[e][f] == e) for e in range(len(t))
        )

    def __repr__(self) -> str:
        return f"FiniteSemilattice(size={self.size})"


def validate_semilattice(
    table: Sequence[Sequence[int]], names: Sequence[str] | None = None
) -> FiniteSemilattice:
    """Check the semilattice-with-zero axioms and freeze the table.

    Checks run in a fixed order (range, idempotency, commutativity, zero,
    associativity) and each raises on the lexicographically first failure.
    """
    n = len(table)
    if n < 1:
        raise OutOfRange("empty table")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for e, row in enumerate(rows):
        if len(row) != n:
            raise OutOfRange(f"row {e} has {len(row)} entries, expected {n}")
        for f, x in enumerate(row):
            if not 0 <= x < n:
                raise OutOfRange(e, f, x)
    for e in range(n):
        if rows[e][e] != e:
            raise NotIdempotent(e)
    for e in range(n):
        for f in range(e + 1, n):
            if rows[e][f] != rows[f][e]:
                raise NotCommutative(e, f)
    for e in range(n):
        if rows[ZERO][e] != ZERO:
            raise ZeroNotAbsorbing(e)
    for e in range(n):
        for f in range(n):
            ef = rows[e][f]
            for g in range(n):
                if rows[ef][g] != rows[e][rows[f][g]]:
                    raise NotAssociative(e, f, g)
    if names is not None:
        names = tuple(names)
        if len(names) != n:
            raise OutOfRange(f"{len(names)} names for {n} elements")
    return FiniteSemilattice(rows, names)


def leq(L: FiniteSemilattice, e: int, f: int) -> bool:
    return L.table[e][f] == e


def orthogonal(L: FiniteSemilattice, e: int, f: int) -> bool:
    return L.table[e][f] == ZERO


def tree_like_violation(L: FiniteSemilattice) -> tuple[int, int] | None:
    """First pair ``(e, f)`` that is neither orthogonal nor comparable."""
    t = L.table
    for e in range(L.size):
        for f in range(e + 1, L.size):
            m = t[e][f]
            if m != ZERO and m != e and m != f:
                return (e, f)
    return None


def is_tree_like(L: FiniteSemilattice) -> bool:
    return tree_like_violation(L) is None


def domination_witness(L: FiniteSemilattice, e: int, f: int) -> int | None:
    """Least nonzero ``d <= f`` orthogonal to ``e``, provided ``e <= f``.

    Returns None when ``e`` is not strictly dominated by ``f``.
    """
    if not leq(L, e, f):
        return None
    t = L.table
    for d in sorted(L._down[f]):
        if d != ZERO and t[d][e] == ZERO:
            return d
    return None


def strictly_dominated_by(L: FiniteSemilattice, e: int, f: int) -> bool:
    return domination_witness(L, e, f) is not None


def down_set(L: FiniteSemilattice, e: int) -> frozenset[int]:
    return L._down[e]


def up_set(L: FiniteSemilattice, e: int) -> frozenset[int]:
    return L._up[e]


def atoms(L: FiniteSemilattice) -> frozenset[int]:
    # an atom's down-set is exactly {0, a}
    return frozenset(e for e in L.elements() if e != ZERO and len(L._down[e]) == 2)


def domination_pairs(L: FiniteSemilattice) -> list[tuple[int, int, int]]:
    """All ``(e, f, d)`` with ``e << f`` and least witness ``d``."""
    out = []
    for e in L.elements():
        for f in L.elements():
            d = domination_witness(L, e, f)
            if d is not None:
                out.append((e, f, d))
    return out


# --- constructors -----------------------------------------------------------


def from_down_sets(family: Iterable[frozenset]) -> FiniteSemilattice:
    """Semilattice of a family of sets closed under intersection.

    The family is closed under pairwise intersection first; the smallest
    member (the intersection of everything) becomes the zero at index 0.
    The remaining members are ordered by (size, sorted contents).
    """
    members = set(frozenset(s) for s in family)
    if not members:
        raise OutOfRange("empty family")
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = a & b
                if c not in members:
                    members.add(c)
                    changed = True
    bottom = frozenset.intersection(*members)
    rest = sorted(members - {bottom}, key=lambda s: (len(s), sorted(map(repr, s))))
    order = [bottom] + rest
    index = {s: i for i, s in enumerate(order)}
    table = [[index[a & b] for b in order] for a in order]
    return validate_semilattice(table)


def chain(n: int) -> FiniteSemilattice:
    """The chain ``0 < 1 < ... < n-1``."""
    return validate_semilattice([[min(i, j) for j in range(n)] for i in range(n)])


def from_forest(parents: Sequence[int | None]) -> FiniteSemilattice:
    """Tree-like semilattice whose nonzero part is a rooted forest.

    ``parents[k]`` is the parent (the element directly above) of node ``k``,
    or None for a maximal element.  Node ``k`` becomes element ``k + 1``;
    two nodes meet in the lower one when comparable and in zero otherwise.
    """
    n = len(parents)
    above: list[set[int]] = []
    for k in range(n):
        s = {k}
        p = parents[k]
        seen = 0
        while p is not None:
            s.add(p)
            p = parents[p]
            seen += 1
            if seen > n:
                raise OutOfRange("parent array has a cycle")
        above.append(s)
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for a in range(n):
        for b in range(n):
            if b in above[a]:
                table[a + 1][b + 1] = a + 1
            elif a in above[b]:
                table[a + 1][b + 1] = b + 1
    return validate_semilattice(table)
