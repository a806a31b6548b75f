"""Filters, ultrafilters, covers and the tight spectrum of a finite semilattice.

In the finite case every filter is principal, so a filter is carried around
as its member set together with its least element (the generator).  Three
routes to the spectrum are kept deliberately separate:

* covers: :func:`is_tight_filter` over :func:`all_filters`,
* maximality: :func:`is_maximal_filter` compares against every other filter,
* atoms: ``{up(a) : a atom}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import TreelikeError, ValidationError
from .lattice import ZERO, FiniteSemilattice, atoms, down_set, leq, up_set

#: Above this many nonzero elements below ``e`` the exhaustive cover scan is
#: replaced by the exact single-candidate test in :func:`_meets_every_cover`.
DEFAULT_COVER_CAP = 12


class ZeroGenerator(TreelikeError, ValueError):
    pass


class NotBelow(TreelikeError, ValueError):
    pass


class NotAFilter(ValidationError):
    pass


@dataclass(frozen=True)
class Filter:
    members: frozenset[int]
    lattice: FiniteSemilattice = field(compare=False, repr=False)

    @property
    def generator(self) -> int:
        t = self.lattice.table
        for g in self.members:
            if all(t[g][x] == g for x in self.members):
                return g
        raise NotAFilter("filter without a least element", sorted(self.members))

    def __contains__(self, e: int) -> bool:
        return e in self.members

    def __repr__(self) -> str:
        return f"Filter({sorted(self.members)})"


@dataclass(frozen=True)
class SpectrumPoint:
    filter: Filter
    generator: int

    def __contains__(self, e: int) -> bool:
        return e in self.filter.members

    def __repr__(self) -> str:
        return f"SpectrumPoint(up {self.generator})"


def is_filter_set(L: FiniteSemilattice, members) -> bool:
    """Direct axiom check on a subset, with no appeal to principality."""
    s = frozenset(members)
    if not s or ZERO in s:
        return False
    t = L.table
    for e in s:
        for f in L.elements():
            if t[e][f] == e and f not in s:
                return False
    for e in s:
        for f in s:
            if t[e][f] not in s:
                return False
    return True


def make_filter(L: FiniteSemilattice, members) -> Filter:
    s = frozenset(members)
    if not is_filter_set(L, s):
        raise NotAFilter(sorted(s))
    return Filter(s, L)


def principal_filter(L: FiniteSemilattice, e: int) -> Filter:
    if e == ZERO:
        raise ZeroGenerator("the zero generates no filter")
    return Filter(up_set(L, e), L)


def all_filters(L: FiniteSemilattice) -> list[Filter]:
    """Every filter of ``L``, ordered by generator index."""
    out = []
    for e in L.elements():
        if e == ZERO:
            continue
        F = principal_filter(L, e)
        if not is_filter_set(L, F.members):
            raise NotAFilter(sorted(F.members))
        out.append(F)
    return out


def filters_by_enumeration(L: FiniteSemilattice) -> list[frozenset[int]]:
    """All filters found by scanning every subset; exponential, for oracles."""
    n = L.size
    out = []
    for mask in range(1, 1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        if is_filter_set(L, s):
            out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def is_ultrafilter(F: Filter) -> bool:
    """Every element outside ``F`` is orthogonal to some member of ``F``."""
    L = F.lattice
    t = L.table
    for e in L.elements():
        if e in F.members:
            continue
        if not any(t[d][e] == ZERO for d in F.members):
            return False
    return True


def is_maximal_filter(F: Filter, filters: list[Filter] | None = None) -> bool:
    """No filter strictly contains ``F``.  Independent of :func:`is_ultrafilter`."""
    if filters is None:
        filters = all_filters(F.lattice)
    return not any(F.members < G.members for G in filters)


def is_cover(L: FiniteSemilattice, Z, e: int) -> bool:
    """Whether every nonzero ``d <= e`` meets some member of ``Z``."""
    Z = frozenset(Z)
    below = down_set(L, e)
    for z in sorted(Z):
        if z not in below:
            raise NotBelow(z, e)
    t = L.table
    for d in below:
        if d == ZERO:
            continue
        if not any(t[d][z] != ZERO for z in Z):
            return False
    return True


def _meets_every_cover(F: Filter, e: int, cap: int) -> bool:
    L = F.lattice
    candidates = sorted(down_set(L, e) - {ZERO})
    if len(candidates) <= cap:
        for r in range(len(candidates) + 1):
            for Z in combinations(candidates, r):
                if is_cover(L, Z, e) and not (F.members & set(Z)):
                    return False
        return True
    # Covers are closed under enlargement inside down_set(e), so some cover
    # misses F iff the largest F-avoiding candidate set is itself a cover.
    avoiding = [z for z in candidates if z not in F.members]
    return not is_cover(L, avoiding, e)


def is_tight_filter(F: Filter, cap: int = DEFAULT_COVER_CAP) -> bool:
    for e in sorted(F.members):
        if not _meets_every_cover(F, e, cap):
            return False
    return True


def tight_spectrum(L: FiniteSemilattice, cap: int = DEFAULT_COVER_CAP) -> list[SpectrumPoint]:
    if L.size < 2:
        raise ValidationError("the trivial semilattice has no filters")
    return [SpectrumPoint(F, F.generator) for F in all_filters(L) if is_tight_filter(F, cap)]


def ultrafilter_spectrum(L: FiniteSemilattice) -> list[SpectrumPoint]:
    """Ultrafilters decided by maximality among all filters."""
    filters = all_filters(L)
    return [SpectrumPoint(F, F.generator) for F in filters if is_maximal_filter(F, filters)]


def atom_spectrum(L: FiniteSemilattice) -> list[SpectrumPoint]:
    return [SpectrumPoint(principal_filter(L, a), a) for a in sorted(atoms(L))]


def basic_set(L: FiniteSemilattice, e: int) -> frozenset[int]:
    """Generators of the spectrum points containing ``e``: atoms below ``e``."""
    return frozenset(a for a in atoms(L) if leq(L, a, e))


def basic_set_by_membership(L: FiniteSemilattice, e: int) -> frozenset[int]:
    return frozenset(p.generator for p in tight_spectrum(L) if e in p)
