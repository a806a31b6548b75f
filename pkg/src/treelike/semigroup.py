"""Finite inverse semigroups with zero and their standard action.

A semigroup is a multiplication table ``product[s][t] = s*t``.  The action
of ``s`` on the tight spectrum of the idempotents sends the point generated
by an atom ``m <= s*s`` to the point generated by ``s m s*``.  Spectrum points
handed in and out of this module live in the idempotent semilattice
returned by :func:`idempotent_semilattice`; use ``S.as_element`` and
``S.as_idempotent`` to convert between the two index spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

from .errors import InvariantBroken, OutOfRange, TreelikeError, ValidationError
from .filters import SpectrumPoint, principal_filter, tight_spectrum
from .lattice import FiniteSemilattice, domination_witness, leq, validate_semilattice


class NoInverse(ValidationError):
    pass


class NonUniqueInverse(ValidationError):
    pass


class IdempotentsDontCommute(ValidationError):
    pass


class BadZero(ValidationError):
    pass


class NotAssociativeProduct(ValidationError):
    pass


class NotIdempotent(TreelikeError, ValueError):
    pass


class OutsideDomain(TreelikeError, ValueError):
    pass


class DomainViolation(TreelikeError, ValueError):
    pass


@dataclass(frozen=True)
class FiniteInverseSemigroup:
    product: tuple[tuple[int, ...], ...]
    zero: int
    star: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.product)

    def mul(self, *xs: int) -> int:
        p = self.product
        acc = xs[0]
        for x in xs[1:]:
            acc = p[acc][x]
        return acc

    def elements(self) -> range:
        return range(len(self.product))

    def is_idempotent(self, x: int) -> bool:
        return self.product[x][x] == x

    def source(self, s: int) -> int:
        """``s* s``."""
        return self.product[self.star[s]][s]

    def target(self, s: int) -> int:
        """``s s*``."""
        return self.product[s][self.star[s]]

    @cached_property
    def _semilattice(self) -> tuple[FiniteSemilattice, tuple[int, ...]]:
        idem = [x for x in self.elements() if self.is_idempotent(x)]
        order = [self.zero] + [x for x in idem if x != self.zero]
        pos = {x: i for i, x in enumerate(order)}
        table = [[pos[self.product[a][b]] for b in order] for a in order]
        return validate_semilattice(table), tuple(order)

    @cached_property
    def _idempotent_index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self._semilattice[1])}

    def as_element(self, idempotent_index: int) -> int:
        return self._semilattice[1][idempotent_index]

    def as_idempotent(self, x: int) -> int:
        try:
            return self._idempotent_index[x]
        except KeyError:
            raise NotIdempotent(x) from None

    @cached_property
    def spectrum(self) -> tuple[SpectrumPoint, ...]:
        return tuple(tight_spectrum(self._semilattice[0]))

    def __repr__(self) -> str:
        return f"FiniteInverseSemigroup(size={self.size}, zero={self.zero})"


def validate_inverse_semigroup(
    table: Sequence[Sequence[int]], zero: int = 0
) -> FiniteInverseSemigroup:
    """Check the axioms and compute the inverse of every element.

    Idempotent commutation is checked before inverse uniqueness: in a
    regular semigroup the two are equivalent, so checking uniqueness first
    would mask every commutation failure.
    """
    n = len(table)
    if n < 1:
        raise OutOfRange("empty table")
    p = tuple(tuple(int(x) for x in row) for row in table)
    for s, row in enumerate(p):
        if len(row) != n:
            raise OutOfRange(f"row {s} has {len(row)} entries, expected {n}")
        for t, x in enumerate(row):
            if not 0 <= x < n:
                raise OutOfRange(s, t, x)
    if not 0 <= zero < n:
        raise BadZero(zero)
    for s in range(n):
        if p[zero][s] != zero or p[s][zero] != zero:
            raise BadZero(s)
    for a in range(n):
        for b in range(n):
            ab = p[a][b]
            for c in range(n):
                if p[ab][c] != p[a][p[b][c]]:
                    raise NotAssociativeProduct(a, b, c)
    idem = [x for x in range(n) if p[x][x] == x]
    for i, e in enumerate(idem):
        for f in idem[i + 1:]:
            if p[e][f] != p[f][e]:
                raise IdempotentsDontCommute(e, f)
    star = []
    for s in range(n):
        found = [t for t in range(n) if p[p[s][t]][s] == s and p[p[t][s]][t] == t]
        if not found:
            raise NoInverse(s)
        if len(found) > 1:
            raise NonUniqueInverse(s, found[0], found[1])
        star.append(found[0])
    return FiniteInverseSemigroup(p, zero, tuple(star))


def idempotent_semilattice(S: FiniteInverseSemigroup) -> tuple[FiniteSemilattice, tuple[int, ...]]:
    """The idempotents as a semilattice, plus ``embedding[i]`` = element of S."""
    return S._semilattice


def _require_idempotent(S: FiniteInverseSemigroup, e: int) -> int:
    if not S.is_idempotent(e):
        raise NotIdempotent(e)
    return S.as_idempotent(e)


def domain_set(S: FiniteInverseSemigroup, e: int) -> frozenset[SpectrumPoint]:
    """Spectrum points containing the idempotent ``e`` (an element of S)."""
    i = _require_idempotent(S, e)
    return frozenset(p for p in S.spectrum if i in p)


def action_apply(S: FiniteInverseSemigroup, s: int, xi: SpectrumPoint) -> SpectrumPoint:
    m = S.as_element(xi.generator)
    src = S.source(s)
    if S.mul(m, src) != m:
        raise OutsideDomain(s, xi.generator)
    image = S.mul(s, m, S.star[s])
    E = S._semilattice[0]
    g = S.as_idempotent(image)
    if g not in {p.generator for p in S.spectrum}:
        raise InvariantBroken(f"image of a spectrum point under {s} is not an ultrafilter")
    return SpectrumPoint(principal_filter(E, g), g)


def action_table(S: FiniteInverseSemigroup, s: int) -> dict[SpectrumPoint, SpectrumPoint]:
    return {xi: action_apply(S, s, xi) for xi in domain_set(S, S.source(s))}


def _image_part_i(S: FiniteInverseSemigroup, s: int, e: int) -> frozenset[SpectrumPoint]:
    if S.mul(e, S.source(s)) != e:
        raise DomainViolation(f"{e} is not below s*s for s={s}")
    image = frozenset(action_apply(S, s, xi) for xi in domain_set(S, e))
    expected = domain_set(S, S.mul(s, e, S.star[s]))
    if image != expected:
        raise InvariantBroken(f"image of D({e}) under {s} differs from D(ses*)")
    return image


def _image_part_ii(S: FiniteInverseSemigroup, s: int, e: int) -> frozenset[SpectrumPoint]:
    src = S.source(s)
    dom_e = domain_set(S, e)
    if not dom_e <= domain_set(S, src):
        raise DomainViolation(f"D({e}) is not inside the domain of {s}")
    pointwise = frozenset(action_apply(S, s, xi) for xi in dom_e)
    # route through e s*s, which is below s*s and has the same domain set
    reduced = S.mul(e, src)
    if domain_set(S, reduced) != dom_e:
        raise InvariantBroken(f"D({e}) differs from D(e s*s) for s={s}")
    via_reduced = _image_part_i(S, s, reduced)
    if S.mul(s, reduced, S.star[s]) != S.mul(s, e, S.star[s]):
        raise InvariantBroken(f"s(es*s)s* differs from ses* for s={s}, e={e}")
    if pointwise != via_reduced:
        raise InvariantBroken(f"pointwise image of D({e}) under {s} disagrees")
    return via_reduced


def action_image_of_domain(
    S: FiniteInverseSemigroup, s: int, e: int, part: str | None = None
) -> frozenset[SpectrumPoint]:
    """Image of ``D(e)`` under the action of ``s``, checked against ``D(ses*)``.

    ``part="i"`` demands ``e <= s*s``; ``part="ii"`` only demands that
    ``D(e)`` lies in the domain and goes through ``e s*s``.  With
    ``part=None`` the first applicable route is used.
    """
    _require_idempotent(S, e)
    if part is None:
        part = "i" if S.mul(e, S.source(s)) == e else "ii"
    if part == "i":
        return _image_part_i(S, s, e)
    if part == "ii":
        return _image_part_ii(S, s, e)
    raise ValueError(f"unknown part {part!r}")


@dataclass(frozen=True)
class ConditionIIIWitness:
    e: int
    f: int
    s: int
    d: int

    def as_dict(self) -> dict[str, int]:
        return {"e": self.e, "f": self.f, "s": self.s, "d": self.d}


@dataclass(frozen=True)
class ConditionIIIResult:
    witnesses: Mapping[int, ConditionIIIWitness | None]

    @property
    def holds(self) -> bool:
        return all(w is not None for w in self.witnesses.values())

    def missing(self) -> list[int]:
        return [e for e, w in self.witnesses.items() if w is None]


def find_condition_iii_witness(S: FiniteInverseSemigroup, e: int) -> ConditionIIIWitness | None:
    """Search ``f <= e`` (nonzero idempotent) and ``s`` with ``f <= s*s``, ``sfs* << f``."""
    E, _ = S._semilattice
    ie = _require_idempotent(S, e)
    for f in sorted(x for x in S.elements() if S.is_idempotent(x)):
        if f == S.zero:
            continue
        jf = S.as_idempotent(f)
        if not leq(E, jf, ie):
            continue
        for s in S.elements():
            if S.mul(f, S.source(s)) != f:
                continue
            conj = S.as_idempotent(S.mul(s, f, S.star[s]))
            d = domination_witness(E, conj, jf)
            if d is not None:
                return ConditionIIIWitness(e, f, s, S.as_element(d))
    return None


def condition_iii_search(S: FiniteInverseSemigroup) -> ConditionIIIResult:
    out = {}
    for e in S.elements():
        if e != S.zero and S.is_idempotent(e):
            out[e] = find_condition_iii_witness(S, e)
    return ConditionIIIResult(out)


# --- constructors -----------------------------------------------------------


def adjoin_zero(table: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Extend a table with a new absorbing element; returns (table, zero)."""
    n = len(table)
    out = [list(row) + [n] for row in table]
    out.append([n] * (n + 1))
    return out, n


def semilattice_as_semigroup(L: FiniteSemilattice) -> FiniteInverseSemigroup:
    return validate_inverse_semigroup(L.table, zero=0)


PartialMap = tuple[tuple[int, int], ...]


def _compose(s: PartialMap, t: PartialMap) -> PartialMap:
    """``s*t``: apply ``t`` first, then ``s``."""
    ds = dict(s)
    return tuple(sorted((x, ds[y]) for x, y in t if y in ds))


def _inverse(s: PartialMap) -> PartialMap:
    return tuple(sorted((y, x) for x, y in s))


def from_partial_bijections(
    generators: Iterable[Mapping[int, int] | Iterable[tuple[int, int]]],
    limit: int | None = None,
) -> tuple[FiniteInverseSemigroup, list[PartialMap]]:
    """Inverse semigroup of partial bijections generated by ``generators``.

    The empty map is always included and serves as zero (index 0).  Raises
    OverflowError when the closure exceeds ``limit`` elements.
    """
    gens = set()
    for g in generators:
        pairs = g.items() if isinstance(g, Mapping) else g
        m = tuple(sorted((int(x), int(y)) for x, y in pairs))
        if len({y for _, y in m}) != len(m) or len({x for x, _ in m}) != len(m):
            raise ValidationError("generator is not a partial bijection", m)
        gens.add(m)
        gens.add(_inverse(m))
    elements = {(): None}
    frontier = list(gens)
    for g in gens:
        elements[g] = None
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elements):
                for c in (_compose(a, b), _compose(b, a)):
                    if c not in elements:
                        elements[c] = None
                        nxt.append(c)
                        if limit is not None and len(elements) > limit:
                            raise OverflowError(f"closure exceeds {limit} elements")
        frontier = nxt
    order = sorted(elements, key=lambda m: (len(m), m))
    pos = {m: i for i, m in enumerate(order)}
    table = [[pos[_compose(a, b)] for b in order] for a in order]
    return validate_inverse_semigroup(table, zero=0), order


def symmetric_inverse_monoid(n: int) -> tuple[FiniteInverseSemigroup, list[PartialMap]]:
    """All partial bijections of ``{0..n-1}``."""
    maps = []
    pts = range(n)
    for dom_mask in range(1 << n):
        dom = [x for x in pts if dom_mask >> x & 1]
        for img in cartesian(pts, repeat=len(dom)):
            if len(set(img)) == len(img):
                maps.append(list(zip(dom, img)))
    return from_partial_bijections(maps)
