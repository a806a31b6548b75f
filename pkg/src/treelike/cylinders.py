"""Finite unions of cylinder sets and injective prefix-rewriting maps.

A word ``u`` over an alphabet (a string of distinct letters) stands for the
cylinder ``Z(u)`` of all right-infinite words that start with ``u``; the
empty word is the whole space.  A :class:`PrefixSet` is a finite union of
cylinders kept in a canonical normal form (prefix-free, no complete sibling
family), so two prefix sets denote the same set exactly when they are equal.

A :class:`PrefixInjection` rewrites ``u_k w -> v_k w``.  Its domain words
and its image words must both be prefix-free; the second condition is
precisely injectivity of the induced map on infinite words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import TreelikeError, ValidationError


class OutsideDomain(TreelikeError, ValueError):
    pass


class ComposabilityError(TreelikeError, ValueError):
    pass


class DomainNotPrefixFree(ValidationError):
    pass


class NotInjective(ValidationError):
    pass


class BadLetter(ValidationError):
    pass


class DepthTooSmall(TreelikeError, ValueError):
    pass


class BudgetExceeded(TreelikeError):
    pass


def is_prefix(u: str, v: str) -> bool:
    return v.startswith(u)


def comparable(u: str, v: str) -> bool:
    return u.startswith(v) or v.startswith(u)


def check_alphabet(alphabet: str) -> str:
    if len(alphabet) < 2 or len(set(alphabet)) != len(alphabet):
        raise BadLetter(f"alphabet needs at least two distinct letters: {alphabet!r}")
    return alphabet


def _check_word(alphabet: str, w: str) -> str:
    for c in w:
        if c not in alphabet:
            raise BadLetter(w, c)
    return w


def _collapse(alphabet: str, words: set[str]) -> set[str]:
    k = len(alphabet)
    words = set(words)
    while True:
        parents: dict[str, int] = {}
        for w in words:
            if w:
                parents[w[:-1]] = parents.get(w[:-1], 0) + 1
        full = [p for p, c in parents.items() if c == k]
        if not full:
            return words
        for p in full:
            words.difference_update(p + a for a in alphabet)
            words.add(p)


def normalize(alphabet: str, words: Iterable[str]) -> tuple["PrefixSet", list[str]]:
    """Normal form of ``union Z(w)``, plus the words that were redundant.

    A word is redundant when another input word is a proper prefix of it;
    it is dropped (its cylinder is already covered) and reported.
    """
    check_alphabet(alphabet)
    ws = {_check_word(alphabet, w) for w in words}
    redundant = sorted(
        (w for w in ws if any(v != w and w.startswith(v) for v in ws)),
        key=lambda w: (len(w), w),
    )
    kept = ws.difference(redundant)
    return PrefixSet(alphabet, frozenset(_collapse(alphabet, kept))), redundant


@dataclass(frozen=True)
class PrefixSet:
    alphabet: str
    words: frozenset[str]

    @classmethod
    def of(cls, alphabet: str, words: Iterable[str] = ()) -> "PrefixSet":
        return normalize(alphabet, words)[0]

    @classmethod
    def empty(cls, alphabet: str) -> "PrefixSet":
        return cls(alphabet, frozenset())

    @classmethod
    def full(cls, alphabet: str) -> "PrefixSet":
        return cls(alphabet, frozenset({""}))

    def sorted_words(self) -> list[str]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def is_empty(self) -> bool:
        return not self.words

    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def __iter__(self) -> Iterator[str]:
        return iter(self.sorted_words())

    def __len__(self) -> int:
        return len(self.words)

    def __str__(self) -> str:
        return "{" + ", ".join(w or "." for w in self.sorted_words()) + "}"

    def __repr__(self) -> str:
        return f"PrefixSet({self.alphabet!r}, {str(self)})"


def _same_alphabet(P: PrefixSet, Q: PrefixSet) -> None:
    if P.alphabet != Q.alphabet:
        raise ValueError(f"alphabet mismatch: {P.alphabet!r} vs {Q.alphabet!r}")


def _word_in(u: str, Q: frozenset[str], alphabet: str, depth: int) -> bool:
    """Whether ``Z(u)`` lies inside the union of ``Z(v)``, ``v`` in ``Q``."""
    if any(u.startswith(v) for v in Q):
        return True
    if len(u) >= depth or not any(v.startswith(u) for v in Q):
        return False
    return all(_word_in(u + a, Q, alphabet, depth) for a in alphabet)


def denotes_subset(P: PrefixSet, Q: PrefixSet) -> bool:
    _same_alphabet(P, Q)
    depth = Q.max_length()
    return all(_word_in(u, Q.words, P.alphabet, depth) for u in P.words)


def denotes_equal(P: PrefixSet, Q: PrefixSet) -> bool:
    _same_alphabet(P, Q)
    return P.words == Q.words


def is_disjoint(P: PrefixSet, Q: PrefixSet) -> bool:
    _same_alphabet(P, Q)
    return not any(comparable(u, v) for u in P.words for v in Q.words)


def _minus(u: str, Q: frozenset[str], alphabet: str) -> list[str]:
    if any(u.startswith(v) for v in Q):
        return []
    if not any(v.startswith(u) for v in Q):
        return [u]
    out = []
    for a in alphabet:
        out.extend(_minus(u + a, Q, alphabet))
    return out


def subtract(P: PrefixSet, Q: PrefixSet) -> PrefixSet:
    _same_alphabet(P, Q)
    out = []
    for u in P.words:
        out.extend(_minus(u, Q.words, P.alphabet))
    return PrefixSet.of(P.alphabet, out)


def intersect(P: PrefixSet, Q: PrefixSet) -> PrefixSet:
    _same_alphabet(P, Q)
    out = []
    for u in P.words:
        for v in Q.words:
            if u.startswith(v):
                out.append(u)
            elif v.startswith(u):
                out.append(v)
    return PrefixSet.of(P.alphabet, out)


def union(*sets: PrefixSet) -> PrefixSet:
    if not sets:
        raise ValueError("union of nothing")
    for s in sets[1:]:
        _same_alphabet(sets[0], s)
    return PrefixSet.of(sets[0].alphabet, itertools.chain.from_iterable(s.words for s in sets))


def first_word(P: PrefixSet) -> str | None:
    """Shortest, then lexicographically least, word (deterministic pick)."""
    ws = P.sorted_words()
    return ws[0] if ws else None


# --- prefix injections ------------------------------------------------------


def _prefix_free_violation(words: list[str]) -> tuple[str, str] | None:
    ordered = sorted(words, key=lambda w: (len(w), w))
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            if v.startswith(u):
                return (u, v)
    return None


@dataclass(frozen=True)
class PrefixInjection:
    alphabet: str
    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, alphabet: str, pairs: Iterable[tuple[str, str]]) -> "PrefixInjection":
        check_alphabet(alphabet)
        ps = tuple(sorted(((_check_word(alphabet, u), _check_word(alphabet, v)) for u, v in pairs),
                          key=lambda p: (len(p[0]), p[0])))
        bad = _prefix_free_violation([u for u, _ in ps])
        if bad:
            raise DomainNotPrefixFree(*bad)
        bad = _prefix_free_violation([v for _, v in ps])
        if bad:
            raise NotInjective(*bad)
        return cls(alphabet, ps)

    @classmethod
    def identity(cls, P: PrefixSet) -> "PrefixInjection":
        return cls(P.alphabet, tuple((w, w) for w in P.sorted_words()))

    def domain(self) -> PrefixSet:
        return PrefixSet.of(self.alphabet, (u for u, _ in self.pairs))

    def image(self) -> PrefixSet:
        return PrefixSet.of(self.alphabet, (v for _, v in self.pairs))

    def max_growth(self) -> int:
        return max((max(len(v) - len(u), 0) for u, v in self.pairs), default=0)

    def max_shrink(self) -> int:
        return max((max(len(u) - len(v), 0) for u, v in self.pairs), default=0)

    def max_length(self) -> int:
        return max((max(len(u), len(v)) for u, v in self.pairs), default=0)

    def apply_word(self, w: str) -> str | None:
        """Image of a finite word, or None if no domain word is a prefix of it."""
        for u, v in self.pairs:
            if w.startswith(u):
                return v + w[len(u):]
        return None

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return ", ".join(f"{u or '.'}->{v or '.'}" for u, v in self.pairs)


def _refine(f: PrefixInjection, w: str) -> Iterator[tuple[str, str, str]]:
    """Split ``Z(w)`` along the domain of ``f``: yields ``(piece, u, v)``."""
    for u, v in f.pairs:
        if w.startswith(u):
            yield w, u, v
            return
    if not any(u.startswith(w) for u, _ in f.pairs):
        raise OutsideDomain(w or ".")
    for a in f.alphabet:
        yield from _refine(f, w + a)


def apply_map(f: PrefixInjection, P: PrefixSet, budget: int | None = None) -> PrefixSet:
    """Image of the set denoted by ``P`` under ``f``."""
    if P.alphabet != f.alphabet:
        raise ValueError("alphabet mismatch")
    out = []
    for w in P.words:
        for piece, u, v in _refine(f, w):
            out.append(v + piece[len(u):])
            if budget is not None and len(out) > budget:
                raise BudgetExceeded(f"image needs more than {budget} cylinders")
    return PrefixSet.of(f.alphabet, out)


def restrict_map(f: PrefixInjection, P: PrefixSet) -> PrefixInjection:
    pairs = []
    for w in P.words:
        for piece, u, v in _refine(f, w):
            pairs.append((piece, v + piece[len(u):]))
    return PrefixInjection.of(f.alphabet, _merge_siblings(f.alphabet, pairs))


def _merge_siblings(alphabet: str, pairs: list[tuple[str, str]]) -> list[tuple[str, str]]:
    """Merge ``{xa -> ya : a}`` into ``x -> y`` until nothing merges."""
    current = dict(pairs)
    k = len(alphabet)
    while True:
        groups: dict[tuple[str, str], int] = {}
        for u, v in current.items():
            if u and v and u[-1] == v[-1]:
                key = (u[:-1], v[:-1])
                groups[key] = groups.get(key, 0) + 1
        merged = False
        for (x, y), count in groups.items():
            if count != k:
                continue
            if all(current.get(x + a) == y + a for a in alphabet):
                for a in alphabet:
                    del current[x + a]
                current[x] = y
                merged = True
        if not merged:
            return sorted(current.items(), key=lambda p: (len(p[0]), p[0]))


def compose(g: PrefixInjection, f: PrefixInjection, budget: int | None = None) -> PrefixInjection:
    """Rewrite system of ``g after f``; the image of ``f`` must lie in g's domain."""
    if g.alphabet != f.alphabet:
        raise ValueError("alphabet mismatch")
    pairs = []

    def go(u: str, v: str) -> None:
        for gu, gv in g.pairs:
            if v.startswith(gu):
                pairs.append((u, gv + v[len(gu):]))
                return
        if not any(gu.startswith(v) for gu, _ in g.pairs):
            raise ComposabilityError(f"image cylinder {v or '.'} leaves the domain")
        for a in f.alphabet:
            go(u + a, v + a)

    for u, v in f.pairs:
        go(u, v)
        if budget is not None and len(pairs) > budget:
            raise BudgetExceeded(f"composition needs more than {budget} rewrite pairs")
    result = _merge_siblings(f.alphabet, pairs)
    if budget is not None and len(result) > budget:
        raise BudgetExceeded(f"composition needs more than {budget} rewrite pairs")
    return PrefixInjection.of(f.alphabet, result)


def power(f: PrefixInjection, m: int, budget: int | None = None) -> PrefixInjection:
    if m < 0:
        raise ValueError("negative power")
    result = PrefixInjection.identity(f.domain())
    for _ in range(m):
        result = compose(f, result, budget)
    return result


# --- truncation oracle -------------------------------------------------------


def extensions(alphabet: str, u: str, length: int) -> Iterator[str]:
    for tail in itertools.product(alphabet, repeat=length - len(u)):
        yield u + "".join(tail)


def _check_depth(L: int, *sets: PrefixSet) -> None:
    need = max((s.max_length() for s in sets), default=0)
    if L < need:
        raise DepthTooSmall(f"depth {L} below longest word length {need}")


def _has_prefix_in(Q: frozenset[str]):
    lengths = sorted({len(v) for v in Q})
    return lambda w: any(w[:n] in Q for n in lengths)


def truncation_oracle_subset(P: PrefixSet, Q: PrefixSet, L: int) -> bool:
    """Subset test by listing every length-``L`` word below ``P``."""
    _check_depth(L, P, Q)
    hit = _has_prefix_in(Q.words)
    for u in P.words:
        for w in extensions(P.alphabet, u, L):
            if not hit(w):
                return False
    return True


def truncation_oracle_disjoint(P: PrefixSet, Q: PrefixSet, L: int) -> bool:
    _check_depth(L, P, Q)
    hit = _has_prefix_in(Q.words)
    for u in P.words:
        for w in extensions(P.alphabet, u, L):
            if hit(w):
                return False
    return True


def truncation_words(P: PrefixSet, L: int) -> frozenset[str]:
    """All length-``L`` words whose cylinder lies in ``P``."""
    _check_depth(L, P)
    return frozenset(w for u in P.words for w in extensions(P.alphabet, u, L))


def maps_equal(f: PrefixInjection, g: PrefixInjection) -> bool:
    """Whether two rewrite systems induce the same map on infinite words."""
    if f.alphabet != g.alphabet or f.domain() != g.domain():
        return False
    for u, v in f.pairs:
        for piece, gu, gv in _refine(g, u):
            if gv + piece[len(gu):] != v + piece[len(u):]:
                return False
    return True
