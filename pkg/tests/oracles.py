"""Brute-force reimplementations used to cross-check the library.

Nothing here imports the code under test beyond plain data access, so an
agreement between the two is evidence, not tautology.
"""

from __future__ import annotations

import itertools


def leq(t, e, f):
    return t[e][f] == e


def trichotomy_pair(t):
    n = len(t)
    for e in range(n):
        for f in range(e + 1, n):
            if t[e][f] == 0 or leq(t, e, f) or leq(t, f, e):
                continue
            return (e, f)
    return None


def filters(t):
    """Every subset satisfying the filter axioms, found by scanning all 2^n subsets."""
    n = len(t)
    out = []
    for mask in range(1, 1 << n):
        F = {x for x in range(n) if mask >> x & 1}
        if 0 in F:
            continue
        if any(t[a][b] not in F for a in F for b in F):
            continue
        if any(leq(t, a, b) and b not in F for a in F for b in range(n)):
            continue
        out.append(frozenset(F))
    return out


def maximal(fs):
    return [F for F in fs if not any(F < G for G in fs)]


def atoms(t):
    n = len(t)
    return {e for e in range(1, n) if not any(f not in (0, e) and leq(t, f, e) for f in range(n))}


def covers(t, e):
    below = [d for d in range(1, len(t)) if leq(t, d, e)]
    for r in range(len(below) + 1):
        for Z in itertools.combinations(below, r):
            if all(any(t[d][z] != 0 for z in Z) for d in below):
                yield set(Z)


def tight(t):
    return [F for F in filters(t) if all(set(Z) & F for e in F for Z in covers(t, e))]


def dominated(t, e, f):
    if not leq(t, e, f):
        return None
    for d in range(1, len(t)):
        if leq(t, d, f) and t[d][e] == 0:
            return d
    return None


def words(alphabet, L):
    return ("".join(p) for p in itertools.product(alphabet, repeat=L))


def denoted(alphabet, ws, L):
    """Length-L truncation of the set of infinite words starting with some w in ws."""
    return {w for w in words(alphabet, L) if any(w.startswith(u) for u in ws)}


def image_words(alphabet, pairs, ws, L_in, L_out):
    """Length-``L_out`` prefixes of images of the length-``L_in`` words below ``ws``."""
    out = set()
    for w in denoted(alphabet, ws, L_in):
        for u, v in pairs:
            if w.startswith(u):
                img = v + w[len(u):]
                if len(img) >= L_out:
                    out.add(img[:L_out])
                else:
                    out.update(img + "".join(t) for t in itertools.product(alphabet, repeat=L_out - len(img)))
                break
    return out
