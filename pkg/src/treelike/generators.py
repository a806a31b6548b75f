"""Random and exhaustive instance generators for property tests and acceptance runs.

Every generator takes a :class:`random.Random` so corpora are reproducible
from a seed.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .blocks import BlockSystem, hypothesis_sweep, validate_system
from .cylinders import PrefixInjection, PrefixSet, comparable
from .errors import ValidationError
from .lattice import FiniteSemilattice, from_down_sets, from_forest, validate_semilattice
from .semigroup import FiniteInverseSemigroup, from_partial_bijections
from .setsystems import FiniteSetSystem

LETTERS = "abcd"


# --- semilattices ---------------------------------------------------------------


def random_semilattice(rng: random.Random, max_size: int = 7, ground: int = 4) -> FiniteSemilattice:
    """Intersection-closed family of random subsets, with shuffled labels.

    Every finite semilattice with zero arises this way for a large enough
    ground set (represent each element by its down-set).
    """
    while True:
        count = rng.randint(1, max_size)
        family = [frozenset(x for x in range(ground) if rng.random() < 0.5) for _ in range(count)]
        try:
            L = from_down_sets(family)
        except ValidationError:
            continue
        if L.size > max_size:
            continue
        return relabel(L, rng)


def relabel(L: FiniteSemilattice, rng: random.Random) -> FiniteSemilattice:
    """Random permutation of the nonzero labels (zero stays at 0)."""
    rest = list(range(1, L.size))
    rng.shuffle(rest)
    perm = [0] + rest  # old -> new
    inv = [0] * L.size
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[L.table[inv[a]][inv[b]]] for b in range(L.size)] for a in range(L.size)]
    return validate_semilattice(table)


def forest_parent_arrays(nodes: int) -> Iterator[tuple[int | None, ...]]:
    """All parent arrays with parents listed before children.

    Every rooted forest on ``nodes`` nodes appears (usually several times).
    """
    choices = [[None] + list(range(k)) for k in range(nodes)]
    yield from itertools.product(*choices)


def tree_like_semilattices(max_size: int) -> Iterator[FiniteSemilattice]:
    """Every tree-like semilattice of at most ``max_size`` elements, up to isomorphism
    (with repeats)."""
    for nodes in range(0, max_size):
        for parents in forest_parent_arrays(nodes):
            yield from_forest(parents)


# --- inverse semigroups ---------------------------------------------------------


def random_inverse_semigroup(
    rng: random.Random, points: int = 3, generators: int = 2, limit: int = 10
) -> FiniteInverseSemigroup:
    """Inverse semigroup generated by random partial bijections, at most ``limit`` elements."""
    while True:
        gens = []
        for _ in range(rng.randint(1, generators)):
            dom = [x for x in range(points) if rng.random() < 0.6]
            img = rng.sample(range(points), len(dom))
            gens.append(list(zip(dom, img)))
        try:
            S, _ = from_partial_bijections(gens, limit=limit)
        except OverflowError:
            continue
        if S.size >= 2:
            return S


# --- finite block systems ---------------------------------------------------------


def _random_partition(rng: random.Random, points: list, n: int) -> list[frozenset]:
    pts = points[:]
    rng.shuffle(pts)
    cuts = sorted(rng.sample(range(1, len(pts)), n - 1)) if n > 1 else []
    parts, prev = [], 0
    for c in cuts + [len(pts)]:
        parts.append(frozenset(pts[prev:c]))
        prev = c
    return parts


def _satisfies_hypothesis(blocks: list[frozenset], f: dict) -> bool:
    """Disjoint-or-nested at every power up to the order of the permutation."""
    current = list(blocks)
    seen = set()
    while True:
        key = tuple(current)
        if key in seen:
            return True
        seen.add(key)
        for img in current:
            for X in blocks:
                if img.isdisjoint(X) or img <= X or X <= img:
                    continue
                return False
        current = [frozenset(f[x] for x in s) for s in current]


def _rigid_blocks(rng: random.Random, n: int, max_points: int) -> tuple[list[frozenset], dict] | None:
    """Blocks permuted by a random permutation of the indices, with ``f`` random inside."""
    pi = list(range(n))
    rng.shuffle(pi)
    sizes = [0] * n
    for c in _cycles(pi):
        s = rng.randint(1, max(1, max_points // n))
        for i in c:
            sizes[i] = s
    if sum(sizes) > max_points:
        return None
    blocks, nxt = [], 0
    for s in sizes:
        blocks.append(frozenset(range(nxt, nxt + s)))
        nxt += s
    f = {}
    for i in range(n):
        dst = sorted(blocks[pi[i]])
        rng.shuffle(dst)
        f.update(zip(sorted(blocks[i]), dst))
    return blocks, f


def random_finite_block_system(
    rng: random.Random, max_points: int = 12, max_blocks: int = 4
) -> tuple[list[frozenset], dict]:
    """A permutation with a block partition satisfying the hypothesis at every power.

    Four constructions are mixed: blocks permuted rigidly, rigid blocks
    split further (so one image can spread over several blocks),
    f-invariant blocks, and rejection sampling of arbitrary permutations.
    """
    kind = rng.choice(("rigid", "split", "split", "invariant", "sampled"))
    while True:
        n = 1 if rng.random() < 0.1 else rng.randint(2, max_blocks)
        if kind == "rigid":
            made = _rigid_blocks(rng, n, max_points)
            if made is not None:
                return made
            continue
        if kind == "split":
            made = _rigid_blocks(rng, rng.randint(1, n), max_points)
            if made is None:
                continue
            blocks, f = made
            blocks = list(blocks)
            while len(blocks) < n:
                big = [b for b in blocks if len(b) > 1]
                if not big:
                    break
                b = rng.choice(big)
                blocks.remove(b)
                blocks.extend(_random_partition(rng, sorted(b), 2))
            if len(blocks) == n and _satisfies_hypothesis(blocks, f):
                return blocks, f
            continue
        size = rng.randint(n, max_points if kind != "sampled" else min(max_points, 7))
        points = list(range(size))
        perm = points[:]
        rng.shuffle(perm)
        f = dict(zip(points, perm))
        if kind == "invariant":
            orbits = _cycles(perm)
            if len(orbits) < n:
                continue
            groups = _random_partition(rng, list(range(len(orbits))), n)
            blocks = [frozenset(x for g in grp for x in orbits[g]) for grp in groups]
            return blocks, f
        blocks = _random_partition(rng, points, n)
        if _satisfies_hypothesis(blocks, f):
            return blocks, f


def _cycles(perm: list[int]) -> list[list[int]]:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = perm[x]
        out.append(c)
    return out


def finite_system(blocks, f) -> FiniteSetSystem:
    return FiniteSetSystem(blocks, f)


# --- cylinder block systems --------------------------------------------------------


def _random_complete_code(rng: random.Random, alphabet: str, max_len: int, splits: int) -> list[str]:
    code = list(alphabet)
    for _ in range(splits):
        cands = [w for w in code if len(w) < max_len]
        if not cands:
            break
        w = rng.choice(cands)
        code.remove(w)
        code.extend(w + a for a in alphabet)
    return code


def _prefix_free(words: list[str]) -> bool:
    return not any(comparable(u, v) for u, v in itertools.combinations(words, 2))


def rigid_cylinder_system(
    rng: random.Random,
    max_alphabet: int = 4,
    max_len: int = 4,
    max_blocks: int = 5,
    surjective: bool | None = False,
) -> BlockSystem:
    """Blocks are single cylinders ``Z(x_i)``; ``x_i w -> x_s(i) t_i w``.

    Every power of such a map sends each block onto a single cylinder, and
    any two cylinders are disjoint or nested, so the hypothesis holds at
    every power by construction.  Some domain words are split into their
    children to vary the rewrite system without changing the map.
    """
    while True:
        k = rng.randint(2, max_alphabet)
        alphabet = LETTERS[:k]
        code = _random_complete_code(rng, alphabet, max_len - 1, rng.randint(0, 3))
        n = rng.randint(1, min(max_blocks, len(code)))
        xs = rng.sample(code, n)
        sigma = [rng.randrange(n) for _ in range(n)]
        ys = []
        for i in range(n):
            target = xs[sigma[i]]
            room = max_len - len(target)
            tail_len = rng.randint(0, room)
            ys.append(target + "".join(rng.choice(alphabet) for _ in range(tail_len)))
        if not _prefix_free(ys):
            continue
        pairs = []
        for x, y in zip(xs, ys):
            if len(x) < max_len and len(y) < max_len and rng.random() < 0.3:
                pairs.extend((x + a, y + a) for a in alphabet)
            else:
                pairs.append((x, y))
        try:
            sys_ = validate_system(alphabet, xs, [[x] for x in xs], pairs)
        except ValidationError:
            continue
        if surjective is not None and sys_.is_surjective() != surjective:
            continue
        return sys_


def sampled_cylinder_system(
    rng: random.Random,
    max_alphabet: int = 3,
    max_len: int = 4,
    max_blocks: int = 5,
    sweep: int = 16,
    tries: int = 20000,
) -> BlockSystem | None:
    """Arbitrary multi-cylinder blocks and maps, kept only if the hypothesis
    holds at every power up to ``sweep`` and the map is not onto."""
    for _ in range(tries):
        k = rng.randint(2, max_alphabet)
        alphabet = LETTERS[:k]
        code = _random_complete_code(rng, alphabet, max_len - 1, rng.randint(1, 4))
        n = rng.randint(2, min(max_blocks, len(code)))
        groups = _random_partition(rng, code, n)
        dom = _random_complete_code(rng, alphabet, max_len - 1, rng.randint(1, 4))
        imgs_pool = _random_complete_code(rng, alphabet, max_len, rng.randint(2, 6))
        if len(imgs_pool) < len(dom):
            continue
        imgs = rng.sample(imgs_pool, len(dom))
        try:
            sys_ = validate_system(alphabet, code, [sorted(g) for g in groups], list(zip(dom, imgs)))
        except ValidationError:
            continue
        if sys_.is_surjective():
            continue
        if hypothesis_sweep(sys_, sweep) is None:
            return sys_
    return None


def cylinder_corpus(seed: int, size: int) -> list[BlockSystem]:
    """Non-surjective cylinder block systems; mostly rigid, some sampled."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        if len(out) % 5 == 4:
            s = sampled_cylinder_system(rng)
            if s is not None:
                out.append(s)
                continue
        out.append(rigid_cylinder_system(rng))
    return out
