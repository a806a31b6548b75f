"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run on its own with ``pytest tests/test_acceptance.py -s -m acceptance``;
the lines are also printed during a normal ``pytest`` run.
"""

import itertools
import os
import random
import subprocess
import sys
import time

import pytest

import oracles
from cli_cases import BLOCKS, CASES, SEMIGROUPS, SEMILATTICES
from conftest import FIXTURES, load
from test_contraction import case2_coverage
from treelike.blocks import block_image
from treelike.contraction import HypothesisViolation, find_contracting_block
from treelike.cylinders import (
    PrefixSet,
    denotes_subset,
    subtract,
    truncation_oracle_disjoint,
    truncation_oracle_subset,
)
from treelike.filters import atom_spectrum, basic_set, tight_spectrum, ultrafilter_spectrum
from treelike.generators import (
    cylinder_corpus,
    random_finite_block_system,
    random_inverse_semigroup,
    random_semilattice,
    tree_like_semilattices,
)
from treelike.lattice import chain, domination_witness, leq, orthogonal
from treelike.semigroup import (
    action_image_of_domain,
    condition_iii_search,
    domain_set,
    semilattice_as_semigroup,
    symmetric_inverse_monoid,
)
from treelike.setsystems import FiniteSetSystem
from treelike.symbolic import default_oracle_depth, find_block_witness

pytestmark = pytest.mark.acceptance

FINITE_COUNT = 600
CYLINDER_COUNT = 150


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def finite_corpus():
    rng = random.Random(20240601)
    return [random_finite_block_system(rng, max_points=12, max_blocks=4) for _ in range(FINITE_COUNT)]


def exhaustive_witnesses(blocks, f, max_m=24):
    found = []
    for i, X in enumerate(blocks):
        img = set(X)
        for m in range(1, max_m + 1):
            img = {f[x] for x in img}
            if img <= X:
                found.append((i, m))
    return found


def semigroup_fixtures():
    out = [load(f) for f in SEMIGROUPS] + [load("z2.inv", adjoin_zero=True)]
    out += [semilattice_as_semigroup(load(f)) for f in SEMILATTICES]
    rng = random.Random(7)
    out += [random_inverse_semigroup(rng, points=3, generators=3, limit=10) for _ in range(60)]
    return [S for S in out if S.size <= 10]


# --- 1 ------------------------------------------------------------------------


def test_criterion_1_finite_blocks(capsys):
    start = time.perf_counter()
    corpus = finite_corpus()
    failures = []
    for blocks, f in corpus:
        assert len(blocks) <= 4 and len(f) <= 12
        w, _ = find_contracting_block(FiniteSetSystem(blocks, f))
        img = set(blocks[w.block])
        for _ in range(w.power):
            img = {f[x] for x in img}
        if not img <= blocks[w.block] or not exhaustive_witnesses(blocks, f):
            failures.append((blocks, f, w))
    elapsed = time.perf_counter() - start
    ok = not failures and len(corpus) >= 500 and elapsed <= 60
    report(capsys, 1, ok, f"{len(corpus)} finite systems, {len(failures)} failures, {elapsed:.1f}s")
    assert ok


# --- 2 ------------------------------------------------------------------------


def test_criterion_2_cylinder_blocks(capsys):
    start = time.perf_counter()
    corpus = cylinder_corpus(2024, CYLINDER_COUNT)
    bad = []
    for sys_ in corpus:
        assert len(sys_.alphabet) <= 4 and sys_.n <= 5 and sys_.max_word_length() <= 4
        assert not sys_.is_surjective()
        w, _ = find_block_witness(sys_, strict=True)
        X = sys_.blocks[w.block]
        img = block_image(sys_, w.block, w.power)
        rest = subtract(X, img)
        Z = PrefixSet.of(sys_.alphabet, [w.separator])
        L = default_oracle_depth(sys_, w.power)
        L = max(L, img.max_length(), len(w.separator))
        symbolic = denotes_subset(img, X) and not rest.is_empty() and denotes_subset(Z, rest)
        oracle = (truncation_oracle_subset(img, X, L)
                  and truncation_oracle_subset(Z, X, L)
                  and truncation_oracle_disjoint(Z, img, L))
        if not (w.strict and symbolic and oracle):
            bad.append((sys_, w))
    elapsed = time.perf_counter() - start
    ok = not bad and len(corpus) >= 100 and elapsed <= 120
    report(capsys, 2, ok, f"{len(corpus)} cylinder systems, {len(bad)} disagreements, {elapsed:.1f}s")
    assert ok


# --- 3 ------------------------------------------------------------------------


def test_criterion_3_pigeonhole_bound(capsys):
    over = []
    runs = 0
    systems = [FiniteSetSystem(b, f) for b, f in finite_corpus()]
    for s in systems:
        try:
            _, trace = find_contracting_block(s)
        except HypothesisViolation as exc:
            trace = exc.trace
        runs += 1
        over += [st for st in trace if hasattr(st, "iterations") and st.iterations > 2 ** (st.n ** 2) + 1]
    for s in cylinder_corpus(2024, CYLINDER_COUNT):
        for strict in (False, True):
            try:
                _, trace = find_block_witness(s, strict=strict)
            except HypothesisViolation as exc:
                trace = exc.trace
            runs += 1
            over += [st for st in trace if hasattr(st, "iterations") and st.iterations > 2 ** (st.n ** 2) + 1]
    ok = not over
    report(capsys, 3, ok, f"{runs} runs, {len(over)} levels beyond 2^(n^2)+1 powers")
    assert ok


# --- 4 ------------------------------------------------------------------------


def test_criterion_4_tree_like_domination(capsys):
    checked, failures, lattices = 0, [], 0
    for L in tree_like_semilattices(6):
        lattices += 1
        assert oracles.trichotomy_pair(L.table) is None
        # D by filter membership, independently of the atom shortcut
        points = tight_spectrum(L) if L.size > 1 else []
        D = {e: frozenset(p.generator for p in points if e in p) for e in L.elements()}
        for e, f in itertools.product(L.elements(), repeat=2):
            assert D[e] == basic_set(L, e)
            if not D[e] < D[f]:
                continue
            checked += 1
            d = domination_witness(L, e, f)
            if d is None or d == 0 or not leq(L, d, f) or not orthogonal(L, d, e) or not leq(L, e, f):
                failures.append((L.table, e, f, d))
    ok = not failures and checked > 0
    report(capsys, 4, ok, f"{lattices} tree-like semilattices, {checked} proper inclusions, {len(failures)} failures")
    assert ok


# --- 5 ------------------------------------------------------------------------


def test_criterion_5_image_of_domain(capsys):
    counts = {"i": 0, "ii": 0}
    failures = []
    fixtures = semigroup_fixtures()
    for S in fixtures:
        for s in S.elements():
            src = S.source(s)
            for e in S.elements():
                if not S.is_idempotent(e):
                    continue
                expected = domain_set(S, S.mul(s, e, S.star[s]))
                if S.mul(e, src) == e:
                    counts["i"] += 1
                    if action_image_of_domain(S, s, e, part="i") != expected:
                        failures.append((S, s, e, "i"))
                if domain_set(S, e) <= domain_set(S, src):
                    counts["ii"] += 1
                    if action_image_of_domain(S, s, e, part="ii") != expected:
                        failures.append((S, s, e, "ii"))
    ok = not failures
    report(capsys, 5, ok, f"{len(fixtures)} semigroups, part (i) {counts['i']} pairs, "
                          f"part (ii) {counts['ii']} pairs, {len(failures)} failures")
    assert ok


# --- 6 ------------------------------------------------------------------------


def test_criterion_6_tight_equals_ultra(capsys):
    start = time.perf_counter()
    rng = random.Random(99)
    corpus = [random_semilattice(rng, max_size=7, ground=5) for _ in range(400)]
    corpus += [L for L in tree_like_semilattices(7)]
    corpus += [load(f) for f in SEMILATTICES] + [chain(n) for n in range(2, 8)]
    corpus = [L for L in corpus if 2 <= L.size <= 7]
    failures = []
    for L in corpus:
        g = lambda pts: sorted(p.generator for p in pts)  # noqa: E731
        if not g(tight_spectrum(L)) == g(ultrafilter_spectrum(L)) == g(atom_spectrum(L)):
            failures.append(L.table)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 60
    report(capsys, 6, ok, f"{len(corpus)} semilattices, {len(failures)} failures, {elapsed:.1f}s")
    assert ok


# --- 7 ------------------------------------------------------------------------


def test_criterion_7_condition_iii_vacuous(capsys):
    fixtures = semigroup_fixtures() + [symmetric_inverse_monoid(3)[0]]
    found = []
    for S in fixtures:
        result = condition_iii_search(S)
        found += [w for w in result.witnesses.values() if w is not None]
    ok = not found
    report(capsys, 7, ok, f"{len(fixtures)} finite semigroups, {len(found)} witnesses found")
    assert ok


# --- 8 ------------------------------------------------------------------------


def test_criterion_8_case2_coverage(capsys):
    wanted, missed, ifs, one_sided = case2_coverage()
    covered = len(wanted) - len(missed)
    ok = wanted and not missed and not one_sided
    report(capsys, 8, ok, f"repeat branch {covered}/{len(wanted)} lines, "
                          f"{len(ifs) - len(one_sided)}/{len(ifs)} branch points both ways")
    assert ok


# --- 9 ------------------------------------------------------------------------


def _cli(args, fixture, out, seed):
    words = 2 if args[0] == "blocks" else 1
    argv = args[:words] + [str(FIXTURES / fixture)] + args[words:] + ["-o", str(out)]
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    subprocess.run([sys.executable, "-m", "treelike", *argv], env=env, check=False)
    return out.read_bytes()


def test_criterion_9_determinism(capsys, tmp_path):
    differ = []
    for n, (args, fixture, _) in enumerate(CASES):
        a = _cli(args, fixture, tmp_path / f"{n}a.json", 1)
        b = _cli(args, fixture, tmp_path / f"{n}b.json", 2)
        if a != b or not a:
            differ.append((args, fixture))
    ok = not differ
    report(capsys, 9, ok, f"{len(CASES)} CLI runs twice each, {len(differ)} differing reports")
    assert ok
