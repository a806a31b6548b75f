import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import trichotomy_pair
from treelike.errors import OutOfRange
from treelike.generators import random_semilattice, tree_like_semilattices
from treelike.lattice import (
    NotAssociative,
    NotCommutative,
    NotIdempotent,
    ZeroNotAbsorbing,
    atoms,
    chain,
    domination_witness,
    down_set,
    from_forest,
    is_tree_like,
    leq,
    orthogonal,
    strictly_dominated_by,
    tree_like_violation,
    up_set,
    validate_semilattice,
)

F, A, B = 1, 2, 3


def test_two_element_table_is_valid():
    L = validate_semilattice([[0, 0], [0, 1]])
    assert L.size == 2 and L.zero == 0


def test_noncommutative_table_names_the_pair():
    with pytest.raises(NotCommutative) as exc:
        validate_semilattice([[0, 0, 0], [0, 1, 1], [0, 2, 2]])
    assert exc.value.witness == (1, 2)


def test_non_idempotent_and_bad_zero():
    with pytest.raises(NotIdempotent):
        validate_semilattice([[0, 0], [0, 0]])
    with pytest.raises(ZeroNotAbsorbing):
        validate_semilattice([[0, 1], [1, 1]])
    with pytest.raises(OutOfRange):
        validate_semilattice([[0, 0], [0, 2]])


def test_nonassociative_table():
    # commutative and idempotent, but (1.2).3 != 1.(2.3)
    t = [
        [0, 0, 0, 0],
        [0, 1, 3, 0],
        [0, 3, 2, 2],
        [0, 0, 2, 3],
    ]
    with pytest.raises(NotAssociative):
        validate_semilattice(t)


def test_e4_all_triples(e4):
    t = e4.table
    for x, y, z in itertools.product(range(4), repeat=3):
        assert t[t[x][y]][z] == t[x][t[y][z]]


def test_order_and_orthogonality(e4, chain3):
    assert leq(e4, A, F)
    assert not leq(e4, A, B)
    assert all(leq(e4, 0, e) for e in e4.elements())
    assert orthogonal(e4, A, B)
    assert not orthogonal(e4, A, F)
    assert orthogonal(e4, 0, 0)


def test_tree_like_examples(e4, chain3, diamond):
    assert is_tree_like(chain3)
    assert is_tree_like(e4)
    assert tree_like_violation(diamond) == (2, 3)


def test_strict_domination_examples(e4, chain3):
    assert strictly_dominated_by(e4, A, F)
    assert domination_witness(e4, A, F) == B
    for e in e4.elements():
        assert not strictly_dominated_by(e4, e, e)
    assert not strictly_dominated_by(chain3, 1, 2)


def test_zero_is_dominated_by_every_nonzero(e4):
    for f in range(1, 4):
        assert domination_witness(e4, 0, f) is not None
    assert domination_witness(e4, 0, 0) is None


def test_atoms_and_down_sets(e4, chain3):
    assert atoms(e4) == {A, B}
    assert atoms(chain3) == {1}
    assert atoms(chain(2)) == {1}
    assert down_set(e4, F) == {0, A, B, F}
    assert down_set(e4, 0) == {0}
    assert down_set(e4, A) == {0, A}
    assert up_set(e4, A) == {A, F}


def test_forest_embedding():
    # two roots, the first with two children
    L = from_forest([None, 0, 0, None])
    assert L.size == 5
    assert is_tree_like(L)
    assert atoms(L) == {2, 3, 4}


def test_every_forest_is_tree_like():
    assert all(is_tree_like(L) for L in tree_like_semilattices(6))


tables = st.integers(0, 2**32 - 1).map(lambda s: random_semilattice(random.Random(s)))


@settings(max_examples=150, deadline=None)
@given(tables)
def test_antisymmetry(L):
    for e, f in itertools.product(L.elements(), repeat=2):
        if leq(L, e, f) and leq(L, f, e):
            assert e == f


@settings(max_examples=150, deadline=None)
@given(tables)
def test_tree_like_matches_pair_scan(L):
    assert tree_like_violation(L) == trichotomy_pair(L.table)


@settings(max_examples=150, deadline=None)
@given(tables)
def test_domination_is_strict_and_upward_stable(L):
    for e, f in itertools.product(L.elements(), repeat=2):
        d = domination_witness(L, e, f)
        if d is None:
            continue
        assert leq(L, e, f) and not leq(L, f, e)
        assert d != 0 and leq(L, d, f) and orthogonal(L, d, e)
        for g in L.elements():
            if leq(L, f, g):
                assert strictly_dominated_by(L, e, g)
