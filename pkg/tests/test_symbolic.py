import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from treelike.blocks import block_image, validate_system
from treelike.contraction import HypothesisViolation, NotApplicable
from treelike.cylinders import PrefixSet, denotes_subset, is_disjoint, subtract
from treelike.filters import tight_spectrum
from treelike.generators import rigid_cylinder_system, sampled_cylinder_system
from treelike.lattice import is_tree_like, strictly_dominated_by
from treelike.setsystems import CylinderSystem
from treelike.symbolic import (
    cylinder_semilattice,
    default_oracle_depth,
    extract_contraction_witness,
    find_block_witness,
    verify_block_witness,
)


def test_small_witnesses():
    w, trace = find_block_witness(load("identity.blk"))
    assert (w.block, w.power) == (0, 1)
    w, trace = find_block_witness(load("swap.blk"))
    assert (w.block, w.power) == (1, 2)
    w, trace = find_block_witness(load("shift.blk"))
    assert (w.block, w.power, w.strict) == (0, 1, True)
    assert block_image(load("shift.blk"), 0, 1).sorted_words() == ["aa"]


def test_strict_witnesses():
    w, _ = find_block_witness(load("shift.blk"), strict=True)
    assert (w.block, w.power, w.separator) == (0, 1, "ab")
    w, _ = find_block_witness(load("single.blk"), strict=True)
    assert (w.block, w.power, w.separator) == (0, 1, "b")
    with pytest.raises(NotApplicable):
        find_block_witness(load("swap.blk"), strict=True)


def test_violation_fixture():
    with pytest.raises(HypothesisViolation) as exc:
        find_block_witness(load("violation.blk"))
    assert (exc.value.power, exc.value.i, exc.value.j) == (1, 0, 1)


def test_complement_recursion():
    sys_ = load("staged5.blk")
    w, trace = find_block_witness(sys_, strict=True)
    cases = [s.case for s in trace]
    assert cases == ["case1", "complement", "case1", "strict"]
    assert w.block != 0
    assert verify_block_witness(sys_, w.block, w.power).agrees


def test_extracted_claim():
    claim, _ = extract_contraction_witness(load("shift.blk"))
    assert claim.image.sorted_words() == ["aa"] and claim.block.sorted_words() == ["a"]
    assert claim.separator == "ab"
    Z = PrefixSet.of("ab", [claim.separator])
    assert denotes_subset(Z, claim.block) and is_disjoint(Z, claim.image)


def test_verify_rejects_non_witness():
    v = verify_block_witness(load("swap.blk"), 0, 1)
    assert not v.contained and not v.oracle_contained and v.agrees
    v = verify_block_witness(load("shift.blk"), 1, 1)
    assert not v.contained and v.agrees


def test_oracle_depth_formula():
    sys_ = load("shift.blk")
    assert default_oracle_depth(sys_, 3) == 2 + 3


def test_cylinder_semilattice_is_tree_like_and_separates():
    L, labels = cylinder_semilattice("ab", 3)
    assert is_tree_like(L)
    pos = {w: i for i, w in enumerate(labels)}
    # Z(aa) << Z(a) with the separator Z(ab)
    assert strictly_dominated_by(L, pos["aa"], pos["a"])
    # spectrum points are the longest words, one per truncated infinite word
    assert len(tight_spectrum(L)) == 8


systems = st.integers(0, 2**32 - 1).map(lambda s: rigid_cylinder_system(random.Random(s)))


@settings(max_examples=100, deadline=None)
@given(systems)
def test_rigid_witnesses_are_verified(sys_):
    w, trace = find_block_witness(sys_, strict=True)
    X = sys_.blocks[w.block]
    img = block_image(sys_, w.block, w.power)
    assert denotes_subset(img, X) and img != X
    assert denotes_subset(PrefixSet.of(sys_.alphabet, [w.separator]), subtract(X, img))
    assert verify_block_witness(sys_, w.block, w.power).agrees


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sampled_witnesses_are_verified(seed):
    sys_ = sampled_cylinder_system(random.Random(seed), tries=2000)
    if sys_ is None:
        return
    try:
        w, _ = find_block_witness(sys_, strict=True)
    except HypothesisViolation:
        # the sweep only looked at 16 powers
        return
    assert verify_block_witness(sys_, w.block, w.power).agrees


def test_iterated_and_composed_images_agree():
    rng = random.Random(5)
    for _ in range(40):
        sys_ = rigid_cylinder_system(rng, surjective=None)
        cs = CylinderSystem(sys_)
        for i in range(sys_.n):
            for m in range(1, 4):
                assert cs.image(i, m) == block_image(sys_, i, m)


def test_exact_depth_agrees_with_formula_depth():
    rng = random.Random(17)
    done = 0
    while done < 30:
        sys_ = rigid_cylinder_system(rng)
        w, _ = find_block_witness(sys_)
        L = default_oracle_depth(sys_, w.power)
        if L > 9:
            continue
        for i in range(sys_.n):
            a = verify_block_witness(sys_, i, w.power)
            b = verify_block_witness(sys_, i, w.power, oracle_depth=L)
            assert b.oracle_depth >= a.oracle_depth
            assert (a.oracle_contained, a.oracle_separator_ok) == (b.oracle_contained, b.oracle_separator_ok)
        done += 1
