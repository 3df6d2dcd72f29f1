import random

import pytest

from cipherorder.groups import (
    GroupSizeError,
    GroupTable,
    closure,
    conjugate_subgroup,
    cyclic_group,
    double_coset,
    intersection,
    left_cosets,
    stabilizer,
    symmetric_group,
)
from cipherorder.perms import Permutation, compose, cycle, identity, transposition

from helpers import enumerate_subgroup_oracle, random_subgroup

S3 = symmetric_group(3)
S4 = symmetric_group(4)
H01 = closure([transposition(3, 0, 1)])


def test_closure_of_transposition():
    assert H01.order == 2
    assert identity(3) in H01


def test_closure_matches_brute_force_oracle():
    gens = [transposition(3, 0, 1), cycle(3, (0, 1, 2))]
    oracle = enumerate_subgroup_oracle(gens)
    built = closure(gens)
    assert set(built.elements) == oracle
    assert built.order == 6


def test_closure_cap_exceeded():
    with pytest.raises(GroupSizeError):
        closure([cycle(5, (0, 1, 2, 3, 4))], cap=4)


def test_closure_empty_generators():
    with pytest.raises(ValueError):
        closure([])


def test_closure_degree_mismatch():
    with pytest.raises(ValueError):
        closure([identity(3), identity(4)])


def test_canonical_order_independent_of_generators():
    a = closure([transposition(3, 0, 1), cycle(3, (0, 1, 2))])
    b = closure([transposition(3, 1, 2), transposition(3, 0, 2)])
    assert a == b
    assert a.elements == b.elements


def test_closure_idempotent():
    again = closure(list(S3.elements))
    assert again.elements == S3.elements


def test_group_table_rejects_non_closed_sets():
    with pytest.raises(ValueError):
        GroupTable([identity(3), cycle(3, (0, 1, 2))])
    with pytest.raises(ValueError):
        GroupTable([transposition(3, 0, 1)])  # no identity


def test_symmetric_group_is_lexicographic():
    assert S3.element(0) == identity(3)
    assert list(S3.elements) == sorted(S3.elements)


def test_left_cosets_whole_group():
    dec = left_cosets(S3, S3)
    assert dec.n_blocks == 1


def test_left_cosets_of_order_two_subgroup():
    dec = left_cosets(S3, H01)
    assert dec.n_blocks == 3
    assert all(len(block) == 2 for block in dec.blocks)
    covered = sorted(i for block in dec.blocks for i in block)
    assert covered == list(range(6))
    # representative is the minimal member of its block
    for rep, block in zip(dec.transversal, dec.blocks):
        assert S3.index(rep) == block[0]


def test_left_cosets_of_trivial_subgroup():
    dec = left_cosets(S3, closure([identity(3)]))
    assert dec.n_blocks == 6
    assert all(len(block) == 1 for block in dec.blocks)


def test_left_cosets_requires_subgroup():
    with pytest.raises(ValueError):
        left_cosets(closure([cycle(3, (0, 1, 2))]), H01)


def test_conjugate_by_identity():
    assert conjugate_subgroup(identity(3), H01) == H01


def test_conjugate_transposition_example():
    conj = conjugate_subgroup(transposition(3, 1, 2), H01)
    assert set(conj.elements) == {identity(3), transposition(3, 0, 2)}


def test_conjugate_moves_stabilized_point():
    pi = cycle(4, (0, 1, 2, 3))
    stab0 = stabilizer(S4, (0,))
    assert conjugate_subgroup(pi, stab0) == stabilizer(S4, (pi.apply(0),))


def test_stabilizer_examples():
    assert stabilizer(S3, ()) == S3
    stab0 = stabilizer(S3, (0,))
    assert set(stab0.elements) == {identity(3), transposition(3, 1, 2)}
    assert stabilizer(S3, (0, 1)).order == 1
    with pytest.raises(ValueError):
        stabilizer(S3, (0, 0))


def test_double_coset_collapses_for_pi_in_h():
    dc = double_coset(S3, H01, transposition(3, 0, 1), H01)
    assert set(dc.elements) == set(S3.indices_of(H01))
    assert dc.m == 1


def test_double_coset_expands():
    dc = double_coset(S3, H01, transposition(3, 1, 2), H01)
    assert len(dc.elements) == 4
    assert dc.m == 2
    # brute-force oracle: enumerate h * pi * h'
    pi = transposition(3, 1, 2)
    oracle = {
        S3.index(compose(compose(a, pi), b)) for a in H01 for b in H01
    }
    assert set(dc.elements) == oracle


def test_double_coset_complement_of_stabilizer():
    stab2 = stabilizer(S3, (2,))
    dc = double_coset(S3, stab2, cycle(3, (0, 1, 2)), stab2)
    assert len(dc.elements) == 6 - 2  # 3! - 2!
    assert set(dc.elements) == set(range(6)) - set(S3.indices_of(stab2))


def test_double_coset_requires_membership():
    with pytest.raises(ValueError):
        double_coset(closure([cycle(3, (0, 1, 2))]), H01, identity(3), H01)
    with pytest.raises(ValueError):
        double_coset(S3, H01, identity(4), H01)


def test_randomized_lagrange_and_orbit_stabilizer():
    rng = random.Random(7)
    for group in (S3, S4):
        for _ in range(25):
            h = random_subgroup(rng, group)
            k = random_subgroup(rng, group)
            pi = rng.choice(group.elements)
            assert group.order % h.order == 0
            dec = left_cosets(group, h)
            assert dec.n_blocks == group.order // h.order
            covered = sorted(i for block in dec.blocks for i in block)
            assert covered == list(range(group.order))

            dc = double_coset(group, h, pi, k)
            stab = intersection(h, conjugate_subgroup(pi, k))
            assert dc.m * stab.order == h.order
            assert len(dc.elements) == dc.m * k.order
            in_blocks = sorted(i for block in dc.left_blocks for i in block)
            assert in_blocks == list(dc.elements)
            for rep, block in zip(dc.left_reps, dc.left_blocks):
                assert group.index(rep) == block[0]
