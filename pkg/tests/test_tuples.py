import itertools

import pytest

from fkocert import (
    Clause,
    Cnf,
    CollectionSearchError,
    TupleCollection,
    check_collection,
    find_collection,
    gen_random_3cnf,
    is_even_tuple,
    is_inconsistent_tuple,
)
from fkocert.cnf import all_assignments, is_3xor
from fkocert.tuples import parity_vector
from conftest import planted_block

POS = Clause((1, 2, 3), (1, 1, 1))
NEG = Clause((1, 2, 3), (0, 0, 0))
ONE_NEG = Clause((1, 2, 3), (1, 0, 1))


def test_parity_vector_values():
    k = Cnf(4, (ONE_NEG, NEG, Clause((1, 2, 4), (1, 1, 1))))
    # bit 0 = negation parity, bits 1..n = variable occurrence
    assert parity_vector(k, 0) == 0b1111
    assert parity_vector(k, 1) == 0b1111  # three negations, odd
    assert parity_vector(k, 2) == 0b10110


def test_even_and_inconsistent_pairs():
    k = Cnf(3, (POS, NEG, ONE_NEG, Clause((1, 2, 3), (1, 1, 0))))
    assert is_even_tuple(k, (0, 0))
    assert not is_inconsistent_tuple(k, (0, 0))
    assert is_inconsistent_tuple(k, (0, 1))       # 3 negations
    assert is_inconsistent_tuple(k, (0, 2))       # 1 negation
    assert not is_inconsistent_tuple(k, (2, 3))   # 2 negations total
    assert is_even_tuple(k, (2, 3))


def test_uneven_tuple():
    k = Cnf(4, (POS, Clause((1, 2, 4), (1, 1, 1))))
    assert not is_even_tuple(k, (0, 1))           # x3, x4 appear once
    assert not is_inconsistent_tuple(k, (0, 1))


def test_tuple_index_range():
    k = Cnf(3, (POS,))
    with pytest.raises(IndexError):
        is_even_tuple(k, (0, 5))


def test_check_collection_accepts_pair():
    k = Cnf(3, (POS, NEG))
    coll = TupleCollection(tuples=((0, 1),), t=1, k=2, d=1)
    ok, why = check_collection(k, coll)
    assert ok and why is None


def test_check_collection_violations():
    k = Cnf(3, (POS, NEG, ONE_NEG))
    cases = [
        (TupleCollection(((0, 1),), t=2, k=2, d=1), "t="),
        (TupleCollection(((0, 1),), t=1, k=3, d=1), "k"),
        (TupleCollection(((0, 1, 2),), t=1, k=2, d=1), "length"),
        (TupleCollection(((0, 9),), t=1, k=2, d=1), "range"),
        (TupleCollection(((0, 0),), t=1, k=2, d=4), "inconsistent"),
        (TupleCollection(((0, 1), (0, 2)), t=2, k=2, d=1), "bound is d"),
    ]
    for coll, needle in cases:
        ok, why = check_collection(k, coll)
        assert not ok
        assert needle in why, (needle, why)


def test_reuse_counts_multiplicity_within_tuple():
    # same index twice in one tuple burns two of its d slots
    k = Cnf(3, (POS, NEG))
    coll = TupleCollection(((0, 0, 0, 1),), t=1, k=4, d=2)
    ok, why = check_collection(k, coll)
    assert not ok and "bound is d" in why


def test_find_collection_planted_pairs():
    k = planted_block(1)
    coll = find_collection(k, k_max=2, d=4, t_target=16)
    assert coll.t == 16 and coll.k == 2 and coll.d == 4
    ok, why = check_collection(k, coll)
    assert ok, why
    counts = {}
    for tup in coll.tuples:
        for idx in tup:
            counts[idx] = counts.get(idx, 0) + 1
    assert all(v == 4 for v in counts.values())
    # pairs at odd sign-distance are exactly the inconsistent ones
    for tup in coll.tuples:
        assert is_inconsistent_tuple(k, tup)


def test_find_collection_two_blocks():
    k = planted_block(2)
    coll = find_collection(k, k_max=2, d=4, t_target=32)
    assert coll.t == 32 and coll.k == 2


def test_find_collection_single_clause_fails():
    k = Cnf(3, (POS,))
    with pytest.raises(CollectionSearchError) as ei:
        find_collection(k, k_max=4, d=4, t_target=1)
    assert ei.value.best.t == 0
    assert ei.value.t_target == 1


def test_find_collection_complementary_pair():
    k = Cnf(3, (POS, NEG))
    coll = find_collection(k, k_max=2, d=1, t_target=1)
    assert coll.t >= 1
    assert coll.tuples[0] == (0, 1)


def test_find_collection_quad_only():
    # no two clauses share a triple, but the four cancel jointly
    k = Cnf(
        6,
        (
            Clause((1, 2, 3), (0, 1, 1)),
            Clause((1, 2, 4), (1, 1, 1)),
            Clause((3, 5, 6), (1, 1, 1)),
            Clause((4, 5, 6), (1, 1, 1)),
        ),
    )
    with pytest.raises(CollectionSearchError):
        find_collection(k, k_max=2, d=4, t_target=1)
    coll = find_collection(k, k_max=4, d=4, t_target=1)
    assert coll.k == 4
    assert coll.tuples == ((0, 1, 2, 3),)
    assert is_inconsistent_tuple(k, (0, 1, 2, 3))


def test_find_collection_respects_d():
    k = planted_block(1)
    coll = find_collection(k, k_max=2, d=1, t_target=1)
    seen = [i for tup in coll.tuples for i in tup]
    assert len(seen) == len(set(seen))


def test_find_collection_validates_parameters():
    k = Cnf(3, (POS, NEG))
    with pytest.raises(ValueError):
        find_collection(k, k_max=3, d=4, t_target=1)
    with pytest.raises(ValueError):
        find_collection(k, k_max=2, d=0, t_target=1)


def test_find_collection_deterministic():
    k = gen_random_3cnf(8, 50, 21)
    a = find_collection(k, k_max=4, d=4, t_target=1, seed=5)
    b = find_collection(k, k_max=4, d=4, t_target=1, seed=5)
    assert a == b


def test_found_tuples_are_inconsistent_random():
    for seed in range(5):
        k = gen_random_3cnf(8, 45, seed)
        try:
            coll = find_collection(k, k_max=4, d=4, t_target=1, seed=seed)
        except CollectionSearchError:
            continue
        ok, why = check_collection(k, coll)
        assert ok, why
        for tup in coll.tuples:
            assert is_inconsistent_tuple(k, tup)


def test_xor_lemma_exhaustive_on_planted_pairs():
    # every assignment leaves >= 1 member of each inconsistent tuple
    # with an even number of true literals
    k = planted_block(1)
    coll = find_collection(k, k_max=2, d=4, t_target=16)
    for a in all_assignments(3):
        for tup in coll.tuples:
            assert any(not is_3xor(k.clauses[i], a) for i in tup)


def test_xor_lemma_on_quad():
    k = Cnf(
        6,
        (
            Clause((1, 2, 3), (0, 1, 1)),
            Clause((1, 2, 4), (1, 1, 1)),
            Clause((3, 5, 6), (1, 1, 1)),
            Clause((4, 5, 6), (1, 1, 1)),
        ),
    )
    for a in all_assignments(6):
        assert any(not is_3xor(k.clauses[i], a) for i in (0, 1, 2, 3))
