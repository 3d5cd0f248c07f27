import pytest
from hypothesis import given, settings

from conftest import brute_width, max_antichain, posets
from posettww.errors import CycleDetected, IdOutOfRange, InvalidPartition
from posettww.generators import (antichain_poset, chain_poset, divisibility_poset,
                                 figure1_poset, lower_bound_poset)
from posettww.poset import (ChainPartition, Poset, chain_index, chain_partition,
                            from_cover_relations, is_antichain, width)


def test_divisibility_from_covers():
    p = from_cover_relations(4, [(0, 2), (0, 3), (1, 3)], ["2", "3", "4", "6"])
    two, three, four, six = (p.vertex(s) for s in "2346")
    assert p.leq(two, four) and p.leq(two, six) and p.leq(three, six)
    assert not p.comparable(four, six)
    assert not p.leq(four, six)


def test_chain_closure_is_transitive():
    p = from_cover_relations(3, [(0, 1), (1, 2)])
    assert p.leq(0, 2)
    assert not p.leq(2, 0)


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        from_cover_relations(2, [(0, 1), (1, 0)])


def test_id_out_of_range():
    with pytest.raises(IdOutOfRange):
        Poset(3, [(0, 3)])


def test_reflexive():
    p = chain_poset(5)
    assert all(p.leq(u, u) for u in range(5))
    assert p.leq(0, 4)


@given(posets(max_n=10))
def test_closure_axioms(p):
    p.check_axioms()
    m = p.closure_matrix()
    for u in range(p.n):
        for v in range(p.n):
            assert m[u, v] == p.leq(u, v)


def test_width_baselines():
    assert width(chain_poset(7)) == 1
    assert width(antichain_poset(5)) == 5
    assert width(divisibility_poset([2, 3, 4, 6])) == 2


def test_width_lower_bound_poset():
    p, _ = lower_bound_poset(4, 8)
    assert max_antichain(p) == 4
    assert width(p) == 4


@settings(max_examples=150)
@given(posets(max_n=12))
def test_width_matches_brute_force(p):
    assert width(p) == brute_width(p)


@settings(max_examples=150)
@given(posets(max_n=12))
def test_chain_partition_is_minimum(p):
    pi = chain_partition(p)
    assert pi.d == width(p)
    pi.validate(p)
    assert sorted(v for c in pi.chains for v in c) == list(range(p.n))
    for c in pi.chains:
        assert all(p.leq(a, b) for a, b in zip(c, c[1:]))


def test_chain_partition_figure1():
    p, _ = figure1_poset()
    pi = chain_partition(p)
    assert pi.d == 2
    pi.validate(p)


def test_chain_partition_antichain():
    pi = chain_partition(antichain_poset(3))
    assert sorted(pi.chains) == [(0,), (1,), (2,)]


def test_divisibility_two_chain_covers():
    p = divisibility_poset([2, 3, 4, 6])
    pi = chain_partition(p)
    assert pi.d == 2
    # every chain has at most 2 elements, so a 2-chain cover pairs them up;
    # pairing 2 with 6 leaves 3 and 4, which are incomparable
    names = sorted(tuple(p.label(v) for v in c) for c in pi.chains)
    assert names == [("2", "4"), ("3", "6")]


def test_partition_validation():
    p = antichain_poset(2)
    bad = ChainPartition.from_chains(2, [[0, 1]])
    with pytest.raises(InvalidPartition):
        bad.validate(p)
    with pytest.raises(InvalidPartition):
        chain_index(p, bad)


@given(posets(max_n=10))
def test_chain_index_answers_queries(p):
    pi = chain_partition(p)
    idx = chain_index(p, pi)
    for x in range(p.n):
        for y in range(p.n):
            assert idx.leq(x, y) == p.leq(x, y)


def test_is_antichain():
    p = divisibility_poset([2, 3, 4, 6])
    four, six = p.vertex("4"), p.vertex("6")
    assert is_antichain(p, [four, six])
    assert not is_antichain(p, [p.vertex("2"), six])
