import pytest
from hypothesis import given, settings

from conftest import posets
from posettww.errors import BadParameters, BudgetExceeded
from posettww.generators import (antichain_poset, chain_poset, divisibility_poset,
                                 figure1_poset, figure4_poset, lower_bound_poset,
                                 random_width_d)
from posettww.greedy import greedy_sequence
from posettww.oracle import (default_cap, exact_natural, exact_natural_twinwidth,
                             exact_symmetric, exact_symmetric_twinwidth,
                             first_contraction_degrees, min_first_contraction_red_degree)
from posettww.poset import chain_partition
from posettww.red_poset import RedPoset
from posettww.sequence import build_matrix, replay_natural, replay_symmetric
from posettww.width2 import width2_sequence


def test_figure4_exact():
    p, pi = figure4_poset()
    res = exact_natural(p)
    assert res.value == 2
    assert replay_natural(p, pi, res.witness).max_red_degree == 2


def test_figure4_first_contractions():
    p, _ = figure4_poset()
    degs = first_contraction_degrees(p)
    best = min(degs.values())
    assert best == 1 == min_first_contraction_red_degree(p)
    pairs = {frozenset(p.label(x) for x in e) for e, k in degs.items() if k == best}
    assert pairs == {frozenset(s) for s in
                     [("a2", "a3"), ("a3", "a4"), ("b2", "b3"), ("b3", "b4")]}


def test_first_contraction_degrees_match_red_poset():
    p, pi = figure1_poset()
    for (x, y), k in first_contraction_degrees(p).items():
        rp = RedPoset(p, pi)
        assert rp.red_degree(rp.contract(x, y)) == k


def test_baselines():
    assert exact_natural_twinwidth(chain_poset(5)) == 0
    assert exact_symmetric_twinwidth(build_matrix(antichain_poset(3))) == 1
    assert exact_symmetric_twinwidth(build_matrix(chain_poset(1))) == 0


def test_divisibility_exact():
    p = divisibility_poset([2, 3, 4, 6])
    assert min_first_contraction_red_degree(p) >= 1
    assert exact_natural_twinwidth(p) == 1


def test_figure1_exact():
    p, _ = figure1_poset()
    assert exact_natural_twinwidth(p) == 1


@pytest.mark.parametrize("d, k, low", [(3, 4, 2), (4, 8, 3)])
def test_lower_bound_certificates(d, k, low):
    p, _ = lower_bound_poset(d, k)
    assert min_first_contraction_red_degree(p) >= low == d - 1


def test_caps_and_budget(monkeypatch):
    p, _ = figure1_poset()
    with pytest.raises(BadParameters):
        exact_natural(p, cap=8)
    with pytest.raises(BudgetExceeded):
        exact_natural(p, budget=3)
    monkeypatch.setenv("POSETTWW_ORACLE_CAP", "5")
    assert default_cap() == 5
    with pytest.raises(BadParameters):
        exact_natural(chain_poset(6))
    monkeypatch.setenv("POSETTWW_ORACLE_CAP", "many")
    with pytest.raises(BadParameters):
        default_cap()


def test_empty_and_tiny():
    with pytest.raises(BadParameters):
        min_first_contraction_red_degree(chain_poset(1))
    assert exact_natural_twinwidth(chain_poset(1)) == 0


@settings(max_examples=60, deadline=None)
@given(posets(max_n=6))
def test_memo_agrees_with_plain_search(p):
    assert exact_natural(p, memo=True).value == exact_natural(p, memo=False).value
    m = build_matrix(p)
    assert exact_symmetric(m, memo=True).value == exact_symmetric(m, memo=False).value


@settings(max_examples=60, deadline=None)
@given(posets(max_n=6))
def test_bridge_exact(p):
    nat = exact_natural(p)
    sym = exact_symmetric(build_matrix(p))
    assert nat.value <= sym.value <= nat.value + 1
    pi = chain_partition(p)
    assert replay_natural(p, pi, nat.witness).max_red_degree == nat.value
    assert replay_symmetric(build_matrix(p), sym.witness).max_red_degree == sym.value


@settings(max_examples=40, deadline=None)
@given(posets(min_n=2, max_n=7))
def test_algorithms_never_beat_the_optimum(p):
    pi = chain_partition(p)
    best = exact_natural_twinwidth(p)
    assert best <= greedy_sequence(p, pi)[1]
    if pi.d == 2:
        assert best <= width2_sequence(p, pi)[1]


def test_random_two_chain_optimum():
    for seed in range(10):
        p, pi = random_width_d(7, 2, 0.5, seed)
        assert exact_natural_twinwidth(p) <= width2_sequence(p, pi)[1] <= 2
