"""Acceptance suite: one PASS/FAIL line per criterion.

Each test records its line in ``RESULTS``; the lines are printed at the end
of the pytest run (see ``conftest.py``) and when this file is executed as a
script.  Instance sizes and seeds are fixed so reruns do the same work.
"""

import random
import statistics
import sys
import time
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bar_properties import RunStats, neighbourly_run  # noqa: E402
from conftest import posets  # noqa: E402,F401
from posettww.bench import ratios, scaling  # noqa: E402
from posettww.formats import ContractionSequence  # noqa: E402
from posettww.generators import (antichain_poset, chain_poset, divisibility_poset,  # noqa: E402
                                 figure1_poset, figure1_sequence, figure4_poset,
                                 lower_bound_poset, random_width_d, single_chain,
                                 singleton_chains)
from posettww.greedy import degree_bound, greedy_sequence  # noqa: E402
from posettww.oracle import (exact_natural_twinwidth, exact_symmetric_twinwidth,  # noqa: E402
                             first_contraction_degrees, min_first_contraction_red_degree)
from posettww.poset import Poset, chain_partition  # noqa: E402
from posettww.sequence import build_matrix, replay_natural, replay_symmetric  # noqa: E402
from posettww.width2 import width2_sequence  # noqa: E402

RESULTS: list[str] = []


def report(num: int, name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2} {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _random_poset(rng: random.Random, n: int) -> Poset:
    perm = rng.sample(range(n), n)
    p = rng.choice([0.2, 0.4, 0.6])
    covers = [(perm[a], perm[b]) for a, b in combinations(range(n), 2) if rng.random() < p]
    return Poset(n, covers)


def _random_sequence(rng: random.Random, n: int) -> ContractionSequence:
    live = list(range(n))
    events = []
    while len(live) > 1:
        a, b = sorted(rng.sample(live, 2))
        events.append((a, b))
        live.remove(b)
    return ContractionSequence(events)


def test_01_figure1_replay():
    p, pi = figure1_poset()
    seq = figure1_sequence()
    replay_natural(p, pi, seq)
    times = []
    for _ in range(5):
        t0 = time.perf_counter()
        r = replay_natural(p, pi, seq)
        times.append(time.perf_counter() - t0)
    ms = statistics.median(times) * 1e3
    report(1, "figure-1 replay", r.max_red_degree == 2 and ms < 10,
           f"max red degree {r.max_red_degree} (need exactly 2), median {ms:.2f} ms (need < 10)")


def _width2_instances():
    rng = random.Random(2024)
    out = []
    for i in range(500):
        if i < 40:
            n = 10_000
        else:
            n = int(round(10 ** rng.uniform(0.31, 4)))
        out.append((max(2, n), rng.choice([0.05, 0.2, 0.5, 0.8, 0.95]), 1000 + i))
    return out


def test_02a_width2_bound():
    worst = 0
    runs = 0
    for p, pi in (figure1_poset(), figure4_poset()):
        seq, deg = width2_sequence(p, pi)
        worst = max(worst, replay_natural(p, pi, seq).max_red_degree)
        runs += 1
    largest = 0
    for n, density, seed in _width2_instances():
        p, pi = random_width_d(n, 2, density, seed)
        if pi.d != 2:
            continue
        seq, deg = width2_sequence(p, pi)   # verifies by replay internally
        worst = max(worst, deg)
        largest = max(largest, n)
        runs += 1
    report(2, "width-2 bound", worst <= 2,
           f"{runs} runs (figure1, figure4, random n <= {largest}), worst replayed red degree {worst} "
           f"(need <= 2)")


def test_02b_width2_linear_scaling():
    t = scaling("width2", [10_000, 100_000], d=2, density=0.5, seeds=range(12), repeat=3)
    r = ratios(t)[0]
    per = [x.seconds / x.n / 12 * 1e6 for x in t]
    report(2, "width-2 linear scaling", r < 10,
           f"time(1e5)/time(1e4) = {r:.2f} (need < 10); "
           f"{per[0]:.2f} vs {per[1]:.2f} us per element")


def _greedy_sizes(d: int, rng: random.Random):
    sizes = [2000] + [rng.randint(300, 1000) for _ in range(9)]
    sizes += [rng.randint(d, 300) for _ in range(190)]
    return sizes


def test_03a_greedy_bound():
    rng = random.Random(99)
    lines = []
    ok = True
    for d in range(2, 7):
        worst = 0
        for i, n in enumerate(_greedy_sizes(d, rng)):
            p, pi = random_width_d(n, d, rng.choice([0.1, 0.3, 0.5, 0.8]), 10_000 * d + i)
            seq, deg = greedy_sequence(p, pi)   # verifies by replay internally
            worst = max(worst, deg)
        ok &= worst <= degree_bound(d)
        lines.append(f"d={d}: worst {worst} <= {degree_bound(d)}")
    report(3, "greedy bound", ok, "200 runs per d, n <= 2000; " + "; ".join(lines))


def test_03b_greedy_quadratic_scaling():
    t = scaling("greedy", [500, 1000], d=3, density=0.5, seeds=range(2), repeat=2)
    r = ratios(t)[0]
    report(3, "greedy quadratic scaling", 3 <= r <= 6,
           f"time(1000)/time(500) at d=3 = {r:.2f} (need in [3, 6])")


@pytest.mark.parametrize("d, k, need", [(3, 4, 2), (4, 8, 3)])
def test_04_lower_bound_certificates(d, k, need):
    p, _ = lower_bound_poset(d, k)
    t0 = time.perf_counter()
    got = min_first_contraction_red_degree(p)
    sec = time.perf_counter() - t0
    report(4, f"lower-bound certificate d={d} k={k}", got >= need and sec < 1,
           f"min first-contraction red degree {got} (need >= {need}) over "
           f"{p.n * (p.n - 1) // 2} pairs in {sec * 1e3:.1f} ms (need < 1 s)")


def test_05_width2_tightness():
    p, _ = figure4_poset()
    t0 = time.perf_counter()
    value = exact_natural_twinwidth(p)
    sec = time.perf_counter() - t0
    degs = first_contraction_degrees(p)
    best = min(degs.values())
    pairs = {frozenset(p.label(x) for x in e) for e, k in degs.items() if k == best}
    want = {frozenset(s) for s in [("a2", "a3"), ("a3", "a4"), ("b2", "b3"), ("b3", "b4")]}
    shown = ", ".join(sorted("".join(sorted(s)) for s in pairs))
    report(5, "width-2 tightness", value == 2 and sec <= 60 and best == 1 and pairs == want,
           f"exact = {value} in {sec:.2f} s (need 2, <= 60 s); first-contraction min {best} "
           f"at {{{shown}}}")


def test_06_no_twins():
    p = divisibility_poset([2, 3, 4, 6])
    degs = first_contraction_degrees(p)
    report(6, "divisibility has no twins", min(degs.values()) >= 1,
           f"all {len(degs)} contractions create >= {min(degs.values())} red edge(s) (need >= 1)")


def test_07_bridge():
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        p = _random_poset(rng, rng.randint(1, 7))
        seq = _random_sequence(rng, p.n)
        nat = replay_natural(p, chain_partition(p), seq).max_red_degree
        sym = replay_symmetric(build_matrix(p), seq).max_red_degree
        bad += sym not in (nat, nat + 1)
    exact_bad = 0
    instances = [_random_poset(rng, rng.randint(1, 6)) for _ in range(60)]
    instances += [divisibility_poset([2, 3, 4, 6]), chain_poset(6), antichain_poset(5)]
    for p in instances:
        d = exact_natural_twinwidth(p)
        ds = exact_symmetric_twinwidth(build_matrix(p))
        exact_bad += not d <= ds <= d + 1
    report(7, "natural/symmetric bridge", bad == 0 and exact_bad == 0,
           f"replay violations {bad}/100 (n <= 7); exact d <= d_s <= d+1 violations "
           f"{exact_bad}/{len(instances)} (n <= 6)")


_NEIGHBOURLY = RunStats()


def _neighbourly_runs():
    if _NEIGHBOURLY.steps:
        return _NEIGHBOURLY
    rng = random.Random(31337)
    for seed in range(1000):
        n = rng.randint(2, 40)
        d = rng.randint(1, min(5, n))
        neighbourly_run(n, d, rng.choice([0.1, 0.3, 0.5, 0.8]), seed, stats=_NEIGHBOURLY)
    return _NEIGHBOURLY


def test_08_bar_property_suite():
    st = _neighbourly_runs()
    found = [v for v in st.violations if "potential" not in v and "|R|" not in v]
    report(8, "neighbourly bar-property suite", not found,
           f"1000 runs, {st.steps} steps: {len(found)} violations of red-set equality, "
           f"bar properties or the foreign bound (max foreign {st.max_foreign})"
           + (f"; first: {found[0]}" if found else ""))


def test_09_potential_bounds():
    st = _neighbourly_runs()
    pot = [v for v in st.violations if "potential" in v or "|R|" in v]
    report(9, "potential bounds", not pot,
           f"{len(pot)} violations of total <= 2(d-1)m+4|R| or |R| <= 2(d-1)m; "
           f"|R| <= (d-1)m failed at {st.weak_bound_failures} of {st.steps} steps (logged only)")


def test_10_degenerate_baselines():
    worst = 0
    for n in (1, 2, 5, 40):
        worst = max(worst, greedy_sequence(chain_poset(n), single_chain(n))[1])
        worst = max(worst, greedy_sequence(antichain_poset(n), singleton_chains(n))[1])
        for seed in range(3):
            seq = _random_sequence(random.Random(seed), n)
            worst = max(worst, replay_natural(antichain_poset(n), singleton_chains(n),
                                              seq).max_red_degree)
    worst = max(worst, width2_sequence(antichain_poset(2), singleton_chains(2))[1])
    worst = max(worst, exact_natural_twinwidth(chain_poset(6)),
                exact_natural_twinwidth(antichain_poset(6)))
    report(10, "chain and antichain baselines", worst == 0,
           f"worst red degree {worst} over greedy, width-2, random and exact sequences (need 0)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_"):
            continue
        cases = [(3, 4, 2), (4, 8, 3)] if name == "test_04_lower_bound_certificates" else [()]
        for args in cases:
            try:
                fn(*args)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
