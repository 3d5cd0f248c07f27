"""Greedy contraction sequences for posets of width d.

Every step performs the neighbourly contraction of least red potential
(ties go to the lowest chain index, then the lowest position), until each
chain is a single vertex; the d chain vertices are then merged in chain
order.  The red degree stays at most ``9d - 6``.

Red potentials are counted with the chain interval boundaries: in a
neighbourly red poset every part is an interval of one chain, so the parts
of chain ``j`` that are mixed towards a merged pair are the intervals that
meet a window determined by its four summaries, minus the intervals lying
strictly between its "below some" and "above some" fronts.  Two bisections
per window give the count in O(log m), so a full scan of all eligible
vertices costs O(d m log m) per step.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvalidPartition, NoEligibleContraction
from .formats import ContractionSequence
from .poset import ChainIndex, ChainPartition, Poset, chain_index
from .red_poset import MIXED, RedPoset, _classify
from .sequence import replay_natural


def degree_bound(d: int) -> int:
    return 9 * d - 6


@dataclass
class GreedyStep:
    step: int
    pair: tuple[int, int]
    degree: int
    potential: int | None     # None for the final chain merges
    live: int                 # m before the contraction
    max_degree: int           # over the whole red poset after the step


@dataclass
class GreedyRun:
    seq: ContractionSequence
    max_red_degree: int
    d: int
    trace: list[GreedyStep] = field(default_factory=list)

    @property
    def bound(self) -> int:
        return degree_bound(self.d)

    @property
    def within_bound(self) -> bool:
        return self.max_red_degree <= self.bound

    def first_violation(self) -> GreedyStep | None:
        for st in self.trace:
            if st.max_degree > self.bound:
                return st
        return None


class _Intervals:
    """Sorted interval boundaries of the parts of every chain."""

    def __init__(self, lens):
        self.starts = [list(range(L)) for L in lens]
        self.ends = [list(range(L)) for L in lens]

    def merge(self, c: int, boundary: int) -> None:
        """Join the part ending at ``boundary`` with the one after it."""
        ends, starts = self.ends[c], self.starts[c]
        del ends[bisect_right(ends, boundary) - 1]
        del starts[bisect_right(starts, boundary + 1) - 1]


def _potential(rp: RedPoset, iv: _Intervals, c: int, u, w, others) -> int:
    """Red degree of the merge of the consecutive chain parts ``u``, ``w``."""
    uda, uds, uus, uua = u.da, u.ds, u.us, u.ua
    wda, wds, wus, wua = w.da, w.ds, w.us, w.ua
    starts, ends = iv.starts, iv.ends
    count = 0
    for j in others:
        a = uda[j] if uda[j] < wda[j] else wda[j]
        b = uds[j] if uds[j] > wds[j] else wds[j]
        cc = uus[j] if uus[j] < wus[j] else wus[j]
        dd = uua[j] if uua[j] > wua[j] else wua[j]
        st, en = starts[j], ends[j]
        # intervals with start < dd and end > a: not above, not below
        k = bisect_right(st, dd - 1) - bisect_right(en, a)
        if k > 0:
            # of those, the ones with start > b and end < cc are apart
            apart = bisect_right(en, cc - 1) - bisect_right(st, b)
            if apart > 0:
                k -= apart
            count += k
    if u.red or w.red:
        d = rp.d
        ua = [max(uua[j], wua[j]) for j in range(d)]
        us = [min(uus[j], wus[j]) for j in range(d)]
        da = [min(uda[j], wda[j]) for j in range(d)]
        ds = [max(uds[j], wds[j]) for j in range(d)]
        for o in u.red | w.red:
            if _classify(ua, us, da, ds, o) != MIXED:
                count += 1
    return count


def _scan(rp: RedPoset, iv: _Intervals):
    """Eligible pair of least potential: ``(potential, chain, u, w)``."""
    best = None
    owner = rp._owner
    d = rp.d
    for c in range(d):
        st = iv.starts[c]
        if len(st) < 2:
            continue
        others = [j for j in range(d) if j != c]
        own = owner[c]
        prev = own[st[0]]
        for s in st[1:]:
            cur = own[s]
            pot = _potential(rp, iv, c, prev, cur, others)
            if best is None or pot < best[0]:
                best = (pot, c, prev, cur)
            prev = cur
    return best


def select_min_potential(rp: RedPoset) -> int:
    """Eligible vertex of least red potential in a neighbourly red poset."""
    if not rp.is_neighbourly():
        raise InvalidPartition("red poset is not neighbourly")
    iv = _Intervals(rp.lens)
    iv.starts = [[rp._parts[r].minpos[c] for r in rp.chain_parts(c)] for c in range(rp.d)]
    iv.ends = [[rp._parts[r].maxpos[c] for r in rp.chain_parts(c)] for c in range(rp.d)]
    best = _scan(rp, iv)
    if best is None:
        raise NoEligibleContraction("every chain is a single vertex")
    return best[2].rep


def greedy_run(p0: Poset, pi: ChainPartition, *, index: ChainIndex | None = None,
               check: bool = False, verify: bool = True,
               max_steps: int | None = None) -> GreedyRun:
    """Run the greedy algorithm and record a per-step trace.

    ``check`` asserts, at every step, that the predicted potential equals the
    red degree of the merged vertex.  ``verify`` replays the finished
    sequence on a fresh red poset and asserts the maximum agrees.
    """
    if pi.n != p0.n:
        raise InvalidPartition(f"partition has {pi.n} vertices, poset {p0.n}")
    if index is None:
        index = chain_index(p0, pi)
    rp = RedPoset(p0, pi, index)
    iv = _Intervals(rp.lens)
    seq = ContractionSequence(meta={"algorithm": "greedy", "d": pi.d})
    run = GreedyRun(seq, 0, pi.d)
    step = 0
    while True:
        if max_steps is not None and step >= max_steps:
            raise BudgetExceeded(f"stopped after {step} steps")
        best = _scan(rp, iv)
        if best is None:
            break
        pot, c, u, w = best
        m = len(rp)
        boundary = u.maxpos[c]
        pair = (u.rep, w.rep)
        rep = rp.contract(*pair)
        iv.merge(c, boundary)
        deg = rp.red_degree(rep)
        if check:
            assert deg == pot, f"step {step + 1}: potential {pot} but degree {deg}"
        step += 1
        seq.events.append(pair)
        run.trace.append(GreedyStep(step, pair, deg, pot, m, rp.max_red_degree()))
    # each chain is now a single vertex; merge them in chain order
    heads = [rp._owner[c][0].rep for c in range(rp.d)]
    acc = heads[0] if heads else None
    for h in heads[1:]:
        m = len(rp)
        pair = (acc, h)
        acc = rp.contract(*pair)
        step += 1
        seq.events.append(pair)
        run.trace.append(GreedyStep(step, pair, rp.red_degree(acc), None, m,
                                    rp.max_red_degree()))
    run.max_red_degree = max((st.max_degree for st in run.trace), default=0)
    seq.meta["max_red_degree"] = run.max_red_degree
    if verify:
        replay = replay_natural(p0, pi, seq, index=index)
        assert replay.max_red_degree == run.max_red_degree, "replay disagrees with the run"
    return run


def greedy_sequence(p0: Poset, pi: ChainPartition, **kw) -> tuple[ContractionSequence, int]:
    """Full greedy contraction sequence and its maximum red degree."""
    run = greedy_run(p0, pi, **kw)
    return run.seq, run.max_red_degree
