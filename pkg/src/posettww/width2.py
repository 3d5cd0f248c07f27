"""Contraction sequences of red degree at most 2 for posets of width 2.

The search is steered by a directed bar path ``B``: a zig-zag path of black
and oriented red bars rooted at a minimal vertex.  Each iteration either
prolongs ``B`` by one bar or performs a neighbourly contraction at the end
of ``B`` that cannot create a red bar above the current frontier, and then
shortens ``B``.  Every iteration does O(1) work on the red poset, apart from
the lower-section loop at the root whose contractions are paid for by the
contractions themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidPartition, InvariantBroken
from .formats import ContractionSequence
from .poset import ChainIndex, ChainPartition, Poset, chain_index
from .red_poset import RedPoset
from .sequence import replay_natural


@dataclass
class Width2Run:
    seq: ContractionSequence
    max_red_degree: int
    iterations: int = 0
    log: list[tuple[tuple[int, ...], str]] = field(default_factory=list)


class _TwoChains:
    """Array state of a red 2-neighbourly poset.

    A live vertex is an interval of one chain and is addressed by ``(c, lo)``,
    its chain and lowest position.  Because the comparability tables are
    monotone along a chain, the four summaries of an interval ``[lo, hi]``
    towards the other chain are read off its two end positions:
    ``da = dn[lo]``, ``ds = dn[hi]``, ``us = up[lo]``, ``ua = up[hi]``.
    Red neighbours live in the other chain, so a red set is a short list of
    positions there.
    """

    def __init__(self, pi: ChainPartition, index: ChainIndex):
        ch = pi.chains
        self.length = (len(ch[0]), len(ch[1]))
        self.up = ([index.up[1][x] for x in ch[0]], [index.up[0][x] for x in ch[1]])
        self.dn = ([index.down[1][x] for x in ch[0]], [index.down[0][x] for x in ch[1]])
        self.parent = [list(range(n)) for n in self.length]
        self.hi = [list(range(n)) for n in self.length]
        self.rep = [list(c) for c in ch]           # least original id of each part
        self.red = [[None] * n for n in self.length]
        self.stamp = [[0] * n for n in self.length]
        self.count = list(self.length)
        self.step = 0
        self.worst = 0
        self.events: list[tuple[int, int]] = []

    def find(self, c: int, pos: int) -> int:
        parent = self.parent[c]
        while parent[pos] != pos:
            parent[pos] = parent[parent[pos]]
            pos = parent[pos]
        return pos

    def succ(self, c: int, lo: int) -> int | None:
        nxt = self.hi[c][lo] + 1
        return nxt if nxt < self.length[c] else None

    def leq(self, c: int, a: int, b: int) -> bool:
        """Part ``a`` of chain ``c`` lies below part ``b`` of the other chain."""
        return b >= self.up[c][self.hi[c][a]]

    def least_above(self, c: int, a: int) -> int | None:
        o = 1 - c
        pos = self.up[c][self.hi[c][a]]
        if pos >= self.length[o]:
            return None
        lo = self.find(o, pos)
        if lo == pos:
            return lo
        return self.succ(o, lo)

    def points(self, c: int, a: int, b: int) -> bool:
        """``min(a) <= x`` for some ``x`` in ``b`` and ``min(b)`` not below ``min(a)``."""
        o = 1 - c
        return self.up[c][a] <= self.hi[o][b] and self.up[o][b] > a

    def source_is(self, c: int, a: int, b: int, root: tuple[int, int]) -> bool:
        """Is the red bar between ``(c, a)`` and ``(1-c, b)`` oriented from ``a``?"""
        o = 1 - c
        if a == 0 and b == 0:
            # the bar between the two chain minima leads into the root
            rc = root[0]
            if root[1] == 0 and self.points(1 - rc, 0, 0):
                return c != rc
        fwd, back = self.points(c, a, b), self.points(o, b, a)
        if fwd and back:
            return self.stamp[c][a] > self.stamp[o][b]
        return fwd

    def contract(self, c: int, lo: int) -> None:
        """Merge the part ``(c, lo)`` with its successor."""
        o = 1 - c
        hi, rep, red = self.hi[c], self.rep[c], self.red
        s = hi[lo] + 1
        top = hi[s]
        self.events.append((rep[lo], rep[s]))
        self.step += 1
        self.count[c] -= 1
        self.parent[c][s] = lo
        hi[lo] = top
        if rep[s] < rep[lo]:
            rep[lo] = rep[s]
        ra, rb = red[c][lo], red[c][s]
        red[c][s] = None
        new = set(ra) if ra else set()
        if rb:
            new.update(rb)
            for q in rb:
                red[o][q].remove(s)
        up, dn = self.up[c], self.dn[c]
        da, ds, us, ua = dn[lo], dn[top], up[lo], up[top]
        ohi = self.hi[o]
        last = self.length[o] - 1
        for start, stop in ((da, ds + 1), (us - 1, ua)):
            pos = start if start > 0 else 0
            if stop > last:
                stop = last
            while pos <= stop:
                q = self.find(o, pos)
                qh = ohi[q]
                if not (q >= ua or qh <= da or (q > ds and qh < us)):
                    new.add(q)
                pos = qh + 1
        worst = len(new)
        ored = red[o]
        for q in new:
            lst = ored[q]
            if lst is None:
                ored[q] = lst = []
            if lo not in lst:
                lst.append(lo)
            if len(lst) > worst:
                worst = len(lst)
        red[c][lo] = sorted(new) if new else None
        self.stamp[c][lo] = self.step
        if worst > self.worst:
            self.worst = worst

    def red_edges(self) -> set[frozenset]:
        out = set()
        for lo, lst in enumerate(self.red[0]):
            if lst:
                out.update(frozenset((self.rep[0][lo], self.rep[1][q])) for q in lst)
        return out


def _pick_root(st: _TwoChains) -> int:
    """Minimum of chain 0 when it is minimal in P0, else minimum of chain 1."""
    return 0 if st.dn[0][0] < 0 else 1


def width2_run(p0: Poset, pi: ChainPartition, *, index: ChainIndex | None = None,
               audit: bool = False, debug: bool = False, verify: bool = True,
               literal_lower: bool = False) -> Width2Run:
    """Build a contraction sequence of red degree <= 2.

    ``audit`` replays every step on a :class:`RedPoset` and checks the
    bar-path invariants after every iteration (slow); ``debug`` records
    ``(B, action)`` per iteration with vertices named by representative;
    ``verify`` replays the finished sequence on a fresh red poset.
    ``literal_lower`` bounds the root-section loop by the least vertex above
    ``min(V)`` instead of by the successor of the root (see the README).
    """
    if pi.d != 2:
        raise InvalidPartition(f"need exactly 2 chains, got {pi.d}")
    if index is None:
        index = chain_index(p0, pi)
    st = _TwoChains(pi, index)
    cu = _pick_root(st)
    root = (cu, 0)
    path = [root]              # the bar path B as (chain, lowest position)
    run = Width2Run(ContractionSequence(meta={"algorithm": "width2"}), 0)
    ref = RedPoset(p0, pi, index) if audit else None
    replayed = 0
    hi, red, count = st.hi, st.red, st.count

    while path:
        run.iterations += 1
        c, u = path[-1]
        o = 1 - c
        action = []
        if len(path) == 1:
            # contract the lower section of V that is homogeneous towards U
            u2 = st.least_above(o, 0) if literal_lower else st.succ(c, u)
            while count[o] > 1:
                if not (count[c] == 1 or (u2 is not None and st.leq(o, hi[o][0] + 1, u2))):
                    break
                st.contract(o, 0)
                action.append("lower")
        # least v in V with u <=' v, or with a red bar (u, v)
        reds = [q for q in (red[c][u] or ()) if st.source_is(c, u, q, root)]
        if len(reds) > 1:
            raise InvariantBroken(f"{len(reds)} red bars leave {st.rep[c][u]}")
        v = reds[0] if reds else st.least_above(c, u)
        up = st.succ(c, u)
        vp = st.succ(o, v) if v is not None else None
        if v is not None and vp is not None and up is not None and not st.leq(c, up, vp):
            path.append((o, v))
            action.append("prolong")
        else:
            if up is not None:
                st.contract(c, u)
                action.append("contract")
            if len(path) == 1:
                if up is None:
                    path = []
                    action.append("stop")
            else:
                path.pop()
                action.append("shorten")
        if debug:
            run.log.append((tuple(st.rep[a][b] for a, b in path), " ".join(action)))
        if audit:
            for a, b in st.events[replayed:]:
                ref.contract(a, b)
            replayed = len(st.events)
            if ref.red_edges() != st.red_edges():
                raise InvariantBroken("array state and red poset disagree on the red bars")
            if path:
                reps = [st.rep[a][b] for a, b in path]
                check_bar_path(ref, reps)
                extended_bar_path(ref, reps)
            if ref.max_red_degree() > 2:
                raise InvariantBroken(f"red degree {ref.max_red_degree()} after iteration {run.iterations}")
    if count[0] + count[1] != 2:
        raise InvariantBroken(f"main loop ended with {count[0] + count[1]} live vertices")
    st.events.append((st.rep[cu][0], st.rep[1 - cu][0]))
    run.seq.events = st.events
    run.max_red_degree = st.worst
    run.seq.meta["max_red_degree"] = st.worst
    if verify:
        replay = replay_natural(p0, pi, run.seq, index=index)
        if replay.max_red_degree != st.worst:
            raise InvariantBroken(f"replay gives {replay.max_red_degree}, run tracked {st.worst}")
    return run


def width2_sequence(p0: Poset, pi: ChainPartition, **kw) -> tuple[ContractionSequence, int]:
    """Contraction sequence of red degree <= 2 for a 2-chain partition."""
    run = width2_run(p0, pi, **kw)
    return run.seq, run.max_red_degree


def bar_source(rp: RedPoset, a: int, b: int, root: int) -> int:
    """Source of the red bar ``{a, b}`` as the bar path reads it.

    The bar between the root ``u1`` and the least vertex ``v1`` of the other
    chain is taken as ``(v1, u1)`` whenever that direction qualifies, so
    that it always leads into the root; other bars follow the general
    orientation rule.
    """
    if root in (a, b):
        other = b if a == root else a
        c = rp.partition.chain_of[root][0]
        if rp._owner[1 - c][0].rep == other and rp._points(rp._parts[other], rp._parts[root]):
            return other
    return rp.orient_red(a, b).source


# invariants -----------------------------------------------------------------

def check_bar_path(rp: RedPoset, path: list[int]) -> None:
    """Assert the three bar-path conditions for ``path``."""
    first = path[0]
    if any(rp.leq(r, first) and r != first for r in rp.live()):
        raise InvariantBroken(f"root {first} is not minimal")
    black = set(rp.black_bars())
    for a, b in zip(path, path[1:]):
        if (a, b) not in black:
            if not rp.is_red(a, b) or bar_source(rp, a, b, first) != a:
                raise InvariantBroken(f"({a}, {b}) is neither a black nor an oriented red bar")
        ap, bp = rp.successor(a), rp.successor(b)
        if ap is not None and bp is not None and rp.leq(ap, bp):
            raise InvariantBroken(f"successors of ({a}, {b}) are comparable upwards")


def extended_bar_path(rp: RedPoset, path: list[int]) -> list[int]:
    """An extended bar path of ``path`` containing every red bar.

    It starts with the red bar ``(v1, u1)`` when present, follows ``path``,
    takes at most one black bar and ends with oriented red bars only.
    Raises :class:`InvariantBroken` when no such path exists.
    """
    red = {frozenset(e) for e in rp.red_edges()}
    root = path[0]
    c = rp.partition.chain_of[root][0]
    v1 = rp._owner[1 - c][0].rep
    head = []
    if frozenset((v1, root)) in red and bar_source(rp, v1, root, root) == v1:
        head = [v1]
    base = head + list(path)
    if len(set(base)) != len(base):
        raise InvariantBroken("bar path repeats a vertex")
    used = {frozenset(e) for e in zip(base, base[1:]) if frozenset(e) in red}

    def extend(x, seen, used):
        """Longest continuation by oriented red bars; returns all completions."""
        nxt = [o for o in rp.red_neighbours(x)
               if frozenset((x, o)) not in used and o not in seen
               and bar_source(rp, x, o, root) == x]
        if not nxt:
            yield [], used
        for o in nxt:
            for rest, u2 in extend(o, seen | {o}, used | {frozenset((x, o))}):
                yield [o] + rest, u2

    last = base[-1]
    starts = [([], last)]
    for s, t in rp.black_bars():
        if s == last and t not in base:
            starts.append(([t], t))
    for pre, x in starts:
        for rest, done in extend(x, set(base) | set(pre), used):
            if done == red:
                return base + pre + rest
    raise InvariantBroken(f"no extended bar path of {path} covers all {len(red)} red bars")
