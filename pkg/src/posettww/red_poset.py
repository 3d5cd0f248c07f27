"""Red posets and the contraction calculus.

Live vertices are sets of original vertices ("parts").  Each part keeps, for
every chain ``j`` of the fixed chain partition, four positional summaries of
its members::

    ua[j]  first position of chain j above *all* members
    us[j]  first position of chain j above *some* member
    da[j]  last position of chain j below *all* members
    ds[j]  last position of chain j below *some* member

plus the span ``minpos[j]..maxpos[j]`` of its own members in chain ``j``.
Merging two parts combines the summaries with max/min, which is exactly the
rule "``a <= x`` iff ``a <= x1`` and ``a <= x2``".  Whether another part is
uniformly above, uniformly below, uniformly incomparable or mixed is then an
O(d) test, and the red neighbours of a freshly merged part are found by
walking only the mixed windows and the class boundaries of each chain.
"""

from __future__ import annotations

import copy
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import (InvalidPartition, NoSuccessor, NotRed, PosetError,
                     VertexNotLive)
from .poset import ChainIndex, ChainPartition, Poset, chain_index

# classes of a part relative to another one
ABOVE, BELOW, APART, MIXED = 0, 1, 2, 3


class _Part:
    __slots__ = ("rep", "size", "members", "chain", "present", "minpos", "maxpos",
                 "ua", "us", "da", "ds", "stamp", "red", "domestic")

    def __repr__(self):
        return f"<part {self.rep} size={self.size}>"


@dataclass(frozen=True)
class RedBarDirection:
    source: int
    target: int


def _classify(ua, us, da, ds, b: _Part) -> int:
    """Class of part ``b`` relative to a part with the given summaries."""
    above = below = apart = True
    minpos, maxpos = b.minpos, b.maxpos
    for j in b.present:
        lo = minpos[j]
        hi = maxpos[j]
        if lo < ua[j]:
            above = False
        if hi > da[j]:
            below = False
        if lo <= ds[j] or hi >= us[j]:
            apart = False
    if above:
        return ABOVE
    if below:
        return BELOW
    if apart:
        return APART
    return MIXED


class RedPoset:
    """A red poset obtained from ``P0`` by contractions.

    Vertices are addressed by their representative: the smallest original id
    they contain.  :meth:`contract` mutates the structure in place and returns
    the representative of the merged vertex.
    """

    def __init__(self, p: Poset, pi: ChainPartition, index: ChainIndex | None = None):
        if index is None:
            index = chain_index(p, pi)
        elif index.partition is not pi:
            raise InvalidPartition("chain index built for another partition")
        self.poset = p
        self.partition = pi
        self.index = index
        self.d = d = pi.d
        self.lens = [len(c) for c in pi.chains]
        self.step = 0
        up, down = index.up, index.down
        big = p.n + 1
        self._owner: list[list[_Part]] = [[None] * L for L in self.lens]
        self._parts: dict[int, _Part] = {}
        self._irregular: set[_Part] = set()
        for x in range(p.n):
            c, pos = pi.chain_of[x]
            part = _Part()
            part.rep = x
            part.size = 1
            part.members = [x]
            part.chain = c
            part.present = (c,)
            part.minpos = [big] * d
            part.maxpos = [-1] * d
            part.minpos[c] = part.maxpos[c] = pos
            part.ua = [up[j][x] for j in range(d)]
            part.us = list(part.ua)
            part.da = [down[j][x] for j in range(d)]
            part.ds = list(part.da)
            part.stamp = 0
            part.red = set()
            part.domestic = ()
            self._owner[c][pos] = part
            self._parts[x] = part
        self._hist = Counter({0: p.n})
        self._maxdeg = 0

    # basic access ----------------------------------------------------------

    def __len__(self):
        return len(self._parts)

    def __contains__(self, rep):
        return rep in self._parts

    def _live(self, rep: int) -> _Part:
        try:
            return self._parts[rep]
        except KeyError:
            raise VertexNotLive(f"{rep} is not a live vertex") from None

    def live(self) -> list[int]:
        return sorted(self._parts)

    def part_of(self, x: int) -> int:
        """Representative of the live vertex containing original vertex ``x``."""
        c, pos = self.partition.chain_of[x]
        return self._owner[c][pos].rep

    def members(self, rep: int) -> tuple[int, ...]:
        return tuple(sorted(self._live(rep).members))

    def parts(self) -> list[tuple[int, ...]]:
        return [self.members(r) for r in self.live()]

    def last_contracted(self, rep: int) -> int:
        return self._live(rep).stamp

    def chain_of_part(self, rep: int) -> int | None:
        """Chain index of a part lying on consecutive positions of one chain."""
        c = self._live(rep).chain
        return None if c < 0 else c

    def minimum(self, rep: int) -> int:
        """Least original member; defined for parts inside one chain."""
        part = self._live(rep)
        if len(part.present) != 1:
            raise PosetError(f"vertex {rep} spans several chains, min is undefined")
        c = part.present[0]
        return self.partition.chains[c][part.minpos[c]]

    # relation --------------------------------------------------------------

    def _class(self, a: _Part, b: _Part) -> int:
        return _classify(a.ua, a.us, a.da, a.ds, b)

    def leq(self, a: int, b: int) -> bool:
        """``a <=' b``: every member of ``a`` is below every member of ``b``."""
        pa, pb = self._live(a), self._live(b)
        return pa is pb or self._class(pa, pb) == ABOVE

    def comparable(self, a: int, b: int) -> bool:
        pa, pb = self._live(a), self._live(b)
        return pa is pb or self._class(pa, pb) in (ABOVE, BELOW)

    def is_red(self, a: int, b: int) -> bool:
        return self._live(b) in self._live(a).red

    # red graph -------------------------------------------------------------

    def red_neighbours(self, rep: int) -> list[int]:
        return sorted(o.rep for o in self._live(rep).red)

    def red_degree(self, rep: int) -> int:
        return len(self._live(rep).red)

    def max_red_degree(self) -> int:
        h = self._hist
        while self._maxdeg > 0 and h[self._maxdeg] == 0:
            self._maxdeg -= 1
        return self._maxdeg

    def red_edges(self) -> set[frozenset]:
        return {frozenset((a.rep, b.rep)) for a in self._parts.values() for b in a.red}

    def _bump(self, old: int, new: int) -> None:
        h = self._hist
        h[old] -= 1
        h[new] += 1
        if new > self._maxdeg:
            self._maxdeg = new

    def _mixed_parts(self, ua, us, da, ds, selfparts) -> set[_Part]:
        """All parts (outside ``selfparts``) that are mixed towards the summary."""
        cands = set()
        for j in range(self.d):
            own = self._owner[j]
            last = self.lens[j] - 1
            for start, stop in ((da[j], ds[j] + 1), (us[j] - 1, ua[j])):
                pos = start if start > 0 else 0
                if stop > last:
                    stop = last
                while pos <= stop:
                    o = own[pos]
                    if o not in selfparts:
                        cands.add(o)
                    pos = o.maxpos[j] + 1 if o.chain == j else pos + 1
        if self._irregular:
            cands.update(self._irregular)
            cands.difference_update(selfparts)
        return {o for o in cands if _classify(ua, us, da, ds, o) == MIXED}

    # contraction -----------------------------------------------------------

    def contract(self, x1: int, x2: int) -> int:
        """Contract two live vertices; returns the new representative."""
        a, b = self._live(x1), self._live(x2)
        if a is b:
            raise VertexNotLive(f"cannot contract {x1} with itself")
        self.step += 1
        keep, gone = (a, b) if a.size >= b.size else (b, a)
        inherited = (a.red | b.red) - {a, b}
        h = self._hist
        h[len(a.red)] -= 1
        h[len(b.red)] -= 1
        for part in (a, b):
            for o in part.red:
                if o is a or o is b:
                    continue
                old = len(o.red)
                o.red.discard(part)
                self._bump(old, old - 1)
        for j in range(self.d):
            if gone.ua[j] > keep.ua[j]:
                keep.ua[j] = gone.ua[j]
            if gone.us[j] < keep.us[j]:
                keep.us[j] = gone.us[j]
            if gone.da[j] < keep.da[j]:
                keep.da[j] = gone.da[j]
            if gone.ds[j] > keep.ds[j]:
                keep.ds[j] = gone.ds[j]
            if gone.minpos[j] < keep.minpos[j]:
                keep.minpos[j] = gone.minpos[j]
            if gone.maxpos[j] > keep.maxpos[j]:
                keep.maxpos[j] = gone.maxpos[j]
        chain_of = self.partition.chain_of
        owner = self._owner
        for x in gone.members:
            c, pos = chain_of[x]
            owner[c][pos] = keep
        keep.members.extend(gone.members)
        keep.size += gone.size
        if gone.present != keep.present:
            keep.present = tuple(sorted(set(keep.present) | set(gone.present)))
        c = keep.present[0]
        if len(keep.present) == 1 and keep.maxpos[c] - keep.minpos[c] + 1 == keep.size:
            keep.chain = c
            self._irregular.discard(keep)
        else:
            keep.chain = -1
            self._irregular.add(keep)
        self._irregular.discard(gone)
        del self._parts[a.rep]
        del self._parts[b.rep]
        keep.rep = min(a.rep, b.rep)
        self._parts[keep.rep] = keep

        red = self._mixed_parts(keep.ua, keep.us, keep.da, keep.ds, (keep,))
        red |= inherited
        keep.red = red
        h[len(red)] += 1
        if len(red) > self._maxdeg:
            self._maxdeg = len(red)
        for o in red:
            old = len(o.red)
            o.red.add(keep)
            self._bump(old, old + 1)
        keep.stamp = self.step
        keep.domestic = tuple(o.rep for o in red)
        gone.red = set()
        return keep.rep

    # neighbourly structure ---------------------------------------------------

    def successor(self, rep: int) -> int | None:
        """``u+``: the next part of u's chain, if u and it are chain intervals."""
        u = self._live(rep)
        c = u.chain
        if c < 0:
            return None
        pos = u.maxpos[c] + 1
        if pos >= self.lens[c]:
            return None
        o = self._owner[c][pos]
        return o.rep if o.chain == c else None

    def predecessor(self, rep: int) -> int | None:
        u = self._live(rep)
        c = u.chain
        if c < 0 or u.minpos[c] == 0:
            return None
        o = self._owner[c][u.minpos[c] - 1]
        return o.rep if o.chain == c else None

    def chain_parts(self, c: int) -> list[int]:
        """Live parts of chain ``c`` bottom-up (chain-interval parts only)."""
        out = []
        own = self._owner[c]
        pos = 0
        while pos < self.lens[c]:
            o = own[pos]
            if o.chain == c:
                out.append(o.rep)
                pos = o.maxpos[c] + 1
            else:
                pos += 1
        return out

    def is_neighbourly(self) -> bool:
        return not self._irregular

    def eligible(self) -> list[int]:
        """Vertices u for which the neighbourly contraction (u, u+) exists."""
        out = []
        for c in range(self.d):
            parts = self.chain_parts(c)
            out.extend(r for r, s in zip(parts, parts[1:]) if self.successor(r) == s)
        return out

    def neighbourly_contract(self, rep: int) -> int:
        nxt = self.successor(rep)
        if nxt is None:
            raise NoSuccessor(f"vertex {rep} has no successor in its chain")
        return self.contract(rep, nxt)

    def red_potential(self, rep: int) -> int:
        """Red degree the merge of ``u`` and ``u+`` would have; no mutation."""
        nxt = self.successor(rep)
        if nxt is None:
            raise NoSuccessor(f"vertex {rep} has no successor in its chain")
        u, w = self._parts[rep], self._parts[nxt]
        ua = [max(s, t) for s, t in zip(u.ua, w.ua)]
        us = [min(s, t) for s, t in zip(u.us, w.us)]
        da = [min(s, t) for s, t in zip(u.da, w.da)]
        ds = [max(s, t) for s, t in zip(u.ds, w.ds)]
        red = self._mixed_parts(ua, us, da, ds, (u, w))
        red |= (u.red | w.red) - {u, w}
        return len(red)

    def total_red_potential(self) -> int:
        return sum(self.red_potential(r) for r in self.eligible())

    # orientation -----------------------------------------------------------

    def _points(self, u: _Part, v: _Part) -> bool:
        """First clause pair of the orientation rule for (u, v)."""
        idx = self.index
        cu = u.present[0]
        mu = self.partition.chains[cu][u.minpos[cu]]
        if not any(v.maxpos[j] >= idx.up[j][mu] for j in v.present):
            return False
        cv = v.present[0]
        mv = self.partition.chains[cv][v.minpos[cv]]
        return idx.up[cu][mv] > u.minpos[cu]

    def orient_red(self, a: int, b: int) -> RedBarDirection:
        """Direction of the red bar ``{a, b}``.

        ``(u, v)`` when ``min(u)`` is below some member of ``v`` while
        ``min(v)`` is not below ``min(u)``; if both directions qualify, the
        endpoint contracted more recently is the source.
        """
        u, v = self._live(a), self._live(b)
        if v not in u.red:
            raise NotRed(f"{{{a}, {b}}} is not a red edge")
        if len(u.present) != 1 or len(v.present) != 1:
            raise PosetError("orientation is defined for single-chain vertices only")
        fwd, back = self._points(u, v), self._points(v, u)
        if fwd and back:
            fwd = u.stamp > v.stamp
        elif not (fwd or back):
            raise PosetError(f"red bar {{{a}, {b}}} admits no orientation")
        return RedBarDirection(a, b) if fwd else RedBarDirection(b, a)

    def oriented_red(self) -> list[RedBarDirection]:
        out = []
        for e in sorted(tuple(sorted(e)) for e in self.red_edges()):
            out.append(self.orient_red(*e))
        return out

    def foreign_red(self, rep: int) -> list[int]:
        """Red neighbours of ``rep`` not descended from those present at its
        last contraction."""
        u = self._live(rep)
        domestic = {self.part_of(x) for x in u.domestic}
        return sorted(o.rep for o in u.red if o.rep not in domestic)

    def black_bars(self) -> list[tuple[int, int]]:
        """Black bars ``(u, v)`` of the chain diagram, between chain parts."""
        idx = self.index
        chains = self.partition.chains
        bars = []
        for u in self._parts.values():
            cu = u.chain
            if cu < 0:
                continue
            top = chains[cu][u.maxpos[cu]]
            for j in range(self.d):
                if j == cu:
                    continue
                pos = idx.up[j][top]
                if pos >= self.lens[j]:
                    continue
                v = self._owner[j][pos]
                if v.chain != j:
                    continue
                if v.minpos[j] != pos:
                    pos = v.maxpos[j] + 1
                    if pos >= self.lens[j]:
                        continue
                    v = self._owner[j][pos]
                    if v.chain != j:
                        continue
                # u must be the greatest part of its chain below all of v
                low = chains[j][v.minpos[j]]
                q = idx.down[cu][low]
                if q < 0:
                    continue
                w = self._owner[cu][q]
                if w.maxpos[cu] > q:
                    if w.minpos[cu] == 0:
                        continue
                    w = self._owner[cu][w.minpos[cu] - 1]
                if w is u:
                    bars.append((u.rep, v.rep))
        return sorted(bars)

    def copy(self) -> "RedPoset":
        memo = {id(self.poset): self.poset, id(self.partition): self.partition,
                id(self.index): self.index}
        return copy.deepcopy(self, memo)


def recompute_red_from_partition(p0: Poset, parts: Iterable[Iterable[int]]) -> set[frozenset]:
    """Red edges implied by a partition: all non-homogeneous part pairs.

    Works from the closure bit rows alone and is used as an independent check
    of the incremental red set.  Edges are pairs of part representatives
    (least member ids).
    """
    up, down = p0.closure, p0.down_closure
    full = (1 << p0.n) - 1
    summary = []
    for part in parts:
        part = list(part)
        mask = 0
        above_all = below_all = full
        related = 0
        for x in part:
            mask |= 1 << x
            above_all &= up[x]
            below_all &= down[x]
            related |= up[x] | down[x]
        summary.append((min(part), mask, above_all, below_all, related))
    red = set()
    for i, (ra, _, above, below, related) in enumerate(summary):
        for rb, mb, _, _, _ in summary[i + 1:]:
            if mb & ~above == 0 or mb & ~below == 0 or mb & related == 0:
                continue
            red.add(frozenset((ra, rb)))
    return red


def red_degrees(edges: Iterable[frozenset]) -> Counter:
    deg = Counter()
    for e in edges:
        for x in e:
            deg[x] += 1
    return deg


def init_red(p: Poset, pi: ChainPartition) -> RedPoset:
    return RedPoset(p, pi)
