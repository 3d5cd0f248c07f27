"""Exact twin-width by exhaustive search over partition states.

The red edges of a contracted poset depend only on the partition of the
ground set into parts, not on the order of the merges that produced it.  A
state is therefore a partition, stored as a sorted tuple of bitmasks, and a
depth-first search with a set of known dead states decides "width <= d"
for d = 0, 1, ... in turn.  Everything here works from closure bit rows (or
matrix rows) directly and shares no code with the incremental red poset.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BadParameters, BudgetExceeded
from .formats import ContractionSequence
from .poset import Poset
from .sequence import PosetMatrix


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise BadParameters(f"{name}={raw!r} is not an integer") from None


def default_cap(mode: str = "natural") -> int:
    if mode == "symmetric":
        return _env_int("POSETTWW_ORACLE_SYM_CAP", 8)
    return _env_int("POSETTWW_ORACLE_CAP", 10)


def default_budget() -> int:
    return _env_int("POSETTWW_ORACLE_BUDGET", 10**7)


@dataclass
class OracleResult:
    value: int
    witness: ContractionSequence
    states: int


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _Scorer:
    """Maximum error of a partition state, with per-part summaries cached."""

    def __init__(self, rows_by_value: list[list[int]], symmetric: bool):
        self.rows = rows_by_value
        self.symmetric = symmetric
        self._cache: dict[int, tuple[int, ...]] = {}

    def summary(self, mask: int) -> tuple[int, ...]:
        got = self._cache.get(mask)
        if got is None:
            got = []
            for rows in self.rows:
                acc = -1
                m = mask
                while m:
                    low = m & -m
                    acc &= rows[low.bit_length() - 1]
                    m ^= low
                got.append(acc)
            got = tuple(got)
            self._cache[mask] = got
        return got

    def constant(self, a: int, b: int) -> bool:
        """Is the zone (rows of ``a``) x (columns of ``b``) homogeneous?"""
        return any(b & ~s == 0 for s in self.summary(a))

    def score(self, parts: tuple[int, ...]) -> int:
        k = len(parts)
        deg = [0] * k
        worst = 0
        for i in range(k):
            a = parts[i]
            if self.symmetric:
                if not self.constant(a, a):
                    deg[i] += 1
            for j in range(i + 1, k):
                b = parts[j]
                if not self.constant(a, b) or not self.constant(b, a):
                    deg[i] += 1
                    deg[j] += 1
        if deg:
            worst = max(deg)
        return worst


def _natural_rows(p: Poset) -> list[list[int]]:
    """Rows for the three relations: below, above, incomparable.

    A pair of parts is homogeneous exactly when one of these relations holds
    between all their members, so the same zone test serves both searches.
    """
    full = (1 << p.n) - 1
    up, down = p.closure, p.down_closure
    apart = [full & ~(up[v] | down[v]) for v in range(p.n)]
    return [list(up), list(down), apart]


def _matrix_rows(m: PosetMatrix) -> list[list[int]]:
    a = np.asarray(m.a)
    out = []
    for val in (1, -1, 0):
        hits = a == val
        out.append([int(sum(1 << int(v) for v in np.flatnonzero(hits[u]))) for u in range(m.n)])
    return out


def _search(n: int, scorer: _Scorer, budget: int, memo: bool, start: int = 0) -> OracleResult:
    initial = tuple(1 << v for v in range(n))
    base = scorer.score(initial)
    states = 0
    for bound in range(max(start, base), n + 1):
        dead: set[tuple[int, ...]] = set()
        path: list[tuple[int, int]] = []

        def dfs(parts: tuple[int, ...]) -> bool:
            nonlocal states
            if len(parts) == 1:
                return True
            states += 1
            if states > budget:
                raise BudgetExceeded(f"search visited more than {budget} states")
            for i, j in combinations(range(len(parts)), 2):
                merged = parts[i] | parts[j]
                nxt = tuple(sorted(parts[:i] + parts[i + 1:j] + parts[j + 1:] + (merged,)))
                if memo and nxt in dead:
                    continue
                if scorer.score(nxt) > bound:
                    if memo:
                        dead.add(nxt)
                    continue
                path.append((_low(parts[i]), _low(parts[j])))
                if dfs(nxt):
                    return True
                path.pop()
                if memo:
                    dead.add(nxt)
            return False

        if dfs(initial):
            seq = ContractionSequence(list(path), {"algorithm": "oracle", "max_red_degree": bound})
            return OracleResult(bound, seq, states)
    raise AssertionError("unreachable: the trivial bound n always succeeds")


def exact_natural(p0: Poset, cap: int | None = None, budget: int | None = None,
                  memo: bool = True) -> OracleResult:
    """Natural twin-width of ``p0`` with a witness sequence."""
    cap = default_cap() if cap is None else cap
    budget = default_budget() if budget is None else budget
    if p0.n > cap:
        raise BadParameters(f"n = {p0.n} exceeds the oracle cap {cap}")
    if p0.n == 0:
        return OracleResult(0, ContractionSequence(), 0)
    return _search(p0.n, _Scorer(_natural_rows(p0), symmetric=False), budget, memo)


def exact_natural_twinwidth(p0: Poset, cap: int | None = None, budget: int | None = None,
                            memo: bool = True) -> int:
    return exact_natural(p0, cap, budget, memo).value


def exact_symmetric(m: PosetMatrix, cap: int | None = None, budget: int | None = None,
                    memo: bool = True) -> OracleResult:
    """Symmetric (zone) twin-width of the matrix with a witness sequence."""
    cap = default_cap("symmetric") if cap is None else cap
    budget = default_budget() if budget is None else budget
    if m.n > cap:
        raise BadParameters(f"n = {m.n} exceeds the oracle cap {cap}")
    if m.n == 0:
        return OracleResult(0, ContractionSequence(), 0)
    return _search(m.n, _Scorer(_matrix_rows(m), symmetric=True), budget, memo)


def exact_symmetric_twinwidth(m: PosetMatrix, cap: int | None = None,
                              budget: int | None = None, memo: bool = True) -> int:
    return exact_symmetric(m, cap, budget, memo).value


def first_contraction_degrees(p0: Poset) -> dict[tuple[int, int], int]:
    """Red degree of the merged vertex for every single contraction of ``p0``.

    A third vertex ``z`` becomes red to ``{x, y}`` exactly when it relates to
    ``x`` and ``y`` differently, i.e. when it lies in the symmetric
    difference of their up-sets or of their down-sets.
    """
    up, down = p0.closure, p0.down_closure
    out = {}
    for x, y in combinations(range(p0.n), 2):
        diff = (up[x] ^ up[y]) | (down[x] ^ down[y])
        diff &= ~((1 << x) | (1 << y))
        out[(x, y)] = diff.bit_count()
    return out


def min_first_contraction_red_degree(p0: Poset) -> int:
    if p0.n < 2:
        raise BadParameters("need at least two vertices")
    return min(first_contraction_degrees(p0).values())
