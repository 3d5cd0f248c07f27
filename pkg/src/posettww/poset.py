"""Finite posets, chain partitions and width.

A :class:`Poset` is built from a generating relation (usually the Hasse
diagram).  The reflexive-transitive closure is kept as one Python ``int`` bit
row per vertex and is computed lazily, so that very large width-bounded posets
can be handled through :func:`chain_index` without ever materialising the
quadratic closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import CycleDetected, IdOutOfRange, InvalidPartition


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite poset on ``0..n-1`` given by a generating relation.

    ``covers`` may contain any acyclic set of pairs ``(u, v)`` meaning
    ``u <= v``; it does not have to be transitively reduced.
    """

    def __init__(self, n: int, covers: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise IdOutOfRange(f"negative vertex count {n}")
        self.n = n
        pairs = []
        succ: list[list[int]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in covers:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise IdOutOfRange(f"cover ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                continue
            if (u, v) in seen:
                continue
            seen.add((u, v))
            pairs.append((u, v))
            succ[u].append(v)
            pred[v].append(u)
        self.covers = tuple(pairs)
        self.succ = succ
        self.pred = pred
        if labels is not None:
            labels = list(labels)
            if len(labels) != n:
                raise IdOutOfRange(f"{len(labels)} labels for {n} vertices")
        self.labels = labels
        sorter = TopologicalSorter({v: pred[v] for v in range(n)})
        try:
            self.order = tuple(sorter.static_order())
        except CycleError as exc:
            raise CycleDetected(f"relation has a cycle through {exc.args[1]}") from None
        self._up: list[int] | None = None
        self._down: list[int] | None = None

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self.covers)})"

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def vertex(self, name) -> int:
        """Resolve a label (or a decimal id) to a vertex id."""
        if self.labels and name in self.labels:
            return self.labels.index(name)
        v = int(name)
        if not 0 <= v < self.n:
            raise IdOutOfRange(f"vertex {v} outside 0..{self.n - 1}")
        return v

    # closure -------------------------------------------------------------

    def _build_closure(self):
        up = [0] * self.n
        for x in reversed(self.order):
            row = 1 << x
            for w in self.succ[x]:
                row |= up[w]
            up[x] = row
        down = [0] * self.n
        for x in self.order:
            row = 1 << x
            for w in self.pred[x]:
                row |= down[w]
            down[x] = row
        self._up, self._down = up, down

    @property
    def closure(self) -> list[int]:
        """Bit rows: bit ``v`` of ``closure[u]`` is set iff ``u <= v``."""
        if self._up is None:
            self._build_closure()
        return self._up

    @property
    def down_closure(self) -> list[int]:
        """Bit rows: bit ``v`` of ``down_closure[u]`` is set iff ``v <= u``."""
        if self._down is None:
            self._build_closure()
        return self._down

    def leq(self, u: int, v: int) -> bool:
        return bool((self.closure[u] >> v) & 1)

    def comparable(self, u: int, v: int) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    def closure_matrix(self) -> np.ndarray:
        """Dense boolean ``n x n`` matrix of ``<=``."""
        n = self.n
        nbytes = (n + 7) // 8
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        raw = b"".join(row.to_bytes(nbytes, "little") for row in self.closure)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes),
                             axis=1, bitorder="little")
        return bits[:, :n].astype(bool)

    def check_axioms(self) -> None:
        """Assert reflexivity, antisymmetry and transitivity of the closure."""
        up = self.closure
        for u in range(self.n):
            assert (up[u] >> u) & 1, f"not reflexive at {u}"
            for v in iter_bits(up[u]):
                if v != u:
                    assert not (up[v] >> u) & 1, f"{u} and {v} violate antisymmetry"
                assert up[v] & ~up[u] == 0, f"transitivity fails at {u} <= {v}"


def from_cover_relations(n: int, covers: Iterable[tuple[int, int]],
                         labels: Sequence[str] | None = None) -> Poset:
    """Build a poset from Hasse edges; raises on cycles and bad ids."""
    return Poset(n, covers, labels)


@dataclass(frozen=True)
class ChainPartition:
    """A partition of ``0..n-1`` into chains, each listed bottom-up."""

    chains: tuple[tuple[int, ...], ...]
    chain_of: tuple[tuple[int, int], ...] = field(repr=False)

    @classmethod
    def from_chains(cls, n: int, chains: Iterable[Iterable[int]]) -> "ChainPartition":
        chains = tuple(tuple(int(v) for v in c) for c in chains)
        where: list[tuple[int, int] | None] = [None] * n
        for ci, chain in enumerate(chains):
            if not chain:
                raise InvalidPartition(f"chain {ci} is empty")
            for pos, v in enumerate(chain):
                if not 0 <= v < n:
                    raise InvalidPartition(f"vertex {v} outside 0..{n - 1}")
                if where[v] is not None:
                    raise InvalidPartition(f"vertex {v} appears twice")
                where[v] = (ci, pos)
        missing = [v for v in range(n) if where[v] is None]
        if missing:
            raise InvalidPartition(f"vertices not covered: {missing[:10]}")
        return cls(chains, tuple(where))

    @property
    def d(self) -> int:
        return len(self.chains)

    @property
    def n(self) -> int:
        return len(self.chain_of)

    def validate(self, p: Poset) -> None:
        """Check consecutive chain elements are comparable using the closure."""
        if self.n != p.n:
            raise InvalidPartition(f"partition has {self.n} vertices, poset {p.n}")
        for ci, chain in enumerate(self.chains):
            for a, b in zip(chain, chain[1:]):
                if not p.leq(a, b):
                    raise InvalidPartition(f"chain {ci}: {a} <= {b} does not hold")


@dataclass(frozen=True)
class ChainIndex:
    """Positional view of a poset relative to a chain partition.

    ``up[j][x]`` is the least position in chain ``j`` of an element ``>= x``
    (``len(chain j)`` when there is none); ``down[j][x]`` is the greatest
    position of an element ``<= x`` (``-1`` when there is none).  For ``x`` in
    chain ``j`` both equal the position of ``x``.  Together they answer every
    comparability query in O(1): ``x <= y`` iff ``up[c(y)][x] <= pos(y)``.
    """

    partition: ChainPartition
    up: tuple[list[int], ...]
    down: tuple[list[int], ...]

    def leq(self, x: int, y: int) -> bool:
        c, pos = self.partition.chain_of[y]
        return self.up[c][x] <= pos


def chain_index(p: Poset, pi: ChainPartition) -> ChainIndex:
    """Compute the positional tables in O((n + covers) * d) time.

    Also validates that every chain of ``pi`` is really a chain of ``p``.
    """
    if pi.n != p.n:
        raise InvalidPartition(f"partition has {pi.n} vertices, poset {p.n}")
    n, d = p.n, pi.d
    lens = [len(c) for c in pi.chains]
    chain_of = pi.chain_of
    up = tuple([lens[j]] * n for j in range(d))
    down = tuple([-1] * n for _ in range(d))
    succ, pred = p.succ, p.pred
    chains_range = range(d)
    for x in reversed(p.order):
        for w in succ[x]:
            for j in chains_range:
                col = up[j]
                if col[w] < col[x]:
                    col[x] = col[w]
        c, pos = chain_of[x]
        # strictly above x in its own chain must start right after x
        if up[c][x] != pos + 1:
            raise InvalidPartition(f"chain {c} is not ordered at position {pos}")
        up[c][x] = pos
    for x in p.order:
        for w in pred[x]:
            for j in chains_range:
                col = down[j]
                if col[w] > col[x]:
                    col[x] = col[w]
        c, pos = chain_of[x]
        down[c][x] = pos
    return ChainIndex(pi, up, down)


def _strict_matrix(p: Poset) -> csr_matrix:
    less = p.closure_matrix()
    np.fill_diagonal(less, False)
    return csr_matrix(less)


def chain_partition(p: Poset) -> ChainPartition:
    """Minimum chain cover from a maximum matching of the split graph.

    Matching ``u -> v`` in the bipartite graph of strict comparabilities
    glues ``v`` right after ``u``; the unmatched paths are the chains and
    their number is the width (Dilworth).
    """
    n = p.n
    if n == 0:
        return ChainPartition((), ())
    match = maximum_bipartite_matching(_strict_matrix(p), perm_type="column")
    nxt = [-1] * n
    has_pred = [False] * n
    for u, v in enumerate(match):
        if v >= 0:
            nxt[u] = int(v)
            has_pred[v] = True
    chains = []
    for s in range(n):
        if has_pred[s]:
            continue
        chain = [s]
        while nxt[chain[-1]] >= 0:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    chains.sort(key=lambda c: c[0])
    return ChainPartition.from_chains(n, chains)


def width(p: Poset) -> int:
    """Maximum antichain size, as ``n`` minus a maximum matching."""
    if p.n == 0:
        return 0
    match = maximum_bipartite_matching(_strict_matrix(p), perm_type="column")
    return p.n - int(np.count_nonzero(match >= 0))


def is_antichain(p: Poset, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return not any(p.comparable(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
