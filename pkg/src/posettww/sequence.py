"""Replaying contraction sequences: natural red degree, symmetric (matrix)
error values, and chain-diagram export."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedSequence, VertexNotLive
from .formats import ContractionSequence
from .poset import ChainIndex, ChainPartition, Poset
from .red_poset import RedPoset


@dataclass
class Replay:
    max_red_degree: int
    trace: list[int]

    @property
    def worst_step(self) -> int | None:
        """1-based index of the first step reaching the maximum."""
        for i, deg in enumerate(self.trace, 1):
            if deg == self.max_red_degree:
                return i
        return None


def _check_length(n: int, seq: ContractionSequence, partial: bool) -> None:
    if len(seq) > max(n - 1, 0) or (not partial and len(seq) != max(n - 1, 0)):
        raise MalformedSequence(
            f"a full sequence on {n} vertices has {max(n - 1, 0)} merges, got {len(seq)}")


def replay_natural(p0: Poset, pi: ChainPartition, seq: ContractionSequence, *,
                   index: ChainIndex | None = None, partial: bool = False,
                   bound: int | None = None) -> Replay:
    """Replay ``seq`` from the red poset ``(X, <=, {})``.

    ``trace[i]`` is the maximum red degree after merge ``i + 1``.  With
    ``bound`` set, replay stops at the first step exceeding it (the trace then
    ends at that step).
    """
    _check_length(p0.n, seq, partial)
    rp = RedPoset(p0, pi, index)
    trace = []
    best = 0
    for step, (a, b) in enumerate(seq.events, 1):
        try:
            rp.contract(a, b)
        except VertexNotLive as exc:
            raise MalformedSequence(f"merge {step} ({a}, {b}): {exc}") from None
        deg = rp.max_red_degree()
        trace.append(deg)
        best = max(best, deg)
        if bound is not None and deg > bound:
            break
    return Replay(best, trace)


@dataclass(frozen=True)
class PosetMatrix:
    """Square matrix with +1 for u <= v, -1 for v < u and 0 otherwise."""

    a: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def validate(self) -> None:
        a = self.a
        assert a.shape == (self.n, self.n)
        assert np.all(np.diag(a) == 1)
        off = ~np.eye(self.n, dtype=bool)
        assert np.array_equal((a == 1) & off, (a.T == -1) & off)
        assert np.array_equal(a == 0, a.T == 0)


def build_matrix(p0: Poset) -> PosetMatrix:
    le = p0.closure_matrix()
    strict_ge = le.T & ~np.eye(p0.n, dtype=bool)
    return PosetMatrix(le.astype(np.int8) - strict_ge.astype(np.int8))


def zone_errors(m: PosetMatrix, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row and column error values for the partition given by ``labels``.

    Returns ``(part_ids, row_errors, col_errors)``; a zone counts when its
    entries are not all equal, diagonal zones included.
    """
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    starts = np.flatnonzero(np.r_[True, sorted_labels[1:] != sorted_labels[:-1]])
    s = m.a[np.ix_(order, order)]
    lo = np.minimum.reduceat(np.minimum.reduceat(s, starts, axis=0), starts, axis=1)
    hi = np.maximum.reduceat(np.maximum.reduceat(s, starts, axis=0), starts, axis=1)
    mixed = lo != hi
    return sorted_labels[starts], mixed.sum(axis=1), mixed.sum(axis=0)


def replay_symmetric(m: PosetMatrix, seq: ContractionSequence, *,
                     partial: bool = False) -> Replay:
    """Maximum row/column error value over the partitions R^1..R^n.

    ``trace[0]`` belongs to the finest partition, ``trace[i]`` to the
    partition after merge ``i``.
    """
    n = m.n
    _check_length(n, seq, partial)
    labels = np.arange(n)
    members = {v: [v] for v in range(n)}

    def score():
        if n == 0:
            return 0
        _, rows, cols = zone_errors(m, labels)
        return int(max(rows.max(), cols.max()))

    trace = [score()]
    for step, (a, b) in enumerate(seq.events, 1):
        if a == b or a not in members or b not in members:
            raise MalformedSequence(f"merge {step} ({a}, {b}) does not name two live vertices")
        keep, gone = min(a, b), max(a, b)
        members[keep].extend(members.pop(gone))
        labels[members[keep]] = keep
        trace.append(score())
    return Replay(max(trace), trace)


def _part_name(p: Poset, members) -> str:
    names = [p.label(x) for x in members]
    if all(len(s) == 1 for s in names):
        return "".join(names)
    return ",".join(names)


def export_dot(rp: RedPoset) -> str:
    """Chain diagram in Graphviz DOT.

    Each chain is a cluster drawn bottom-up; consecutive chain parts are
    joined by grey undirected edges, black bars are directed black edges and
    red bars are undirected red edges.  Output is deterministic.
    """
    p = rp.poset
    lines = ["digraph chain_diagram {", "  rankdir=BT;", "  node [shape=circle];"]
    placed = set()
    for c in range(rp.d):
        parts = rp.chain_parts(c)
        lines.append(f"  subgraph cluster_{c} {{")
        lines.append(f'    label="chain {c}";')
        for r in parts:
            ordered = sorted(rp.members(r), key=lambda x: rp.partition.chain_of[x][1])
            lines.append(f'    "{r}" [label="{_part_name(p, ordered)}"];')
            placed.add(r)
        for a, b in zip(parts, parts[1:]):
            lines.append(f'    "{a}" -> "{b}" [color=gray, arrowhead=none];')
        lines.append("  }")
    for r in rp.live():
        if r not in placed:
            ordered = sorted(rp.members(r), key=lambda x: (rp.partition.chain_of[x]))
            lines.append(f'  "{r}" [label="{_part_name(p, ordered)}", shape=box];')
    for u, v in rp.black_bars():
        lines.append(f'  "{u}" -> "{v}" [color=black];')
    for e in sorted(tuple(sorted(e)) for e in rp.red_edges()):
        lines.append(f'  "{e[0]}" -> "{e[1]}" [color=red, dir=none, penwidth=2];')
    lines.append("}")
    return "\n".join(lines) + "\n"
