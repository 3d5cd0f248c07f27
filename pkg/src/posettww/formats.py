"""Text and JSON encodings of posets and contraction sequences.

Poset text format, one directive per line (``#`` starts a comment)::

    poset <n>
    label <u> <name>        optional, any number
    cover <u> <v>           u <= v; need not be a Hasse edge
    chain <v1> <v2> ...     optional; if present the chains must partition
                            the ground set and are listed bottom-up

The JSON form is ``{"n": .., "covers": [[u, v], ..], "labels": [..],
"chains": [[..], ..]}`` with ``labels`` and ``chains`` optional.

Sequence text format::

    meta <key> <value>      optional
    merge <a> <b>

where ``a`` and ``b`` are representatives (least original ids) of live
vertices at the time of the merge.  JSON: ``{"events": [[a, b], ..],
"meta": {..}}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MalformedInput, MalformedSequence
from .poset import ChainPartition, Poset


@dataclass
class PosetFile:
    poset: Poset
    partition: ChainPartition | None = None


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedInput(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_poset_text(text: str) -> PosetFile:
    n = None
    covers, chains = [], []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "poset":
            if n is not None:
                raise MalformedInput("duplicate poset header", lineno)
            if len(rest) != 1:
                raise MalformedInput("header must be 'poset <n>'", lineno)
            (n,) = _ints(rest, lineno)
            continue
        if n is None:
            raise MalformedInput("missing 'poset <n>' header", lineno)
        if head == "cover":
            if len(rest) != 2:
                raise MalformedInput("expected 'cover <u> <v>'", lineno)
            covers.append(tuple(_ints(rest, lineno)))
        elif head == "label":
            if len(rest) != 2:
                raise MalformedInput("expected 'label <u> <name>'", lineno)
            (u,) = _ints(rest[:1], lineno)
            labels[u] = rest[1]
        elif head == "chain":
            chains.append(_ints(rest, lineno))
        else:
            raise MalformedInput(f"unknown directive {head!r}", lineno)
    if n is None:
        raise MalformedInput("empty poset file")
    return _assemble(n, covers, labels, chains)


def _assemble(n, covers, labels, chains) -> PosetFile:
    names = None
    if labels:
        bad = [u for u in labels if not 0 <= u < n]
        if bad:
            raise MalformedInput(f"label for vertex {bad[0]} outside 0..{n - 1}")
        names = [labels.get(v, str(v)) for v in range(n)]
    p = Poset(n, covers, names)
    pi = ChainPartition.from_chains(n, chains) if chains else None
    return PosetFile(p, pi)


def parse_poset_json(text: str) -> PosetFile:
    try:
        data = json.loads(text)
        n = int(data["n"])
        covers = [tuple(int(x) for x in c) for c in data.get("covers", [])]
        raw_labels = data.get("labels")
        chains = data.get("chains") or []
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedInput(f"bad poset JSON: {exc}") from None
    labels = {i: str(s) for i, s in enumerate(raw_labels)} if raw_labels else {}
    return _assemble(n, covers, labels, chains)


def load_poset(path: str | Path) -> PosetFile:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_poset_json(text)
    return parse_poset_text(text)


def format_poset(p: Poset, pi: ChainPartition | None = None) -> str:
    lines = [f"poset {p.n}"]
    if p.labels:
        lines += [f"label {v} {name}" for v, name in enumerate(p.labels)]
    lines += [f"cover {u} {v}" for u, v in p.covers]
    if pi is not None:
        lines += ["chain " + " ".join(map(str, c)) for c in pi.chains]
    return "\n".join(lines) + "\n"


def poset_to_json(p: Poset, pi: ChainPartition | None = None) -> dict:
    out = {"n": p.n, "covers": [list(c) for c in p.covers]}
    if p.labels:
        out["labels"] = list(p.labels)
    if pi is not None:
        out["chains"] = [list(c) for c in pi.chains]
    return out


@dataclass
class ContractionSequence:
    """Ordered merges of live vertices, each named by its least original id."""

    events: list[tuple[int, int]] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.events)

    def to_text(self) -> str:
        lines = [f"meta {k} {v}" for k, v in self.meta.items()]
        lines += [f"merge {a} {b}" for a, b in self.events]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"events": [list(e) for e in self.events], "meta": dict(self.meta)}

    @classmethod
    def from_text(cls, text: str) -> "ContractionSequence":
        seq = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, *rest = line.split()
            if head == "merge":
                if len(rest) != 2:
                    raise MalformedSequence(f"line {lineno}: expected 'merge <a> <b>'")
                try:
                    seq.events.append((int(rest[0]), int(rest[1])))
                except ValueError:
                    raise MalformedSequence(f"line {lineno}: non-integer vertex") from None
            elif head == "meta":
                if not rest:
                    raise MalformedSequence(f"line {lineno}: empty meta line")
                seq.meta[rest[0]] = " ".join(rest[1:])
            else:
                raise MalformedSequence(f"line {lineno}: unknown directive {head!r}")
        return seq

    @classmethod
    def from_json(cls, data: dict) -> "ContractionSequence":
        try:
            events = [(int(a), int(b)) for a, b in data["events"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSequence(f"bad sequence JSON: {exc}") from None
        return cls(events, dict(data.get("meta", {})))


def load_sequence(path: str | Path) -> ContractionSequence:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return ContractionSequence.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedSequence(f"bad sequence JSON: {exc}") from None
    return ContractionSequence.from_text(text)
