"""Instance families: the worked figures, lower-bound posets, baselines and
random width-bounded posets."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .errors import BadParameters
from .formats import ContractionSequence, parse_poset_text
from .poset import ChainPartition, Poset


def _fixture(name: str) -> str:
    return resources.files("posettww").joinpath("data", name).read_text()


def figure1_poset() -> tuple[Poset, ChainPartition]:
    """The nine-vertex two-chain poset A<B<C<D, E<F<G<H<I with F<B, A<G,
    G<C, C<I."""
    f = parse_poset_text(_fixture("figure1.poset"))
    return f.poset, f.partition


def figure1_sequence() -> ContractionSequence:
    """The eight merges EF, CD, GH, AB, GHI, ABCD, EFGHI, all."""
    return ContractionSequence.from_text(_fixture("figure1.seq"))


def figure4_poset() -> tuple[Poset, ChainPartition]:
    """Chains a1<..<a5 and b1<..<b5 with a1<b3, b1<a3, a3<b5, b3<a5."""
    f = parse_poset_text(_fixture("figure4.poset"))
    return f.poset, f.partition


def chain_poset(n: int) -> Poset:
    if n < 1:
        raise BadParameters("chain needs n >= 1")
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    if n < 1:
        raise BadParameters("antichain needs n >= 1")
    return Poset(n, [])


def single_chain(n: int) -> ChainPartition:
    return ChainPartition.from_chains(n, [range(n)])


def singleton_chains(n: int) -> ChainPartition:
    return ChainPartition.from_chains(n, [[v] for v in range(n)])


def divisibility_poset(values) -> Poset:
    """``u <= v`` iff ``u`` divides ``v``; vertices in increasing value order."""
    vals = sorted(set(int(v) for v in values))
    if any(v <= 0 for v in vals):
        raise BadParameters("divisibility needs positive integers")
    covers = [(i, j) for i, a in enumerate(vals) for j, b in enumerate(vals)
              if i != j and b % a == 0]
    return Poset(len(vals), covers, [str(v) for v in vals])


def lower_bound_poset(d: int, k: int) -> tuple[Poset, ChainPartition]:
    """Chains C_1..C_d of k+1 elements with c_i^j <= c_{i+a}^{j+d-1},
    ``a = 1 + j mod (d-1)``, chain indices taken cyclically.

    Every single contraction of this poset creates red degree >= d-1.
    Vertex ``c_i^j`` has id ``(i-1)(k+1) + j``.
    """
    if d < 3:
        raise BadParameters("lower_bound_poset needs d >= 3")
    if k < 4 * d - 8:
        raise BadParameters(f"lower_bound_poset needs k >= 4d-8 = {4 * d - 8}")
    size = k + 1

    def vid(i, j):
        return (i % d) * size + j

    covers = [(vid(i, j), vid(i, j + 1)) for i in range(d) for j in range(k)]
    for i in range(d):
        for j in range(k - d + 2):
            a = 1 + j % (d - 1)
            covers.append((vid(i, j), vid(i + a, j + d - 1)))
    labels = [f"c{i + 1}^{j}" for i in range(d) for j in range(size)]
    p = Poset(d * size, covers, labels)
    pi = ChainPartition.from_chains(p.n, [[vid(i, j) for j in range(size)] for i in range(d)])
    return p, pi


def random_width_d(n: int, d: int, density: float, seed: int) -> tuple[Poset, ChainPartition]:
    """Random poset with a planted partition into ``d`` balanced chains.

    Vertex ids double as ranks in a linear extension; a random balanced
    assignment of vertices to chains makes each chain a random subsequence.
    For every vertex ``u`` and every other chain ``j``, with probability
    ``density`` a cover goes from ``u`` to the first vertex of ``j`` ranked
    after ``u``.  With ``density = 1`` every cross pair
    becomes comparable (a total order); with ``density = 0`` the chains stay
    disjoint.  The size of the covers is O(n d).
    """
    if not 1 <= d <= n:
        raise BadParameters(f"need 1 <= d <= n, got d={d}, n={n}")
    if not 0.0 <= density <= 1.0:
        raise BadParameters(f"density {density} outside [0, 1]")
    rng = np.random.default_rng(seed)
    rank = np.arange(n)
    sizes = [n // d + (1 if c < n % d else 0) for c in range(d)]
    which = rng.permutation(np.repeat(np.arange(d), sizes))
    chains = []
    chain_ranks = []
    for c in range(d):
        members = np.flatnonzero(which == c)
        members = members[np.argsort(rank[members], kind="stable")]
        chains.append(members)
        chain_ranks.append(rank[members])
    covers = []
    for c in range(d):
        m = chains[c]
        covers.append(np.stack([m[:-1], m[1:]], axis=1))
    for j in range(d):
        nxt = np.searchsorted(chain_ranks[j], rank, side="right")
        keep = (which != j) & (nxt < len(chains[j])) & (rng.random(n) < density)
        src = np.flatnonzero(keep)
        covers.append(np.stack([src, chains[j][nxt[keep]]], axis=1))
    pairs = np.concatenate(covers).tolist()
    p = Poset(n, pairs)
    return p, ChainPartition.from_chains(n, [c.tolist() for c in chains])
