import sys
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

from posettww.poset import Poset

sys.path.insert(0, str(Path(__file__).parent))


@st.composite
def posets(draw, min_n=1, max_n=8):
    """Random posets: an acyclic relation oriented by a random permutation."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    covers = [(perm[a], perm[b]) for (a, b), k in zip(pairs, keep) if k]
    return Poset(n, covers)


def brute_width(p: Poset) -> int:
    """Largest antichain by enumeration of vertex subsets."""
    best = 0
    for mask in range(1 << p.n):
        vs = [v for v in range(p.n) if mask >> v & 1]
        if len(vs) > best and all(not p.comparable(a, b) for a, b in combinations(vs, 2)):
            best = len(vs)
    return best


def max_antichain(p: Poset) -> int:
    """Largest antichain by branch and bound over incomparability bitmasks."""
    full = (1 << p.n) - 1
    apart = [full & ~(p.closure[v] | p.down_closure[v]) for v in range(p.n)]
    best = 0

    def grow(size, cand):
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        v = cand.bit_length() - 1
        grow(size + 1, cand & apart[v])
        grow(size, cand & ~(1 << v))

    grow(0, full)
    return best


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.RESULTS:
        terminalreporter.write_line(line)
