"""Vertex vectors: tour incidence vectors, tree vectors and level-1 network vectors.

All entries are exact integers (Python ints are rationals); vectors are
tuples in lexicographic pair order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .networks import Level1Network, PhyloTree
from .splits import CircularOrdering, all_nontrivial_splits, pair_index, pairs

__all__ = [
    "BridgeCountMatrix",
    "incidence_vector",
    "bridge_counts",
    "flip_orderings",
    "bme_vector",
    "network_vector",
    "tree_from_vector",
    "is_tree_metric",
]


@dataclass(frozen=True)
class BridgeCountMatrix:
    """Number of bridges separating each taxon pair, plus the bridge total ``k``."""

    n: int
    counts: tuple[int, ...]
    k: int

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.counts[pair_index(ij[0], ij[1], self.n)]


def incidence_vector(c: CircularOrdering) -> tuple[int, ...]:
    n = c.n
    x = [0] * (n * (n - 1) // 2)
    cyc = c.cycle
    for p in range(n):
        x[pair_index(cyc[p], cyc[(p + 1) % n], n)] = 1
    return tuple(x)


def _separation_counts(n: int, splits) -> tuple[int, ...]:
    return tuple(sum(1 for s in splits if s.separates(i, j)) for i, j in pairs(n))


def bridge_counts(net: Level1Network) -> BridgeCountMatrix:
    return BridgeCountMatrix(net.n, _separation_counts(net.n, net.bridges), net.k)


def flip_orderings(net: Level1Network) -> list[CircularOrdering]:
    """Orderings reached by independently reversing the taxa beyond each bridge.

    These are the ``2^k`` ordering classes compatible with the network's
    displayed splits.
    """
    out = {net.ordering}
    for b in sorted(net.bridges):
        grown = set()
        for c in out:
            seq = list(c.cycle)
            idx = sorted(seq.index(t) for t in b.part)
            lo, hi = idx[0], idx[-1]
            seq[lo : hi + 1] = reversed(seq[lo : hi + 1])
            grown.add(c)
            grown.add(CircularOrdering.of(seq))
        out = grown
    return sorted(out)


def bme_vector(t: PhyloTree) -> tuple[int, ...]:
    """Tree vector with entries ``2^(n-3-b_ij)``."""
    if not t.binary:
        raise ValueError(f"bme_vector needs a binary tree; got {len(t.splits)} of {t.n - 3} splits")
    n = t.n
    return tuple(2 ** (n - 3 - b) for b in _separation_counts(n, t.splits))


def network_vector(net: Level1Network) -> tuple[int, ...]:
    """Vertex vector of a binary level-1 network.

    Entry ``{i, j}`` is ``2^(k - b_ij)`` when ``i`` and ``j`` are adjacent in
    some ordering consistent with the network, else 0.
    """
    n, k = net.n, net.k
    adjacent = set()
    for c in flip_orderings(net):
        adjacent.update(c.adjacent_pairs())
    b = _separation_counts(n, net.bridges)
    return tuple(2 ** (k - bij) if ij in adjacent else 0 for ij, bij in zip(pairs(n), b))


def is_tree_metric(m: Sequence[int], n: int) -> bool:
    """Four-point condition: the two largest of the three quartet sums agree."""
    def d(i, j):
        return m[pair_index(i, j, n)]

    for a, b, c, e in itertools.combinations(range(1, n + 1), 4):
        s = sorted((d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)))
        if s[1] != s[2]:
            return False
    return True


def _log2_exact(v) -> Optional[int]:
    if v != int(v):
        return None
    v = int(v)
    if v <= 0 or v & (v - 1):
        return None
    return v.bit_length() - 1


def tree_from_vector(x: Sequence) -> Optional[PhyloTree]:
    """Recognize a tree vector; return its binary tree or ``None``."""
    total = len(x)
    n = 2
    while n * (n - 1) // 2 < total:
        n += 1
    if n * (n - 1) // 2 != total or n < 4:
        return None
    b = []
    for v in x:
        e = _log2_exact(v)
        if e is None or e > n - 3:
            return None
        b.append(n - 3 - e)
    # unit leaf edges keep cherries at distance 2 rather than 0
    m = [bij + 2 for bij in b]
    if not is_tree_metric(m, n):
        return None

    def d(i, j):
        return m[pair_index(i, j, n)]

    found = []
    for s in all_nontrivial_splits(n):
        a_side, b_side = sorted(s.complement), sorted(s.part)
        ok = True
        for a1, a2 in itertools.combinations(a_side, 2):
            for b1, b2 in itertools.combinations(b_side, 2):
                if d(a1, a2) + d(b1, b2) >= min(d(a1, b1) + d(a2, b2), d(a1, b2) + d(a2, b1)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(s)
    if len(found) != n - 3:
        return None
    try:
        t = PhyloTree(n, frozenset(found))
    except ValueError:
        return None
    if tuple(bme_vector(t)) != tuple(x):
        return None
    return t
