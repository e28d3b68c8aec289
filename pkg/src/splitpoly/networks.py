"""Circular split networks as polygons with diagonals.

A :class:`Level1Network` is an ordering class plus a set of pairwise
noncrossing diagonals (the bridges).  The diagonals cut the n-gon into
cells; a three-sided cell is a tree node and a cell with four or more sides
is a cycle of the binary level-1 network.  Only nontrivial splits count as
bridges, leaf edges never do.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Union

from .splits import (
    CircularOrdering,
    Split,
    SplitSystem,
    all_orderings,
    interval_in,
    splits_compatible,
)

__all__ = [
    "CircularSplitNetwork",
    "Level1Network",
    "PhyloTree",
    "EnumerationLimitError",
    "bridges_of",
    "is_externally_refined",
    "externally_refine",
    "exterior_network",
    "sigma_splits",
    "refines",
    "double_factorial",
    "enumerate_binary_trees",
    "enumerate_trees",
    "enumerate_level1_networks",
    "maximal_compatible_subsets",
    "cic",
    "max_tree_n",
    "max_network_n",
]


class EnumerationLimitError(ValueError):
    """Requested enumeration is outside the configured size caps."""


def max_tree_n() -> int:
    return int(os.environ.get("SPLITPOLY_MAX_TREE_N", "10"))


def max_network_n() -> int:
    return int(os.environ.get("SPLITPOLY_MAX_NETWORK_N", "8"))


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@dataclass(frozen=True)
class CircularSplitNetwork:
    """A split system drawn on a fixed ordering class."""

    ordering: CircularOrdering
    system: SplitSystem

    def __post_init__(self) -> None:
        if self.ordering.n != self.system.n:
            raise ValueError("ordering and system over different taxon sets")
        for s in self.system.splits:
            if not interval_in(s, self.ordering):
                raise ValueError(f"split {s} is not an interval of {self.ordering}")

    @property
    def n(self) -> int:
        return self.system.n


@dataclass(frozen=True)
class PhyloTree(SplitSystem):
    """A split system of pairwise compatible nontrivial splits."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for a, b in itertools.combinations(self.splits, 2):
            if not splits_compatible(a, b):
                raise ValueError(f"tree splits {a} and {b} are incompatible")

    @classmethod
    def of(cls, n: int, parts: Iterable[Iterable[int] | Split] = ()) -> "PhyloTree":
        return cls(n, SplitSystem.of(n, parts).splits)

    @property
    def binary(self) -> bool:
        return len(self.splits) == self.n - 3

    @property
    def edge_count(self) -> int:
        """Edges including the n leaf edges."""
        return self.n + len(self.splits)

    def clusters(self) -> list[frozenset[int]]:
        """Leaf sets below each edge when rooted at taxon 1, leaves included."""
        return [s.part for s in self.splits] + [frozenset([i]) for i in range(2, self.n + 1)]

    def ordering(self) -> CircularOrdering:
        """A circular ordering in which every split of the tree is an interval."""
        clusters = sorted(set(self.clusters()), key=len, reverse=True)

        def walk(c: frozenset[int]) -> list[int]:
            if len(c) == 1:
                return list(c)
            kids = [d for d in clusters if d < c]
            top = [d for d in kids if not any(d < e for e in kids)]
            return [t for d in sorted(top, key=min) for t in walk(d)]

        rest = frozenset(range(2, self.n + 1))
        top = [d for d in clusters if not any(d < e for e in clusters)]
        seq = [1] + [t for d in sorted(top, key=min) for t in walk(d)]
        assert sorted(seq[1:]) == sorted(rest)
        return CircularOrdering.of(seq)


def _cut_cells(ordering: CircularOrdering, bridges: Iterable[Split]) -> list[tuple[frozenset[int], ...]]:
    cells: list[tuple[frozenset[int], ...]] = [tuple(frozenset([t]) for t in ordering.cycle)]
    for b in sorted(bridges):
        x = b.part
        for ci, cell in enumerate(cells):
            m = len(cell)
            hit = None
            for start in range(m):
                acc: set[int] = set()
                for r in range(1, m - 1):
                    side = cell[(start + r - 1) % m]
                    if not side <= x:
                        break
                    acc |= side
                    if acc == x:
                        if r >= 2:
                            hit = (start, r)
                        break
                if hit:
                    break
            if hit:
                start, r = hit
                run = tuple(cell[(start + q) % m] for q in range(r))
                rest = tuple(cell[(start + r + q) % m] for q in range(m - r))
                comp = frozenset().union(*rest)
                cells[ci : ci + 1] = [run + (comp,), rest + (x,)]
                break
        else:
            raise ValueError(f"bridge {b} does not cut any cell of {ordering}")
    return cells


@dataclass(frozen=True)
class Level1Network:
    """A binary level-1 network: ordering class plus noncrossing bridge diagonals."""

    ordering: CircularOrdering
    bridges: frozenset[Split] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = self.ordering.n
        for b in self.bridges:
            if b.n != n:
                raise ValueError(f"bridge {b} is over n={b.n}, ordering has n={n}")
            if b.trivial:
                raise ValueError(f"bridge {b} is trivial")
            if not interval_in(b, self.ordering):
                raise ValueError(f"bridge {b} is not a diagonal of {self.ordering}")
        for a, b in itertools.combinations(self.bridges, 2):
            if not splits_compatible(a, b):
                raise ValueError(f"bridges {a} and {b} cross")

    @classmethod
    def from_tree(cls, t: PhyloTree) -> "Level1Network":
        if not t.binary:
            raise ValueError("only binary trees are binary level-1 networks")
        return cls(t.ordering(), t.splits)

    @property
    def n(self) -> int:
        return self.ordering.n

    @property
    def k(self) -> int:
        return len(self.bridges)

    @cached_property
    def cells(self) -> list[tuple[frozenset[int], ...]]:
        """Cells of the dissected polygon, each a cyclic tuple of side taxon sets."""
        return _cut_cells(self.ordering, self.bridges)

    def cycles(self) -> list[tuple[frozenset[int], ...]]:
        return [c for c in self.cells if len(c) >= 4]

    def is_tree(self) -> bool:
        return not self.cycles()

    def sort_key(self) -> tuple:
        return (self.ordering.cycle, tuple(b.sort_key() for b in sorted(self.bridges)))

    def __str__(self) -> str:
        return f"{self.ordering}[{', '.join(map(str, sorted(self.bridges)))}]"


def bridges_of(net: CircularSplitNetwork | SplitSystem) -> frozenset[Split]:
    """Nontrivial splits compatible with every other split of the system."""
    ss = net.system if isinstance(net, CircularSplitNetwork) else net
    return frozenset(s for s in ss.splits if all(splits_compatible(s, o) for o in ss.splits))


def _addable(net: CircularSplitNetwork) -> list[Split]:
    have = net.system.splits
    return [
        d
        for d in net.ordering.diagonals()
        if d not in have and all(splits_compatible(d, s) for s in have)
    ]


def is_externally_refined(net: CircularSplitNetwork) -> bool:
    """True iff no noncrossing diagonal of the ordering can be added."""
    return not _addable(net)


def externally_refine(net: CircularSplitNetwork) -> CircularSplitNetwork:
    """Add noncrossing diagonals (smallest first) until none can be added."""
    while True:
        extra = _addable(net)
        if not extra:
            return net
        net = CircularSplitNetwork(net.ordering, SplitSystem(net.n, net.system.splits | {extra[0]}))


def exterior_network(net: CircularSplitNetwork) -> Level1Network:
    """The exterior level-1 network L(s) of an externally refined network."""
    if not is_externally_refined(net):
        raise ValueError("exterior_network needs an externally refined network")
    return Level1Network(net.ordering, bridges_of(net))


def sigma_splits(net: Level1Network) -> SplitSystem:
    """All nontrivial splits displayed by a minimal cut of the network."""
    n = net.n
    out = set(net.bridges)
    for cell in net.cycles():
        m = len(cell)
        for start in range(m):
            for r in range(2, m - 1):
                part = frozenset().union(*(cell[(start + q) % m] for q in range(r)))
                out.add(Split.of(part, n))
    return SplitSystem(n, frozenset(out))


def refines(a: SplitSystem, b: SplitSystem) -> bool:
    if a.n != b.n:
        raise ValueError("systems over different taxon sets")
    return a.splits >= b.splits


@lru_cache(maxsize=None)
def _binary_tree_clusters(n: int) -> tuple[frozenset[frozenset[int]], ...]:
    # clusters relative to taxon 1, including leaf edges
    trees = [frozenset({frozenset([2]), frozenset([3]), frozenset([2, 3])})]
    for m in range(4, n + 1):
        grown = []
        for t in trees:
            for c in sorted(t, key=lambda c: (len(c), sorted(c))):
                new = {d | {m} if c <= d else d for d in t}
                new |= {c, frozenset([m])}
                grown.append(frozenset(new))
        trees = grown
    return tuple(trees)


def enumerate_binary_trees(n: int) -> list[PhyloTree]:
    """All ``(2n-5)!!`` binary trees on ``[n]`` by leaf insertion, sorted."""
    if not 4 <= n <= max_tree_n():
        raise EnumerationLimitError(f"binary tree enumeration needs 4 <= n <= {max_tree_n()}, got {n}")
    out = []
    for t in _binary_tree_clusters(n):
        out.append(PhyloTree(n, frozenset(Split(c, n) for c in t if 2 <= len(c) <= n - 2)))
    return sorted(out, key=lambda t: sorted(s.sort_key() for s in t.splits))


def enumerate_trees(n: int) -> list[PhyloTree]:
    """All phylogenetic trees on ``[n]`` (binary and not), each once."""
    seen = set()
    for t in enumerate_binary_trees(n):
        splits = sorted(t.splits)
        for r in range(len(splits) + 1):
            for sub in itertools.combinations(splits, r):
                seen.add(frozenset(sub))
    return sorted((PhyloTree(n, s) for s in seen), key=lambda t: (len(t), sorted(x.sort_key() for x in t.splits)))


@lru_cache(maxsize=None)
def _position_dissections(n: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # diagonals as position runs [a, b] inside 1..n-1 (taxon 1 at position 0)
    runs = [(a, b) for a in range(1, n) for b in range(a + 1, n) if b - a + 1 <= n - 2]

    def ok(r, s):
        (a, b), (c, d) = r, s
        return b < c or d < a or (a <= c and d <= b) or (c <= a and b <= d)

    out = []
    for combo in itertools.combinations(runs, k):
        if all(ok(r, s) for r, s in itertools.combinations(combo, 2)):
            out.append(combo)
    return tuple(out)


def enumerate_level1_networks(n: int, k: int) -> list[Level1Network]:
    """All distinct binary level-1 networks on ``[n]`` with ``k`` bridges.

    Every (ordering class, noncrossing k-diagonal set) pair is generated and
    pairs giving the same vertex vector are merged, keeping the first.
    """
    from .vectors import network_vector

    if not 4 <= n <= max_network_n():
        raise EnumerationLimitError(f"network enumeration needs 4 <= n <= {max_network_n()}, got {n}")
    if not 0 <= k <= n - 3:
        raise ValueError(f"bridge count must be in 0..{n - 3}, got {k}")
    seen: dict[tuple, Level1Network] = {}
    dissections = _position_dissections(n, k)
    for c in all_orderings(n):
        cyc = c.cycle
        for combo in dissections:
            bridges = frozenset(Split(frozenset(cyc[a : b + 1]), n) for a, b in combo)
            net = Level1Network(c, bridges)
            key = network_vector(net)
            if key not in seen:
                seen[key] = net
    return sorted(seen.values(), key=Level1Network.sort_key)


def maximal_compatible_subsets(splits: Iterable[Split]) -> list[frozenset[Split]]:
    """Maximal pairwise-compatible subsets (Bron-Kerbosch on the compatibility graph)."""
    nodes = sorted(set(splits))
    nbr = {s: {o for o in nodes if o != s and splits_compatible(s, o)} for s in nodes}
    out: list[frozenset[Split]] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        for v in sorted(p):
            expand(r | {v}, p & nbr[v], x & nbr[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(nodes), set())
    return out


def cic(net: Union[Level1Network, SplitSystem]) -> Fraction:
    """Cladistic information content: share of binary trees allowed by the network."""
    sigma = sigma_splits(net) if isinstance(net, Level1Network) else net
    n = sigma.n
    blocks = maximal_compatible_subsets(sigma.splits)
    trees = enumerate_binary_trees(n)
    hits = sum(1 for t in trees if any(m <= t.splits for m in blocks))
    return Fraction(hits, double_factorial(2 * n - 5))
