"""Taxa, splits, split systems, circular orderings and derived distances.

Taxa are the integers ``1..n``.  A split is stored by the part that does
*not* contain taxon 1, so two descriptions of the same bipartition always
compare equal.  Trivial splits (one side a singleton) are never stored in a
:class:`SplitSystem` but are always present implicitly: weightings, distance
vectors and total weights include them.

Pair-indexed vectors (distance vectors, vertex vectors) are plain tuples
with one entry per unordered pair ``{i, j}``, ``i < j``, in lexicographic
order; see :func:`pairs` and :func:`pair_index`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Split",
    "SplitSystem",
    "CircularOrdering",
    "pairs",
    "pair_index",
    "is_trivial",
    "splits_compatible",
    "splits_cross",
    "interval_in",
    "all_orderings",
    "all_nontrivial_splits",
    "trivial_splits",
    "consistent_orderings",
    "is_circular",
    "distance_vector",
    "total_weight",
    "unit_weighting",
    "row_sums",
]


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Unordered taxon pairs of ``[n]`` in lexicographic order."""
    return tuple(itertools.combinations(range(1, n + 1), 2))


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair ``{i, j}`` in :func:`pairs` ``(n)``."""
    if i == j:
        raise ValueError("a pair needs two distinct taxa")
    if i > j:
        i, j = j, i
    # pairs (a, b) with a < i come first: sum_{a<i} (n - a)
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


@dataclass(frozen=True)
class Split:
    """A bipartition ``A|B`` of ``[n]``.

    ``part`` is the side that excludes taxon 1.  Build instances with
    :meth:`of`, which accepts either side.
    """

    part: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two taxa, got n={self.n}")
        if not self.part:
            raise ValueError("split part must be nonempty")
        if 1 in self.part:
            raise ValueError("canonical split part must exclude taxon 1")
        if min(self.part) < 1 or max(self.part) > self.n:
            raise ValueError(f"taxa outside 1..{self.n}: {sorted(self.part)}")

    @classmethod
    def of(cls, side: Iterable[int], n: int) -> "Split":
        side = frozenset(side)
        if not side or len(side) >= n:
            raise ValueError(f"{sorted(side)} is not a proper nonempty subset of 1..{n}")
        if 1 in side:
            side = frozenset(range(1, n + 1)) - side
        return cls(side, n)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.part

    @property
    def sides(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.complement, self.part

    def separates(self, i: int, j: int) -> bool:
        return (i in self.part) != (j in self.part)

    @property
    def trivial(self) -> bool:
        return len(self.part) == 1 or len(self.part) == self.n - 1

    def sort_key(self) -> tuple:
        return (len(self.part), tuple(sorted(self.part)))

    def __lt__(self, other: "Split") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        a = "".join(map(str, sorted(self.complement))) if self.n < 10 else ",".join(map(str, sorted(self.complement)))
        b = "".join(map(str, sorted(self.part))) if self.n < 10 else ",".join(map(str, sorted(self.part)))
        return f"{a}|{b}"

    __repr__ = __str__


def is_trivial(s: Split) -> bool:
    return s.trivial


def splits_compatible(a: Split, b: Split) -> bool:
    """True iff one of the four part intersections is empty."""
    if a.n != b.n:
        raise ValueError("splits over different taxon sets")
    pa, pb = a.part, b.part
    # parts exclude taxon 1, so complement∩complement is never empty
    return not (pa & pb) or pa <= pb or pb <= pa


def splits_cross(a: Split, b: Split) -> bool:
    return not splits_compatible(a, b)


@dataclass(frozen=True)
class CircularOrdering:
    """A cyclic arrangement of ``1..n`` up to rotation and reflection.

    ``cycle`` is the canonical representative: taxon 1 first and the second
    entry smaller than the last.  Use :meth:`of` to canonicalize.
    """

    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.cycle)
        if n < 3 or sorted(self.cycle) != list(range(1, n + 1)):
            raise ValueError(f"not a cyclic arrangement of 1..{n}: {self.cycle}")
        if self.cycle[0] != 1 or self.cycle[1] > self.cycle[-1]:
            raise ValueError(f"non-canonical cycle {self.cycle}; use CircularOrdering.of")

    @classmethod
    def of(cls, seq: Sequence[int]) -> "CircularOrdering":
        seq = tuple(seq)
        k = seq.index(1)
        rot = seq[k:] + seq[:k]
        if len(rot) > 2 and rot[1] > rot[-1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        return cls(rot)

    @property
    def n(self) -> int:
        return len(self.cycle)

    def positions(self) -> dict[int, int]:
        return {t: p for p, t in enumerate(self.cycle)}

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        c = self.cycle
        return sorted(tuple(sorted((c[p], c[(p + 1) % len(c)]))) for p in range(len(c)))

    def diagonals(self) -> list[Split]:
        """Nontrivial splits drawable as diagonals of the labeled n-gon."""
        c, n = self.cycle, self.n
        out = []
        # parts excluding taxon 1 are the runs c[i..j] with 1 <= i <= j <= n-1
        for i in range(1, n):
            for j in range(i + 1, n - 1 if i == 1 else n):
                out.append(Split(frozenset(c[i : j + 1]), n))
        return sorted(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.cycle)

    def __len__(self) -> int:
        return len(self.cycle)

    def __lt__(self, other: "CircularOrdering") -> bool:
        return self.cycle < other.cycle

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.cycle)) + ")"


def interval_in(s: Split, c: CircularOrdering) -> bool:
    """True iff the split is a set of consecutive taxa around ``c``."""
    if s.n != c.n:
        raise ValueError("split and ordering over different taxon sets")
    pos = c.positions()
    idx = [pos[t] for t in s.part]
    # taxon 1 sits at position 0, so the part is a linear run inside 1..n-1
    return max(idx) - min(idx) + 1 == len(idx)


@lru_cache(maxsize=None)
def all_orderings(n: int) -> tuple[CircularOrdering, ...]:
    """All ``(n-1)!/2`` ordering classes, sorted."""
    out = []
    for perm in itertools.permutations(range(2, n + 1)):
        if perm[0] < perm[-1]:
            out.append(CircularOrdering((1,) + perm))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def all_nontrivial_splits(n: int) -> tuple[Split, ...]:
    out = []
    rest = range(2, n + 1)
    for size in range(1, n - 1):
        for part in itertools.combinations(rest, size):
            s = Split(frozenset(part), n)
            if not s.trivial:
                out.append(s)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def trivial_splits(n: int) -> tuple[Split, ...]:
    return tuple(Split.of([i], n) for i in range(1, n + 1))


@dataclass(frozen=True)
class SplitSystem:
    """A set of nontrivial splits on ``[n]``; trivial splits are implicit."""

    n: int
    splits: frozenset[Split] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for s in self.splits:
            if s.n != self.n:
                raise ValueError(f"split {s} is over n={s.n}, system has n={self.n}")
            if s.trivial:
                raise ValueError(f"trivial split {s} must not be stored explicitly")

    @classmethod
    def of(cls, n: int, parts: Iterable[Iterable[int] | Split] = ()) -> "SplitSystem":
        """Build from splits or side sets; trivial ones are dropped."""
        out = set()
        for p in parts:
            s = p if isinstance(p, Split) else Split.of(p, n)
            if not s.trivial:
                out.add(s)
        return cls(n, frozenset(out))

    def all_splits(self) -> list[Split]:
        """Stored splits followed by the n trivial splits."""
        return sorted(self.splits) + list(trivial_splits(self.n))

    def __iter__(self) -> Iterator[Split]:
        return iter(sorted(self.splits))

    def __len__(self) -> int:
        return len(self.splits)

    def __contains__(self, s: object) -> bool:
        return s in self.splits

    def __or__(self, other: "SplitSystem") -> "SplitSystem":
        return SplitSystem(self.n, self.splits | other.splits)

    def __le__(self, other: "SplitSystem") -> bool:
        return self.splits <= other.splits

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.splits))) + "}"


def consistent_orderings(ss: SplitSystem) -> list[CircularOrdering]:
    """Ordering classes in which every split of ``ss`` is an interval."""
    return [c for c in all_orderings(ss.n) if all(interval_in(s, c) for s in ss.splits)]


def is_circular(ss: SplitSystem) -> bool:
    return any(all(interval_in(s, c) for s in ss.splits) for c in all_orderings(ss.n))


def unit_weighting(ss: SplitSystem) -> dict[Split, Fraction]:
    return {s: Fraction(1) for s in ss.all_splits()}


def _check_weights(ss: SplitSystem, w: Mapping[Split, Rational]) -> None:
    for s in ss.all_splits():
        if s not in w:
            raise KeyError(f"weighting has no value for split {s}")
        if w[s] < 0:
            raise ValueError(f"negative weight {w[s]} on split {s}")


def distance_vector(ss: SplitSystem, w: Mapping[Split, Rational]) -> tuple[Fraction, ...]:
    """Total weight of the splits separating each pair, trivial splits included."""
    _check_weights(ss, w)
    n = ss.n
    d = []
    splits = ss.all_splits()
    for i, j in pairs(n):
        d.append(sum((Fraction(w[s]) for s in splits if s.separates(i, j)), Fraction(0)))
    return tuple(d)


def total_weight(ss: SplitSystem, w: Mapping[Split, Rational]) -> Fraction:
    _check_weights(ss, w)
    return sum((Fraction(w[s]) for s in ss.all_splits()), Fraction(0))


def row_sums(x: Sequence[Rational], n: int) -> list:
    """Per-taxon sums ``sum_{i != j} x_ij`` of a pair vector."""
    out = [0] * n
    for (i, j), v in zip(pairs(n), x):
        out[i - 1] += v
        out[j - 1] += v
    return out
