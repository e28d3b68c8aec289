"""The network polytopes, their known facet families and the face maps.

Inequalities are stored in ``normal . x >= bound`` form; families whose
natural statement is an upper bound are negated.  Face vertex sets are
always found by exact tightness against the supporting functional, never
from the combinatorics, so the theorem checks stay independent of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence, Union

from .geometry import HPolytope, LinearFunctional, VPolytope
from .networks import (
    CircularSplitNetwork,
    Level1Network,
    PhyloTree,
    enumerate_binary_trees,
    enumerate_level1_networks,
    sigma_splits,
    bridges_of,
)
from .splits import (
    CircularOrdering,
    SplitSystem,
    all_nontrivial_splits,
    all_orderings,
    consistent_orderings,
    distance_vector,
    pair_index,
    pairs,
    total_weight,
    unit_weighting,
)
from .vectors import bme_vector, incidence_vector, network_vector

__all__ = [
    "FacetInequality",
    "FaceDescriptor",
    "polytope_vertices",
    "network_vertex_map",
    "split_face_inequality",
    "cherry_facet",
    "caterpillar_facet",
    "degree_equalities",
    "relaxed_bme",
    "relaxed_bme_constraints",
    "network_face",
    "tree_face_map",
    "ordering_face_map",
    "circular_systems",
    "csn_f_vector",
    "csn_polygon_counts",
    "chamber_overlap",
]

Family = Literal["split", "cherry", "caterpillar", "degree"]


@dataclass(frozen=True)
class FacetInequality:
    """A named inequality (or, for ``degree``, equality) ``normal . x >= bound``."""

    family: Family
    params: tuple
    functional: LinearFunctional

    @property
    def normal(self) -> tuple:
        return self.functional.normal

    @property
    def bound(self) -> Fraction:
        return self.functional.bound

    @property
    def is_equality(self) -> bool:
        return self.family == "degree"

    def holds(self, x: Sequence) -> bool:
        v = self.functional(x)
        return v == 0 if self.is_equality else v >= 0

    def tight(self, x: Sequence) -> bool:
        return self.functional(x) == 0

    def __str__(self) -> str:
        return f"{self.family}{self.params}"


@dataclass(frozen=True)
class FaceDescriptor:
    """A face cut out by ``normal . x >= bound`` with its tight vertices."""

    source: object
    functional: LinearFunctional
    vertices: tuple[tuple, ...]

    @property
    def normal(self) -> tuple:
        return self.functional.normal

    @property
    def bound(self) -> Fraction:
        return self.functional.bound


def _check_range(n: int, k: int) -> None:
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if not 0 <= k <= n - 3:
        raise ValueError(f"k must be in 0..{n - 3}, got {k}")


def network_vertex_map(n: int, k: int) -> dict[tuple, Level1Network]:
    """Vertex vector -> representative network for BME(n, k)."""
    _check_range(n, k)
    return {network_vector(net): net for net in enumerate_level1_networks(n, k)}


def polytope_vertices(n: int, k: int) -> VPolytope:
    """Vertices of BME(n, k); ``k = 0`` is STSP(n) and ``k = n-3`` is BME(n)."""
    _check_range(n, k)
    if n > 7:
        raise ValueError(f"polytope_vertices supports n <= 7, got {n}")
    return VPolytope.of(network_vertex_map(n, k))


def _pair_vector(n: int, coef: dict[tuple[int, int], int]) -> tuple[int, ...]:
    out = [0] * (n * (n - 1) // 2)
    for (i, j), v in coef.items():
        out[pair_index(i, j, n)] += v
    return tuple(out)


def split_face_inequality(A: Iterable[int], n: int, k: int) -> FacetInequality:
    """``sum_{i<j in A} x_ij <= (|A| - 1) 2^k``."""
    A = tuple(sorted(set(A)))
    if not 2 <= len(A) <= n - 2 or min(A) < 1 or max(A) > n:
        raise ValueError(f"split side {A} must have between 2 and n-2 taxa of 1..{n}")
    coef = {ij: -1 for ij in itertools.combinations(A, 2)}
    return FacetInequality(
        "split", (A, k), LinearFunctional.from_inequality(_pair_vector(n, coef), -(len(A) - 1) * 2**k)
    )


def cherry_facet(a: int, b: int, c: int, n: int) -> FacetInequality:
    """``x_ab + x_bc - x_ac <= 2^(n-3)`` for the cherries {a,b} and {b,c}."""
    if len({a, b, c}) != 3:
        raise ValueError(f"cherry facet needs three distinct taxa, got {(a, b, c)}")
    normal = [0] * (n * (n - 1) // 2)
    normal[pair_index(a, b, n)] -= 1
    normal[pair_index(b, c, n)] -= 1
    normal[pair_index(a, c, n)] += 1
    return FacetInequality("cherry", (a, b, c), LinearFunctional.from_inequality(tuple(normal), -(2 ** (n - 3))))


def caterpillar_facet(i: int, j: int, n: int) -> FacetInequality:
    """``x_ij >= 1``."""
    if i == j:
        raise ValueError("caterpillar facet needs two distinct taxa")
    i, j = sorted((i, j))
    return FacetInequality("caterpillar", (i, j), LinearFunctional.from_inequality(_pair_vector(n, {(i, j): 1}), 1))


def degree_equalities(n: int, k: int) -> list[FacetInequality]:
    """``sum_{i != j} x_ij = 2^(k+1)`` for each taxon ``j``."""
    out = []
    for j in range(1, n + 1):
        coef = {tuple(sorted((i, j))): 1 for i in range(1, n + 1) if i != j}
        out.append(FacetInequality("degree", (j, k), LinearFunctional.from_inequality(_pair_vector(n, coef), 2 ** (k + 1))))
    return out


def relaxed_bme_constraints(n: int) -> tuple[list[FacetInequality], list[FacetInequality]]:
    """(inequalities, equalities) of the relaxed BME polytope, in a fixed order."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    k = n - 3
    ineq: list[FacetInequality] = []
    for s in all_nontrivial_splits(n):
        for side in s.sides:
            ineq.append(split_face_inequality(side, n, k))
    for i, j in pairs(n):
        ineq.append(caterpillar_facet(i, j, n))
    for b in range(1, n + 1):
        for a, c in itertools.combinations([t for t in range(1, n + 1) if t != b], 2):
            ineq.append(cherry_facet(a, b, c, n))
    return ineq, degree_equalities(n, k)


def relaxed_bme(n: int) -> HPolytope:
    """Split, caterpillar and intersecting-cherry half-spaces plus the degree equalities.

    Redundant inequalities are kept; :func:`geometry.irredundant_facets`
    measures which of them are facets.
    """
    ineq, eq = relaxed_bme_constraints(n)
    return HPolytope(
        n * (n - 1) // 2,
        tuple((f.normal, f.bound) for f in ineq),
        tuple((f.normal, f.bound) for f in eq),
    )


def _tight(vertices: Iterable[tuple], f: LinearFunctional) -> tuple[tuple, ...]:
    return tuple(v for v in vertices if f(v) == 0)


def _as_system(S) -> SplitSystem:
    if isinstance(S, Level1Network):
        return sigma_splits(S)
    if isinstance(S, CircularSplitNetwork):
        return S.system
    if isinstance(S, SplitSystem):
        return S
    raise TypeError(f"cannot read a split system from {type(S).__name__}")


def network_face(S: Union[Level1Network, CircularSplitNetwork, SplitSystem], n: int, k: int,
                 vertices: Optional[VPolytope] = None) -> FaceDescriptor:
    """Face of BME(n, k) supported by the unit-weight distance vector of ``S``.

    A :class:`Level1Network` is read through its displayed splits; a split
    system is used as given.  The bound is ``2^(k+1) W(s)``.
    """
    ss = _as_system(S)
    if ss.n != n:
        raise ValueError(f"system is over n={ss.n}, asked for n={n}")
    bridges = S.k if isinstance(S, Level1Network) else len(bridges_of(ss))
    if k > bridges:
        raise ValueError(f"k={k} exceeds the {bridges} bridges of the network")
    w = unit_weighting(ss)
    d = distance_vector(ss, w)
    f = LinearFunctional.from_inequality(d, 2 ** (k + 1) * total_weight(ss, w))
    vp = vertices if vertices is not None else polytope_vertices(n, k)
    return FaceDescriptor(S, f, _tight(vp, f))


def tree_face_map(t: PhyloTree, vertices: Optional[VPolytope] = None) -> FaceDescriptor:
    """Face of BME(n) whose normal is the unit-edge distance vector of ``t``.

    The bound is ``2^(n-2) |E(t)|`` with leaf edges counted in ``|E(t)|``.
    """
    n = t.n
    d = distance_vector(t, unit_weighting(t))
    f = LinearFunctional.from_inequality(d, 2 ** (n - 2) * t.edge_count)
    if vertices is None:
        vertices = VPolytope.of(bme_vector(b) for b in enumerate_binary_trees(n))
    return FaceDescriptor(t, f, _tight(vertices, f))


def ordering_face_map(s: Union[CircularSplitNetwork, SplitSystem]) -> FaceDescriptor:
    """Face of STSP(n) for a circular network: tours consistent with it."""
    ss = _as_system(s)
    if not consistent_orderings(ss):
        raise ValueError(f"split system {ss} is not circular")
    n = ss.n
    w = unit_weighting(ss)
    d = distance_vector(ss, w)
    f = LinearFunctional.from_inequality(d, 2 * total_weight(ss, w))
    stsp = VPolytope.of(incidence_vector(c) for c in all_orderings(n))
    return FaceDescriptor(s, f, _tight(stsp, f))


def circular_systems(n: int) -> list[SplitSystem]:
    """Every circular split system on ``[n]`` (the empty one included)."""
    out = set()
    for c in all_orderings(n):
        diags = c.diagonals()
        for r in range(len(diags) + 1):
            for sub in itertools.combinations(diags, r):
                out.add(frozenset(sub))
    return sorted((SplitSystem(n, s) for s in out), key=lambda s: (len(s), sorted(x.sort_key() for x in s.splits)))


def csn_f_vector(n: int) -> list[int]:
    """Simplex counts of the CSN link, simplices identified by split set."""
    if not 4 <= n <= 6:
        raise ValueError(f"csn_f_vector supports 4 <= n <= 6, got {n}")
    top = n * (n - 3) // 2
    counts = [0] * top
    for ss in circular_systems(n):
        if len(ss):
            counts[len(ss) - 1] += 1
    return counts


def csn_polygon_counts(n: int) -> list[int]:
    """Counts of (labeled n-gon, diagonal set) pairs, no identification."""
    if not 4 <= n <= 6:
        raise ValueError(f"csn_polygon_counts supports 4 <= n <= 6, got {n}")
    top = n * (n - 3) // 2
    from math import comb

    return [len(all_orderings(n)) * comb(top, j + 1) for j in range(top)]


def chamber_overlap(c1: CircularOrdering, c2: CircularOrdering) -> int:
    """Dimension of the face shared by two chambers: common diagonals minus one."""
    if c1 == c2:
        raise ValueError("chamber_overlap needs two distinct ordering classes")
    if c1.n != c2.n:
        raise ValueError("orderings over different taxon sets")
    return len(set(c1.diagonals()) & set(c2.diagonals())) - 1
