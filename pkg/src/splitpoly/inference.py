"""Balanced minimum evolution by exhaustive search and by LP over the relaxation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Literal, Mapping, Optional, Sequence

from .geometry import HPolytope, lp_solve, vertex_enumerate
from .networks import PhyloTree, enumerate_binary_trees, max_tree_n
from .polytopes import FacetInequality, relaxed_bme, relaxed_bme_constraints
from .splits import Split, distance_vector
from .vectors import bme_vector, tree_from_vector

__all__ = [
    "InferenceResult",
    "TrialOutcome",
    "ConsistencyReport",
    "bme_exact",
    "polysplit",
    "random_weighting",
    "consistency_trial",
]


@dataclass(frozen=True)
class InferenceResult:
    status: Literal["tree", "fractional", "enumerated-fallback"]
    tree: Optional[PhyloTree]
    value: Fraction
    point: tuple
    certificate: tuple[FacetInequality, ...] = ()
    ties: tuple[PhyloTree, ...] = ()
    lower_bound: Optional[Fraction] = None


def _taxa_count(d: Sequence, n: Optional[int]) -> int:
    m = 2
    while m * (m - 1) // 2 < len(d):
        m += 1
    if m * (m - 1) // 2 != len(d):
        raise ValueError(f"a pair vector cannot have length {len(d)}")
    if n is not None and n != m:
        raise ValueError(f"pair vector of length {len(d)} does not match n={n}")
    return m


def _check_positive(d: Sequence) -> None:
    for v in d:
        if v <= 0:
            raise ValueError(f"distance vector entries must be positive, got {v}")


def bme_exact(d: Sequence[Rational], n: Optional[int] = None) -> InferenceResult:
    """Minimize ``d . x(t)`` over every binary tree; ties come back in canonical order."""
    n = _taxa_count(d, n)
    if n > max_tree_n():
        raise ValueError(f"bme_exact supports n <= {max_tree_n()}, got {n}")
    _check_positive(d)
    best, ties = None, []
    for t in enumerate_binary_trees(n):
        v = sum(Fraction(a) * b for a, b in zip(d, bme_vector(t)))
        if best is None or v < best:
            best, ties = v, [t]
        elif v == best:
            ties.append(t)
    t = ties[0]
    return InferenceResult("tree", t, best, bme_vector(t), ties=tuple(ties))


@lru_cache(maxsize=None)
def _relaxation(n: int) -> tuple[HPolytope, tuple[FacetInequality, ...]]:
    ineq, _ = relaxed_bme_constraints(n)
    return relaxed_bme(n), tuple(ineq)


def _optimal_face(p: HPolytope, d: Sequence, value: Fraction) -> HPolytope:
    return HPolytope(p.dim, p.inequalities, p.equalities + ((tuple(d), value),))


def _lexmin_on_face(face: HPolytope) -> tuple:
    """Lexicographically smallest point of ``face``."""
    point = None
    for q in range(face.dim):
        e = tuple(1 if r == q else 0 for r in range(face.dim))
        res = lp_solve(face, e, "min")
        if res.status != "optimal":
            raise RuntimeError(f"optimal face became {res.status}")
        point = res.point
        if res.unique:
            break
        face = HPolytope(face.dim, face.inequalities, face.equalities + ((e, res.value),))
    return point


def _tree_vertices(face: HPolytope) -> list[tuple[PhyloTree, tuple]]:
    found = []
    for v in vertex_enumerate(face).vertices:
        t = tree_from_vector(v)
        if t is not None:
            found.append((t, v))
    return sorted(found, key=lambda tv: sorted(s.sort_key() for s in tv[0].splits))


def polysplit(d: Sequence[Rational], n: Optional[int] = None, fallback: bool = False) -> InferenceResult:
    """Minimize ``d . x`` over the relaxed BME polytope and read off a tree.

    When the optimum is not unique the vertices of the optimal face are
    enumerated; tree vertices there are returned (all of them as ``ties``).
    If the face has no tree vertex the result is ``fractional`` at the
    lexicographically smallest optimal point, and its value is a lower
    bound for the BME objective.  With ``fallback`` the exhaustive answer
    is returned instead.
    """
    n = _taxa_count(d, n)
    _check_positive(d)
    p, ineq = _relaxation(n)
    res = lp_solve(p, d, "min")
    if res.status != "optimal":
        raise RuntimeError(f"relaxed BME LP is {res.status}; tree vectors are always feasible")
    ties: tuple[PhyloTree, ...] = ()
    if res.unique:
        point = res.point
        t = tree_from_vector(point)
    else:
        face = _optimal_face(p, d, res.value)
        found = _tree_vertices(face)
        if found:
            t, point = found[0]
            ties = tuple(tv[0] for tv in found)
        else:
            t, point = None, _lexmin_on_face(face)
    cert = tuple(f for f in ineq if f.tight(point))
    if t is not None:
        return InferenceResult("tree", t, res.value, point, cert, ties, res.value)
    if fallback and n <= max_tree_n():
        ex = bme_exact(d, n)
        return InferenceResult("enumerated-fallback", ex.tree, ex.value, ex.point, cert, ex.ties, res.value)
    return InferenceResult("fractional", None, res.value, point, cert, lower_bound=res.value)


def random_weighting(t: PhyloTree, rng: random.Random, top: int = 20) -> dict[Split, Fraction]:
    """Positive rational weights ``p/q`` with ``1 <= p, q <= top`` on every split of ``t``."""
    return {s: Fraction(rng.randint(1, top), rng.randint(1, top)) for s in t.all_splits()}


@dataclass(frozen=True)
class TrialOutcome:
    weights: Mapping[Split, Fraction]
    bme_value: Fraction
    bme_recovered: bool
    tie: bool
    polysplit_status: Optional[str] = None
    polysplit_value: Optional[Fraction] = None
    polysplit_recovered: Optional[bool] = None

    @property
    def recovered(self) -> bool:
        return self.bme_recovered and self.polysplit_recovered is not False


@dataclass
class ConsistencyReport:
    tree: PhyloTree
    seed: int
    outcomes: list[TrialOutcome] = field(default_factory=list)

    @property
    def successes(self) -> int:
        return sum(o.recovered for o in self.outcomes)

    def __str__(self) -> str:
        return f"{self.successes}/{len(self.outcomes)} recovered (seed {self.seed})"


def consistency_trial(
    t: PhyloTree,
    w: Optional[Mapping[Split, Rational]] = None,
    trials: int = 1,
    seed: int = 0,
    run_polysplit: bool = True,
) -> ConsistencyReport:
    """Check that both methods recover ``t`` from its own additive distances.

    The first trial uses ``w`` when given; the others draw weights from a
    ``random.Random(seed)`` stream.  A trial whose exhaustive optimum is not
    unique is flagged as a tie and counts as recovered when ``t`` is among
    the tied trees.
    """
    if not t.binary:
        raise ValueError("consistency_trial needs a binary tree")
    rng = random.Random(seed)
    report = ConsistencyReport(t, seed)
    for i in range(trials):
        weights = dict(w) if (i == 0 and w is not None) else random_weighting(t, rng)
        d = distance_vector(t, weights)
        ex = bme_exact(d, t.n)
        tie = len(ex.ties) > 1
        outcome = dict(
            weights=weights,
            bme_value=ex.value,
            bme_recovered=t in ex.ties,
            tie=tie,
        )
        if run_polysplit:
            ps = polysplit(d, t.n)
            outcome.update(
                polysplit_status=ps.status,
                polysplit_value=ps.value,
                polysplit_recovered=(ps.tree in ex.ties) if tie else (ps.tree == t),
            )
        report.outcomes.append(TrialOutcome(**outcome))
    return report
