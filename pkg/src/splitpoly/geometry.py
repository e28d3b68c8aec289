"""Exact rational polytope machinery for desk-scale instances.

Everything here works over :class:`fractions.Fraction` and Python ints; no
floating point is used.  Polytopes with equality constraints are handled in
an affine chart: the equalities are put in reduced row echelon form and the
non-pivot coordinates become chart coordinates, so the chart of an integer
polytope is again integral.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Literal, Optional, Sequence

__all__ = [
    "GeometryError",
    "InfeasibleError",
    "UnboundedError",
    "LinearFunctional",
    "HPolytope",
    "VPolytope",
    "LPResult",
    "lp_solve",
    "affine_rank",
    "rank",
    "affine_hull_equalities",
    "facet_sieve",
    "hull_h_polytope",
    "vertex_enumerate",
    "is_vertex_of",
    "optimal_face",
    "irredundant_facets",
    "tight_indices",
]

Vector = tuple  # tuple of rationals


class GeometryError(ValueError):
    pass


class InfeasibleError(GeometryError):
    pass


class UnboundedError(GeometryError):
    pass


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b) if x and y)


def _integral(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row with the same direction."""
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    out = [int(v * den) for v in row]
    g = 0
    for v in out:
        g = math.gcd(g, v)
    return [v // g for v in out] if g > 1 else out


@dataclass(frozen=True)
class LinearFunctional:
    """``x -> coefficients . x + offset``; as a constraint it means ``>= 0``."""

    coefficients: Vector
    offset: Fraction = Fraction(0)

    @classmethod
    def from_inequality(cls, normal: Sequence, bound) -> "LinearFunctional":
        """The functional of ``normal . x >= bound``."""
        return cls(tuple(normal), -Fraction(bound))

    @property
    def normal(self) -> Vector:
        return self.coefficients

    @property
    def bound(self) -> Fraction:
        return -Fraction(self.offset)

    def __call__(self, x: Sequence):
        return _dot(self.coefficients, x) + self.offset


@dataclass(frozen=True)
class HPolytope:
    """``{x : a.x >= b for (a, b) in inequalities, e.x = f for (e, f) in equalities}``."""

    dim: int
    inequalities: tuple[tuple[Vector, Rational], ...] = ()
    equalities: tuple[tuple[Vector, Rational], ...] = ()

    def __post_init__(self) -> None:
        for a, _ in self.inequalities + self.equalities:
            if len(a) != self.dim:
                raise GeometryError(f"constraint of length {len(a)} in a polytope of dimension {self.dim}")

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) >= b for a, b in self.inequalities) and all(
            _dot(e, x) == f for e, f in self.equalities
        )


@dataclass(frozen=True)
class VPolytope:
    """A vertex list, deduplicated and sorted."""

    vertices: tuple[Vector, ...]

    @classmethod
    def of(cls, points: Iterable[Sequence]) -> "VPolytope":
        return cls(tuple(sorted({tuple(p) for p in points})))

    @property
    def dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True)
class LPResult:
    status: Literal["optimal", "unbounded", "infeasible"]
    value: Optional[Fraction] = None
    point: Optional[Vector] = None
    active: tuple[int, ...] = ()
    unique: bool = False


# ---------------------------------------------------------------- linear algebra


def rank(rows: Iterable[Sequence]) -> int:
    """Exact rank of a rational matrix (fraction-free integer elimination)."""
    mat = [_integral(r) for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r]
        pv = p[col]
        for i in range(r + 1, len(mat)):
            f = mat[i][col]
            if f:
                row = [pv * a - f * b for a, b in zip(mat[i], p)]
                g = 0
                for v in row:
                    g = math.gcd(g, v)
                mat[i] = [v // g for v in row] if g > 1 else row
        r += 1
        if r == len(mat):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise GeometryError("affine_rank of an empty point list")
    p0 = points[0]
    return rank([[Fraction(a) - b for a, b in zip(p, p0)] for p in points[1:]])


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    mat = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r] + [m for m in mat[r:] if any(m)], pivots


def _nullspace(rows: list[Sequence], ncols: int) -> list[list[Fraction]]:
    red, pivots = _rref([list(r) for r in rows], ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _det(mat: list[list[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    m = [row[:] for row in mat]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def _normal_of(rows: list[list[int]], d: int) -> list[int]:
    """Generalized cross product of ``d-1`` integer vectors in ``Z^d``."""
    out = []
    for j in range(d):
        minor = [r[:j] + r[j + 1 :] for r in rows]
        out.append((-1) ** j * _det(minor))
    g = 0
    for v in out:
        g = math.gcd(g, v)
    return [v // g for v in out] if g > 1 else out


def affine_hull_equalities(points: Sequence[Sequence]) -> list[tuple[Vector, Fraction]]:
    """Equalities ``(w, w.p0)`` cutting out the affine hull of the points."""
    p0 = [Fraction(v) for v in points[0]]
    diffs = [[Fraction(a) - b for a, b in zip(p, p0)] for p in points[1:]]
    out = []
    for w in _nullspace(diffs, len(p0)):
        w = _integral(w)
        out.append((tuple(w), _dot(w, p0)))
    return out


# ---------------------------------------------------------------- affine charts


@dataclass
class _Chart:
    """``x = base + sum_f coef[p][f] * y_f`` with ``y = x[free]``."""

    dim: int
    free: list[int]
    base: list[Fraction]
    expr: dict[int, dict[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def from_equalities(cls, dim: int, equalities: Sequence[tuple[Sequence, Rational]]) -> "_Chart":
        if not equalities:
            return cls(dim, list(range(dim)), [Fraction(0)] * dim)
        rows = [list(e) + [f] for e, f in equalities]
        red, pivots = _rref(rows, dim + 1)
        if dim in pivots:
            raise InfeasibleError("equality constraints are inconsistent")
        free = [c for c in range(dim) if c not in pivots]
        base = [Fraction(0)] * dim
        expr: dict[int, dict[int, Fraction]] = {}
        for row, p in zip(red, pivots):
            base[p] = row[dim]
            expr[p] = {f: -row[f] for f in free if row[f]}
        return cls(dim, free, base, expr)

    @property
    def d(self) -> int:
        return len(self.free)

    def lift(self, y: Sequence) -> tuple:
        x = list(self.base)
        for yi, f in zip(y, self.free):
            x[f] = Fraction(yi)
        for p, coefs in self.expr.items():
            x[p] = self.base[p] + sum((c * x[f] for f, c in coefs.items()), Fraction(0))
        return tuple(x)

    def pull(self, normal: Sequence, bound) -> tuple[list[Fraction], Fraction]:
        """Rewrite ``normal . x >= bound`` as ``a . y >= b`` in chart coordinates."""
        a = {f: Fraction(normal[f]) for f in self.free}
        b = Fraction(bound) - _dot(normal, self.base)
        for p, coefs in self.expr.items():
            if normal[p]:
                for f, c in coefs.items():
                    a[f] += normal[p] * c
        return [a[f] for f in self.free], b


def _chart_system(p: HPolytope) -> tuple[_Chart, list[list[Fraction]], list[Fraction]]:
    chart = _Chart.from_equalities(p.dim, p.equalities)
    rows, rhs = [], []
    for a, b in p.inequalities:
        ay, by = chart.pull(a, b)
        rows.append(ay)
        rhs.append(by)
    return chart, rows, rhs


# ---------------------------------------------------------------- simplex


class _Dictionary:
    """Simplex dictionary ``x_B = beta + alpha . x_N`` with Bland's rule.

    Variables ``0..m-1`` are slacks (``>= 0``), ``m..m+d-1`` are free chart
    coordinates, ``m+d`` is the phase-one auxiliary.
    """

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction]):
        self.m = len(rows)
        self.d = len(rows[0]) if rows else 0
        self.basis = list(range(self.m))
        self.nonbasic = [self.m + j for j in range(self.d)]
        self.beta = [-b for b in rhs]
        self.alpha = [list(r) for r in rows]
        self.obj0 = Fraction(0)
        self.obj: list[Fraction] = [Fraction(0)] * self.d

    def is_free(self, var: int) -> bool:
        return self.m <= var < self.m + self.d

    def pivot(self, r: int, j: int) -> None:
        a = self.alpha[r][j]
        row = [-v / a for v in self.alpha[r]]
        row[j] = 1 / a
        beta_r = -self.beta[r] / a
        self.alpha[r], self.beta[r] = row, beta_r
        for i in range(len(self.alpha)):
            if i == r:
                continue
            f = self.alpha[i][j]
            if f:
                ri = self.alpha[i]
                for k, v in enumerate(row):
                    if v:
                        ri[k] = f * v if k == j else ri[k] + f * v
                self.beta[i] += f * beta_r
        f = self.obj[j]
        if f:
            for k, v in enumerate(row):
                if v:
                    self.obj[k] = f * v if k == j else self.obj[k] + f * v
            self.obj0 += f * beta_r
        self.basis[r], self.nonbasic[j] = self.nonbasic[j], self.basis[r]

    def pivot_in_free(self) -> None:
        while True:
            moved = False
            for j, var in enumerate(self.nonbasic):
                if not self.is_free(var):
                    continue
                rows = [r for r in range(len(self.basis)) if not self.is_free(self.basis[r]) and self.alpha[r][j]]
                if rows:
                    self.pivot(min(rows, key=lambda r: self.basis[r]), j)
                    moved = True
            if not moved:
                return

    def bland(self) -> bool:
        """Maximize the objective row; False if unbounded."""
        while True:
            cands = [j for j, c in enumerate(self.obj) if c > 0 and not self.is_free(self.nonbasic[j])]
            if any(c and self.is_free(self.nonbasic[j]) for j, c in enumerate(self.obj)):
                return False
            if not cands:
                return True
            j = min(cands, key=lambda j: self.nonbasic[j])
            best = None
            for r, var in enumerate(self.basis):
                if self.is_free(var):
                    continue
                a = self.alpha[r][j]
                if a < 0:
                    key = (self.beta[r] / -a, var)
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], j)

    def set_objective(self, coefs: dict[int, Fraction], const: Fraction) -> None:
        """Install ``const + sum coefs[var] * var`` expressed over nonbasics."""
        self.obj0 = Fraction(const)
        self.obj = [Fraction(0)] * len(self.nonbasic)
        pos = {v: j for j, v in enumerate(self.nonbasic)}
        for var, c in coefs.items():
            if not c:
                continue
            if var in pos:
                self.obj[pos[var]] += c
            else:
                r = self.basis.index(var)
                self.obj0 += c * self.beta[r]
                for k, v in enumerate(self.alpha[r]):
                    if v:
                        self.obj[k] += c * v

    def feasible(self) -> bool:
        """Phase one with a single auxiliary variable."""
        bad = [r for r, var in enumerate(self.basis) if not self.is_free(var) and self.beta[r] < 0]
        if not bad:
            return True
        aux = self.m + self.d
        for r, var in enumerate(self.basis):
            self.alpha[r].append(Fraction(0) if self.is_free(var) else Fraction(1))
        self.nonbasic.append(aux)
        self.obj = [Fraction(0)] * (len(self.nonbasic) - 1) + [Fraction(-1)]
        self.obj0 = Fraction(0)
        j = len(self.nonbasic) - 1
        r = min(bad, key=lambda r: (self.beta[r], self.basis[r]))
        self.pivot(r, j)
        self.bland()
        if self.obj0 < 0:
            return False
        if aux in self.basis:
            r = self.basis.index(aux)
            j = next((j for j, v in enumerate(self.alpha[r]) if v), None)
            if j is None:
                del self.basis[r], self.alpha[r], self.beta[r]
            else:
                self.pivot(r, j)
        j = self.nonbasic.index(aux)
        del self.nonbasic[j]
        for row in self.alpha:
            del row[j]
        self.obj = [Fraction(0)] * len(self.nonbasic)
        self.obj0 = Fraction(0)
        return True

    def free_values(self) -> list[Fraction]:
        y = [Fraction(0)] * self.d
        for r, var in enumerate(self.basis):
            if self.is_free(var):
                y[var - self.m] = self.beta[r]
        return y


def tight_indices(p: HPolytope, x: Sequence) -> tuple[int, ...]:
    return tuple(i for i, (a, b) in enumerate(p.inequalities) if _dot(a, x) == b)


def lp_solve(p: HPolytope, objective: LinearFunctional | Sequence, sense: str = "min") -> LPResult:
    """Exact two-phase simplex with Bland's rule over an H-polytope."""
    if isinstance(objective, LinearFunctional):
        c, off = list(objective.coefficients), Fraction(objective.offset)
    else:
        c, off = list(objective), Fraction(0)
    if len(c) != p.dim:
        raise GeometryError(f"objective of length {len(c)} for a polytope of dimension {p.dim}")
    if sense not in ("min", "max"):
        raise GeometryError(f"sense must be 'min' or 'max', got {sense!r}")
    try:
        chart, rows, rhs = _chart_system(p)
    except InfeasibleError:
        return LPResult("infeasible")
    d = chart.d
    if d == 0:
        x = chart.lift([])
        if not p.contains(x):
            return LPResult("infeasible")
        return LPResult("optimal", _dot(c, x) + off, x, tight_indices(p, x), True)
    if not rows:
        rows, rhs = [[Fraction(0)] * d], [Fraction(0)]
    dic = _Dictionary(rows, rhs)
    dic.pivot_in_free()
    if not dic.feasible():
        return LPResult("infeasible")
    # objective in chart coordinates
    cy, _ = chart.pull(c, 0)
    sign = 1 if sense == "max" else -1
    dic.set_objective({dic.m + j: sign * v for j, v in enumerate(cy)}, Fraction(0))
    if not dic.bland():
        return LPResult("unbounded")
    y = dic.free_values()
    x = chart.lift(y)
    unique = all(v < 0 for j, v in enumerate(dic.obj) if not dic.is_free(dic.nonbasic[j])) and not any(
        dic.is_free(v) for v in dic.nonbasic
    )
    return LPResult("optimal", _dot(c, x) + off, x, tight_indices(p, x), unique)


# ---------------------------------------------------------------- facets and vertices


def _chart_of_points(points: Sequence[Sequence]) -> tuple[list[int], list[list[int]], int]:
    """Coordinates on which the points' affine hull projects bijectively.

    Returns the chosen coordinate indices, the projected points scaled to a
    common integer lattice, and the scale factor.
    """
    p0 = points[0]
    diffs = [[Fraction(a) - b for a, b in zip(p, p0)] for p in points[1:]]
    _, pivots = _rref(diffs, len(p0)) if diffs else ([], [])
    proj = [[Fraction(p[j]) for j in pivots] for p in points]
    den = 1
    for row in proj:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    return pivots, [[int(v * den) for v in row] for row in proj], den


def facet_sieve(vp: VPolytope | Sequence[Sequence]) -> list[LinearFunctional]:
    """Facet inequalities of the convex hull of a small vertex set.

    Each returned functional is ``>= 0`` on all vertices, vanishes on a set
    of affine rank ``dim - 1``, has a primitive integer normal supported on
    the chart coordinates, and the list is sorted lexicographically.
    """
    pts = list(vp.vertices if isinstance(vp, VPolytope) else VPolytope.of(vp).vertices)
    if not pts:
        raise GeometryError("facet_sieve of an empty vertex set")
    coords, y, scale = _chart_of_points(pts)
    d = len(coords)
    if d == 0:
        raise GeometryError("facet_sieve needs a polytope of positive dimension")
    nv = len(pts)
    found: dict[int, tuple[list[int], int]] = {}
    masks: list[int] = []
    for combo in itertools.combinations(range(nv), d):
        cmask = 0
        for i in combo:
            cmask |= 1 << i
        if any(cmask & m == cmask for m in masks):
            continue
        base = y[combo[0]]
        diffs = [[a - b for a, b in zip(y[i], base)] for i in combo[1:]]
        normal = _normal_of(diffs, d)
        if not any(normal):
            continue
        h0 = _dot(normal, base)
        vals = [_dot(normal, q) for q in y]
        if all(v >= h0 for v in vals):
            pass
        elif all(v <= h0 for v in vals):
            normal, h0, vals = [-v for v in normal], -h0, [-v for v in vals]
        else:
            continue
        tmask = 0
        for i, v in enumerate(vals):
            if v == h0:
                tmask |= 1 << i
        if tmask not in found:
            found[tmask] = (normal, h0)
            masks.append(tmask)
    out = []
    for normal, h0 in found.values():
        full = [0] * len(pts[0])
        for j, v in zip(coords, normal):
            full[j] = v
        out.append(LinearFunctional(tuple(full), -Fraction(h0, scale)))
    return sorted(out, key=lambda f: (f.coefficients, f.offset))


def hull_h_polytope(vp: VPolytope | Sequence[Sequence]) -> HPolytope:
    """H-description (facets plus affine-hull equalities) of a vertex set."""
    pts = list(vp.vertices if isinstance(vp, VPolytope) else vp)
    facets = facet_sieve(pts)
    return HPolytope(
        len(pts[0]),
        tuple((f.normal, f.bound) for f in facets),
        tuple(affine_hull_equalities(pts)),
    )


def _dedup_chart_rows(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[tuple[list[int], Fraction]]:
    seen = {}
    for a, b in zip(rows, rhs):
        if not any(a):
            if b > 0:
                raise InfeasibleError("constraint 0 >= positive")
            continue
        ia = _integral(a)
        # scale factor mapping a to ia
        k = next(Fraction(u) / v for u, v in zip(ia, a) if v)
        key = tuple(ia)
        bound = b * k
        if key not in seen or bound > seen[key]:
            seen[key] = bound
    return [(list(k), v) for k, v in sorted(seen.items())]


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _cone_rays(rows: list[list[int]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{r : a . r >= 0 for a in rows}``.

    Double description: start from the simplicial cone of ``d`` independent
    rows and add the others one at a time, combining adjacent ray pairs.
    """
    basis: list[int] = []
    for i, a in enumerate(rows):
        if rank([rows[j] for j in basis] + [a]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise GeometryError("cone is not pointed")
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []
    for i in basis:
        others = [rows[j] for j in basis if j != i]
        r = _normal_of(others, d) if others else [1]
        if _dot(rows[i], r) < 0:
            r = [-x for x in r]
        rays.append((tuple(r), frozenset(j for j in basis if j != i)))
    for k, a in enumerate(rows):
        if k in basis:
            continue
        vals = [_dot(a, r) for r, _ in rays]
        pos = [ray for ray, v in zip(rays, vals) if v > 0]
        neg = [(ray, v) for ray, v in zip(rays, vals) if v < 0]
        new = pos + [(r, z | {k}) for (r, z), v in zip(rays, vals) if v == 0]
        for (rp, zp), vp in ((ray, v) for ray, v in zip(rays, vals) if v > 0):
            for (rn, zn), vn in neg:
                common = zp & zn
                if len(common) < d - 2:
                    continue
                if any(common <= z for r, z in rays if r != rp and r != rn):
                    continue
                w = _primitive([vp * x - vn * y for x, y in zip(rn, rp)])
                new.append((w, common | {k}))
        rays = new
    return sorted({r for r, _ in rays})


def vertex_enumerate(p: HPolytope) -> VPolytope:
    """All vertices of a bounded H-polytope.

    Walks the vertex graph from an initial simplex vertex.  At each vertex
    the extreme rays of the tangent cone are computed by double description
    over the tight constraints and followed to the next vertex by an
    exact ratio test; a ray that never leaves the polytope means the
    polytope is unbounded.
    """
    chart, rows, rhs = _chart_system(p)
    d = chart.d
    if d == 0:
        x = chart.lift([])
        if not p.contains(x):
            raise InfeasibleError("polytope is empty")
        return VPolytope.of([x])
    cons = _dedup_chart_rows(rows, rhs)
    start = lp_solve(p, [0] * p.dim)
    if start.status != "optimal":
        raise InfeasibleError("polytope is empty")
    y0 = tuple(start.point[f] for f in chart.free)
    seen = {y0}
    queue = [y0]
    while queue:
        v = queue.pop()
        slack = [_dot(a, v) - b for a, b in cons]
        tight = [i for i, s in enumerate(slack) if s == 0]
        if rank(cons[i][0] for i in tight) < d:
            raise GeometryError(f"internal: point {v} is not a vertex")
        rays = _cone_rays([cons[i][0] for i in tight], d)
        for r in sorted(rays):
            step = None
            for (a, _), s in zip(cons, slack):
                ar = _dot(a, r)
                if ar < 0:
                    t = s / -ar
                    if step is None or t < step:
                        step = t
            if step is None:
                raise UnboundedError(f"polytope is unbounded along ray {r}")
            w = tuple(Fraction(vi) + step * ri for vi, ri in zip(v, r))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return VPolytope.of(chart.lift(y) for y in seen)


def is_vertex_of(x: Sequence, p: HPolytope) -> bool:
    """True iff ``x`` is feasible and its tight constraints have full rank."""
    if len(x) != p.dim or not p.contains(x):
        return False
    tight = [a for a, b in p.inequalities if _dot(a, x) == b] + [e for e, _ in p.equalities]
    return rank(tight) == p.dim


def optimal_face(vp: VPolytope | Sequence[Sequence], objective: LinearFunctional | Sequence) -> list[Vector]:
    """Vertices attaining the minimum of the objective."""
    pts = list(vp.vertices if isinstance(vp, VPolytope) else vp)
    if not pts:
        raise GeometryError("optimal_face of an empty vertex set")
    f = objective if isinstance(objective, LinearFunctional) else LinearFunctional(tuple(objective))
    vals = [f(q) for q in pts]
    best = min(vals)
    return [q for q, v in zip(pts, vals) if v == best]


def irredundant_facets(p: HPolytope, vertices: Sequence[Sequence] | VPolytope) -> list[list[int]]:
    """Group the inequalities of ``p`` by the facet they define.

    Returns one list of inequality indices per facet: inequalities whose
    tight vertex set has affine rank ``dim - 1`` and is shared.
    """
    pts = list(vertices.vertices if isinstance(vertices, VPolytope) else vertices)
    dim = affine_rank(pts)
    groups: dict[frozenset[int], list[int]] = {}
    for idx, (a, b) in enumerate(p.inequalities):
        tight = frozenset(i for i, q in enumerate(pts) if _dot(a, q) == b)
        if not tight or len(tight) == len(pts):
            continue
        if tight in groups:
            groups[tight].append(idx)
        elif affine_rank([pts[i] for i in sorted(tight)]) == dim - 1:
            groups[tight] = [idx]
    return sorted(groups.values())
