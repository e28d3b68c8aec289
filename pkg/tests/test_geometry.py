from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from splitpoly.geometry import (
    GeometryError,
    HPolytope,
    LinearFunctional,
    UnboundedError,
    VPolytope,
    affine_rank,
    facet_sieve,
    hull_h_polytope,
    is_vertex_of,
    lp_solve,
    optimal_face,
    rank,
    vertex_enumerate,
)
from splitpoly.networks import enumerate_binary_trees
from splitpoly.polytopes import polytope_vertices, relaxed_bme
from splitpoly.vectors import bme_vector

BME4 = [bme_vector(t) for t in enumerate_binary_trees(4)]
BME5 = [bme_vector(t) for t in enumerate_binary_trees(5)]
STSP5 = list(polytope_vertices(5, 0).vertices)


def cube(d):
    ineq = []
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        ineq.append((e, 0))
        ineq.append((tuple(-v for v in e), -1))
    return HPolytope(d, tuple(ineq))


def in_hull_of_others(q, pts):
    """Independent LP test: is q a convex combination of the other points?"""
    others = [p for p in pts if p != q]
    if not others:
        return False
    m = len(others)
    eq = [(tuple([1] * m), 1)]
    for i in range(len(q)):
        eq.append((tuple(p[i] for p in others), q[i]))
    ineq = [(tuple(1 if j == i else 0 for j in range(m)), 0) for i in range(m)]
    return lp_solve(HPolytope(m, tuple(ineq), tuple(eq)), [0] * m).status == "optimal"


points3 = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=4, max_size=9, unique=True)


class TestRank:
    def test_examples(self):
        assert affine_rank([(1, 2, 3)]) == 0
        assert affine_rank(BME4) == 2
        assert affine_rank(STSP5) == 5

    def test_rank_fractions(self):
        assert rank([(Fraction(1, 2), 1), (1, 2)]) == 1
        assert rank([(0, 0), (0, 0)]) == 0

    def test_empty_rejected(self):
        with pytest.raises(GeometryError):
            affine_rank([])


class TestLP:
    def test_min_x12_relaxed_bme4(self):
        res = lp_solve(relaxed_bme(4), [1, 0, 0, 0, 0, 0])
        assert res.status == "optimal" and res.value == 1

    def test_tree_face_over_bme4_hull(self):
        res = lp_solve(hull_h_polytope(BME4), [2, 3, 3, 3, 3, 2])
        assert res.value == 20 and res.point == (2, 1, 1, 1, 1, 2) and res.unique

    def test_zero_objective(self):
        res = lp_solve(cube(3), [0, 0, 0], "max")
        assert res.status == "optimal" and res.value == 0

    def test_statuses(self):
        half = HPolytope(2, (((1, 0), 0),))
        assert lp_solve(half, [-1, 0]).status == "unbounded"
        empty = HPolytope(1, (((1,), 1), ((-1,), 0)))
        assert lp_solve(empty, [1]).status == "infeasible"
        bad_eq = HPolytope(2, (), (((1, 1), 1), ((2, 2), 3)))
        assert lp_solve(bad_eq, [1, 0]).status == "infeasible"

    def test_free_variable_with_equality(self):
        p = HPolytope(3, (((0, 0, 1), 0), ((0, 0, -1), -2)), (((1, 1, 0), 4), ((1, -1, 0), 0)))
        res = lp_solve(p, [0, 0, 1], "max")
        assert res.point == (2, 2, 2) and res.value == 2

    def test_offset_in_value(self):
        res = lp_solve(cube(2), LinearFunctional((1, 1), Fraction(5)), "max")
        assert res.value == 7

    def test_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            lp_solve(cube(2), [1, 2, 3])

    @settings(max_examples=40, deadline=None)
    @given(points3, st.tuples(*[st.integers(-5, 5)] * 3))
    def test_matches_vertex_minimum(self, pts, obj):
        if affine_rank(pts) == 0:
            return
        hp = hull_h_polytope(pts)
        res = lp_solve(hp, obj)
        brute = min(sum(a * b for a, b in zip(obj, p)) for p in pts)
        assert res.status == "optimal" and res.value == brute
        assert hp.contains(res.point)


class TestFacetSieve:
    def test_triangle(self):
        assert len(facet_sieve(BME4)) == 3

    def test_bme5(self):
        assert len(facet_sieve(BME5)) == 52

    def test_stsp5_matches_h_side(self):
        facets = facet_sieve(STSP5)
        assert len(facets) == 20
        assert sorted(vertex_enumerate(hull_h_polytope(STSP5)).vertices) == sorted(STSP5)

    def test_facets_have_codimension_one(self):
        for f in facet_sieve(BME5):
            tight = [v for v in BME5 if f(v) == 0]
            assert affine_rank(tight) == 4
            assert all(f(v) >= 0 for v in BME5)

    def test_normals_primitive_integer(self):
        from math import gcd

        for f in facet_sieve(BME5):
            g = 0
            for v in f.normal:
                assert Fraction(v).denominator == 1
                g = gcd(g, int(v))
            assert g == 1

    def test_point_rejected(self):
        with pytest.raises(GeometryError):
            facet_sieve([(1, 2)])

    @settings(max_examples=30, deadline=None)
    @given(points3)
    def test_round_trip_extreme_points(self, pts):
        if affine_rank(pts) == 0:
            return
        extreme = sorted(tuple(Fraction(v) for v in p) for p in pts if not in_hull_of_others(p, pts))
        assert sorted(vertex_enumerate(hull_h_polytope(pts)).vertices) == extreme


class TestVertexEnumerate:
    def test_cube(self):
        vp = vertex_enumerate(cube(3))
        assert sorted(vp.vertices) == sorted(product((0, 1), repeat=3))

    def test_bme_round_trips(self):
        for verts in (BME4, BME5, list(polytope_vertices(4, 0).vertices), STSP5):
            assert sorted(vertex_enumerate(hull_h_polytope(verts)).vertices) == sorted(verts)

    def test_relaxed_bme5(self):
        vp = vertex_enumerate(relaxed_bme(5))
        assert len(vp) == 27
        assert sum(v in set(BME5) for v in vp.vertices) == 15

    def test_unbounded(self):
        with pytest.raises(UnboundedError):
            vertex_enumerate(HPolytope(2, (((1, 0), 0), ((0, 1), 0))))

    def test_single_point(self):
        p = HPolytope(2, (), (((1, 0), 3), ((0, 1), 4)))
        assert vertex_enumerate(p).vertices == ((3, 4),)

    def test_degenerate_apex(self):
        # square pyramid: the apex has four tight facets in dimension 3
        ineq = (((0, 0, 1), 0), ((0, 1, -1), -1), ((0, -1, -1), -1), ((1, 0, -1), -1), ((-1, 0, -1), -1))
        ineq = tuple((a, b) for a, b in ineq)
        vp = vertex_enumerate(HPolytope(3, ineq))
        assert len(vp) == 5 and (0, 0, 1) in vp.vertices


class TestVertexTests:
    def test_tree_is_vertex_of_relaxation(self):
        assert is_vertex_of((2, 1, 1, 1, 1, 2), relaxed_bme(4))

    def test_barycenter_is_not(self):
        bary = tuple(sum(Fraction(v[i]) for v in BME4) / 3 for i in range(6))
        assert not is_vertex_of(bary, relaxed_bme(4))

    def test_infeasible_point(self):
        assert not is_vertex_of((0, 0, 0, 0, 0, 0), relaxed_bme(4))


class TestOptimalFace:
    def test_unique_tree(self):
        assert optimal_face(BME4, [2, 3, 3, 3, 3, 2]) == [(2, 1, 1, 1, 1, 2)]

    def test_star_and_zero(self):
        assert len(optimal_face(BME4, [2] * 6)) == 3
        assert len(optimal_face(VPolytope.of(BME5), [0] * 10)) == 15
