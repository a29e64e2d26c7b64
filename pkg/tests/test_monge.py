import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import convex_polygons, rect, square
from oracles import inside_convex, shoelace
from scissorkit.errors import (AreaMismatch, DomainMismatch, NotConvex, OutsideDomain,
                               SingularMap, StepInfeasible, TooFewVertices)
from scissorkit.exact_geom import AffineMap2, Rational, SimplePolygon, point
from scissorkit.monge import (Piece, PLMap, monge_map, pl_apply, pl_compose, pl_invert,
                              reduce_step, reduce_to_triangle, triangle_map, verify_pl_map)
from scissorkit.sampling import random_convex_polygon, random_interior_point, stretch_to_area

TRI = SimplePolygon([(0, 0), (2, 0), (0, 1)])


def _samples(m, count=100, seed=0):
    rng = random.Random(seed)
    return [random_interior_point(rng, m.source) for _ in range(count)]


class TestReduceStep:
    def test_square_corner(self):
        # eliminate (1,1) with u=(1,0), w=(0,1), z=(0,0)
        reduced, step = reduce_step(square(), 2, mirror=False)
        assert reduced == SimplePolygon([(0, 0), (1, 0), (0, 2)])
        assert reduced.area == 1
        assert step.jacobian == 1
        assert step(point(1, 1)) == point(0, 2)
        assert verify_pl_map(step).ok

    def test_pentagon_one_step_keeps_area(self):
        pent = SimplePolygon([(0, 0), (2, 0), (3, 1), (1, 2), (-1, 1)])
        reduced, step = reduce_step(pent, 0)
        assert len(reduced) == 4 and reduced.area == pent.area == 5
        assert verify_pl_map(step).ok

    def test_triangle_cannot_shrink(self):
        with pytest.raises(TooFewVertices):
            reduce_step(TRI, 0)

    def test_non_convex(self, l_shape):
        with pytest.raises(NotConvex):
            reduce_step(l_shape, 0)

    @given(convex_polygons(4, 12))
    def test_forward_step_feasible_everywhere(self, p):
        # v' stays inside the region cut off by the supporting lines at u and w
        for k in range(len(p)):
            reduced, _ = reduce_step(p, k, mirror=False)
            assert reduced.is_convex

    @given(convex_polygons(4, 9), st.integers(0, 20))
    def test_area_conserved_when_feasible(self, p, k):
        try:
            reduced, step = reduce_step(p, k % len(p))
        except StepInfeasible:
            return
        assert reduced.area == p.area
        assert len(reduced) == len(p) - 1 and reduced.is_convex
        assert all(abs(pc.map.det) == 1 for pc in step.pieces)


class TestReduceToTriangle:
    def test_triangle_is_fixed(self):
        red = reduce_to_triangle(TRI)
        assert red.triangle == TRI and red.steps == 0
        assert pl_apply(red.map, point(Fraction(1, 3), Fraction(1, 4))) == point(Fraction(1, 3), Fraction(1, 4))

    def test_square_one_step(self):
        red = reduce_to_triangle(square())
        assert red.steps == 1 and len(red.triangle) == 3 and red.triangle.area == 1

    @given(convex_polygons(4, 12))
    def test_exact_step_count(self, p):
        red = reduce_to_triangle(p)
        assert red.steps == len(p) - 3
        assert all(h.is_convex and h.area == p.area for h in red.history)
        assert [len(h) for h in red.history] == list(range(len(p), 2, -1))
        assert Fraction(str(red.triangle.area)) == shoelace(red.triangle.vertices)

    def test_map_verifies(self):
        p = random_convex_polygon(random.Random(5), 9)
        assert verify_pl_map(reduce_to_triangle(p).map).ok


class TestTriangleMap:
    def test_self(self):
        assert triangle_map(TRI, TRI) == AffineMap2.identity()

    def test_stretch(self):
        m = triangle_map(SimplePolygon([(0, 0), (1, 0), (0, 1)]),
                         SimplePolygon([(0, 0), (2, 0), (0, Fraction(1, 2))]))
        assert m.linear == ((2, 0), (0, Rational(1, 2))) and m.det == 1

    def test_area_mismatch(self):
        with pytest.raises(AreaMismatch):
            triangle_map(SimplePolygon([(0, 0), (1, 0), (0, 1)]), TRI)


class TestMongeMap:
    def test_square_to_itself(self):
        m = monge_map(square(), square())
        assert verify_pl_map(m).ok and m.jacobian == 1

    def test_square_to_triangle(self):
        m = monge_map(square(), TRI)
        report = verify_pl_map(m)
        assert report.ok, str(report)
        assert m.jacobian == 1 and m.target == TRI

    def test_area_mismatch(self):
        with pytest.raises(AreaMismatch):
            monge_map(square(), SimplePolygon([(0, 0), (2, 0), (0, 2)]))

    def test_non_convex(self, l_shape):
        with pytest.raises(NotConvex):
            monge_map(l_shape, rect(3, 1))

    @given(convex_polygons(3, 8), convex_polygons(3, 8))
    def test_random_pairs(self, p, q):
        q = stretch_to_area(q, p.area)
        m = monge_map(p, q)
        assert verify_pl_map(m).ok and m.jacobian == 1
        for x in _samples(m, 20):
            assert inside_convex(q.vertices, pl_apply(m, x))


class TestApplyComposeInvert:
    def test_outside(self):
        with pytest.raises(OutsideDomain):
            pl_apply(PLMap.identity(square()), point(2, 2))

    def test_shared_edge_agrees(self):
        m = monge_map(square(), TRI)
        for (c1, a1) in m.pieces:
            for (c2, a2) in m.pieces:
                for v in c1.vertices:
                    if c2.contains(v):
                        assert a1(v) == a2(v)

    def test_identity_composition(self):
        m = monge_map(square(), TRI)
        c = pl_compose(PLMap.identity(TRI), m)
        assert verify_pl_map(c).ok and c.jacobian == m.jacobian
        assert all(c(x) == m(x) for x in _samples(m, 30))

    def test_inverse_composition_is_identity(self):
        p = random_convex_polygon(random.Random(11), 7)
        q = stretch_to_area(random_convex_polygon(random.Random(12), 6), p.area)
        m = monge_map(p, q)
        back = pl_compose(pl_invert(m), m)
        assert all(back(x) == x for x in _samples(m, 100))

    def test_double_inverse(self):
        m = monge_map(square(), TRI)
        mm = pl_invert(pl_invert(m))
        assert all(mm(x) == m(x) for x in _samples(m, 50))

    def test_invert_identity(self):
        inv = pl_invert(PLMap.identity(square()))
        assert inv.source == square() and inv.pieces[0].map == AffineMap2.identity()

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            pl_compose(PLMap.identity(TRI), PLMap.identity(square()))

    def test_singular_piece(self):
        flat = PLMap((Piece(square(), AffineMap2.make(1, 0, 0, 0)),), square(), square(), 1)
        with pytest.raises(SingularMap):
            pl_invert(flat)


class TestVerifier:
    def test_wrong_determinant_is_named(self):
        left = SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        right = SimplePolygon([(1, 0), (2, 0), (2, 1), (1, 1)])
        bad = AffineMap2.make(2, 0, 0, 1, -1, 0)  # x -> 2x - 1 on the right half
        m = PLMap((Piece(left, AffineMap2.identity()), Piece(right, bad)),
                  rect(2, 1), SimplePolygon([(0, 0), (3, 0), (3, 1), (0, 1)]), 1)
        report = verify_pl_map(m)
        assert not report["determinant"].passed
        assert "cell 1" in report["determinant"].witness

    def test_overlapping_images(self):
        left = SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        right = SimplePolygon([(1, 0), (2, 0), (2, 1), (1, 1)])
        shift = AffineMap2.make(1, 0, 0, 1, Fraction(-1, 2), 0)
        m = PLMap((Piece(left, AffineMap2.identity()), Piece(right, shift)),
                  rect(2, 1), rect(2, 1), 1)
        report = verify_pl_map(m)
        assert not report.ok and not report["image_tiling"].passed

    def test_discontinuity(self):
        left = SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        right = SimplePolygon([(1, 0), (2, 0), (2, 1), (1, 1)])
        flip = AffineMap2.make(1, 0, 0, -1, 0, 1)  # reflection keeps |det| = 1
        m = PLMap((Piece(left, AffineMap2.identity()), Piece(right, flip)),
                  rect(2, 1), rect(2, 1), 1)
        report = verify_pl_map(m)
        assert report["image_tiling"].passed and not report["continuity"].passed
