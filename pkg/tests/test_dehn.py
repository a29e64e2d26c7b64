import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import L_SHAPE, convex_polygons
from oracles import is_rational_pi_multiple_bruteforce, tetra_dihedral
from scissorkit.dehn import (DehnInvariant, DehnTerm, ExactLength, Polyhedron3, box, dehn_invariant, dihedral_angles,
                             disjoint_union, invariant_eq, invariant_is_zero,
                             is_rational_multiple_of_pi, prism, regular_tetrahedron)
from scissorkit.errors import InconsistentOrientation, OpenMesh
from scissorkit.exact_geom import SimplePolygon

CUBE = box()
TETRA = regular_tetrahedron()


class TestDihedralAngles:
    def test_cube(self):
        edges = dihedral_angles(CUBE)
        assert len(edges) == 12
        assert all(e.squared_length == 1 for e in edges)
        assert all(math.isclose(e.angle, math.pi / 2, abs_tol=1e-12) for e in edges)

    def test_tetrahedron(self):
        edges = dihedral_angles(TETRA)
        assert len(edges) == 6 and {e.squared_length for e in edges} == {2}
        for e in edges:
            assert math.isclose(e.angle, tetra_dihedral(), abs_tol=1e-12)
            assert math.isclose(e.angle, 1.230959, abs_tol=1e-6)

    def test_single_triangle_is_open(self):
        with pytest.raises(OpenMesh):
            dihedral_angles(Polyhedron3([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)]))

    def test_flipped_face(self):
        faces = list(TETRA.faces)
        faces[0] = faces[0][::-1]
        with pytest.raises(InconsistentOrientation):
            dihedral_angles(Polyhedron3(TETRA.vertices, faces))

    def test_inward_mesh_is_reoriented(self):
        inward = Polyhedron3(CUBE.vertices, [f[::-1] for f in CUBE.faces])
        assert inward.volume == -1
        assert all(math.isclose(e.angle, math.pi / 2) for e in dihedral_angles(inward))

    def test_reflex_edge(self):
        edges = dihedral_angles(prism(SimplePolygon(L_SHAPE)))
        assert sum(1 for e in edges if math.isclose(e.angle, 3 * math.pi / 2)) == 1


class TestInvariant:
    def test_cube_zero(self):
        assert invariant_is_zero(dehn_invariant(CUBE))
        assert str(dehn_invariant(CUBE)) == "0"

    def test_box_zero(self):
        assert invariant_is_zero(dehn_invariant(box(1, 2, 3)))

    def test_tetrahedron_survives(self):
        assert not is_rational_pi_multiple_bruteforce(tetra_dihedral())
        d = dehn_invariant(TETRA)
        (term,) = d.terms
        # six edges of length sqrt(2): total length is 6 times the edge
        assert term.length == ExactLength.sqrt_of(2).scaled(6)
        assert math.isclose(term.angle, tetra_dihedral(), abs_tol=1e-12)

    def test_cube_vs_box(self):
        assert invariant_eq(dehn_invariant(CUBE), dehn_invariant(box(1, 2, 3)))

    def test_cube_vs_equal_volume_tetrahedron(self):
        # the tetrahedron has volume 1/3; compare with a box of the same volume
        assert TETRA.volume == Fraction(1, 3)
        assert not invariant_eq(dehn_invariant(box(1, 1, Fraction(1, 3))), dehn_invariant(TETRA))

    def test_self_equal(self):
        d = dehn_invariant(TETRA)
        assert invariant_eq(d, d)

    def test_disjoint_union_adds(self):
        a, b = TETRA, box(1, 2, 3).translated((5, 0, 0))
        both = dehn_invariant(disjoint_union(a, b))
        assert invariant_eq(both, dehn_invariant(a) + dehn_invariant(b))
        two = dehn_invariant(disjoint_union(TETRA, TETRA.translated((3, 3, 3))))
        assert two.terms[0].length == ExactLength.sqrt_of(2).scaled(12)

    @given(st.integers(1, 20), st.integers(1, 20))
    def test_scaling(self, p, q):
        s = Fraction(p, q)
        d = dehn_invariant(TETRA.scaled(s))
        assert d.terms[0].length == dehn_invariant(TETRA).terms[0].length.scaled(s)
        assert math.isclose(d.terms[0].angle, tetra_dihedral(), abs_tol=1e-12)

    @given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(1, 5))
    def test_boxes_vanish(self, a, b, c, den):
        assert invariant_is_zero(dehn_invariant(box(a, Fraction(b, den), c, origin=(a, -b, 1))))

    @given(convex_polygons(3, 9), st.integers(1, 5))
    def test_prisms_vanish(self, base, h):
        # vertical edges give h ⊗ (sum of base angles) = h ⊗ (n-2)π
        assert invariant_is_zero(dehn_invariant(prism(base, h)))

    def test_nonconvex_prism_vanishes(self):
        assert invariant_is_zero(dehn_invariant(prism(SimplePolygon(L_SHAPE), 3)))

    def test_prism_plus_tetrahedron_keeps_tetrahedron(self):
        base = SimplePolygon([(0, 0), (7, 1), (5, 4), (1, 3)])
        union = disjoint_union(prism(base, 2), TETRA.translated((20, 0, 0)))
        assert invariant_eq(dehn_invariant(union), dehn_invariant(TETRA))


def test_float_only_terms_merge_equal_angles():
    theta = tetra_dihedral()
    d = DehnInvariant((DehnTerm(ExactLength.sqrt_of(2), theta),
                       DehnTerm(ExactLength.sqrt_of(8), theta),
                       DehnTerm(ExactLength.sqrt_of(3), math.pi / 4)))
    (term,) = d.reduce().terms
    assert term.length == ExactLength.sqrt_of(2).scaled(3)


def test_pi_rational_detection_matches_bruteforce():
    for theta in [math.pi / 3, 2 * math.pi / 7, math.pi * 9999 / 10000, tetra_dihedral(), 1.0]:
        assert is_rational_multiple_of_pi(theta) == is_rational_pi_multiple_bruteforce(theta)
