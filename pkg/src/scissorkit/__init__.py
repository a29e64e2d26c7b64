"""Exact scissors congruence: Monge maps, equidecomposition certificates,
Dehn invariants and a small Grothendieck ring calculator."""
from .dehn import (DehnInvariant, ExactLength, Polyhedron3, box, dehn_invariant,
                   dihedral_angles, invariant_eq, invariant_is_zero, prism,
                   regular_tetrahedron)
from .equidecomp import (Certificate, WeightedPolygon, compose_certificates,
                         cut_prescribed_areas, density_transform, double_subdivision,
                         equal_area_transform, predicted_piece_count, verify_certificate)
from .errors import *  # noqa: F401,F403
from .exact_geom import (AffineMap2, Point2, Rational, SimplePolygon, area, as_rational,
                         format_rational, half_plane_cut, is_convex, parse_rational,
                         point, polygon)
from .formats import (GeometryDocument, certificate_from_json, certificate_to_json,
                      emit_geometry, parse_geometry)
from .kring import (RelationStore, RingExpr, normalize, parse_expr,
                    parse_relation_script, vol_eval)
from .monge import (PLMap, monge_map, pl_apply, pl_compose, pl_invert, reduce_step,
                    reduce_to_triangle, verify_pl_map)
from .report import VerificationReport
from .svg import render_certificate, render_decomposition
from .tiling import triangulate

__version__ = "0.1.0"
