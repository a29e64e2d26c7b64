"""
A Monge map from a square onto a triangle
=========================================

Both shapes have area 1.  Each is shrunk to a triangle by shearing away
one vertex at a time; the two triangles are then matched by an affine map.
"""
from fractions import Fraction
from pathlib import Path

from scissorkit import (Certificate, SimplePolygon, monge_map, point, reduce_to_triangle,
                        verify_pl_map)
from scissorkit.svg import render_certificate

square = SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
triangle = SimplePolygon([(0, 0), (2, 0), (0, 1)])

# one shear removes a vertex of the square
red = reduce_to_triangle(square)
print("square reduces to", red.triangle, "in", red.steps, "step")

m = monge_map(square, triangle)
print(f"{len(m)} affine pieces, jacobian {m.jacobian}")
print(verify_pl_map(m))

# the map is exact: rational points go to rational points
x = point(Fraction(1, 3), Fraction(1, 7))
print(x, "->", m(x))

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)
(out / "square_to_triangle.svg").write_text(render_certificate(Certificate.from_pl_map(m)))
