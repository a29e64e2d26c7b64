"""
Cutting an L into a strip
=========================

A non-convex polygon is handled by triangulating both shapes, cutting each
triangle into pieces whose areas are the products a_i * b_j / A, and joining
matched pieces with Monge maps.
"""
from pathlib import Path

from scissorkit import (SimplePolygon, compose_certificates, equal_area_transform,
                        predicted_piece_count, triangulate, verify_certificate)
from scissorkit.svg import render_certificate

L = SimplePolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
strip = SimplePolygon([(0, 0), (3, 0), (3, 1), (0, 1)])
print("areas:", L.area, strip.area, "| convex?", L.is_convex)
print("triangles:", len(triangulate(L)), "and", len(triangulate(strip)))

cert = equal_area_transform(L, strip)
print(len(cert), "matched pairs, predicted", predicted_piece_count(L, strip))
print(verify_certificate(cert))

# scissors congruence is transitive: chain on to a right triangle
wedge = SimplePolygon([(0, 0), (3, 0), (0, 2)])
chained = compose_certificates(equal_area_transform(strip, wedge), cert)
print("L -> wedge through the strip:", len(chained), "pieces,",
      "verified" if verify_certificate(chained).ok else "REJECTED")

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)
(out / "l_to_strip.svg").write_text(render_certificate(cert))
