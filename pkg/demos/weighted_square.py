"""
Moving mass instead of area
===========================

A unit square of density 2 carries the same mass as a 2x1 rectangle of
density 1.  The map stretches each piece by the density ratio, so the
pulled-back density matches on every piece.
"""
from scissorkit import SimplePolygon, WeightedPolygon, density_transform, verify_certificate

dense = WeightedPolygon.uniform(SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]), 2)
thin = WeightedPolygon.uniform(SimplePolygon([(0, 0), (2, 0), (2, 1), (0, 1)]), 1)

cert = density_transform(dense, thin)
print("jacobians:", [str(j) for j in cert.jacobians])
print(verify_certificate(cert))

# two densities on one side, one on the other
split = WeightedPolygon((
    (SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]), 3),
    (SimplePolygon([(1, 0), (2, 0), (2, 1), (1, 1)]), 1),
))
wedge = WeightedPolygon.uniform(SimplePolygon([(0, 0), (4, 0), (0, 2)]))
cert = density_transform(split, wedge)
print(len(cert), "pairs, jacobians", sorted({str(j) for j in cert.jacobians}))
print("verified:", verify_certificate(cert).ok)
