"""Ear-clipping triangulation and the exact tiling test used by every verifier."""
from __future__ import annotations


from typing import List, Optional, Sequence

from .errors import DegenerateInput
from .exact_geom import (Rational, SimplePolygon, cross, interiors_disjoint, overlap_area,
                         point_in_polygon)


def _in_closed_triangle(p, a, b, c) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def triangulate(p: SimplePolygon) -> List[SimplePolygon]:
    """Ear clipping.  Ears are searched from vertex 0 on, so the output is
    deterministic; a convex polygon comes out as a fan from its first vertex."""
    if not isinstance(p, SimplePolygon):
        p = SimplePolygon(p)
    ring = list(p.vertices)
    if p.is_convex:
        v0 = ring[0]
        return [SimplePolygon._from_canonical((v0, ring[k], ring[k + 1]),
                                              cross(v0, ring[k], ring[k + 1]) / 2, True)
                for k in range(1, len(ring) - 1)]
    tris = []
    while len(ring) > 3:
        n = len(ring)
        for i in range(n):
            a, b, c = ring[i - 1], ring[i], ring[(i + 1) % n]
            turn = cross(a, b, c)
            if turn == 0:
                # straight vertex left behind by an earlier ear
                del ring[i]
                break
            if turn < 0:
                continue
            if any(_in_closed_triangle(q, a, b, c) for q in ring if q not in (a, b, c)):
                continue
            tris.append(SimplePolygon((a, b, c)))
            del ring[i]
            break
        else:
            raise DegenerateInput("no ear found; polygon is not simple")
    tris.append(SimplePolygon(ring))
    return tris


def convex_parts(p: SimplePolygon) -> List[SimplePolygon]:
    return [p] if p.is_convex else triangulate(p)


def contained_in(piece: SimplePolygon, region: SimplePolygon) -> bool:
    if region.is_convex:
        return all(point_in_polygon(region, v) for v in piece.vertices)
    return all(overlap_area(region, part) == part.area for part in convex_parts(piece))


def tiling_witness(region: SimplePolygon, pieces: Sequence[SimplePolygon]) -> Optional[str]:
    """None if ``pieces`` tile ``region`` up to zero-area overlaps, else a
    description of the first violation found.

    Area sum equal to the region's area, every piece inside the region and
    pairwise disjoint interiors together force a tiling.
    """
    total = sum((pc.area for pc in pieces), Rational(0))
    if total != region.area:
        return f"piece areas sum to {total}, region area is {region.area}"
    for k, pc in enumerate(pieces):
        if not contained_in(pc, region):
            return f"piece {k} {pc!r} is not inside the region"
    parts = [(k, part) for k, pc in enumerate(pieces) for part in convex_parts(pc)]
    parts.sort(key=lambda kp: kp[1].bbox[0])
    for i, (k, a) in enumerate(parts):
        xmax = a.bbox[2]
        for l, b in parts[i + 1:]:
            if b.bbox[0] >= xmax:
                break
            if l != k and not interiors_disjoint(a, b):
                lo, hi = sorted((k, l))
                return f"pieces {lo} and {hi} overlap with area {overlap_area(a, b)}"
    return None
