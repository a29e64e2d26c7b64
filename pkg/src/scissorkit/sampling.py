"""Random rational test inputs: convex polygons and interior points."""
from __future__ import annotations

import math
import random

from typing import Optional

from .exact_geom import AffineMap2, Point2, Rational, SimplePolygon, as_rational, cross


def _chain_components(rng: random.Random, values):
    # Valtr: split sorted values into two monotone chains, emit consecutive gaps
    values = sorted(values)
    lo, hi = values[0], values[-1]
    last1 = last2 = lo
    out = []
    for v in values[1:-1]:
        if rng.random() < 0.5:
            out.append(v - last1)
            last1 = v
        else:
            out.append(last2 - v)
            last2 = v
    out.append(hi - last1)
    out.append(last2 - hi)
    return out


def random_convex_polygon(rng: random.Random, n: int, scale: int = 60,
                          denominator: Optional[int] = None) -> SimplePolygon:
    """A strictly convex polygon with exactly ``n`` rational vertices."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if scale < 2 * n:
        raise ValueError("scale too small for n distinct coordinates")
    while True:
        xs = _chain_components(rng, rng.sample(range(scale), n))
        ys = _chain_components(rng, rng.sample(range(scale), n))
        rng.shuffle(ys)
        vecs = sorted(zip(xs, ys), key=lambda v: math.atan2(v[1], v[0]))
        m = len(vecs)
        if any(cross((0, 0), vecs[k], vecs[(k + 1) % m]) <= 0 for k in range(m)):
            continue
        pts = []
        x = y = 0
        for dx, dy in vecs:
            pts.append((x, y))
            x += dx
            y += dy
        den = denominator if denominator is not None else rng.randint(1, 7)
        poly = SimplePolygon([(Rational(px, den), Rational(py, den)) for px, py in pts])
        if len(poly) == n:
            return poly


def random_interior_point(rng: random.Random, p: SimplePolygon, bits: int = 16) -> Point2:
    """A rational point strictly inside convex ``p`` (random positive barycentric weights)."""
    weights = [rng.randint(1, 1 << bits) for _ in p.vertices]
    total = sum(weights)
    x = sum(Rational(w, total) * v.x for w, v in zip(weights, p.vertices))
    y = sum(Rational(w, total) * v.y for w, v in zip(weights, p.vertices))
    return Point2(x, y)


def stretch_to_area(p: SimplePolygon, target_area: Rational) -> SimplePolygon:
    """Scale ``p`` along x so that its area becomes ``target_area`` (stays rational)."""
    return AffineMap2.make(as_rational(target_area) / p.area, 0, 0, 1).image(p)
