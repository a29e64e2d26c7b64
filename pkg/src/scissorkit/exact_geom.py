"""Exact rational plane geometry.

All coordinates are exact rationals (``gmpy2.mpq`` when available,
``fractions.Fraction`` otherwise).  Nothing in here ever touches a float:
areas, orientation tests, clipping and affine algebra are exact, so
equalities can be tested with ``==``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from .errors import DegenerateInput, ParseError, SingularMap

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction

_RATIONAL_TYPE = type(Rational(0))

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def as_rational(value) -> Rational:
    """Coerce ``value`` to a Rational; floats are refused."""
    if isinstance(value, _RATIONAL_TYPE):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"``.  Decimal notation is rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational 'p/q': {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Rational(num, den)


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Point2(NamedTuple):
    x: Rational
    y: Rational

    def __add__(self, other):
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def __mul__(self, s):
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __str__(self):
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def point(x, y) -> Point2:
    return Point2(as_rational(x), as_rational(y))


def cross(o, a, b) -> Rational:
    """Twice the signed area of triangle (o, a, b); > 0 for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def ring_area2(ring: Sequence) -> Rational:
    """Twice the signed shoelace area of a raw vertex ring."""
    n = len(ring)
    s = Rational(0)
    for i in range(n):
        x0, y0 = ring[i - 1]
        x1, y1 = ring[i]
        s += x0 * y1 - x1 * y0
    return s


def ring_area(ring: Sequence) -> Rational:
    return ring_area2(ring) / 2


def _on_segment(p, a, b) -> bool:
    return (cross(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments [a,b] and [c,d] share at least one point."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
            ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (_on_segment(a, c, d) or _on_segment(b, c, d)
            or _on_segment(c, a, b) or _on_segment(d, a, b))


def _is_simple_ring(ring: Sequence[Point2]) -> bool:
    # adjacent edges are skipped: collinear neighbours were removed beforehand
    n = len(ring)
    edges = [(ring[i], ring[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, *edges[j]):
                return False
    return True


def _strictly_convex_ccw(ring: Sequence[Point2]) -> bool:
    n = len(ring)
    for i in range(n):
        if cross(ring[i - 1], ring[i], ring[(i + 1) % n]) <= 0:
            return False
    # rules out multiply wound "stars" whose turns are all left
    v0 = ring[0]
    for i in range(1, n - 1):
        if cross(v0, ring[i], ring[i + 1]) <= 0:
            return False
    return True


def _drop_collinear(ring: list) -> list:
    ring = _dedup(ring)
    changed = True
    while changed and len(ring) >= 3:
        changed = False
        i = 0
        while len(ring) >= 3 and i < len(ring):
            prev, cur, nxt = ring[i - 1], ring[i], ring[(i + 1) % len(ring)]
            if cross(prev, cur, nxt) == 0:
                dot = (cur[0] - prev[0]) * (nxt[0] - cur[0]) + (cur[1] - prev[1]) * (nxt[1] - cur[1])
                if dot < 0:
                    raise DegenerateInput(f"polygon folds back on itself at {cur}")
                del ring[i]
                changed = True
                continue
            i += 1
    return ring


class SimplePolygon:
    """A counter-clockwise, non-self-intersecting polygon with rational vertices.

    Construction normalizes the input: duplicate and collinear vertices are
    dropped, orientation is made CCW and the vertex list is rotated so the
    lexicographically smallest vertex comes first.  Two polygons describing
    the same point set with the same corners therefore compare equal.
    """

    __slots__ = ("vertices", "_area", "_convex", "_bbox")

    def __init__(self, points: Iterable):
        ring = [p if isinstance(p, Point2) else point(*p) for p in points]
        if len(ring) < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        ring = _drop_collinear(ring)
        if len(ring) < 3:
            raise DegenerateInput("polygon has zero area")
        a2 = ring_area2(ring)
        if a2 == 0:
            raise DegenerateInput("polygon has zero area")
        if a2 < 0:
            ring.reverse()
            a2 = -a2
        convex = _strictly_convex_ccw(ring)
        if not convex and not _is_simple_ring(ring):
            raise DegenerateInput("polygon self-intersects")
        k = min(range(len(ring)), key=lambda i: ring[i])
        self.vertices: Tuple[Point2, ...] = tuple(ring[k:] + ring[:k])
        self._area = a2 / 2
        self._convex = convex
        self._bbox = None

    @classmethod
    def _from_canonical(cls, vertices, area, convex):
        obj = cls.__new__(cls)
        obj.vertices = tuple(vertices)
        obj._area = area
        obj._convex = convex
        obj._bbox = None
        return obj

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def __eq__(self, other):
        return isinstance(other, SimplePolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "SimplePolygon([" + ", ".join(str(v) for v in self.vertices) + "])"

    @property
    def area(self) -> Rational:
        return self._area

    @property
    def is_convex(self) -> bool:
        return self._convex

    @property
    def bbox(self):
        if self._bbox is None:
            xs = [v.x for v in self.vertices]
            ys = [v.y for v in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def edges(self):
        vs = self.vertices
        n = len(vs)
        return [(vs[i], vs[(i + 1) % n]) for i in range(n)]

    def contains(self, p, strict: bool = False) -> bool:
        return point_in_polygon(self, p, strict=strict)


def normalize_polygon(raw: Iterable) -> SimplePolygon:
    return SimplePolygon(raw)


def polygon(*points) -> SimplePolygon:
    """Shorthand: ``polygon((0, 0), (1, 0), (0, 1))``."""
    return SimplePolygon(points)


def area(p: SimplePolygon) -> Rational:
    return p.area


def is_convex(p: SimplePolygon) -> bool:
    """True iff every turn between consecutive edges is strictly left."""
    vs = p.vertices
    n = len(vs)
    return all(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))


def point_in_polygon(p: SimplePolygon, q, strict: bool = False) -> bool:
    """Exact point location.  Boundary points count as inside unless ``strict``."""
    q = q if isinstance(q, Point2) else point(*q)
    vs = p.vertices
    n = len(vs)
    if p.is_convex:
        for i in range(n):
            c = cross(vs[i], vs[(i + 1) % n], q)
            if c < 0 or (strict and c == 0):
                return False
        return True
    for i in range(n):
        if _on_segment(q, vs[i], vs[(i + 1) % n]):
            return not strict
    inside = False
    for i in range(n):
        a, b = vs[i - 1], vs[i]
        if (a.y > q.y) != (b.y > q.y):
            xint = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if q.x < xint:
                inside = not inside
    return inside


def clip_ring(ring: Sequence, a, b, c) -> list:
    """Sutherland-Hodgman clip of a raw ring against ``a*x + b*y <= c``.

    The result may contain repeated or collinear points; its shoelace
    area is nevertheless exactly the area of the clipped region (for
    non-convex input the pieces are joined by zero-width bridges).
    """
    out = []
    n = len(ring)
    if n == 0:
        return out
    vals = [a * p[0] + b * p[1] - c for p in ring]
    for i in range(n):
        p, fp = ring[i], vals[i]
        q, fq = ring[(i + 1) % n], vals[(i + 1) % n]
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append(Point2(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _edge_halfplane(e0, e1):
    # interior of a CCW polygon lies left of each edge:
    # cross(e0, e1, p) >= 0  <=>  a*x + b*y <= c
    a = e1[1] - e0[1]
    b = e0[0] - e1[0]
    c = a * e0[0] + b * e0[1]
    return a, b, c


def clip_by_convex(ring: Sequence, clipper: SimplePolygon) -> list:
    out = list(ring)
    for e0, e1 in clipper.edges():
        if not out:
            break
        out = clip_ring(out, *_edge_halfplane(e0, e1))
    return out


def _maybe_polygon(ring) -> Optional[SimplePolygon]:
    if len(ring) < 3 or ring_area2(ring) == 0:
        return None
    return SimplePolygon(ring)


def half_plane_cut(p: SimplePolygon, a, b, c):
    """Split ``p`` by the line ``a*x + b*y = c``.

    Returns ``(lower, upper)`` where ``lower`` is the part with
    ``a*x + b*y <= c``.  A side with zero area comes back as ``None``.
    If ``p`` is not convex and a side falls apart into several
    components, :class:`DegenerateInput` is raised.
    """
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if a == 0 and b == 0:
        raise ValueError("cut line needs (a, b) != (0, 0)")
    lower = clip_ring(p.vertices, a, b, c)
    upper = clip_ring(p.vertices, -a, -b, -c)
    return _maybe_polygon(lower), _maybe_polygon(upper)


def convex_intersection(p: SimplePolygon, q: SimplePolygon) -> Optional[SimplePolygon]:
    """Intersection of a polygon with a convex polygon, or None if it has no area."""
    if not _bbox_overlap(p.bbox, q.bbox):
        return None
    ring = clip_by_convex(p.vertices, q)
    if len(ring) < 3 or ring_area2(ring) == 0:
        return None
    if p.is_convex:
        vs = _drop_collinear(_dedup(ring))
        a2 = ring_area2(vs)
        k = min(range(len(vs)), key=lambda i: vs[i])
        return SimplePolygon._from_canonical(vs[k:] + vs[:k], a2 / 2, True)
    return SimplePolygon(ring)


def _dedup(ring):
    out = []
    for p in ring:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def overlap_area(p: SimplePolygon, q: SimplePolygon) -> Rational:
    """Area of p ∩ q.  ``q`` must be convex; ``p`` may be any simple polygon."""
    if not _bbox_overlap(p.bbox, q.bbox):
        return Rational(0)
    return abs(ring_area(clip_by_convex(p.vertices, q)))


def _bbox_overlap(b1, b2) -> bool:
    return b1[0] < b2[2] and b2[0] < b1[2] and b1[1] < b2[3] and b2[1] < b1[3]


def interiors_disjoint(p: SimplePolygon, q: SimplePolygon) -> bool:
    """Separating-axis test for two convex polygons; touching counts as disjoint."""
    if not _bbox_overlap(p.bbox, q.bbox):
        return True
    for a, b in ((p, q), (q, p)):
        for e0, e1 in a.edges():
            if all(cross(e0, e1, v) <= 0 for v in b.vertices):
                return True
    return False


def convex_hull(points: Iterable) -> list:
    """Andrew's monotone chain; CCW, no collinear points."""
    pts = sorted(set(p if isinstance(p, Point2) else point(*p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class AffineMap2:
    """``x -> linear @ x + translation`` over the rationals."""

    linear: Tuple[Tuple[Rational, Rational], Tuple[Rational, Rational]]
    translation: Point2

    @classmethod
    def make(cls, a, b, c, d, e=0, f=0) -> "AffineMap2":
        """Map (x, y) -> (a x + b y + e, c x + d y + f)."""
        a, b, c, d, e, f = (as_rational(v) for v in (a, b, c, d, e, f))
        return cls(((a, b), (c, d)), Point2(e, f))

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls.make(1, 0, 0, 1)

    @property
    def det(self) -> Rational:
        (a, b), (c, d) = self.linear
        return a * d - b * c

    def __call__(self, p) -> Point2:
        (a, b), (c, d) = self.linear
        return Point2(a * p[0] + b * p[1] + self.translation[0],
                      c * p[0] + d * p[1] + self.translation[1])

    def then(self, other: "AffineMap2") -> "AffineMap2":
        """The map ``other ∘ self``."""
        return affine_compose(other, self)

    def inverse(self) -> "AffineMap2":
        return affine_invert(self)

    def image(self, p: SimplePolygon) -> SimplePolygon:
        ring = [self(v) for v in p.vertices]
        if self.det > 0 and p.is_convex:
            # orientation and convexity survive; only the rotation may change
            k = min(range(len(ring)), key=lambda i: ring[i])
            return SimplePolygon._from_canonical(ring[k:] + ring[:k], p.area * self.det, True)
        return SimplePolygon(ring)


def affine_apply(m: AffineMap2, x):
    """Apply ``m`` to a point or to a polygon."""
    if isinstance(x, SimplePolygon):
        return m.image(x)
    return m(x)


def affine_compose(outer: AffineMap2, inner: AffineMap2) -> AffineMap2:
    """``outer ∘ inner``."""
    (a, b), (c, d) = outer.linear
    (p, q), (r, s) = inner.linear
    tx, ty = inner.translation
    return AffineMap2(
        ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s)),
        Point2(a * tx + b * ty + outer.translation[0], c * tx + d * ty + outer.translation[1]),
    )


def affine_invert(m: AffineMap2) -> AffineMap2:
    det = m.det
    if det == 0:
        raise SingularMap("affine map has determinant 0")
    (a, b), (c, d) = m.linear
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    tx, ty = m.translation
    return AffineMap2(((ia, ib), (ic, id_)), Point2(-(ia * tx + ib * ty), -(ic * tx + id_ * ty)))


def affine_from_triangles(src: Sequence, dst: Sequence) -> AffineMap2:
    """The affine map sending src[k] to dst[k] for k = 0, 1, 2."""
    s0, s1, s2 = src
    d0, d1, d2 = dst
    ux, uy = s1[0] - s0[0], s1[1] - s0[1]
    vx, vy = s2[0] - s0[0], s2[1] - s0[1]
    det = ux * vy - uy * vx
    if det == 0:
        raise SingularMap("source triangle is degenerate")
    # inverse of the source frame [[ux, vx], [uy, vy]]
    i00, i01, i10, i11 = vy / det, -vx / det, -uy / det, ux / det
    px, py = d1[0] - d0[0], d1[1] - d0[1]
    qx, qy = d2[0] - d0[0], d2[1] - d0[1]
    a = px * i00 + qx * i10
    b = px * i01 + qx * i11
    c = py * i00 + qy * i10
    d = py * i01 + qy * i11
    return AffineMap2(((a, b), (c, d)),
                      Point2(d0[0] - a * s0[0] - b * s0[1], d0[1] - c * s0[0] - d * s0[1]))
