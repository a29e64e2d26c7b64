"""Monge maps between convex rational polygons.

A Monge map is a continuous, piecewise linear, area preserving bijection.
Between two convex polygons of equal area one is built by shrinking each
polygon to a triangle one vertex at a time, then joining the two triangles
with a single affine map::

    p --reduce--> t1 --affine--> t2 <--reduce-- q

Every step is represented exactly as a :class:`PLMap` so the result can
be audited with :func:`verify_pl_map`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from .errors import (AreaMismatch, DomainMismatch, NotConvex, OutsideDomain,
                     ReductionStuck, SingularMap, StepInfeasible, TooFewVertices)
from .exact_geom import (AffineMap2, Point2, Rational, SimplePolygon, affine_compose,
                         affine_from_triangles, as_rational, convex_intersection, cross,
                         point, point_in_polygon)
from .report import VerificationReport
from .tiling import tiling_witness, triangulate


class Piece(NamedTuple):
    cell: SimplePolygon
    map: AffineMap2


@dataclass(frozen=True)
class PLMap:
    """Finitely many (convex cell, affine map) pieces from ``source`` onto ``target``.

    ``jacobian`` is the common absolute determinant of the pieces.
    """

    pieces: Tuple[Piece, ...]
    source: SimplePolygon
    target: SimplePolygon
    jacobian: "Rational"

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(Piece(*pc) for pc in self.pieces))
        object.__setattr__(self, "jacobian", as_rational(self.jacobian))

    @classmethod
    def identity(cls, p: SimplePolygon) -> "PLMap":
        ident = AffineMap2.identity()
        cells = [p] if p.is_convex else triangulate(p)
        return cls(tuple(Piece(c, ident) for c in cells), p, p, Rational(1))

    @classmethod
    def affine(cls, p: SimplePolygon, m: AffineMap2) -> "PLMap":
        """``m`` restricted to ``p``, as a one-piece (or triangulated) map."""
        cells = [p] if p.is_convex else triangulate(p)
        return cls(tuple(Piece(c, m) for c in cells), p, m.image(p), abs(m.det))

    def __call__(self, pt) -> Point2:
        return pl_apply(self, pt)

    def __len__(self):
        return len(self.pieces)

    def images(self) -> List[SimplePolygon]:
        return [pc.map.image(pc.cell) for pc in self.pieces]


class Reduction(NamedTuple):
    triangle: SimplePolygon
    map: PLMap
    history: Tuple[SimplePolygon, ...]

    @property
    def steps(self) -> int:
        return len(self.history) - 1


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def reduce_step(p: SimplePolygon, v_index: int, mirror: Optional[bool] = None):
    """Remove one vertex of a convex polygon by an area preserving shear.

    With ``u, w`` the neighbours of ``v = p[v_index]`` and ``z`` the far
    neighbour of ``w``, ``v`` slides parallel to ``uw`` until it hits the
    line ``wz``; ``w`` then becomes a straight vertex and disappears.
    ``mirror=False`` takes ``w`` as the next vertex (CCW), ``mirror=True``
    the previous one; ``None`` tries both in that order.

    Returns ``(reduced_polygon, step_map)``.
    """
    if not p.is_convex:
        raise NotConvex("reduce_step needs a convex polygon")
    n = len(p)
    if n <= 3:
        raise TooFewVertices("a triangle cannot be reduced further")
    if not 0 <= v_index < n:
        raise IndexError(v_index)
    if mirror is None:
        try:
            return _shift(p, v_index, False)
        except StepInfeasible:
            return _shift(p, v_index, True)
    return _shift(p, v_index, mirror)


def _shift(p: SimplePolygon, i: int, mirror: bool):
    vs = p.vertices
    n = len(vs)
    if mirror:
        iu, iw, iz = (i + 1) % n, (i - 1) % n, (i - 2) % n
    else:
        iu, iw, iz = (i - 1) % n, (i + 1) % n, (i + 2) % n
    u, v, w, z = vs[iu], vs[i], vs[iw], vs[iz]
    d = (w[0] - u[0], w[1] - u[1])
    e = (z[0] - w[0], z[1] - w[1])
    denom = _cross2(d, e)
    if denom == 0:
        raise StepInfeasible(f"line through {w} and {z} is parallel to ({u}, {w})")
    t = _cross2(d, (v[0] - w[0], v[1] - w[1])) / denom
    if t >= 0:
        raise StepInfeasible("shifted vertex does not land beyond w")
    v_new = Point2(w[0] + t * e[0], w[1] + t * e[1])
    ring = [v_new if k == i else vs[k] for k in range(n) if k != iw]
    m = len(ring)
    if any(cross(ring[k - 1], ring[k], ring[(k + 1) % m]) <= 0 for k in range(m)):
        raise StepInfeasible(f"shifting {v} to {v_new} breaks strict convexity")
    reduced = SimplePolygon(ring)
    shear = affine_from_triangles((u, v, w), (u, v_new, w))
    rest = SimplePolygon([vs[k] for k in range(n) if k != i])
    step = PLMap(
        (Piece(SimplePolygon((u, v, w)), shear), Piece(rest, AffineMap2.identity())),
        p, reduced, Rational(1),
    )
    return reduced, step


def reduce_to_triangle(p: SimplePolygon) -> Reduction:
    """Apply :func:`reduce_step` ``len(p) - 3`` times.

    Vertices are tried in index order, each first in the forward and then
    in the mirrored direction; the first feasible step is taken.  For a
    strictly convex polygon the forward step at vertex 0 always works: the
    shifted vertex stays inside the region bounded by the chord ``uw`` and
    the supporting lines at ``u`` and ``w``.  :class:`ReductionStuck` is kept
    as a guard.
    """
    if not p.is_convex:
        raise NotConvex("reduce_to_triangle needs a convex polygon")
    current = p
    total = PLMap.identity(p)
    history = [p]
    while len(current) > 3:
        for i in range(len(current)):
            try:
                current, step = reduce_step(current, i)
                break
            except StepInfeasible:
                continue
        else:
            raise ReductionStuck(f"no vertex of {current!r} admits a convex shift")
        total = pl_compose(step, total)
        history.append(current)
    return Reduction(current, total, tuple(history))


def triangle_map(t1: SimplePolygon, t2: SimplePolygon) -> AffineMap2:
    """The affine map matching the canonical vertex orders of two triangles."""
    if len(t1) != 3 or len(t2) != 3:
        raise ValueError("triangle_map needs two triangles")
    if t1.area != t2.area:
        raise AreaMismatch(f"triangle areas differ: {t1.area} vs {t2.area}")
    return affine_from_triangles(t1.vertices, t2.vertices)


def monge_map(p: SimplePolygon, q: SimplePolygon) -> PLMap:
    if p.area != q.area:
        raise AreaMismatch(f"areas differ: {p.area} vs {q.area}")
    if not (p.is_convex and q.is_convex):
        raise NotConvex("monge_map needs two convex polygons")
    r1 = reduce_to_triangle(p)
    r2 = reduce_to_triangle(q)
    phi = PLMap.affine(r1.triangle, triangle_map(r1.triangle, r2.triangle))
    return pl_compose(pl_invert(r2.map), pl_compose(phi, r1.map))


def pl_apply(m: PLMap, pt) -> Point2:
    pt = pt if isinstance(pt, Point2) else point(*pt)
    for cell, aff in m.pieces:
        b = cell.bbox
        if b[0] <= pt.x <= b[2] and b[1] <= pt.y <= b[3] and point_in_polygon(cell, pt):
            return aff(pt)
    raise OutsideDomain(f"{pt} is outside the map's source polygon")


def pl_compose(m2: PLMap, m1: PLMap) -> PLMap:
    """``m2 ∘ m1`` on the common refinement of their cells."""
    if m1.target != m2.source:
        raise DomainMismatch("target of the first map is not the source of the second")
    pieces = []
    for cell1, a1 in m1.pieces:
        image = a1.image(cell1)
        inverse = a1.inverse()
        for cell2, a2 in m2.pieces:
            overlap = convex_intersection(image, cell2)
            if overlap is None:
                continue
            pieces.append(Piece(inverse.image(overlap), affine_compose(a2, a1)))
    return PLMap(tuple(pieces), m1.source, m2.target, m1.jacobian * m2.jacobian)


def pl_invert(m: PLMap) -> PLMap:
    pieces = []
    for cell, aff in m.pieces:
        if aff.det == 0:
            raise SingularMap(f"piece on {cell!r} has determinant 0")
        pieces.append(Piece(aff.image(cell), aff.inverse()))
    return PLMap(tuple(pieces), m.target, m.source, 1 / m.jacobian)


def verify_pl_map(m: PLMap) -> VerificationReport:
    """Exact audit of a PL map: both tilings, determinants and continuity."""
    report = VerificationReport()
    cells = [pc.cell for pc in m.pieces]
    bad = [k for k, c in enumerate(cells) if not c.is_convex]
    report.add("cells_convex", not bad, f"cells {bad} are not convex")

    report.add("source_tiling", *_tiling(m.source, cells))
    try:
        images = m.images()
    except Exception as exc:  # a degenerate image is itself a failure
        report.add("image_tiling", False, f"image cell is degenerate: {exc}")
    else:
        report.add("image_tiling", *_tiling(m.target, images))

    wrong = next(((k, pc.map.det) for k, pc in enumerate(m.pieces)
                  if abs(pc.map.det) != m.jacobian), None)
    report.add("determinant", wrong is None,
               None if wrong is None else
               f"cell {wrong[0]} {cells[wrong[0]]!r} has determinant {wrong[1]}, "
               f"expected |det| = {m.jacobian}")

    report.add("continuity", *_continuity(m))
    return report


def _tiling(region, pieces):
    witness = tiling_witness(region, pieces)
    return witness is None, witness


def _continuity(m: PLMap):
    # each endpoint of a shared segment is a vertex of one of the two cells,
    # so agreement at every cell vertex on every cell containing it suffices
    pieces = m.pieces
    for i, (cell, aff) in enumerate(pieces):
        for x in cell.vertices:
            fx = aff(x)
            for j, (other, aff2) in enumerate(pieces):
                if j == i:
                    continue
                b = other.bbox
                if not (b[0] <= x.x <= b[2] and b[1] <= x.y <= b[3]):
                    continue
                if point_in_polygon(other, x) and aff2(x) != fx:
                    return False, (f"cells {i} and {j} disagree at {x}: "
                                   f"{fx} vs {aff2(x)}")
    return True, None
