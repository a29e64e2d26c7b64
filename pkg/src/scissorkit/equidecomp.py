"""Scissors congruence certificates between rational polygons.

Pipeline for two polygons of equal area ``A``::

    triangulate both  ->  pieces P_i (area a_i), Q_j (area b_j)
    cut P_i into pieces of area a_i*b_j/A, Q_j into pieces of area a_i*b_j/A
    join each matched pair (P_ij, Q_ij) with a Monge map

Prescribed-area cuts are fans from one vertex of a convex piece.  Area is
linear in the position of the cut point along the far boundary, so every
cut point is rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import (AreaMismatch, AreaSumMismatch, DegenerateInput, DomainMismatch,
                     MassMismatch, NonPositiveTarget, NotConvex, NotConvexSupport,
                     TotalAreaMismatch)
from .exact_geom import (AffineMap2, Point2, Rational, SimplePolygon, affine_compose,
                         as_rational, convex_hull, convex_intersection, cross,
                         interiors_disjoint)
from .monge import PLMap, monge_map, pl_compose, verify_pl_map
from .report import VerificationReport
from .tiling import contained_in, tiling_witness, triangulate

__all__ = [
    "triangulate", "cut_prescribed_areas", "double_subdivision", "MatchedPieces",
    "WeightedPolygon", "Certificate", "equal_area_transform", "density_transform",
    "verify_certificate", "compose_certificates", "predicted_piece_count", "affine_pieces",
]


def cut_prescribed_areas(piece: SimplePolygon, targets: Sequence) -> List[SimplePolygon]:
    """Cut a convex polygon into consecutive fan slices of the given areas.

    Slices are bounded by segments from the first vertex to rational
    points on the opposite boundary chain, so each slice is itself convex.
    A boundary that falls exactly on an existing vertex produces no sliver.
    """
    targets = [as_rational(t) for t in targets]
    if not piece.is_convex:
        raise NotConvex("prescribed-area cuts need a convex piece")
    if not targets:
        raise AreaSumMismatch("no target areas given")
    if any(t <= 0 for t in targets):
        raise NonPositiveTarget(f"target areas must be positive: {targets}")
    if sum(targets) != piece.area:
        raise AreaSumMismatch(f"targets sum to {sum(targets)}, piece area is {piece.area}")
    if len(targets) == 1:
        return [piece]

    vs = piece.vertices
    n = len(vs)
    apex = vs[0]
    fan = [cross(apex, vs[k], vs[k + 1]) / 2 for k in range(1, n - 1)]

    # boundary point = (edge index k, point on edge vs[k] -> vs[k+1])
    bounds = [(1, vs[1])]
    cumulative = Rational(0)
    before = Rational(0)
    k = 1
    for t in targets[:-1]:
        cumulative += t
        while before + fan[k - 1] < cumulative:
            before += fan[k - 1]
            k += 1
        frac = (cumulative - before) / fan[k - 1]
        a, b = vs[k], vs[k + 1]
        bounds.append((k, Point2(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y))))
    bounds.append((n - 2, vs[n - 1]))

    slices = []
    for (ks, ps), (ke, pe) in zip(bounds, bounds[1:]):
        ring = [apex, ps] + [vs[j] for j in range(ks + 1, ke + 1)] + [pe]
        slices.append(SimplePolygon(ring))
    return slices


class MatchedPieces(NamedTuple):
    i: int
    j: int
    source: SimplePolygon
    target: SimplePolygon


def _matched_subdivision(ps, p_weights, qs, q_weights) -> List[MatchedPieces]:
    # piece i of P carries mass p_weights[i] * area, likewise for Q
    mu = [w * p.area for p, w in zip(ps, p_weights)]
    nu = [w * q.area for q, w in zip(qs, q_weights)]
    total = sum(mu)
    p_slices = [cut_prescribed_areas(p, [p.area * nj / total for nj in nu]) for p in ps]
    q_slices = [cut_prescribed_areas(q, [q.area * mi / total for mi in mu]) for q in qs]
    return [MatchedPieces(i, j, p_slices[i][j], q_slices[j][i])
            for i in range(len(ps)) for j in range(len(qs))]


def double_subdivision(ps: Sequence[SimplePolygon], qs: Sequence[SimplePolygon]) -> List[MatchedPieces]:
    """Refine two convex partitions of equal total area ``A`` into matched
    pieces: piece (i, j) lies in ``ps[i]`` and in ``qs[j]`` respectively and
    both have area ``area(ps[i]) * area(qs[j]) / A``."""
    for piece in list(ps) + list(qs):
        if not piece.is_convex:
            raise NotConvex("double_subdivision needs convex pieces")
    a = sum(p.area for p in ps)
    b = sum(q.area for q in qs)
    if a != b:
        raise TotalAreaMismatch(f"total areas differ: {a} vs {b}")
    one = Rational(1)
    return _matched_subdivision(ps, [one] * len(ps), qs, [one] * len(qs))


@dataclass(frozen=True)
class WeightedPolygon:
    """Convex cells carrying constant positive densities."""

    cells: Tuple[Tuple[SimplePolygon, Rational], ...]

    def __post_init__(self):
        cells = tuple((c, as_rational(d)) for c, d in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise DegenerateInput("a weighted polygon needs at least one cell")
        for c, d in cells:
            if not c.is_convex:
                raise NotConvex(f"cell {c!r} is not convex")
            if d <= 0:
                raise ValueError(f"density must be positive, got {d}")
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if not interiors_disjoint(cells[i][0], cells[j][0]):
                    raise DegenerateInput(f"cells {i} and {j} overlap")

    @classmethod
    def uniform(cls, p: SimplePolygon, density=1) -> "WeightedPolygon":
        cells = [p] if p.is_convex else triangulate(p)
        return cls(tuple((c, density) for c in cells))

    @property
    def area(self) -> Rational:
        return sum(c.area for c, _ in self.cells)

    @property
    def mass(self) -> Rational:
        return sum(c.area * d for c, d in self.cells)

    @property
    def support(self) -> Optional[SimplePolygon]:
        """The union of the cells when it is convex, else None."""
        hull = SimplePolygon(convex_hull(v for c, _ in self.cells for v in c.vertices))
        return hull if hull.area == self.area else None

    def density_of(self, piece: SimplePolygon) -> Optional[Rational]:
        """Density of the single cell containing ``piece``; None if there is none."""
        for c, d in self.cells:
            if contained_in(piece, c):
                return d
        return None


PieceMap = Union[PLMap, AffineMap2]


@dataclass(frozen=True)
class Certificate:
    """A checkable equidecomposition witness.

    Pair ``k`` joins ``source_pieces[pairing[k][0]]`` to
    ``target_pieces[pairing[k][1]]`` through ``piece_maps[k]`` with
    constant area scaling ``jacobians[k]``.
    """

    source: SimplePolygon
    target: SimplePolygon
    source_pieces: Tuple[SimplePolygon, ...]
    target_pieces: Tuple[SimplePolygon, ...]
    pairing: Tuple[Tuple[int, int], ...]
    piece_maps: Tuple[PieceMap, ...]
    jacobians: Tuple[Rational, ...]
    source_weights: Optional[WeightedPolygon] = None
    target_weights: Optional[WeightedPolygon] = None

    def __post_init__(self):
        for name in ("source_pieces", "target_pieces", "piece_maps"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "pairing", tuple((int(i), int(j)) for i, j in self.pairing))
        object.__setattr__(self, "jacobians", tuple(as_rational(j) for j in self.jacobians))

    @classmethod
    def from_pl_map(cls, m: PLMap) -> "Certificate":
        return cls(m.source, m.target, (m.source,), (m.target,), ((0, 0),), (m,), (m.jacobian,))

    @property
    def weighted(self) -> bool:
        return self.source_weights is not None or self.target_weights is not None

    def __len__(self):
        return len(self.pairing)


def predicted_piece_count(p: SimplePolygon, q: SimplePolygon) -> int:
    """Number of matched pairs :func:`equal_area_transform` produces."""
    return len(triangulate(p)) * len(triangulate(q))


def equal_area_transform(p: SimplePolygon, q: SimplePolygon) -> Certificate:
    if p.area != q.area:
        raise AreaMismatch(f"areas differ: {p.area} vs {q.area}")
    matches = double_subdivision(triangulate(p), triangulate(q))
    maps = [monge_map(m.source, m.target) for m in matches]
    return Certificate(
        p, q,
        [m.source for m in matches], [m.target for m in matches],
        [(k, k) for k in range(len(matches))],
        maps, [m.jacobian for m in maps],
    )


def density_transform(P: WeightedPolygon, Q: WeightedPolygon) -> Certificate:
    """Certificate for two convex supports carrying piecewise constant densities.

    Each matched pair carries equal mass; its map stretches along x by the
    area ratio and then applies a Monge map, so the pulled back density
    equals the source density on every piece.
    """
    if P.mass != Q.mass:
        raise MassMismatch(f"total masses differ: {P.mass} vs {Q.mass}")
    src, tgt = P.support, Q.support
    if src is None or tgt is None:
        raise NotConvexSupport("density supports must be convex")
    ps = [c for c, _ in P.cells]
    qs = [c for c, _ in Q.cells]
    matches = _matched_subdivision(ps, [d for _, d in P.cells], qs, [d for _, d in Q.cells])
    maps = []
    for m in matches:
        ratio = m.target.area / m.source.area
        stretch = PLMap.affine(m.source, AffineMap2.make(ratio, 0, 0, 1))
        maps.append(pl_compose(monge_map(stretch.target, m.target), stretch))
    return Certificate(
        src, tgt,
        [m.source for m in matches], [m.target for m in matches],
        [(k, k) for k in range(len(matches))],
        maps, [m.jacobian for m in maps],
        source_weights=P, target_weights=Q,
    )


def verify_certificate(c: Certificate) -> VerificationReport:
    """Exact audit of a certificate; nothing from the construction is re-run."""
    report = VerificationReport()
    ns, nt = len(c.source_pieces), len(c.target_pieces)
    srcs = sorted(i for i, _ in c.pairing)
    tgts = sorted(j for _, j in c.pairing)
    bijective = (srcs == list(range(ns)) and tgts == list(range(nt))
                 and len(c.piece_maps) == len(c.pairing) == len(c.jacobians))
    report.add("pairing", bijective,
               f"pairing {list(c.pairing)} is not a bijection between {ns} source "
               f"and {nt} target pieces with one map and jacobian each")

    w = tiling_witness(c.source, c.source_pieces)
    report.add("source_tiling", w is None, w)
    w = tiling_witness(c.target, c.target_pieces)
    report.add("target_tiling", w is None, w)

    if not bijective:
        report.add("piece_maps", False, "skipped: pairing is malformed")
        return report

    map_problem = None
    jac_problem = None
    for k, ((i, j), m, jac) in enumerate(zip(c.pairing, c.piece_maps, c.jacobians)):
        sp, tp = c.source_pieces[i], c.target_pieces[j]
        if isinstance(m, PLMap):
            if m.source != sp or m.target != tp:
                map_problem = map_problem or f"pair {k}: map domain/codomain differ from its pieces"
            else:
                sub = verify_pl_map(m)
                if not sub.ok:
                    map_problem = map_problem or f"pair {k}: {sub.failures()[0]}"
            if m.jacobian != jac:
                jac_problem = jac_problem or f"pair {k}: recorded {jac}, map jacobian {m.jacobian}"
        else:
            try:
                image = m.image(sp)
            except Exception as exc:
                image = None
                map_problem = map_problem or f"pair {k}: image is degenerate ({exc})"
            if image is not None and image != tp:
                map_problem = map_problem or f"pair {k}: image {image!r} is not target piece {tp!r}"
            if abs(m.det) != jac:
                jac_problem = jac_problem or f"pair {k}: recorded {jac}, determinant {m.det}"
    report.add("piece_maps", map_problem is None, map_problem)
    report.add("jacobians", jac_problem is None, jac_problem)

    if c.weighted:
        report.add("mass", *_mass_check(c))
    return report


def _mass_check(c: Certificate):
    if c.source_weights is None or c.target_weights is None:
        return False, "only one side carries densities"
    if c.source_weights.support != c.source or c.target_weights.support != c.target:
        return False, "density cells do not cover the certificate polygons"
    for k, ((i, j), jac) in enumerate(zip(c.pairing, c.jacobians)):
        sp, tp = c.source_pieces[i], c.target_pieces[j]
        d1 = c.source_weights.density_of(sp)
        d2 = c.target_weights.density_of(tp)
        if d1 is None or d2 is None:
            return False, f"pair {k}: piece straddles density cells"
        if d1 * sp.area != d2 * tp.area:
            return False, f"pair {k}: mass {d1 * sp.area} vs {d2 * tp.area}"
        if d1 != jac * d2:
            return False, f"pair {k}: pull-back density {jac * d2} differs from {d1}"
    return True, None


def affine_pieces(c: Certificate):
    """Flatten a certificate into (convex cell, affine map) pairs."""
    for (i, _), m in zip(c.pairing, c.piece_maps):
        if isinstance(m, PLMap):
            yield from m.pieces
        else:
            sp = c.source_pieces[i]
            for cell in ([sp] if sp.is_convex else triangulate(sp)):
                yield cell, m


def compose_certificates(c2: Certificate, c1: Certificate) -> Certificate:
    """A certificate for ``c1.source -> c2.target`` (scissors congruence is transitive).

    The result pairs convex pieces through single affine maps; it is not
    a global PL homeomorphism.
    """
    if c1.target != c2.source:
        raise DomainMismatch("first certificate's target is not the second's source")
    second = list(affine_pieces(c2))
    srcs, tgts, maps = [], [], []
    for cell1, a1 in affine_pieces(c1):
        image = a1.image(cell1)
        inverse = a1.inverse()
        for cell2, a2 in second:
            overlap = convex_intersection(image, cell2)
            if overlap is None:
                continue
            srcs.append(inverse.image(overlap))
            tgts.append(a2.image(overlap))
            maps.append(affine_compose(a2, a1))
    return Certificate(
        c1.source, c2.target, srcs, tgts,
        [(k, k) for k in range(len(maps))], maps, [abs(m.det) for m in maps],
    )
