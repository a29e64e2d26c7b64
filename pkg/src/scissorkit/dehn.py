"""Dehn invariant of closed triangulated polyhedra with rational vertices.

The invariant lives in R ⊗ (R/πQ).  Lengths are kept exactly as sums
``Σ c_k √m_k`` (``c_k`` rational, ``m_k`` square-free).  Angles are floats
for display; each also remembers the exact data it came from, so it can
be recomputed to 50 digits when looking for rational relations.

Reduction rewrites every angle in a basis of the Q-span of the angles
modulo π, found with integer relation detection (PSLQ) and coefficients
bounded by ``max_denominator``.  A nonzero reduced invariant therefore
means "no relation with small coefficients exists", and equality means
"indistinguishable under this reduction".
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import mpmath

from .errors import DegenerateInput, InconsistentOrientation, OpenMesh
from .exact_geom import Rational, as_rational

MAX_DENOMINATOR = 10 ** 4
ANGLE_TOL = 1e-9
RELATION_DIGITS = 50

Vec3 = Tuple[Rational, Rational, Rational]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _squarefree(n: int) -> Tuple[int, int]:
    """``n = k*k*m`` with ``m`` square-free (trial division; large cofactors
    are kept as they are unless they are perfect squares)."""
    k, m = 1, 1
    d = 2
    while d * d <= n and d <= 100_000:
        while n % (d * d) == 0:
            n //= d * d
            k *= d
        if n % d == 0:
            n //= d
            m *= d
        d += 1 if d == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        k *= r
    else:
        m *= n
    return k, m


class ExactLength:
    """A real number ``Σ coeff * sqrt(radicand)`` with square-free radicands."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, Rational] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def sqrt_of(cls, square) -> "ExactLength":
        q = as_rational(square)
        if q < 0:
            raise ValueError("negative squared length")
        if q == 0:
            return cls()
        p, d = int(q.numerator), int(q.denominator)
        k, m = _squarefree(p * d)
        return cls({m: Rational(k, d)})

    def __add__(self, other: "ExactLength") -> "ExactLength":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExactLength(out)

    def __neg__(self):
        return ExactLength({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s) -> "ExactLength":
        s = as_rational(s)
        return ExactLength({m: c * s for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, ExactLength) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            cs = f"{int(c.numerator)}" if c.denominator == 1 else f"{int(c.numerator)}/{int(c.denominator)}"
            parts.append(cs if m == 1 else f"{cs}*sqrt({m})")
        return " + ".join(parts)


class Polyhedron3:
    """A triangulated closed surface given by rational vertices and index faces.

    Faces with more than three indices are split as fans.  Several
    connected components are allowed (a disjoint union).
    """

    def __init__(self, vertices: Iterable[Sequence], faces: Iterable[Sequence[int]]):
        self.vertices: Tuple[Vec3, ...] = tuple(
            tuple(as_rational(c) for c in v) for v in vertices)
        if any(len(v) != 3 for v in self.vertices):
            raise DegenerateInput("vertices must have three coordinates")
        tris = []
        for f in faces:
            f = [int(i) for i in f]
            if len(f) < 3:
                raise DegenerateInput(f"face {f} has fewer than 3 vertices")
            if any(not 0 <= i < len(self.vertices) for i in f):
                raise DegenerateInput(f"face {f} refers to a missing vertex")
            for k in range(1, len(f) - 1):
                tri = (f[0], f[k], f[k + 1])
                n = _cross(_sub(self.vertices[tri[1]], self.vertices[tri[0]]),
                           _sub(self.vertices[tri[2]], self.vertices[tri[0]]))
                if n == (0, 0, 0):
                    raise DegenerateInput(f"face {tri} is degenerate")
                tris.append(tri)
        self.faces: Tuple[Tuple[int, int, int], ...] = tuple(tris)

    @property
    def volume(self) -> Rational:
        """Signed volume (positive for outward orientation)."""
        vs = self.vertices
        total = Rational(0)
        for a, b, c in self.faces:
            total += _dot(vs[a], _cross(vs[b], vs[c]))
        return total / 6

    def scaled(self, s) -> "Polyhedron3":
        s = as_rational(s)
        return Polyhedron3([tuple(c * s for c in v) for v in self.vertices], self.faces)

    def translated(self, offset) -> "Polyhedron3":
        o = tuple(as_rational(c) for c in offset)
        return Polyhedron3([tuple(c + d for c, d in zip(v, o)) for v in self.vertices], self.faces)


def disjoint_union(a: Polyhedron3, b: Polyhedron3) -> Polyhedron3:
    shift = len(a.vertices)
    return Polyhedron3(a.vertices + b.vertices,
                       a.faces + tuple(tuple(i + shift for i in f) for f in b.faces))


def box(a=1, b=1, c=1, origin=(0, 0, 0)) -> Polyhedron3:
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    x0, y0, z0 = (as_rational(t) for t in origin)
    verts = [(x0 + i * a, y0 + j * b, z0 + k * c) for i in (0, 1) for j in (0, 1) for k in (0, 1)]
    # vertex index = 4*i + 2*j + k; quads listed CCW seen from outside
    quads = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)]
    return Polyhedron3(verts, quads)


def regular_tetrahedron(scale=1) -> Polyhedron3:
    """Alternate corners of a cube: edge length ``scale * sqrt(2)``."""
    s = as_rational(scale)
    verts = [(0, 0, 0), (s, s, 0), (s, 0, s), (0, s, s)]
    return Polyhedron3(verts, [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)])


def prism(base, height=1) -> Polyhedron3:
    """Extrude a plane polygon (any ``SimplePolygon``) along z."""
    from .tiling import triangulate

    h = as_rational(height)
    ring = list(base.vertices)
    n = len(ring)
    index = {v: k for k, v in enumerate(ring)}
    verts = [(v.x, v.y, Rational(0)) for v in ring] + [(v.x, v.y, h) for v in ring]
    faces = []
    for tri in triangulate(base):
        a, b, c = (index[v] for v in tri.vertices)
        faces.append((a, c, b))
        faces.append((a + n, b + n, c + n))
    for k in range(n):
        j = (k + 1) % n
        faces.append((k, j, j + n, k + n))
    return Polyhedron3(verts, faces)


class AngleData(NamedTuple):
    """Interior angle ``π ∓ atan2(sqrt(cross2), dot)`` of two face normals."""
    dot: Rational
    cross2: Rational
    reflex: bool

    def value(self) -> float:
        between = math.atan2(math.sqrt(float(self.cross2)), float(self.dot))
        return math.pi + between if self.reflex else math.pi - between

    def precise(self):
        between = mpmath.atan2(mpmath.sqrt(_mpf(self.cross2)), _mpf(self.dot))
        return mpmath.pi + between if self.reflex else mpmath.pi - between


def _mpf(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


class EdgeAngle(NamedTuple):
    edge: Tuple[int, int]
    squared_length: Rational
    angle: float
    exact: Optional[AngleData] = None


def dihedral_angles(p: Polyhedron3) -> List[EdgeAngle]:
    """Interior dihedral angle at every edge where the surface actually bends.

    Edges between coplanar triangles (diagonals of triangulated faces) are
    skipped.  Angles lie in (0, 2π); reflex edges exceed π.
    """
    owner: Dict[Tuple[int, int], int] = {}
    count: Dict[Tuple[int, int], int] = {}
    for fi, (a, b, c) in enumerate(p.faces):
        for x, y in ((a, b), (b, c), (c, a)):
            key = (min(x, y), max(x, y))
            count[key] = count.get(key, 0) + 1
            if (x, y) in owner:
                owner[(x, y)] = -1
            else:
                owner[(x, y)] = fi
    for key, n in count.items():
        if n != 2:
            raise OpenMesh(f"edge {key} lies on {n} faces")
    for (x, y), fi in owner.items():
        if fi < 0 or (y, x) not in owner:
            raise InconsistentOrientation(f"edge ({x}, {y}) is traversed twice in the same direction")

    vol = p.volume
    if vol == 0:
        raise DegenerateInput("polyhedron encloses zero volume")
    sign = 1 if vol > 0 else -1
    vs = p.vertices

    out = []
    for (x, y), fi in sorted(owner.items()):
        if x > y:
            continue
        f1, f2 = p.faces[fi], p.faces[owner[(y, x)]]
        c1 = next(i for i in f1 if i not in (x, y))
        c2 = next(i for i in f2 if i not in (x, y))
        a, b = vs[x], vs[y]
        n1 = _cross(_sub(b, a), _sub(vs[c1], a))
        n2 = _cross(_sub(a, b), _sub(vs[c2], b))
        if sign < 0:
            n1 = tuple(-t for t in n1)
            n2 = tuple(-t for t in n2)
        side = _dot(n1, _sub(vs[c2], a))
        if side == 0:
            if _dot(n1, n2) < 0:
                raise DegenerateInput(f"surface folds flat onto itself at edge ({x}, {y})")
            continue
        cr = _cross(n1, n2)
        exact = AngleData(_dot(n1, n2), _dot(cr, cr), side > 0)
        d = _sub(b, a)
        out.append(EdgeAngle((x, y), _dot(d, d), exact.value(), exact))
    return out


def is_rational_multiple_of_pi(angle: float, max_denominator: int = MAX_DENOMINATOR,
                               tol: float = ANGLE_TOL) -> bool:
    best = Fraction(angle / math.pi).limit_denominator(max_denominator)
    return abs(angle - math.pi * best) <= tol


class DehnTerm(NamedTuple):
    length: ExactLength
    angle: float
    exact: Optional[AngleData] = None


@dataclass(frozen=True)
class DehnInvariant:
    terms: Tuple[DehnTerm, ...]
    reduced: bool = False
    max_denominator: int = MAX_DENOMINATOR
    tol: float = ANGLE_TOL

    def reduce(self) -> "DehnInvariant":
        """Rewrite all angles in a Q-basis modulo π and collect lengths.

        Terms built from bare floats (no :class:`AngleData`) fall back to
        dropping angles in πQ and merging angles congruent up to sign.
        """
        if self.reduced:
            return self
        terms = sorted(self.terms, key=lambda t: (t.angle, float(t.length)))
        if all(t.exact is not None for t in terms):
            kept = _reduce_by_relations(terms, self.max_denominator)
        else:
            kept = _reduce_pairwise(terms, self.max_denominator, self.tol)
        return DehnInvariant(tuple(kept), True, self.max_denominator, self.tol)

    def __add__(self, other: "DehnInvariant") -> "DehnInvariant":
        return DehnInvariant(self.terms + other.terms, False, self.max_denominator, self.tol).reduce()

    def __neg__(self) -> "DehnInvariant":
        return DehnInvariant(tuple(DehnTerm(-t.length, t.angle, t.exact) for t in self.terms),
                             self.reduced, self.max_denominator, self.tol)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s) -> "DehnInvariant":
        return DehnInvariant(tuple(DehnTerm(t.length.scaled(s), t.angle, t.exact) for t in self.terms),
                             self.reduced, self.max_denominator, self.tol)

    def is_zero(self) -> bool:
        return not self.reduce().terms

    def __str__(self):
        inv = self.reduce()
        if not inv.terms:
            return "0"
        return " + ".join(f"({t.length!r}) ⊗ {t.angle:.12g}" for t in inv.terms)


def _reduce_by_relations(terms: Sequence[DehnTerm], max_coeff: int) -> List[DehnTerm]:
    with mpmath.workdps(RELATION_DIGITS + 10):
        eps = mpmath.mpf(10) ** -RELATION_DIGITS
        basis: List[list] = []  # [term, precise angle, collected length]
        for t in terms:
            x = t.exact.precise()
            # angles lie in (0, 2π), so the π coefficient may be twice the others
            rel = mpmath.pslq([x] + [b[1] for b in basis] + [mpmath.pi], tol=eps,
                              maxcoeff=2 * max_coeff, maxsteps=10 ** 5)
            if rel is None or rel[0] == 0 or max(abs(c) for c in rel[:-1]) > max_coeff:
                basis.append([t, x, t.length])
                continue
            for b, c in zip(basis, rel[1:-1]):
                if c:
                    b[2] = b[2] + t.length.scaled(Rational(-c, rel[0]))
    return [DehnTerm(length, t.angle, t.exact) for t, _, length in basis if not length.is_zero()]


def _reduce_pairwise(terms: Sequence[DehnTerm], D: int, tol: float) -> List[DehnTerm]:
    groups: List[list] = []  # [angle, length]
    for term in terms:
        if is_rational_multiple_of_pi(term.angle, D, tol):
            continue
        for g in groups:
            if is_rational_multiple_of_pi(term.angle - g[0], D, tol):
                g[1] = g[1] + term.length
                break
            if is_rational_multiple_of_pi(term.angle + g[0], D, tol):
                g[1] = g[1] - term.length
                break
        else:
            groups.append([term.angle, term.length])
    return [DehnTerm(length, angle) for angle, length in groups
            if not length.is_zero() and abs(float(length)) > tol]


def dehn_invariant(p: Polyhedron3, max_denominator: int = MAX_DENOMINATOR,
                   tol: float = ANGLE_TOL) -> DehnInvariant:
    terms = tuple(DehnTerm(ExactLength.sqrt_of(e.squared_length), e.angle, e.exact)
                  for e in dihedral_angles(p))
    return DehnInvariant(terms, False, max_denominator, tol).reduce()


def invariant_is_zero(d: DehnInvariant) -> bool:
    return d.is_zero()


def invariant_eq(d1: DehnInvariant, d2: DehnInvariant) -> bool:
    """Semi-decision: False is reliable, True means no difference was detected."""
    return (d1 - d2).is_zero()
