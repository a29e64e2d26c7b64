"""Text formats.  Every rational is written as a canonical ``"p/q"`` string.

Geometry documents hold named objects, one per line::

    # comment
    polygon sq = (0,0) (1,0) (1,1) (0,1)
    weighted w = 2: (0,0) (1,0) (1,1) (0,1) | 1: (1,0) (2,0) (2,1) (1,1)
    mesh cube = (0,0,0) (1,0,0) ... ; [0,1,3] [0,3,2] ...

Certificates are JSON documents (see :func:`certificate_to_json`).
"""
from __future__ import annotations

import json
import re
from typing import Dict, List, Tuple, Union

from .dehn import Polyhedron3
from .equidecomp import Certificate, WeightedPolygon
from .errors import ParseError, ScissorsError
from .exact_geom import (AffineMap2, Point2, SimplePolygon, format_rational,
                         parse_rational)
from .monge import Piece, PLMap

GeometryObject = Union[SimplePolygon, WeightedPolygon, Polyhedron3]

CERTIFICATE_FORMAT = "scissorkit-certificate"
CERTIFICATE_VERSION = 1

_DECL_RE = re.compile(r"^\s*(\w+)\s+([A-Za-z_][\w.-]*)\s*=\s*(.*)$")
_TUPLE_RE = re.compile(r"\(([^()]*)\)")
_INDEX_RE = re.compile(r"\[([^\[\]]*)\]")


class GeometryDocument(dict):
    """Ordered mapping name -> polygon / weighted polygon / mesh."""

    def first(self, kind):
        for name, obj in self.items():
            if isinstance(obj, kind):
                return name, obj
        raise KeyError(f"no {kind.__name__} in document")


def _rationals(text: str, line: int, col: int, arity: int) -> Tuple:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != arity:
        raise ParseError(f"expected {arity} coordinates, found {len(parts)}", line, col)
    try:
        return tuple(parse_rational(t) for t in parts)
    except ParseError as exc:
        raise ParseError(str(exc), line, col) from None


def _check_gap(text: str, start: int, end: int, line: int, base: int) -> None:
    gap = text[start:end]
    if gap.strip():
        col = base + start + len(gap) - len(gap.lstrip()) + 1
        raise ParseError(f"unexpected {gap.strip()!r}", line, col)


def _tuples(text: str, line: int, base: int, arity: int) -> List[Tuple]:
    out = []
    pos = 0
    for m in _TUPLE_RE.finditer(text):
        _check_gap(text, pos, m.start(), line, base)
        out.append(_rationals(m.group(1), line, base + m.start() + 1, arity))
        pos = m.end()
    _check_gap(text, pos, len(text), line, base)
    return out


def parse_geometry(text: str) -> GeometryDocument:
    doc = GeometryDocument()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _DECL_RE.match(line)
        if m is None:
            raise ParseError("expected '<kind> <name> = ...'", lineno, 1)
        kind, name, body = m.groups()
        base = m.start(3)
        if name in doc:
            raise ParseError(f"duplicate name {name!r}", lineno, m.start(2) + 1)
        try:
            if kind == "polygon":
                doc[name] = SimplePolygon(_tuples(body, lineno, base, 2))
            elif kind == "weighted":
                cells = []
                offset = base
                for chunk in body.split("|"):
                    dens, colon, pts = chunk.partition(":")
                    if not colon:
                        raise ParseError("weighted cell needs '<density>: points'", lineno, offset + 1)
                    try:
                        d = parse_rational(dens)
                    except ParseError as exc:
                        raise ParseError(str(exc), lineno, offset + 1) from None
                    cell = SimplePolygon(_tuples(pts, lineno, offset + len(dens) + 1, 2))
                    cells.append((cell, d))
                    offset += len(chunk) + 1
                doc[name] = WeightedPolygon(tuple(cells))
            elif kind == "mesh":
                verts_text, semi, faces_text = body.partition(";")
                if not semi:
                    raise ParseError("mesh needs 'vertices ; faces'", lineno, base + 1)
                verts = _tuples(verts_text, lineno, base, 3)
                faces = []
                fbase = base + len(verts_text) + 1
                pos = 0
                for fm in _INDEX_RE.finditer(faces_text):
                    _check_gap(faces_text, pos, fm.start(), lineno, fbase)
                    try:
                        faces.append([int(t) for t in fm.group(1).split(",")])
                    except ValueError:
                        raise ParseError("face indices must be integers", lineno,
                                         fbase + fm.start() + 1) from None
                    pos = fm.end()
                _check_gap(faces_text, pos, len(faces_text), lineno, fbase)
                doc[name] = Polyhedron3(verts, faces)
            else:
                raise ParseError(f"unknown object kind {kind!r}", lineno, m.start(1) + 1)
        except ParseError:
            raise
        except (ScissorsError, ValueError) as exc:
            raise ParseError(f"invalid {kind} {name!r}: {exc}", lineno, base + 1) from None
    return doc


def _fmt_points(points) -> str:
    return " ".join("(" + ",".join(format_rational(c) for c in p) + ")" for p in points)


def emit_geometry(doc: Dict[str, GeometryObject]) -> str:
    lines = []
    for name, obj in doc.items():
        if isinstance(obj, SimplePolygon):
            lines.append(f"polygon {name} = {_fmt_points(obj.vertices)}")
        elif isinstance(obj, WeightedPolygon):
            cells = " | ".join(f"{format_rational(d)}: {_fmt_points(c.vertices)}" for c, d in obj.cells)
            lines.append(f"weighted {name} = {cells}")
        elif isinstance(obj, Polyhedron3):
            faces = " ".join("[" + ",".join(str(i) for i in f) + "]" for f in obj.faces)
            lines.append(f"mesh {name} = {_fmt_points(obj.vertices)} ; {faces}")
        else:
            raise TypeError(f"cannot emit {type(obj).__name__}")
    return "\n".join(lines) + "\n"


# --- certificates ---------------------------------------------------------

def _q(x) -> str:
    return format_rational(x)


def _poly_json(p: SimplePolygon):
    return [[_q(v.x), _q(v.y)] for v in p.vertices]


def _affine_json(m: AffineMap2):
    return {"linear": [[_q(c) for c in row] for row in m.linear],
            "translation": [_q(c) for c in m.translation]}


def _plmap_json(m: PLMap):
    return {
        "source": _poly_json(m.source),
        "target": _poly_json(m.target),
        "jacobian": _q(m.jacobian),
        "pieces": [dict(cell=_poly_json(c), **_affine_json(a)) for c, a in m.pieces],
    }


def _weights_json(w: WeightedPolygon):
    return [{"density": _q(d), "cell": _poly_json(c)} for c, d in w.cells]


def certificate_to_dict(c: Certificate) -> dict:
    pairs = []
    for (i, j), m, jac in zip(c.pairing, c.piece_maps, c.jacobians):
        entry = {"source": i, "target": j, "jacobian": _q(jac)}
        if isinstance(m, PLMap):
            entry["pl_map"] = _plmap_json(m)
        else:
            entry["affine"] = _affine_json(m)
        pairs.append(entry)
    doc = {
        "format": CERTIFICATE_FORMAT,
        "version": CERTIFICATE_VERSION,
        "source": _poly_json(c.source),
        "target": _poly_json(c.target),
        "source_pieces": [_poly_json(p) for p in c.source_pieces],
        "target_pieces": [_poly_json(p) for p in c.target_pieces],
        "pairs": pairs,
    }
    if c.source_weights is not None:
        doc["source_weights"] = _weights_json(c.source_weights)
    if c.target_weights is not None:
        doc["target_weights"] = _weights_json(c.target_weights)
    return doc


def certificate_to_json(c: Certificate) -> str:
    return json.dumps(certificate_to_dict(c), indent=1) + "\n"


def _expect_keys(obj, required, optional=(), where="certificate"):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    keys = set(obj)
    missing = set(required) - keys
    unknown = keys - set(required) - set(optional)
    if missing:
        raise ParseError(f"{where}: missing field(s) {sorted(missing)}")
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")


def _rat_json(x, where):
    if not isinstance(x, str):
        raise ParseError(f"{where}: rationals must be strings, found {x!r}")
    try:
        return parse_rational(x)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _point_json(p, where):
    if not isinstance(p, list) or len(p) != 2:
        raise ParseError(f"{where}: a point is a pair of rationals")
    return Point2(_rat_json(p[0], where), _rat_json(p[1], where))


def _poly_from_json(data, where) -> SimplePolygon:
    if not isinstance(data, list):
        raise ParseError(f"{where}: a polygon is a list of points")
    return SimplePolygon([_point_json(p, where) for p in data])


def _affine_from_json(data, where, extra=()) -> AffineMap2:
    _expect_keys(data, ("linear", "translation"), extra, where)
    lin = data["linear"]
    if not (isinstance(lin, list) and len(lin) == 2 and all(isinstance(r, list) and len(r) == 2 for r in lin)):
        raise ParseError(f"{where}: linear part must be a 2x2 matrix")
    a, b = (_rat_json(x, where) for x in lin[0])
    c, d = (_rat_json(x, where) for x in lin[1])
    t = _point_json(data["translation"], where)
    return AffineMap2(((a, b), (c, d)), t)


def _plmap_from_json(data, where) -> PLMap:
    _expect_keys(data, ("source", "target", "jacobian", "pieces"), where=where)
    pieces = []
    for k, pc in enumerate(data["pieces"]):
        w = f"{where}.pieces[{k}]"
        aff = _affine_from_json(pc, w, extra=("cell",))
        if "cell" not in pc:
            raise ParseError(f"{w}: missing field(s) ['cell']")
        pieces.append(Piece(_poly_from_json(pc["cell"], w), aff))
    return PLMap(tuple(pieces), _poly_from_json(data["source"], where),
                 _poly_from_json(data["target"], where), _rat_json(data["jacobian"], where))


def _weights_from_json(data, where) -> WeightedPolygon:
    if not isinstance(data, list):
        raise ParseError(f"{where}: expected a list of cells")
    cells = []
    for k, cell in enumerate(data):
        w = f"{where}[{k}]"
        _expect_keys(cell, ("density", "cell"), where=w)
        cells.append((_poly_from_json(cell["cell"], w), _rat_json(cell["density"], w)))
    return WeightedPolygon(tuple(cells))


def certificate_from_dict(doc) -> Certificate:
    """Strict loader: unknown fields and non-string rationals are rejected.

    Geometric degeneracies (e.g. a zero-area piece) propagate as
    :class:`~scissorkit.errors.DegenerateInput`, not as parse errors.
    """
    _expect_keys(doc, ("format", "version", "source", "target", "source_pieces",
                       "target_pieces", "pairs"), ("source_weights", "target_weights"))
    if doc["format"] != CERTIFICATE_FORMAT or doc["version"] != CERTIFICATE_VERSION:
        raise ParseError(f"not a {CERTIFICATE_FORMAT} v{CERTIFICATE_VERSION} document")
    pairing, maps, jacs = [], [], []
    for k, pair in enumerate(doc["pairs"]):
        w = f"pairs[{k}]"
        if not isinstance(pair, dict):
            raise ParseError(f"{w}: expected an object")
        kind = "pl_map" if "pl_map" in pair else "affine"
        _expect_keys(pair, ("source", "target", "jacobian", kind), where=w)
        if not (isinstance(pair["source"], int) and isinstance(pair["target"], int)):
            raise ParseError(f"{w}: piece indices must be integers")
        pairing.append((pair["source"], pair["target"]))
        jacs.append(_rat_json(pair["jacobian"], w))
        if kind == "pl_map":
            maps.append(_plmap_from_json(pair["pl_map"], f"{w}.pl_map"))
        else:
            maps.append(_affine_from_json(pair["affine"], f"{w}.affine"))
    return Certificate(
        source=_poly_from_json(doc["source"], "source"),
        target=_poly_from_json(doc["target"], "target"),
        source_pieces=[_poly_from_json(p, f"source_pieces[{k}]") for k, p in enumerate(doc["source_pieces"])],
        target_pieces=[_poly_from_json(p, f"target_pieces[{k}]") for k, p in enumerate(doc["target_pieces"])],
        pairing=pairing, piece_maps=maps, jacobians=jacs,
        source_weights=_weights_from_json(doc["source_weights"], "source_weights")
        if "source_weights" in doc else None,
        target_weights=_weights_from_json(doc["target_weights"], "target_weights")
        if "target_weights" in doc else None,
    )


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return certificate_from_dict(doc)
