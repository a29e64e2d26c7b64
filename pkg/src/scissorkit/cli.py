"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 infeasible input (unequal areas, non-convex where convexity is needed, ...).
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import formats
from .dehn import Polyhedron3, dehn_invariant
from .equidecomp import (Certificate, WeightedPolygon, density_transform,
                         equal_area_transform, verify_certificate)
from .errors import ParseError, ScissorsError
from .exact_geom import SimplePolygon, format_rational, point_in_polygon
from .kring import DEFAULT_BUDGET, normalize, parse_expr, parse_relation_script, vol_eval
from .monge import monge_map, pl_apply, reduce_to_triangle
from .sampling import random_interior_point
from .svg import render_certificate, render_decomposition

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Failed(Exception):
    """Raised by a command whose check did not pass (exit 1)."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_object(ref: str, kind):
    """``file.geo`` (first object of ``kind``) or ``file.geo:name``."""
    path, name = ref, None
    if not os.path.exists(ref) and ":" in ref:
        path, name = ref.rsplit(":", 1)
    doc = formats.parse_geometry(_read(path))
    if name is None:
        try:
            return doc.first(kind)[1]
        except KeyError:
            raise ParseError(f"{path}: no {kind.__name__} found") from None
    if name not in doc:
        raise ParseError(f"{path}: no object named {name!r}")
    obj = doc[name]
    if not isinstance(obj, kind):
        raise ParseError(f"{path}:{name} is a {type(obj).__name__}, expected {kind.__name__}")
    return obj


def _load_weighted(ref: str) -> WeightedPolygon:
    try:
        return load_object(ref, WeightedPolygon)
    except ParseError:
        return WeightedPolygon.uniform(load_object(ref, SimplePolygon))


def _fmt_poly(p: SimplePolygon) -> str:
    return " ".join(f"({format_rational(v.x)},{format_rational(v.y)})" for v in p.vertices)


def cmd_reduce(args) -> None:
    p = load_object(args.polygon, SimplePolygon)
    red = reduce_to_triangle(p)
    print(f"triangle: {_fmt_poly(red.triangle)}")
    print(f"steps: {red.steps}")
    if args.output:
        _write(formats.emit_geometry({"triangle": red.triangle}), args.output)


def _spot_check(cert: Certificate, samples: int, seed: Optional[int]) -> None:
    rng = random.Random(seed)
    m = cert.piece_maps[0]
    for _ in range(samples):
        x = random_interior_point(rng, cert.source)
        y = pl_apply(m, x)
        if not point_in_polygon(cert.target, y):
            raise _Failed(f"sample {x} maps to {y}, outside the target")


def cmd_map(args) -> None:
    p = load_object(args.source, SimplePolygon)
    q = load_object(args.target, SimplePolygon)
    cert = Certificate.from_pl_map(monge_map(p, q))
    _write(formats.certificate_to_json(cert), args.output)
    if args.samples:
        _spot_check(cert, args.samples, args.seed)


def cmd_equidecompose(args) -> None:
    p = load_object(args.source, SimplePolygon)
    q = load_object(args.target, SimplePolygon)
    _write(formats.certificate_to_json(equal_area_transform(p, q)), args.output)


def cmd_density_map(args) -> None:
    cert = density_transform(_load_weighted(args.source), _load_weighted(args.target))
    _write(formats.certificate_to_json(cert), args.output)


def cmd_dehn(args) -> None:
    print(dehn_invariant(load_object(args.mesh, Polyhedron3)))


def cmd_ring(args) -> None:
    store, queries = parse_relation_script(_read(args.script))
    queries += [parse_expr(q) for q in args.query]
    if not queries:
        raise ParseError("nothing to normalize: add 'query' lines or --query")
    for q in queries:
        nf = normalize(store, q, args.budget)
        print(f"{q} -> {nf}")
        if args.volume:
            v = vol_eval(store, q, budget=args.budget)
            print(f"  vol = {v!r}" if isinstance(v, float) else f"  vol = {format_rational(v)}")


def cmd_verify(args) -> None:
    text = _read(args.certificate)
    try:
        cert = formats.certificate_from_json(text)
    except ParseError:
        raise
    except ScissorsError as exc:
        # well formed, but geometrically broken (e.g. a degenerate piece)
        print(f"FAIL load: {exc}")
        print("verdict: FAIL")
        raise _Failed(str(exc)) from None
    report = verify_certificate(cert)
    print(report)
    if not report.ok:
        raise _Failed("certificate rejected")


def cmd_render(args) -> None:
    text = _read(args.input)
    if text.lstrip().startswith("{"):
        svg = render_certificate(formats.certificate_from_json(text))
    else:
        doc = formats.parse_geometry(text)
        pieces = []
        for obj in doc.values():
            if isinstance(obj, SimplePolygon):
                pieces.append(obj)
            elif isinstance(obj, WeightedPolygon):
                pieces.extend(c for c, _ in obj.cells)
        svg = render_decomposition(pieces)
    _write(svg, args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scissorkit", description="Exact scissors congruence toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("-o", "--output", metavar="FILE", help="output file (default: stdout)")
        return sp

    sp = add("reduce", cmd_reduce, "reduce a convex polygon to a triangle")
    sp.add_argument("polygon", help="geometry file[:name]")

    sp = add("map", cmd_map, "Monge map between two convex polygons of equal area")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--samples", type=int, default=0,
                    help="spot-check this many random source points")
    sp.add_argument("--seed", type=int, default=None, help="seed for --samples")

    sp = add("equidecompose", cmd_equidecompose, "certificate between two polygons of equal area")
    sp.add_argument("source")
    sp.add_argument("target")

    sp = add("density-map", cmd_density_map, "certificate between two weighted polygons")
    sp.add_argument("source")
    sp.add_argument("target")

    sp = add("dehn", cmd_dehn, "Dehn invariant of a closed mesh")
    sp.add_argument("mesh")

    sp = add("ring", cmd_ring, "normalize queries against a relation script")
    sp.add_argument("script")
    sp.add_argument("--query", "-q", action="append", default=[], help="extra expression")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="rewrite budget")
    sp.add_argument("--volume", action="store_true", help="also print volumes")

    sp = add("verify", cmd_verify, "check a certificate file")
    sp.add_argument("certificate")

    sp = add("render", cmd_render, "SVG of a geometry file or a certificate")
    sp.add_argument("input")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        args.func(args)
    except _Failed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScissorsError as exc:
        print(f"infeasible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
