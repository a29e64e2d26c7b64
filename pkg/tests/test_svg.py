import re

from conftest import L_SHAPE, rect, square
from scissorkit.equidecomp import Certificate, equal_area_transform
from scissorkit.exact_geom import SimplePolygon
from scissorkit.monge import monge_map
from scissorkit.svg import piece_color, render_certificate, render_decomposition

TRI = SimplePolygon([(0, 0), (2, 0), (0, 1)])


def _polygons(svg):
    return re.findall(r'<polygon points="[^"]*" fill="([^"]*)"', svg)


def test_single_square():
    svg = render_decomposition([square()])
    assert len(_polygons(svg)) == 1
    assert svg.startswith('<?xml version="1.0"') and 'version="1.1"' in svg


def test_empty_canvas():
    svg = render_decomposition([])
    assert "<svg" in svg and svg.rstrip().endswith("</svg>")
    assert _polygons(svg) == []


def test_square_to_triangle_panels():
    m = monge_map(square(), TRI)
    svg = render_certificate(Certificate.from_pl_map(m))
    fills = _polygons(svg)
    assert len(fills) == 2 * len(m)
    # same colour sequence on both panels
    assert fills[:len(m)] == fills[len(m):]
    assert svg.count('<g id="panel') == 2


def test_deterministic_bytes():
    c = equal_area_transform(SimplePolygon(L_SHAPE), rect(3, 1))
    assert render_certificate(c) == render_certificate(c)
    again = equal_area_transform(SimplePolygon(L_SHAPE), rect(3, 1))
    assert render_certificate(again) == render_certificate(c)


def test_colours_are_distinct_for_neighbours():
    assert len({piece_color(k) for k in range(12)}) == 12
