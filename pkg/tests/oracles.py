"""Independent reference computations used to cross-check the package.

They deliberately avoid scissorkit internals: plain Fractions, plain
floats, brute force where it is cheap.
"""
import math
from fractions import Fraction


def F(x):
    return Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)


def shoelace(points):
    pts = [(F(x), F(y)) for x, y in points]
    s = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]))
    return abs(s) / 2


def is_rational_pi_multiple_bruteforce(theta, max_q=10**4, tol=1e-9):
    """Scan every denominator q <= max_q for p/q within tol of theta/pi."""
    r = theta / math.pi
    for q in range(1, max_q + 1):
        if abs(r - round(r * q) / q) <= tol:
            return True
    return False


def inside_convex(poly, p):
    """Closed point-in-convex-polygon test with Fractions (CCW input)."""
    pts = [(F(x), F(y)) for x, y in poly]
    px, py = F(p[0]), F(p[1])
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        if (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0) < 0:
            return False
    return True


def tetra_dihedral():
    return math.acos(1 / 3)


def segment_x_area_of_triangle_left(cut):
    """Area of {(x,y): 0<=x<=cut, 0<=y<=1-x} by integration of 1-x."""
    c = Fraction(cut)
    return c - c * c / 2
