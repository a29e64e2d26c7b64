"""
Why a tetrahedron is not a cube in disguise
===========================================

Boxes and prisms have a vanishing Dehn invariant; the regular tetrahedron
does not, so no dissection turns one into the other even at equal volume.
"""
import math

from scissorkit import (SimplePolygon, box, dehn_invariant, invariant_eq, prism,
                        regular_tetrahedron)

cube = box()
tetra = regular_tetrahedron()
print("cube:", dehn_invariant(cube))
print("1x2x3 box:", dehn_invariant(box(1, 2, 3)))
print("tetrahedron:", dehn_invariant(tetra), f"(arccos(1/3) = {math.acos(1 / 3):.11f})")

flat = box(1, 1, tetra.volume)
print("box of volume", tetra.volume, "vs tetrahedron equal?",
      invariant_eq(dehn_invariant(flat), dehn_invariant(tetra)))

# a prism over an irregular pentagon: its side angles sum to 3*pi
base = SimplePolygon([(0, 0), (7, 1), (8, 5), (3, 7), (-1, 4)])
print("pentagonal prism:", dehn_invariant(prism(base, 2)))
