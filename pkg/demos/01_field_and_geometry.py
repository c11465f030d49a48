"""
Finite fields and the incidence structure of PG(3,q)
====================================================

Builds GF(9), the space PG(3,9) over it, and walks through lines,
Plücker coordinates and collineations.
"""

import numpy as np

from cameron_liebler import build_geometry, field_new
from cameron_liebler.geometry import Collineation

# GF(9) as GF(3)[t]/(t^2 + 1); elements are coded c0 + 3*c1
F = field_new(3, 2, [1, 0, 1])
t = F([0, 1])
print("t*t =", (t * t).coeffs, " (that is -1)")
print("nonzero squares:", [a.code for a in F.elements()[1:] if a.is_square()])

# Points and planes are normalized so the first nonzero coordinate is 1
g = build_geometry(F)
print(g.summary())

# The line through two points, identified by its Plücker tuple
P, R = g.point_id([1, 0, 0, 0]), g.point_id([0, 0, 1, 1])
line = g.line_through(P, R)
print("line", line.id, "plucker", [int(c) for c in line.plucker], "points", sorted(line.point_set))

# Two lines meet iff their Plücker pairing vanishes
meets = g.meet_matrix([line.id], np.arange(g.num_lines))[0]
print("lines meeting it, itself included:", int(meets.sum()), "= (q+1)(q^2+q) + 1 =", 10 * 90 + 1)

# Frobenius x -> x^3 fixes exactly the points of the subgeometry PG(3,3)
frob = Collineation(g, np.eye(4, dtype=int).tolist(), phi=1)
print("points fixed by Frobenius:", int((frob.point_map == np.arange(g.num_points)).sum()))
