"""
An elliptic quadric and the Bruen-Drudge line classes
=====================================================

Classifies the lines of PG(3,5) against the quadric x0x1 + x2^2 - d x3^2,
splits the tangents into two halves and assembles S ∪ T^1.
"""

from cameron_liebler import EllipticQuadric, build_geometry, field_new
from cameron_liebler.line_classes import plane_spectrum, point_spectrum
from cameron_liebler.verification import full_verify, regular_spread, spread_intersection

g = build_geometry(field_new(5))
Q = EllipticQuadric(g)
print("form:", Q.form.to_text())
print("quadric points:", len(Q.points))
print("tangents / secants / externals:", len(Q.tangents), len(Q.secants), len(Q.externals))

# A tangent's label is the square class of the form at any of its other points
lid = int(Q.tangents[0])
print("tangent", lid, "label", Q.tangent_label(lid), "half sizes:",
      len(Q.tangents_labeled(1)), len(Q.tangents_labeled(2)))

# The class has parameter (q^2+1)/2 = 13: it meets every spread in 13 lines
L = Q.bruen_drudge("secants", 1)
print("size", L.size(), "regular spread hits", spread_intersection(L, regular_spread(g)))
print("plane spectrum:", plane_spectrum(L))
print("point spectrum:", point_spectrum(L))

report = full_verify(L, spread_samples=50)
print(report.to_text())
