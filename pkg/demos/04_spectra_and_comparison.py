"""
Telling switched classes apart
==============================

Plane and point spectra are invariant under collineations and swap under
dualities.  For q = 5 and 7 they separate the switched class from both
Bruen-Drudge halves; at q = 3 they do not.
"""

from cameron_liebler import EllipticQuadric, build_geometry, field_new
from cameron_liebler.line_classes import plane_spectrum, switch, switchable_pairs
from cameron_liebler.verification import compare_invariants, containment_flags

for q in (3, 5, 7):
    Q = EllipticQuadric(build_geometry(field_new(q)))
    L = Q.bruen_drudge("secants", 1)
    s = switchable_pairs(L)[0]
    L2 = switch(L, s.point, s.plane)
    print(f"q={q}")
    print("  planes of L':", plane_spectrum(L2))
    print("  vs L:", compare_invariants(L2, L).verdict.value,
          "| vs complement:", compare_invariants(L2, L.complement()).verdict.value)
    print("  switchable pairs of L':", len(switchable_pairs(L2)))
    print("  containment:", containment_flags(L2))
