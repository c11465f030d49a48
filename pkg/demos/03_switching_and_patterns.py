"""
Switching a line class and reading its patterns
===============================================

Finds the switchable point-plane pairs of S ∪ T^1 in PG(3,3), switches at
one of them, and inspects the pattern matrix of a line in the pencil.
"""

from cameron_liebler import EllipticQuadric, build_geometry, field_new
from cameron_liebler.line_classes import (
    boundary_parameter,
    check_pattern_identities,
    pattern,
    switch,
    switchable_pairs,
)
from cameron_liebler.verification import degree_check

g = build_geometry(field_new(3))
Q = EllipticQuadric(g)
L = Q.bruen_drudge("secants", 1)

# Every switchable pair is a quadric point with its tangent plane
pairs = switchable_pairs(L)
print(len(pairs), "switchable pairs; first:", pairs[0])
s = pairs[0]
print("point on quadric:", bool(Q.on_quadric[s.point]), " plane is tangent:", Q.tangent_plane(s.point) == s.plane)

L2 = switch(L, s.point, s.plane)
print("sizes", L.size(), L2.size(), " degree check:", degree_check(L2, 5).passed)
print("switching back restores L:", switch(L2, s.point, s.plane) == L)

# Pattern of a non-member line of the pencil, with the pair moved to the front
lid = next(int(m) for m in g.pencil(s.point, s.plane) if not L.members[m])
T = pattern(lid, L).with_front(point=s.point, plane=s.plane)
print(T.entries)
print("identities:", check_pattern_identities(T, 5))
print("(t, x) read from the boundary:", boundary_parameter(T))
