"""Acceptance criteria 1-10.  A pass/fail line per criterion is printed in the
terminal summary by the hooks in ``conftest.py``."""

import numpy as np
import pytest

from cameron_liebler import LineClass, build_geometry
from cameron_liebler.errors import PartitionFailure
from cameron_liebler.line_classes import (
    check_pattern_identities,
    parameter_system_solutions,
    pattern,
    plane_counts,
    plane_spectrum,
    point_spectrum,
    switch,
    switchable_pairs,
)
from cameron_liebler.verification import (
    Verdict,
    compare_invariants,
    containment_flags,
    degree_check,
    regular_spread,
    sample_spreads,
    spread_intersection,
    validate_spread,
)

from conftest import DESK_Q, bd, field, first_pair, geometry, quadric, rng, switched
from test_geometry import lines_mod

criterion = pytest.mark.criterion


def x_of(q):
    return (q * q + 1) // 2


@criterion(1, "construction counts at q=3")
def test_criterion_01_counts():
    g, Q = geometry(3), quadric(3)
    pts, lines = lines_mod(3)
    assert g.num_points == len(pts) == 40
    assert g.num_lines == len(lines) == 130
    zeros = [v for v in pts if (v[0] * v[1] + v[2] ** 2 - 2 * v[3] ** 2) % 3 == 0]
    assert len(Q.points) == len(zeros) == 10
    # classify each enumerated line by its number of quadric points
    on = {i for i, v in enumerate(pts) if v in set(zeros)}
    kinds = [len(on & s) for s in lines]
    assert (kinds.count(1), kinds.count(2), kinds.count(0)) == (40, 45, 45)
    assert (len(Q.tangents), len(Q.secants), len(Q.externals)) == (40, 45, 45)
    assert len(Q.tangents_labeled(1)) == len(Q.tangents_labeled(2)) == 20
    assert bd(3).size() == 65


@criterion(2, "bd-S1 meets regular + 100 seeded spreads in x=(q^2+1)/2")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_02_spreads(q):
    g, L = geometry(q), bd(q)
    x = x_of(q)
    assert x == {3: 5, 5: 13, 7: 25, 9: 41}[q]
    assert spread_intersection(L, regular_spread(g)) == x
    spreads = sample_spreads(g, 100)
    assert len(spreads) == 100
    assert {spread_intersection(L, S) for S in spreads} == {x}


@criterion(3, "switching at (P1, tau_P1) keeps size, degree check and spread values")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_03_switching(q):
    g, Q, L = geometry(q), quadric(q), bd(q)
    s = first_pair(q)
    assert Q.on_quadric[s.point] and Q.tangent_plane(s.point) == s.plane
    L2 = switch(L, s.point, s.plane)
    x = x_of(q)
    assert L2.size() == L.size() and L2 != L
    assert degree_check(L2, x).passed
    assert spread_intersection(L2, regular_spread(g)) == x
    assert {spread_intersection(L2, S) for S in sample_spreads(g, 100)} == {x}


@criterion(4, "pattern identities for every line of L and L' at q in {3,5}")
@pytest.mark.parametrize("q", (3, 5))
def test_criterion_04_patterns(q):
    g, x = geometry(q), x_of(q)
    for L in (bd(q), switched(q)):
        for lid in range(g.num_lines):
            T = pattern(lid, L)
            assert T.in_class == bool(L.members[lid])
            assert check_pattern_identities(T, x).all, lid
    if q == 3:
        s = first_pair(3)
        lid = next(m for m in g.pencil(s.point, s.plane) if not bd(3).members[m])
        assert int((pattern(int(lid), bd(3)).entries ** 2).sum()) == 40 == x * (q + x)


@criterion(5, "parameter system has exactly (0, q^2) and ((q+1)/2, (q^2+1)/2)")
@pytest.mark.parametrize("q", DESK_Q + (11, 13))
def test_criterion_05_parameter_system(q):
    assert parameter_system_solutions(q) == [(0, q * q), ((q + 1) // 2, x_of(q))]


@criterion(6, "spectrum supports of L and tangent-plane values in L'")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_06_spectra(q):
    L, L2, Q = bd(q), switched(q), quadric(q)
    h = (q + 1) // 2
    assert set(plane_spectrum(L)) == {h, q * h, (q + 1) * (q + 2) // 2}
    assert set(point_spectrum(L)) == {q * q + h, q * (q - 1) // 2, q * h + 1}
    s = first_pair(q)
    counts = plane_counts(L2)
    assert counts[s.plane] == q * q + h
    others = [Q.tangent_plane(P) for P in Q.points if P != s.point]
    assert set(counts[others].tolist()) == {h + 1}


@criterion(7, "compare_invariants: Distinct at q=5,7,9; Indistinguishable vs complement at q=3")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_07_non_equivalence(q):
    L, L2 = bd(q), switched(q)
    if q == 3:
        assert compare_invariants(L2, L.complement()).verdict is Verdict.INDISTINGUISHABLE
    else:
        assert compare_invariants(L2, L).verdict is Verdict.DISTINCT
        assert compare_invariants(L2, L.complement()).verdict is Verdict.DISTINCT


@criterion(8, "L' has exactly one switchable pair and switching back gives L")
@pytest.mark.parametrize("q", (5, 7, 9))
def test_criterion_08_unique_pair(q):
    pairs = switchable_pairs(switched(q))
    assert len(pairs) == 1
    back = switch(switched(q), pairs[0].point, pairs[0].plane)
    assert np.array_equal(back.members, bd(q).members)


def test_q3_switched_class_has_ten_pairs():
    # at q=3 L' looks like a Bruen-Drudge class again, with all 10 pairs in dual form
    pairs = switchable_pairs(switched(3))
    assert len(pairs) == 10 and all(s.dual for s in pairs)
    s = first_pair(3)
    assert np.array_equal(switch(switched(3), s.point, s.plane).members, bd(3).members)


@criterion(9, "L' contains and avoids no plane and no star")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_09_containment(q):
    assert containment_flags(switched(q)) == dict.fromkeys(
        ("has_contained_plane", "has_disjoint_plane", "has_contained_star", "has_disjoint_star"), False)


# -- criterion 10: property suites ---------------------------------------------------

def _samples(q, n, high):
    """Exhaustive range at q=3, otherwise n seeded draws."""
    return np.arange(high) if q == 3 else rng(1000 + q).integers(0, high, n)


@criterion(10, "property suites, exhaustive at q=3, seeded >=100 cases at q=5,7,9")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_10_square_classes(q):
    F = field(q)
    if q == 3:
        pairs = [(a, b) for a in range(1, q) for b in range(1, q)]
    else:
        r = rng(q)
        pairs = list(zip(r.integers(1, q, 150), r.integers(1, q, 150)))
    for a, b in pairs:
        a, b = int(a), int(b)
        assert F.is_square_code(F.mul_code(a, b)) == (F.is_square_code(a) == F.is_square_code(b))
        assert F.is_square_code(F.mul_code(a, a))


@criterion(10, "property suites, exhaustive at q=3, seeded >=100 cases at q=5,7,9")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_10_tangent_labels(q):
    g, Q = geometry(q), quadric(q)
    chosen = Q.tangents if q == 3 else rng(q).choice(Q.tangents, 100, replace=False)
    for lid in chosen:
        P = Q.tangent_point[lid]
        labels = {Q.tangent_label_from(int(lid), int(R)) for R in g.line_points[lid] if R != P}
        assert labels == {Q.tangent_label(int(lid))}


@criterion(10, "property suites, exhaustive at q=3, seeded >=100 cases at q=5,7,9")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_10_polarity(q):
    g, Q = geometry(q), quadric(q)
    for P in _samples(q, 100, g.num_points):
        assert Q.plane_to_point[Q.point_to_plane[P]] == P
    rho = Q.line_polarity
    for lid in _samples(q, 100, g.num_lines):
        assert rho[rho[lid]] == lid


@criterion(10, "property suites, exhaustive at q=3, seeded >=100 cases at q=5,7,9")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_10_spreads(q):
    g = geometry(q)
    for S in sample_spreads(g, 100, seed=q):
        validate_spread(g, S.lines)
    base = list(regular_spread(g).lines)
    replacements = range(g.num_lines) if q == 3 else rng(q).integers(0, g.num_lines, 100)
    for m in replacements:
        if m in base:
            continue
        bad = base[1:] + [int(m)]
        with pytest.raises(PartitionFailure):
            validate_spread(g, bad)


@criterion(10, "property suites, exhaustive at q=3, seeded >=100 cases at q=5,7,9")
@pytest.mark.parametrize("q", DESK_Q)
def test_criterion_10_rebuild(q):
    g2 = build_geometry(field(q))
    g = geometry(q)
    assert np.array_equal(g.plucker, g2.plucker) and np.array_equal(g.incidence, g2.incidence)
    Q2 = type(quadric(q))(g2)
    assert np.array_equal(Q2.bruen_drudge("secants", 1).members, bd(q).members)
    s = switchable_pairs(LineClass(g2, bd(q).members.copy()))[0]
    assert s == first_pair(q)
