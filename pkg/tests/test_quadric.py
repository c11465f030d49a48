import numpy as np
import pytest

from cameron_liebler import EllipticQuadric, default_elliptic_form
from cameron_liebler.errors import NotElliptic, NotTangent
from cameron_liebler.quadric import LineKind, QuadraticForm

from conftest import DESK_Q, geometry, quadric, rng
from test_geometry import projective_points_mod


def test_default_form_q3():
    F = geometry(3).field
    form = default_elliptic_form(F)
    assert F.least_nonsquare() == 2
    # x0x1 + x2^2 - 2 x3^2 over GF(3), enumerated by hand
    zeros = [v for v in projective_points_mod(3) if (v[0] * v[1] + v[2] ** 2 - 2 * v[3] ** 2) % 3 == 0]
    assert len(zeros) == 10
    Q = quadric(3)
    assert sorted(tuple(r) for r in geometry(3).points[Q.points]) == zeros
    assert form([1, 0, 0, 0]) == 0


@pytest.mark.parametrize("q", DESK_Q)
def test_quadric_size(q):
    Q = quadric(q)
    assert len(Q.points) == q * q + 1
    assert Q.on_quadric[geometry(q).point_id([1, 0, 0, 0])]


def test_homogeneity():
    g = geometry(9)
    F = g.field
    form = quadric(9).form
    for P in range(0, g.num_points, 37):
        v = [int(c) for c in g.points[P]]
        for lam in range(1, 9):
            scaled = [F.mul_code(lam, c) for c in v]
            assert form(scaled) == F.mul_code(F.mul_code(lam, lam), form(v))


def test_hyperbolic_form_rejected():
    g = geometry(3)
    coeffs = [0] * 10
    coeffs[1] = 1  # x0x1
    coeffs[8] = 1  # x2x3
    with pytest.raises(NotElliptic):
        EllipticQuadric(g, QuadraticForm(g.field, tuple(coeffs)))


def test_classification_counts_q3():
    Q = quadric(3)
    assert (len(Q.tangents), len(Q.secants), len(Q.externals)) == (40, 45, 45)
    assert len(Q.tangents_labeled(1)) == len(Q.tangents_labeled(2)) == 20


@pytest.mark.parametrize("q", DESK_Q)
def test_classification_formulas(q):
    Q = quadric(q)
    assert len(Q.tangents) == (q * q + 1) * (q + 1)
    assert len(Q.secants) == q * q * (q * q + 1) // 2
    assert len(Q.externals) == geometry(q).num_lines - len(Q.tangents) - len(Q.secants)
    assert len(Q.tangents_labeled(1)) == len(Q.tangents_labeled(2)) == (q * q + 1) * (q + 1) // 2


@pytest.mark.parametrize("q", DESK_Q)
def test_lines_through_quadric_points(q):
    g, Q = geometry(q), quadric(q)
    for P in Q.points:
        kinds = Q.quadric_counts[g.star(P)]
        assert (kinds == 1).sum() == q + 1
        assert (kinds == 2).sum() == q * q
        assert (kinds == 0).sum() == 0
        labels = Q.labels[g.star(P)]
        assert (labels == 1).sum() == (labels == 2).sum() == (q + 1) // 2


def test_secant_and_tangent_examples():
    g, Q = geometry(3), quadric(3)
    a, b = Q.points[:2]
    assert Q.classify_line(g.pair_line[a, b]).kind is LineKind.SECANT
    P = int(Q.points[3])
    tau = Q.tangent_plane(P)
    for lid in g.pencil(P, tau):
        t = Q.classify_line(lid)
        assert t.kind is LineKind.TANGENT and t.point == P
    ext = [l for l in g.lines_in_plane(tau) if l not in g.star(P)]
    assert all(Q.classify_line(l).kind is LineKind.EXTERNAL for l in ext)


def test_tangent_label_rejects_non_tangent():
    Q = quadric(3)
    with pytest.raises(NotTangent):
        Q.tangent_label(int(Q.secants[0]))


def _label_is_choice_free(g, Q, lid):
    P = Q.tangent_point[lid]
    labels = {Q.tangent_label_from(lid, R) for R in g.line_points[lid] if R != P}
    return labels == {Q.tangent_label(lid)}


def test_tangent_label_well_defined_exhaustive_q3():
    g, Q = geometry(3), quadric(3)
    for lid in Q.tangents:
        assert _label_is_choice_free(g, Q, lid)


@pytest.mark.parametrize("q", (5, 7, 9))
def test_tangent_label_well_defined_random(q):
    g, Q = geometry(q), quadric(q)
    for lid in rng(q).choice(Q.tangents, 120, replace=False):
        assert _label_is_choice_free(g, Q, lid)


@pytest.mark.parametrize("q", DESK_Q)
def test_tangents_through_outside_point_share_label(q):
    g, Q = geometry(q), quadric(q)
    for P in np.flatnonzero(~Q.on_quadric):
        labels = set(Q.labels[g.star(P)].tolist()) - {0}
        assert len(labels) == 1


@pytest.mark.parametrize("q", DESK_Q)
def test_plane_sections(q):
    g, Q = geometry(q), quadric(q)
    meet = Q.on_quadric[:, None] & g.incidence
    sizes = meet.sum(axis=0)
    assert sorted(set(sizes.tolist())) == [1, q + 1]
    assert (sizes == 1).sum() == q * q + 1
    for pi in np.flatnonzero(sizes == q + 1)[:30]:
        lines = g.lines_in_plane(pi)
        conic_tangents = lines[Q.quadric_counts[lines] == 1]
        for P in np.flatnonzero(g.incidence[:, pi] & ~Q.on_quadric):
            through = np.isin(conic_tangents, g.star(P)).sum()
            assert through in (0, 2)


# -- polarity -----------------------------------------------------------------

@pytest.mark.parametrize("q", DESK_Q)
def test_polarity_on_quadric_points_is_tangent_plane(q):
    g, Q = geometry(q), quadric(q)
    for P in Q.points:
        tau = Q.tangent_plane(P)
        assert np.flatnonzero(Q.on_quadric & g.incidence[:, tau]).tolist() == [P]
        assert Q.polarity(g.point(P)) == g.plane(tau)


@pytest.mark.parametrize("q", DESK_Q)
def test_point_plane_polarity_involution(q):
    g, Q = geometry(q), quadric(q)
    assert (Q.plane_to_point[Q.point_to_plane] == np.arange(g.num_points)).all()
    r = rng(q)
    P, R = r.integers(0, g.num_points, (2, 500))
    assert np.array_equal(g.incidence[P, Q.point_to_plane[R]], g.incidence[R, Q.point_to_plane[P]])


def test_polarity_incidence_reversing_exhaustive_q3():
    g, Q = geometry(3), quadric(3)
    rho = Q.point_to_plane
    assert np.array_equal(g.incidence[:, rho], g.incidence[:, rho].T)


def test_line_polarity_q3_exhaustive():
    g, Q = geometry(3), quadric(3)
    rho = Q.line_polarity
    assert (rho[rho] == np.arange(g.num_lines)).all()
    assert set(rho[Q.secants]) == set(Q.externals)
    assert set(rho[Q.externals]) == set(Q.secants)
    assert set(rho[Q.tangents]) == set(Q.tangents)
    assert Q.polarity(g.line(5)) == g.line(int(rho[5]))


@pytest.mark.parametrize("q", (5, 7, 9))
def test_line_polarity_random(q):
    g, Q = geometry(q), quadric(q)
    for lid in rng(q).integers(0, g.num_lines, 120):
        image = Q.polarity(int(lid))
        assert Q.polarity(image) == lid
    rho = Q.line_polarity
    assert set(rho[Q.secants]) == set(Q.externals)


@pytest.mark.parametrize("q", DESK_Q)
def test_polarity_preserves_tangent_split(q):
    Q = quadric(q)
    rho = Q.line_polarity
    t1, t2 = set(Q.tangents_labeled(1)), set(Q.tangents_labeled(2))
    image = set(rho[list(t1)])
    assert image in (t1, t2)


@pytest.mark.parametrize("q", DESK_Q)
def test_bruen_drudge_sizes_and_partition(q):
    Q = quadric(q)
    s1, e2 = Q.bruen_drudge("secants", 1), Q.bruen_drudge("externals", 2)
    size = (q * q + 1) * (q * q + q + 1) // 2
    assert s1.size() == e2.size() == size
    assert not (s1.members & e2.members).any()
    assert (s1.members | e2.members).all()
    assert Q.family("bd-S2") == Q.bruen_drudge("secants", 2)


def test_bruen_drudge_q3_q5_sizes():
    assert quadric(3).bruen_drudge("secants", 1).size() == 65
    assert quadric(5).bruen_drudge("secants", 1).size() == 403


def test_unknown_family():
    with pytest.raises(ValueError):
        quadric(3).family("bd-X1")
    with pytest.raises(ValueError):
        quadric(3).bruen_drudge("secants", 3)
