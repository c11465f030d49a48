"""The elliptic quadric of PG(3,q), its polarity and the Bruen-Drudge line classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotElliptic, NotTangent
from .finite_field import FieldSpec, mat_inv
from .geometry import Geometry, Line, Plane, Point, _as_id, _freeze
from .line_classes import LineClass

# upper-triangular monomial order of the 10 form coefficients
FORM_MONOMIALS = ((0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))

FAMILIES = ("bd-S1", "bd-S2", "bd-E1", "bd-E2")


@dataclass(frozen=True)
class QuadraticForm:
    """``Q(x) = sum_{i<=j} c_ij x_i x_j`` with coefficients as field codes."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError("a quaternary quadratic form has 10 coefficients")

    @cached_property
    def gram(self) -> list[list[int]]:
        """Symmetric matrix of ``B(x, y) = (Q(x+y) - Q(x) - Q(y)) / 2``."""
        F = self.field
        half = F.inv_code(2 % F.p)
        G = [[0] * 4 for _ in range(4)]
        for (i, j), c in zip(FORM_MONOMIALS, self.coeffs):
            if i == j:
                G[i][i] = c
            else:
                G[i][j] = G[j][i] = F.mul_code(c, half)
        return G

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        F = self.field
        X = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        terms = [F.vmul(np.int64(c), F.vmul(X[:, i], X[:, j])) for (i, j), c in zip(FORM_MONOMIALS, self.coeffs)]
        return F.vsum(terms)

    def __call__(self, coords) -> int:
        return int(self.evaluate(np.array([[int(c) for c in coords]]))[0])

    def to_text(self) -> str:
        F = self.field
        return " ".join(",".join(str(d) for d in F.digits(c)) for c in self.coeffs)


def default_elliptic_form(field: FieldSpec) -> QuadraticForm:
    """``x0*x1 + x2^2 - d*x3^2`` with ``d`` the least nonsquare by element code."""
    d = field.least_nonsquare()
    coeffs = [0] * 10
    coeffs[FORM_MONOMIALS.index((0, 1))] = 1
    coeffs[FORM_MONOMIALS.index((2, 2))] = 1
    coeffs[FORM_MONOMIALS.index((3, 3))] = field.neg_code(d)
    return QuadraticForm(field, tuple(coeffs))


class LineKind(enum.Enum):
    EXTERNAL = 0
    TANGENT = 1
    SECANT = 2


@dataclass(frozen=True)
class LineType:
    kind: LineKind
    point: int | None = None


class EllipticQuadric:
    """Point set, polarity and line classification of ``Q = 0``.

    ``values[P]`` is the form evaluated at the normalized representative of
    point ``P``.  Tangent labels: 1 when the form is a nonzero square at the
    tangent's other points, 2 otherwise.
    """

    def __init__(self, geometry: Geometry, form: QuadraticForm | None = None):
        self.geometry = g = geometry
        self.form = form or default_elliptic_form(geometry.field)
        q = g.q
        F = g.field

        self.values = _freeze(self.form.evaluate(g.points))
        on = self.values == 0
        if on.sum() != q * q + 1:
            raise NotElliptic(f"form has {int(on.sum())} zeros, an elliptic quadric has {q * q + 1}")
        self.on_quadric = _freeze(on)
        self.points = _freeze(np.flatnonzero(on))

        G = self.form.gram
        G_inv = mat_inv(F, G)
        self.point_to_plane = _freeze(g._lookup(self._transform(G, g.points)))
        self.plane_to_point = _freeze(g._lookup(self._transform(G_inv, g.planes)))

        hits = on[g.line_points]
        counts = hits.sum(axis=1)
        if not np.isin(counts, (0, 1, 2)).all():
            raise NotElliptic("some line meets the quadric in more than two points")
        self.quadric_counts = _freeze(counts)
        tangent = counts == 1
        touch = np.where(tangent, g.line_points[np.arange(g.num_lines), np.argmax(hits, axis=1)], -1)
        self.tangent_point = _freeze(touch)

        # first point of the tangent other than the tangency point
        lp = g.line_points
        other = np.where(lp[:, 0] != touch, lp[:, 0], lp[:, 1])
        square = F.square_table[self.values[other]]
        self.labels = _freeze(np.where(tangent, np.where(square, 1, 2), 0).astype(np.int8))

    def _transform(self, M, coords):
        F = self.geometry.field
        cols = [F.vsum([F.vmul(np.int64(M[i][k]), coords[:, k]) for k in range(4)]) for i in range(4)]
        return self.geometry.normalize(np.stack(cols, axis=1))

    # -- line classification -------------------------------------------------
    def classify_line(self, line) -> LineType:
        lid = _as_id(line)
        kind = LineKind(int(self.quadric_counts[lid]))
        point = int(self.tangent_point[lid]) if kind is LineKind.TANGENT else None
        return LineType(kind, point)

    def tangent_label(self, line) -> int:
        lid = _as_id(line)
        if self.quadric_counts[lid] != 1:
            raise NotTangent(f"line {lid} is not tangent to the quadric")
        return int(self.labels[lid])

    def tangent_label_from(self, line, other_point) -> int:
        """Label computed from an explicit choice of non-tangency point on the line."""
        lid = _as_id(line)
        P = self.tangent_point[lid]
        R = _as_id(other_point)
        if self.quadric_counts[lid] != 1:
            raise NotTangent(f"line {lid} is not tangent to the quadric")
        if R == P or R not in self.geometry.line_points[lid]:
            raise ValueError("the point must lie on the tangent and differ from the tangency point")
        return 1 if self.geometry.field.is_square_code(int(self.values[R])) else 2

    @cached_property
    def secants(self) -> np.ndarray:
        return _freeze(np.flatnonzero(self.quadric_counts == 2))

    @cached_property
    def externals(self) -> np.ndarray:
        return _freeze(np.flatnonzero(self.quadric_counts == 0))

    @cached_property
    def tangents(self) -> np.ndarray:
        return _freeze(np.flatnonzero(self.quadric_counts == 1))

    def tangents_labeled(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.labels == i)

    def tangent_plane(self, point) -> int:
        P = _as_id(point)
        if not self.on_quadric[P]:
            raise ValueError(f"point {P} is not on the quadric")
        return int(self.point_to_plane[P])

    # -- polarity ------------------------------------------------------------
    @cached_property
    def line_polarity(self) -> np.ndarray:
        g = self.geometry
        lp = g.line_points
        images = g.plane_pair_line[self.point_to_plane[lp[:, 0]], self.point_to_plane[lp[:, 1]]]
        return _freeze(images)

    def polarity(self, target):
        """Point -> Plane, Plane -> Point, Line -> Line (objects or, for lines, ids)."""
        g = self.geometry
        if isinstance(target, Point):
            return g.plane(self.point_to_plane[target.id])
        if isinstance(target, Plane):
            return g.point(self.plane_to_point[target.id])
        if isinstance(target, Line):
            return g.line(self.line_polarity[target.id])
        return int(self.line_polarity[int(target)])

    # -- Bruen-Drudge classes ------------------------------------------------
    def bruen_drudge(self, base: str, i: int) -> LineClass:
        """``S ∪ T^i`` (``base='secants'``) or ``E ∪ T^i`` (``base='externals'``)."""
        if i not in (1, 2):
            raise ValueError("tangent half must be 1 or 2")
        kind = {"secants": 2, "s": 2, "externals": 0, "e": 0}.get(base.lower())
        if kind is None:
            raise ValueError(f"unknown base {base!r}; use 'secants' or 'externals'")
        mask = (self.quadric_counts == kind) | (self.labels == i)
        q = self.geometry.q
        return LineClass(self.geometry, mask, (q * q + 1) // 2)

    def family(self, name: str) -> LineClass:
        if name not in FAMILIES:
            raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
        base = "secants" if name[3] == "S" else "externals"
        return self.bruen_drudge(base, int(name[4]))


def bruen_drudge(quadric: EllipticQuadric, base: str, i: int) -> LineClass:
    return quadric.bruen_drudge(base, i)
