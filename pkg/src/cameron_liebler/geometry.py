"""Frozen incidence structure of PG(3,q).

Points and planes share one coordinate table: 4-tuples of field codes with
the first nonzero coordinate equal to 1, sorted lexicographically.  Lines
are identified by their normalized Plücker 6-tuple
``(p01, p02, p03, p12, p13, p23)``; a line's id is its position in the
lexicographically sorted table of those tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import EqualPoints, NonIncidentPair, SingularMatrix, TooLarge, UnknownLine
from .finite_field import FieldElement, FieldSpec, mat_det, mat_inv, mat_transpose

# Above this order the n x n point/plane tables stop fitting in desk memory.
MAX_GEOMETRY_Q = 17

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class Point:
    id: int
    coords: tuple[FieldElement, ...]


@dataclass(frozen=True)
class Plane:
    id: int
    coords: tuple[FieldElement, ...]


@dataclass(frozen=True)
class Line:
    id: int
    plucker: tuple[FieldElement, ...]
    point_set: tuple[int, ...]


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_id(obj) -> int:
    return int(obj.id) if hasattr(obj, "id") else int(obj)


class Geometry:
    """All points, planes and lines of PG(3,q) with their incidences.

    Array attributes (all read-only):

    ``points`` / ``planes``
        ``(n, 4)`` coordinate codes, ``n = q^3+q^2+q+1``.
    ``incidence``
        ``(n, n)`` boolean, ``incidence[P, pi]`` iff P lies on pi.
    ``plucker``
        ``(L, 6)`` normalized Plücker codes, sorted.
    ``line_points`` / ``line_planes``
        ``(L, q+1)`` sorted point / plane ids of each line.
    ``point_lines`` / ``plane_lines``
        ``(n, q^2+q+1)`` sorted line ids of each star / plane.
    """

    def __init__(self, field: FieldSpec):
        q = field.q
        if q > MAX_GEOMETRY_Q:
            raise TooLarge(f"q = {q} exceeds the supported bound {MAX_GEOMETRY_Q}")
        self.field = field
        self.q = q
        F = field

        grid = np.array(list(itertools.product(range(q), repeat=4)), dtype=np.int64)
        first = np.argmax(grid != 0, axis=1)
        lead = grid[np.arange(len(grid)), first]
        points = grid[lead == 1]
        self.points = _freeze(points)
        self.planes = self.points
        n = len(points)
        self.num_points = self.num_planes = n

        index = np.full(q**4, -1, dtype=np.int64)
        index[self._keys(points)] = np.arange(n)
        self._point_index = _freeze(index)

        prods = [F.mul_table[points[:, None, k], points[None, :, k]] for k in range(4)]
        self.incidence = _freeze(F.vsum(prods) == 0)

        rows1, rows2 = self._echelon_bases()
        self.plucker, order = self._plucker_table(rows1, rows2)
        rows1, rows2 = rows1[order], rows2[order]
        self.num_lines = L = len(self.plucker)
        self._plucker_keys = _freeze(self._keys(self.plucker))

        # points on each line: rows1, and rows2 + a*rows1 for every a
        pts = [rows1] + [F.vadd(F.vmul(np.int64(a), rows1), rows2) for a in range(q)]
        ids = np.stack([self._lookup(self.normalize(v)) for v in pts], axis=1)
        self.line_points = _freeze(np.sort(ids, axis=1))

        planes = np.empty((L, q + 1), dtype=np.int64)
        inc = self.incidence
        lp = self.line_points
        for start in range(0, L, 4096):
            block = inc[lp[start:start + 4096, 0]] & inc[lp[start:start + 4096, 1]]
            planes[start:start + 4096] = np.nonzero(block)[1].reshape(-1, q + 1)
        self.line_planes = _freeze(planes)

        self.point_lines = _freeze(self._invert(self.line_points, n))
        self.plane_lines = _freeze(self._invert(self.line_planes, n))

    # -- construction helpers ------------------------------------------------
    def _keys(self, coords: np.ndarray) -> np.ndarray:
        key = np.zeros(len(coords), dtype=np.int64)
        for k in range(coords.shape[1]):
            key = key * self.q + coords[:, k]
        return key

    def _lookup(self, normalized: np.ndarray) -> np.ndarray:
        return self._point_index[self._keys(normalized)]

    def normalize(self, vectors: np.ndarray) -> np.ndarray:
        """Scale each row so that its first nonzero entry is 1."""
        vectors = np.asarray(vectors, dtype=np.int64)
        first = np.argmax(vectors != 0, axis=1)
        lead = vectors[np.arange(len(vectors)), first]
        if np.any(lead == 0):
            raise ValueError("zero vector has no projective point")
        scale = self.field.inv_table[lead]
        return self.field.mul_table[scale[:, None], vectors]

    def _echelon_bases(self):
        """Reduced row echelon 2x4 bases, one per line."""
        q = self.q
        r1s, r2s = [], []
        for i, j in PLUCKER_PAIRS:
            free1 = [c for c in range(i + 1, 4) if c != j]
            free2 = list(range(j + 1, 4))
            for v1 in itertools.product(range(q), repeat=len(free1)):
                for v2 in itertools.product(range(q), repeat=len(free2)):
                    r1 = [0, 0, 0, 0]
                    r2 = [0, 0, 0, 0]
                    r1[i] = 1
                    r2[j] = 1
                    for c, v in zip(free1, v1):
                        r1[c] = v
                    for c, v in zip(free2, v2):
                        r2[c] = v
                    r1s.append(r1)
                    r2s.append(r2)
        return np.array(r1s, dtype=np.int64), np.array(r2s, dtype=np.int64)

    def _minors(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        F = self.field
        cols = [F.vsub(F.vmul(X[:, a], Y[:, b]), F.vmul(X[:, b], Y[:, a])) for a, b in PLUCKER_PAIRS]
        return np.stack(cols, axis=1)

    def _plucker_table(self, r1, r2):
        # echelon form already has its leading minor equal to 1
        pl = self._minors(r1, r2)
        order = np.lexsort(pl.T[::-1])
        return _freeze(pl[order]), order

    @staticmethod
    def _invert(incident: np.ndarray, n: int) -> np.ndarray:
        rows = np.repeat(np.arange(len(incident)), incident.shape[1])
        targets = incident.ravel()
        order = np.lexsort((rows, targets))
        return rows[order].reshape(n, -1)

    def _pair_table(self, incident: np.ndarray) -> np.ndarray:
        n = self.num_points
        table = np.full((n, n), -1, dtype=np.int64)
        ids = np.arange(self.num_lines)
        for a, b in itertools.permutations(range(self.q + 1), 2):
            table[incident[:, a], incident[:, b]] = ids
        return _freeze(table)

    @cached_property
    def pair_line(self) -> np.ndarray:
        """``(n, n)`` table: id of the line through two distinct points, -1 on the diagonal."""
        return self._pair_table(self.line_points)

    @cached_property
    def plane_pair_line(self) -> np.ndarray:
        """``(n, n)`` table: common line of two distinct planes, -1 on the diagonal."""
        return self._pair_table(self.line_planes)

    @cached_property
    def plane_membership(self) -> np.ndarray:
        """``(L, n)`` boolean: line contained in plane."""
        out = np.zeros((self.num_lines, self.num_planes), dtype=bool)
        out[np.repeat(np.arange(self.num_lines), self.q + 1), self.line_planes.ravel()] = True
        return _freeze(out)

    # -- object views --------------------------------------------------------
    def _elements(self, codes) -> tuple[FieldElement, ...]:
        return tuple(self.field(int(c)) for c in codes)

    def point(self, pid: int) -> Point:
        return Point(int(pid), self._elements(self.points[pid]))

    def plane(self, pid: int) -> Plane:
        return Plane(int(pid), self._elements(self.planes[pid]))

    def line(self, lid: int) -> Line:
        return Line(int(lid), self._elements(self.plucker[lid]), tuple(int(v) for v in self.line_points[lid]))

    def point_id(self, coords: Sequence) -> int:
        """Id of the projective point with the given (not necessarily normalized) coordinates."""
        v = np.array([[int(c) for c in coords]], dtype=np.int64)
        return int(self._lookup(self.normalize(v))[0])

    plane_id = point_id

    def line_id(self, plucker: Sequence) -> int:
        """Id of the line with the given Plücker coordinates (normalized here)."""
        v = np.array([[int(c) for c in plucker]], dtype=np.int64)
        if not v.any():
            raise UnknownLine("zero Plücker vector")
        v = self.normalize(v)
        key = self._keys(v)[0]
        pos = int(np.searchsorted(self._plucker_keys, key))
        if pos >= self.num_lines or self._plucker_keys[pos] != key:
            raise UnknownLine(f"{[int(c) for c in plucker]} is not a line of PG(3,{self.q})")
        return pos

    # -- incidence queries ---------------------------------------------------
    def line_through(self, P, R) -> Line:
        """Line spanned by two distinct points, found from its Plücker minors."""
        a, b = _as_id(P), _as_id(R)
        if a == b:
            raise EqualPoints("a line needs two distinct points")
        minors = self._minors(self.points[[a]], self.points[[b]])[0]
        return self.line(self.line_id(minors))

    def star(self, P) -> np.ndarray:
        return self.point_lines[_as_id(P)]

    def lines_in_plane(self, plane) -> np.ndarray:
        return self.plane_lines[_as_id(plane)]

    def pencil(self, P, plane) -> np.ndarray:
        a, b = _as_id(P), _as_id(plane)
        if not self.incidence[a, b]:
            raise NonIncidentPair(f"point {a} is not on plane {b}")
        return np.intersect1d(self.point_lines[a], self.plane_lines[b], assume_unique=True)

    def incident(self, P, plane) -> bool:
        return bool(self.incidence[_as_id(P), _as_id(plane)])

    def plucker_pairing(self, rows, cols) -> np.ndarray:
        """Bilinear Plücker form between every line in ``rows`` and every line in ``cols``."""
        F = self.field
        A = self.plucker[np.atleast_1d(rows)]
        B = self.plucker[np.atleast_1d(cols)]
        mul = F.mul_table
        terms_pos = [mul[A[:, None, 0], B[None, :, 5]], mul[A[:, None, 2], B[None, :, 3]],
                     mul[A[:, None, 5], B[None, :, 0]], mul[A[:, None, 3], B[None, :, 2]]]
        terms_neg = [mul[A[:, None, 1], B[None, :, 4]], mul[A[:, None, 4], B[None, :, 1]]]
        pos = F.vsum(terms_pos)
        neg = F.vsum(terms_neg)
        return F.vsub(pos, neg)

    def meet_matrix(self, rows, cols) -> np.ndarray:
        return self.plucker_pairing(rows, cols) == 0

    def lines_meet(self, l, m) -> bool:
        return bool(self.meet_matrix(_as_id(l), _as_id(m))[0, 0])

    def intersection_line(self, plane1, plane2) -> int:
        a, b = _as_id(plane1), _as_id(plane2)
        common = np.intersect1d(self.plane_lines[a], self.plane_lines[b], assume_unique=True)
        if len(common) != 1:
            raise EqualPoints("two distinct planes are required")
        return int(common[0])

    # -- collineations -------------------------------------------------------
    def collineation(self, matrix, phi: int = 0) -> "Collineation":
        return Collineation(self, matrix, phi)

    def apply_collineation(self, matrix, phi, target):
        """Image of a Point, Plane, Line, line class or collection of line ids."""
        return self.collineation(matrix, phi)(target)

    def summary(self) -> dict:
        return {"q": self.q, "points": self.num_points, "planes": self.num_planes, "lines": self.num_lines}


class Collineation:
    """The map ``x -> M x^sigma`` on points, with sigma the ``phi``-th Frobenius power.

    Planes transform by ``u -> M^{-T} u^sigma`` so that incidence is kept.
    """

    def __init__(self, geometry: Geometry, matrix, phi: int = 0):
        F = geometry.field
        M = [[int(v) for v in row] for row in matrix]
        if len(M) != 4 or any(len(r) != 4 for r in M):
            raise ValueError("collineation matrix must be 4x4")
        if not 0 <= phi < F.h:
            raise ValueError(f"automorphism index must lie in [0, {F.h})")
        if mat_det(F, M) == 0:
            raise SingularMatrix("collineation matrix is singular")
        self.geometry = geometry
        self.matrix = M
        self.phi = phi
        self._dual = mat_transpose(mat_inv(F, M))

    def _act(self, M, coords: np.ndarray) -> np.ndarray:
        g = self.geometry
        F = g.field
        x = F.frobenius_table(self.phi)[coords] if self.phi else coords
        cols = [F.vsum([F.vmul(np.int64(M[i][k]), x[:, k]) for k in range(4)]) for i in range(4)]
        return g.normalize(np.stack(cols, axis=1))

    @cached_property
    def point_map(self) -> np.ndarray:
        g = self.geometry
        return _freeze(g._lookup(self._act(self.matrix, g.points)))

    @cached_property
    def plane_map(self) -> np.ndarray:
        g = self.geometry
        return _freeze(g._lookup(self._act(self._dual, g.planes)))

    @cached_property
    def line_map(self) -> np.ndarray:
        g = self.geometry
        pm = self.point_map
        return _freeze(g.pair_line[pm[g.line_points[:, 0]], pm[g.line_points[:, 1]]])

    def __call__(self, target):
        g = self.geometry
        if isinstance(target, Point):
            return g.point(self.point_map[target.id])
        if isinstance(target, Plane):
            return g.plane(self.plane_map[target.id])
        if isinstance(target, Line):
            return g.line(self.line_map[target.id])
        if hasattr(target, "transformed"):
            return target.transformed(self.line_map)
        ids = np.asarray(list(target) if not isinstance(target, np.ndarray) else target, dtype=np.int64)
        return np.sort(self.line_map[ids])


def build_geometry(field: FieldSpec) -> Geometry:
    return Geometry(field)


def line_ids(lines: Iterable) -> np.ndarray:
    return np.array(sorted(_as_id(x) for x in lines), dtype=np.int64)
