"""Line sets of PG(3,q): patterns, switching and intersection spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ConditionsViolated, GeometryMismatch, NoSolution, NotIncident
from .geometry import Geometry, _as_id


class LineClass:
    """An immutable set of lines of one geometry, stored as a boolean mask over line ids."""

    def __init__(self, geometry: Geometry, members, parameter: int | None = None):
        mask = np.asarray(members, dtype=bool)
        if mask.shape != (geometry.num_lines,):
            raise ValueError(f"membership mask must have shape ({geometry.num_lines},)")
        mask = mask.copy()
        mask.setflags(write=False)
        self.geometry = geometry
        self.members = mask
        self.parameter = parameter

    @classmethod
    def from_ids(cls, geometry: Geometry, ids: Iterable, parameter: int | None = None) -> "LineClass":
        mask = np.zeros(geometry.num_lines, dtype=bool)
        mask[np.fromiter((_as_id(i) for i in ids), dtype=np.int64)] = True
        return cls(geometry, mask, parameter)

    @classmethod
    def empty(cls, geometry: Geometry) -> "LineClass":
        return cls(geometry, np.zeros(geometry.num_lines, dtype=bool), 0)

    @classmethod
    def all_lines(cls, geometry: Geometry) -> "LineClass":
        return cls(geometry, np.ones(geometry.num_lines, dtype=bool), geometry.q**2 + 1)

    @classmethod
    def star_of(cls, geometry: Geometry, point) -> "LineClass":
        return cls.from_ids(geometry, geometry.star(point), 1)

    @classmethod
    def plane_of(cls, geometry: Geometry, plane) -> "LineClass":
        return cls.from_ids(geometry, geometry.lines_in_plane(plane), 1)

    @property
    def ids(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def size(self) -> int:
        return int(self.members.sum())

    def __len__(self):
        return self.size()

    def __contains__(self, line) -> bool:
        return bool(self.members[_as_id(line)])

    def __eq__(self, other):
        if not isinstance(other, LineClass):
            return NotImplemented
        return self.geometry.field == other.geometry.field and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash((self.geometry.field, self.members.tobytes()))

    def __repr__(self):
        return f"LineClass(q={self.geometry.q}, size={self.size()}, parameter={self.parameter})"

    def complement(self) -> "LineClass":
        x = None if self.parameter is None else self.geometry.q**2 + 1 - self.parameter
        return LineClass(self.geometry, ~self.members, x)

    def transformed(self, line_map: np.ndarray) -> "LineClass":
        """Image under a permutation of line ids (e.g. a collineation)."""
        mask = np.zeros_like(self.members)
        mask[line_map[self.ids]] = True
        return LineClass(self.geometry, mask, self.parameter)

    def _check_geometry(self, other: "LineClass") -> None:
        if self.geometry.field != other.geometry.field:
            raise GeometryMismatch("line classes live in different geometries")


def complement(L: LineClass) -> LineClass:
    return L.complement()


def size(L: LineClass) -> int:
    return L.size()


# -- counts and spectra ----------------------------------------------------

def plane_counts(L: LineClass) -> np.ndarray:
    """``|Line(pi) ∩ L|`` for every plane id."""
    return L.members[L.geometry.plane_lines].sum(axis=1)


def point_counts(L: LineClass) -> np.ndarray:
    """``|Star(P) ∩ L|`` for every point id."""
    return L.members[L.geometry.point_lines].sum(axis=1)


def histogram(values) -> dict[int, int]:
    keys, counts = np.unique(np.asarray(values), return_counts=True)
    return {int(k): int(c) for k, c in zip(keys, counts)}


def plane_spectrum(L: LineClass) -> dict[int, int]:
    return histogram(plane_counts(L))


def point_spectrum(L: LineClass) -> dict[int, int]:
    return histogram(point_counts(L))


def pencil_counts(L: LineClass) -> np.ndarray:
    """``(n, n)`` matrix of ``|pencil(P, pi) ∩ L|``; zero for non-incident pairs."""
    g = L.geometry
    ids = L.ids
    pts = g.line_points[ids]
    pls = g.line_planes[ids]
    counts = np.zeros((g.num_points, g.num_planes), dtype=np.int64)
    np.add.at(counts, (pts[:, :, None], pls[:, None, :]), 1)
    return counts


# -- patterns ----------------------------------------------------------------

@dataclass(frozen=True)
class PatternMatrix:
    """Pattern of a line with respect to a line class.

    ``entries[i, j]`` counts class members other than ``line`` passing
    through ``col_points[j]`` inside ``row_planes[i]``.  ``plane_totals`` and
    ``point_totals`` hold ``|Line(pi_i) ∩ L \\ {line}|`` and
    ``|Star(P_j) ∩ L \\ {line}|``, counted straight from the incidence tables.
    """

    entries: np.ndarray
    row_planes: tuple[int, ...]
    col_points: tuple[int, ...]
    line: int
    in_class: bool
    q: int
    plane_totals: tuple[int, ...] = field(repr=False)
    point_totals: tuple[int, ...] = field(repr=False)

    def with_front(self, point=None, plane=None) -> "PatternMatrix":
        """Permute rows/columns so that ``plane`` is row 0 and ``point`` is column 0."""
        rows = list(range(len(self.row_planes)))
        cols = list(range(len(self.col_points)))
        if plane is not None:
            i = self.row_planes.index(_as_id(plane))
            rows = [i] + [r for r in rows if r != i]
        if point is not None:
            j = self.col_points.index(_as_id(point))
            cols = [j] + [c for c in cols if c != j]
        entries = self.entries[np.ix_(rows, cols)]
        return PatternMatrix(
            entries,
            tuple(self.row_planes[r] for r in rows),
            tuple(self.col_points[c] for c in cols),
            self.line,
            self.in_class,
            self.q,
            tuple(self.plane_totals[r] for r in rows),
            tuple(self.point_totals[c] for c in cols),
        )

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def pattern(line, L: LineClass) -> PatternMatrix:
    """Pattern matrix of ``line`` with rows ordered by plane id and columns by point id."""
    g = L.geometry
    lid = _as_id(line)
    rows = g.line_planes[lid]
    cols = g.line_points[lid]
    q = g.q
    T = np.zeros((q + 1, q + 1), dtype=np.int64)
    for j, P in enumerate(cols):
        ms = g.point_lines[P]
        ms = ms[L.members[ms] & (ms != lid)]
        if len(ms) == 0:
            continue
        lp = g.line_points[ms]
        other = np.where(lp[:, 0] != P, lp[:, 0], lp[:, 1])
        # the plane spanned by the line and m is the one through m's other point
        i = np.argmax(g.incidence[other][:, rows], axis=1)
        T[:, j] = np.bincount(i, minlength=q + 1)
    in_class = bool(L.members[lid])
    plane_totals = tuple(int(c) - in_class for c in L.members[g.plane_lines[rows]].sum(axis=1))
    point_totals = tuple(int(c) - in_class for c in L.members[g.point_lines[cols]].sum(axis=1))
    T.setflags(write=False)
    return PatternMatrix(T, tuple(int(r) for r in rows), tuple(int(c) for c in cols), lid, in_class, q,
                         plane_totals, point_totals)


@dataclass(frozen=True)
class PatternReport:
    row_column_sums: bool
    cross_sums: bool
    additivity: bool
    square_sum: bool

    @property
    def all(self) -> bool:
        return self.row_column_sums and self.cross_sums and self.additivity and self.square_sum


def expected_square_sum(q: int, x: int, in_class: bool) -> int:
    if in_class:
        return q**3 + q**2 + (x - 1) ** 2 + q * (x - 1)
    return x * (q + x)


def check_pattern_identities(T: PatternMatrix, x: int) -> PatternReport:
    """Evaluate the four pattern identities of a Cameron-Liebler class with parameter ``x``."""
    E = T.entries
    q = T.q
    rows = E.sum(axis=1)
    cols = E.sum(axis=0)
    a = tuple(rows.tolist()) == T.plane_totals and tuple(cols.tolist()) == T.point_totals
    # cross[k, l] = column-l sum + row-k sum
    cross = cols[None, :] + rows[:, None]
    if T.in_class:
        b = np.array_equal(cross, x + (q + 1) * (E + 1) - 2)
    else:
        b = np.array_equal(cross, x + (q + 1) * E)
    c = np.array_equal(E - E[:, :1] - E[:1, :] + E[0, 0], np.zeros_like(E))
    d = int((E**2).sum()) == expected_square_sum(q, x, T.in_class)
    return PatternReport(bool(a), bool(b), bool(c), bool(d))


# -- switching -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SwitchablePair:
    """An incident pair whose star and plane regions can be traded.

    ``dual`` is False when ``Line(pi) \\ Star(P)`` is disjoint from the class
    and ``Star(P) \\ Line(pi)`` is contained in it; True for the mirror
    situation obtained by point-plane duality.
    """

    point: int
    plane: int
    dual: bool = False


def _switch_regions(g: Geometry, P: int, pi: int):
    star = g.point_lines[P]
    plane = g.plane_lines[pi]
    star_only = np.setdiff1d(star, plane, assume_unique=True)
    plane_only = np.setdiff1d(plane, star, assume_unique=True)
    return star_only, plane_only


def switch_orientation(L: LineClass, point, plane) -> bool | None:
    """False / True for a direct / dual switchable pair, None if the pair is not switchable."""
    g = L.geometry
    P, pi = _as_id(point), _as_id(plane)
    if not g.incidence[P, pi]:
        return None
    star_only, plane_only = _switch_regions(g, P, pi)
    s, t = L.members[star_only], L.members[plane_only]
    if s.all() and not t.any():
        return False
    if t.all() and not s.any():
        return True
    return None


def is_switchable(L: LineClass, point, plane) -> bool:
    return switch_orientation(L, point, plane) is not None


def switchable_pairs(L: LineClass, include_dual: bool = True) -> list[SwitchablePair]:
    """Every incident point-plane pair admitting a switch, sorted by (point, plane)."""
    g = L.geometry
    q = g.q
    C = pencil_counts(L)
    by_plane = plane_counts(L)[None, :]
    by_point = point_counts(L)[:, None]
    direct = g.incidence & (by_plane == C) & (by_point - C == q * q)
    pairs = [SwitchablePair(int(P), int(pi)) for P, pi in zip(*np.nonzero(direct))]
    if include_dual:
        dual = g.incidence & (by_point == C) & (by_plane - C == q * q)
        pairs += [SwitchablePair(int(P), int(pi), True) for P, pi in zip(*np.nonzero(dual))]
    return sorted(pairs)


def switch(L: LineClass, point, plane) -> LineClass:
    """Exchange the memberships of ``Star(P) \\ Line(pi)`` and ``Line(pi) \\ Star(P)``.

    One region must lie entirely in the class and the other entirely
    outside it, so the operation is an involution.  Raises
    :class:`NotIncident` or :class:`ConditionsViolated` otherwise.
    """
    g = L.geometry
    P, pi = _as_id(point), _as_id(plane)
    if not g.incidence[P, pi]:
        raise NotIncident(f"point {P} is not on plane {pi}")
    orientation = switch_orientation(L, P, pi)
    if orientation is None:
        raise ConditionsViolated(f"pair ({P}, {pi}) does not satisfy the switching conditions")
    return switch_unchecked(L, P, pi, dual=orientation)


def switch_unchecked(L: LineClass, point, plane, dual: bool = False) -> LineClass:
    """``L ∪ (Line(pi) \\ Star(P)) \\ (Star(P) \\ Line(pi))`` without validation.

    With ``dual=True`` the roles of star and plane are exchanged.
    """
    g = L.geometry
    star_only, plane_only = _switch_regions(g, _as_id(point), _as_id(plane))
    if dual:
        star_only, plane_only = plane_only, star_only
    mask = L.members.copy()
    mask[plane_only] = True
    mask[star_only] = False
    return LineClass(g, mask, L.parameter)


# -- the parameter system of a switchable pair ----------------------------------

def solve_parameter_system(q: int, t: int) -> list[tuple[int, int]]:
    """Solve for ``x`` given the pencil count ``t`` of a switchable pair.

    The pattern of a line of the pencil not in the class has first row
    ``(t, q, ..., q)``, first column ``(t, 0, ..., 0)`` and every other
    entry ``q - t``; the cross-sum identity fixes ``x`` and the square-sum
    identity must then hold as well.
    """
    if not 0 <= t <= q + 1:
        raise NoSolution(f"t = {t} outside [0, {q + 1}]")
    x = 2 * t + q * q - t * (q + 1)
    if x < 0 or t * t + q**3 + q * q * (q - t) ** 2 != x * (q + x):
        raise NoSolution(f"no parameter is consistent with t = {t} at q = {q}")
    return [(t, x)]


def parameter_system_solutions(q: int) -> list[tuple[int, int]]:
    out = []
    for t in range(q + 2):
        try:
            out.extend(solve_parameter_system(q, t))
        except NoSolution:
            pass
    return out


def boundary_parameter(T: PatternMatrix) -> list[tuple[int, int]]:
    """Read ``t`` off a pattern whose row 0 / column 0 are the switchable plane / point.

    Accepts the boundary ``(q,...,q)`` in the first row with zeros in the
    first column, or its transpose, then solves for ``x``.
    """
    E = T.entries
    q = T.q
    top, left = E[0, 1:], E[1:, 0]
    if not ((np.all(top == q) and np.all(left == 0)) or (np.all(top == 0) and np.all(left == q))):
        raise NoSolution("pattern does not have the switchable-pair boundary in either orientation")
    return solve_parameter_system(q, int(E[0, 0]))
