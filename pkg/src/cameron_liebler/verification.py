"""Deciding the Cameron-Liebler property and comparing line classes by invariants.

The authoritative test is :func:`degree_check`: a line set ``L`` of size
``x(q^2+q+1)`` is a Cameron-Liebler class with parameter ``x`` iff every
line outside ``L`` meets ``(q+1)x`` members and every member meets
``(q+1)x + q^2 - 1`` other members.  Spreads obtained from the regular
spread by random collineations give an independent witness.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryMismatch, PartitionFailure, SizeNotMultiple
from .finite_field import mat_det
from .geometry import Collineation, Geometry
from .line_classes import (
    LineClass,
    plane_counts,
    plane_spectrum,
    point_counts,
    point_spectrum,
    switchable_pairs,
)

DEFAULT_SEED = 20180101
DEFAULT_SPREADS = 100
GENERATOR = "numpy.random.default_rng/PCG64"
NORMALIZATION = "first-nonzero-1"
_CHUNK = 512


@dataclass(frozen=True)
class Spread:
    lines: tuple[int, ...]


def validate_spread(geometry: Geometry, lines) -> Spread:
    """Check that ``lines`` are ``q^2+1`` lines partitioning the point set."""
    ids = np.asarray(sorted(int(i) for i in lines), dtype=np.int64)
    q = geometry.q
    if len(ids) != q * q + 1 or len(np.unique(ids)) != len(ids):
        raise PartitionFailure(f"a spread has {q * q + 1} distinct lines, got {len(np.unique(ids))}")
    covered = np.sort(geometry.line_points[ids].ravel())
    if not np.array_equal(covered, np.arange(geometry.num_points)):
        raise PartitionFailure("lines do not partition the point set")
    return Spread(tuple(int(i) for i in ids))


def regular_spread(geometry: Geometry, nonsquare: int | None = None) -> Spread:
    """Spread of GF(q^2)-subspaces of GF(q^2)^2, with GF(q^2) = GF(q)[t]/(t^2 - d).

    A point ``(a0, a1, b0, b1)`` stands for ``(a0 + a1 t, b0 + b1 t)``.  The
    line ``{(a, s a)}`` is spanned by ``a = 1`` and ``a = t``, i.e. by
    ``(1, 0, s0, s1)`` and ``(0, 1, d s1, s0)``.
    """
    F = geometry.field
    d = F.least_nonsquare() if nonsquare is None else int(nonsquare)
    if d == 0 or F.is_square_code(d):
        raise ValueError("t^2 - d is irreducible only for a nonsquare d")
    q = geometry.q
    s0, s1 = np.divmod(np.arange(q * q), q)
    first = np.stack([np.ones_like(s0), np.zeros_like(s0), s0, s1], axis=1)
    second = np.stack([np.zeros_like(s0), np.ones_like(s0), F.vmul(np.int64(d), s1), s0], axis=1)
    a = geometry._lookup(geometry.normalize(first))
    b = geometry._lookup(geometry.normalize(second))
    lines = list(geometry.pair_line[a, b])
    lines.append(geometry.pair_line[geometry.point_id([0, 0, 1, 0]), geometry.point_id([0, 0, 0, 1])])
    return validate_spread(geometry, lines)


def random_collineation(geometry: Geometry, rng: np.random.Generator) -> Collineation:
    """Uniform random invertible matrix (rejection sampling) and Frobenius power."""
    F = geometry.field
    while True:
        M = rng.integers(0, F.q, size=(4, 4)).tolist()
        if mat_det(F, M) != 0:
            break
    phi = int(rng.integers(0, F.h))
    return Collineation(geometry, M, phi)


def sample_spreads(geometry: Geometry, n: int, seed: int = DEFAULT_SEED,
                   force_identity: bool = False) -> list[Spread]:
    """Images of the regular spread under ``n`` seeded random collineations.

    ``force_identity`` replaces the random maps by the identity.
    """
    if n < 1:
        raise ValueError("at least one spread must be sampled")
    base = np.array(regular_spread(geometry).lines, dtype=np.int64)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        if force_identity:
            out.append(validate_spread(geometry, base))
            continue
        c = random_collineation(geometry, rng)
        pm = c.point_map
        lp = geometry.line_points[base]
        image = geometry.pair_line[pm[lp[:, 0]], pm[lp[:, 1]]]
        out.append(validate_spread(geometry, image))
    return out


def spread_intersection(L: LineClass, S: Spread) -> int:
    return int(L.members[list(S.lines)].sum())


# -- degree test ---------------------------------------------------------------

@dataclass(frozen=True)
class DegreeCheck:
    passed: bool
    parameter: int
    counterexample: int | None = None
    observed: int | None = None
    expected: int | None = None


def expected_degree(q: int, x: int, in_class: bool) -> int:
    return (q + 1) * x + (q * q - 1 if in_class else 0)


def line_degrees(L: LineClass, workers: int = 1) -> np.ndarray:
    """For every line, the number of other members of ``L`` it meets (Plücker pairing)."""
    g = L.geometry
    members = L.ids
    chunks = [np.arange(s, min(s + _CHUNK, g.num_lines)) for s in range(0, g.num_lines, _CHUNK)]

    def count(rows):
        if len(members) == 0:
            return np.zeros(len(rows), dtype=np.int64)
        return g.meet_matrix(rows, members).sum(axis=1)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(count, chunks))
    else:
        parts = [count(c) for c in chunks]
    # a line pairs to zero with itself
    return np.concatenate(parts) - L.members.astype(np.int64)


def degree_check(L: LineClass, x: int, workers: int = 1) -> DegreeCheck:
    """Exact line-degree test; reports the smallest violating line id on failure."""
    q = L.geometry.q
    deg = line_degrees(L, workers)
    want = np.where(L.members, expected_degree(q, x, True), expected_degree(q, x, False))
    bad = np.flatnonzero(deg != want)
    if len(bad) == 0:
        return DegreeCheck(True, x)
    i = int(bad[0])
    return DegreeCheck(False, x, i, int(deg[i]), int(want[i]))


# -- full report -----------------------------------------------------------------

@dataclass
class VerificationReport:
    field: dict
    form: str | None
    size: int
    parameter: int
    degree: DegreeCheck
    regular_spread_intersection: int
    spread_count: int
    spread_values: dict[int, int]
    seed: int
    plane_spectrum: dict[int, int]
    point_spectrum: dict[int, int]
    switchable_pairs: list = field(default_factory=list)
    has_contained_plane: bool = False
    has_disjoint_plane: bool = False
    has_contained_star: bool = False
    has_disjoint_star: bool = False

    @property
    def spreads_passed(self) -> bool:
        return (self.regular_spread_intersection == self.parameter
                and set(self.spread_values) == {self.parameter})

    @property
    def passed(self) -> bool:
        return self.degree.passed and self.spreads_passed

    def to_text(self) -> str:
        """Key/value document with a fixed field order."""
        f = self.field

        def hist(h):
            return " ".join(f"{k}:{v}" for k, v in sorted(h.items()))

        def flag(b):
            return "yes" if b else "no"

        d = self.degree
        rows = [
            ("p", f["p"]),
            ("h", f["h"]),
            ("modulus", ",".join(str(c) for c in f["modulus_poly"])),
            ("form", self.form if self.form is not None else "-"),
            ("convention", NORMALIZATION),
            ("size", self.size),
            ("parameter", self.parameter),
            ("degree_check", "pass" if d.passed else "fail"),
        ]
        if not d.passed:
            rows += [("counterexample_line", d.counterexample),
                     ("counterexample_degree", d.observed),
                     ("expected_degree", d.expected)]
        rows += [
            ("regular_spread_intersection", self.regular_spread_intersection),
            ("spread_samples", self.spread_count),
            ("spread_seed", self.seed),
            ("spread_generator", GENERATOR),
            ("spread_intersections", hist(self.spread_values)),
            ("spread_check", "pass" if self.spreads_passed else "fail"),
            ("plane_spectrum", hist(self.plane_spectrum)),
            ("point_spectrum", hist(self.point_spectrum)),
            ("switchable_pairs", len(self.switchable_pairs)),
            ("switchable_pair_list", " ".join(
                f"{s.point}/{s.plane}{'*' if s.dual else ''}" for s in self.switchable_pairs) or "-"),
            ("contained_plane", flag(self.has_contained_plane)),
            ("disjoint_plane", flag(self.has_disjoint_plane)),
            ("contained_star", flag(self.has_contained_star)),
            ("disjoint_star", flag(self.has_disjoint_star)),
            ("result", "pass" if self.passed else "fail"),
        ]
        return "".join(f"{k}: {v}\n" for k, v in rows)


def infer_parameter(L: LineClass) -> int:
    q = L.geometry.q
    n = L.size()
    if n % (q * q + q + 1):
        raise SizeNotMultiple(f"size {n} is not a multiple of {q * q + q + 1}")
    return n // (q * q + q + 1)


def containment_flags(L: LineClass) -> dict[str, bool]:
    q = L.geometry.q
    full = q * q + q + 1
    pc, sc = plane_counts(L), point_counts(L)
    return {
        "has_contained_plane": bool((pc == full).any()),
        "has_disjoint_plane": bool((pc == 0).any()),
        "has_contained_star": bool((sc == full).any()),
        "has_disjoint_star": bool((sc == 0).any()),
    }


def full_verify(L: LineClass, spread_samples: int = DEFAULT_SPREADS, seed: int = DEFAULT_SEED,
                workers: int = 1, form: str | None = None) -> VerificationReport:
    g = L.geometry
    x = infer_parameter(L)
    degree = degree_check(L, x, workers)
    regular = spread_intersection(L, regular_spread(g))
    values = [spread_intersection(L, S) for S in sample_spreads(g, spread_samples, seed)]
    keys, counts = np.unique(values, return_counts=True)
    return VerificationReport(
        field=g.field.to_dict(),
        form=form,
        size=L.size(),
        parameter=x,
        degree=degree,
        regular_spread_intersection=regular,
        spread_count=spread_samples,
        spread_values={int(k): int(c) for k, c in zip(keys, counts)},
        seed=seed,
        plane_spectrum=plane_spectrum(L),
        point_spectrum=point_spectrum(L),
        switchable_pairs=switchable_pairs(L),
        **containment_flags(L),
    )


# -- invariants ----------------------------------------------------------------

class Verdict(enum.Enum):
    DISTINCT = "Distinct"
    INDISTINGUISHABLE = "Indistinguishable"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    reason: str

    @property
    def distinct(self) -> bool:
        return self.verdict is Verdict.DISTINCT


def compare_invariants(L1: LineClass, L2: LineClass) -> Comparison:
    """Compare sizes and plane/point spectra, directly and under duality.

    ``INDISTINGUISHABLE`` only says these invariants agree; it does not
    prove equivalence.
    """
    if L1.geometry.field != L2.geometry.field:
        raise GeometryMismatch("line classes live in different geometries")
    if L1.size() != L2.size():
        return Comparison(Verdict.DISTINCT, f"sizes differ ({L1.size()} vs {L2.size()})")
    pl1, pt1 = plane_spectrum(L1), point_spectrum(L1)
    pl2, pt2 = plane_spectrum(L2), point_spectrum(L2)
    if pl1 == pl2 and pt1 == pt2:
        return Comparison(Verdict.INDISTINGUISHABLE, "plane and point spectra agree")
    if pl1 == pt2 and pt1 == pl2:
        return Comparison(Verdict.INDISTINGUISHABLE, "spectra agree under duality")
    return Comparison(Verdict.DISTINCT, "plane/point spectra differ, also after duality")
