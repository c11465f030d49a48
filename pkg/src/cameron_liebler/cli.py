"""Command-line front end.

Exit status: 0 on success or a passing verification, 1 when verification
fails, 2 on usage or data errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import GeometryError, NoSwitchablePair, SizeNotMultiple
from .finite_field import field_new
from .geometry import build_geometry
from .line_classes import (
    boundary_parameter,
    check_pattern_identities,
    pattern,
    plane_spectrum,
    point_spectrum,
    switch,
    switchable_pairs,
)
from .linefile import read_line_class, write_line_class
from .quadric import FAMILIES, EllipticQuadric
from .verification import (
    DEFAULT_SEED,
    DEFAULT_SPREADS,
    compare_invariants,
    full_verify,
    infer_parameter,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    h: int = 1
    modulus: list[int] | None = None
    family: str | None = None
    inputs: tuple[str, ...] = ()
    out: str | None = None
    seed: int = DEFAULT_SEED
    spreads: int = DEFAULT_SPREADS
    workers: int = 1
    pair: str = "auto"
    line: str = "auto"
    x: int | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        values = vars(args).copy()
        if "input" in values:
            values["inputs"] = (values.pop("input"),)
        elif "inputs" in values:
            values["inputs"] = tuple(values["inputs"])
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in values.items() if k in known})


def _modulus(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"modulus must be comma-separated integers: {text!r}") from exc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cameron-liebler",
                                     description="Build, switch and verify Cameron-Liebler line classes in PG(3,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a Bruen-Drudge class")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--h", type=int, default=1)
    b.add_argument("--modulus", type=_modulus, help="monic modulus, coefficients low to high, e.g. 1,0,1")
    b.add_argument("--family", choices=FAMILIES, default="bd-S1")
    b.add_argument("--out", help="output path (default: standard output)")

    s = sub.add_parser("switch", help="switch a class at one of its switchable pairs")
    s.add_argument("input")
    s.add_argument("--pair", default="auto", help="'auto' or a point id")
    s.add_argument("--out")

    v = sub.add_parser("verify", help="full Cameron-Liebler verification report")
    v.add_argument("input")
    v.add_argument("--spreads", type=_positive, default=DEFAULT_SPREADS)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--workers", type=_positive, default=1)

    pt = sub.add_parser("pattern", help="pattern matrix of one line")
    pt.add_argument("input")
    pt.add_argument("--line", default="auto",
                    help="line id, or 'auto' for a non-member line through the first switchable pair")
    pt.add_argument("--x", type=int, help="parameter (default: inferred from the class size)")

    c = sub.add_parser("compare", help="compare size and plane/point spectra of two classes")
    c.add_argument("inputs", nargs=2)

    sp = sub.add_parser("spectrum", help="plane and point intersection histograms")
    sp.add_argument("input")
    return parser


def _hist(h: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(h.items()))


def _emit(path, L, form, out):
    if path:
        write_line_class(path, L, form)
    else:
        write_line_class(out, L, form)


def cmd_build(cfg: RunConfig, out, err) -> int:
    field = field_new(cfg.p, cfg.h, cfg.modulus)
    quadric = EllipticQuadric(build_geometry(field))
    L = quadric.family(cfg.family)
    _emit(cfg.out, L, quadric.form, out)
    (out if cfg.out else err).write(f"family={cfg.family} size={L.size()} x={infer_parameter(L)}\n")
    return EXIT_OK


def cmd_switch(cfg: RunConfig, out, err) -> int:
    lf = read_line_class(cfg.inputs[0])
    L = lf.line_class
    pairs = switchable_pairs(L)
    if cfg.pair != "auto":
        try:
            point = int(cfg.pair)
        except ValueError:
            err.write(f"error: --pair must be 'auto' or a point id, got {cfg.pair!r}\n")
            return EXIT_USAGE
        pairs = [s for s in pairs if s.point == point]
    if not pairs:
        raise NoSwitchablePair("no incident point-plane pair satisfies the switching conditions")
    pair = pairs[0]
    L2 = switch(L, pair.point, pair.plane)
    _emit(cfg.out, L2, lf.form, out)
    kind = "dual" if pair.dual else "direct"
    (out if cfg.out else err).write(f"switched at point={pair.point} plane={pair.plane} ({kind}) size={L2.size()}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, err) -> int:
    lf = read_line_class(cfg.inputs[0])
    try:
        report = full_verify(lf.line_class, cfg.spreads, cfg.seed, cfg.workers, lf.header.get("form"))
    except SizeNotMultiple as exc:
        out.write(f"size: {lf.line_class.size()}\nresult: fail\nreason: {exc}\n")
        return EXIT_FAIL
    out.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_pattern(cfg: RunConfig, out, err) -> int:
    L = read_line_class(cfg.inputs[0]).line_class
    g = L.geometry
    front = None
    if cfg.line == "auto":
        pairs = switchable_pairs(L)
        if not pairs:
            raise NoSwitchablePair("'auto' needs a switchable pair")
        s = pairs[0]
        candidates = [m for m in g.pencil(s.point, s.plane) if not L.members[m]]
        if not candidates:
            candidates = list(g.pencil(s.point, s.plane))
        lid, front = int(candidates[0]), s
    else:
        try:
            lid = int(cfg.line)
        except ValueError:
            err.write(f"error: --line must be an integer or 'auto', got {cfg.line!r}\n")
            return EXIT_USAGE
        if not 0 <= lid < g.num_lines:
            err.write(f"error: line id {lid} out of range [0, {g.num_lines})\n")
            return EXIT_USAGE
    x = cfg.x if cfg.x is not None else infer_parameter(L)
    T = pattern(lid, L)
    if front is not None:
        T = T.with_front(point=front.point, plane=front.plane)
    rep = check_pattern_identities(T, x)
    out.write(f"line: {lid}\nin_class: {'yes' if T.in_class else 'no'}\nparameter: {x}\n")
    out.write("rows(planes): " + " ".join(map(str, T.row_planes)) + "\n")
    out.write("cols(points): " + " ".join(map(str, T.col_points)) + "\n")
    width = len(str(g.q))
    for row in T.entries:
        out.write("  " + " ".join(f"{v:>{width}}" for v in row) + "\n")
    out.write(f"square_sum: {int((T.entries ** 2).sum())}\n")
    for name in ("row_column_sums", "cross_sums", "additivity", "square_sum"):
        out.write(f"identity_{name}: {'pass' if getattr(rep, name) else 'fail'}\n")
    if front is not None:
        try:
            t, xs = boundary_parameter(T)[0]
            out.write(f"switchable_boundary: t={t} x={xs}\n")
        except GeometryError:
            out.write("switchable_boundary: none\n")
    return EXIT_OK if rep.all else EXIT_FAIL


def cmd_compare(cfg: RunConfig, out, err) -> int:
    first = read_line_class(cfg.inputs[0])
    second = read_line_class(cfg.inputs[1], geometry=first.line_class.geometry)
    L1, L2 = first.line_class, second.line_class
    result = compare_invariants(L1, L2)
    out.write(f"verdict: {result.verdict.value}\nreason: {result.reason}\n")
    for tag, L in (("1", L1), ("2", L2)):
        out.write(f"size_{tag}: {L.size()}\n")
        out.write(f"plane_spectrum_{tag}: {_hist(plane_spectrum(L))}\n")
        out.write(f"point_spectrum_{tag}: {_hist(point_spectrum(L))}\n")
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, out, err) -> int:
    L = read_line_class(cfg.inputs[0]).line_class
    out.write(f"size: {L.size()}\n")
    out.write(f"plane_spectrum: {_hist(plane_spectrum(L))}\n")
    out.write(f"point_spectrum: {_hist(point_spectrum(L))}\n")
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "switch": cmd_switch,
    "verify": cmd_verify,
    "pattern": cmd_pattern,
    "compare": cmd_compare,
    "spectrum": cmd_spectrum,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](RunConfig.from_args(args), out, err)
    except GeometryError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
