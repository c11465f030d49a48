"""Text format for line classes.

::

    p=3
    h=1
    modulus=0,1
    form=0 1 0 0 0 0 0 1 0 1
    convention=first-nonzero-1
    1 0 0 0 0 0
    ...

Every data row is one normalized Plücker 6-tuple.  Coordinates are
separated by spaces; each coordinate is the comma-separated coefficient
list (low degree first) of a field element, which for prime fields is a
single residue.  ``form`` holds the 10 quadratic-form coefficients in the
order ``x0x0 x0x1 x0x2 x0x3 x1x1 x1x2 x1x3 x2x2 x2x3 x3x3`` in the same
element notation.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import FileFormatError, UnknownLine
from .finite_field import FieldSpec, field_new
from .geometry import Geometry, build_geometry
from .line_classes import LineClass
from .quadric import QuadraticForm, default_elliptic_form

CONVENTION = "first-nonzero-1"
HEADER_KEYS = ("p", "h", "modulus", "form", "convention")


def format_element(field: FieldSpec, code: int) -> str:
    return ",".join(str(c) for c in field.digits(int(code)))


def parse_element(field: FieldSpec, token: str) -> int:
    try:
        coeffs = [int(c) for c in token.split(",")]
    except ValueError as exc:
        raise FileFormatError(f"bad field element {token!r}") from exc
    if len(coeffs) != field.h or any(not 0 <= c < field.p for c in coeffs):
        raise FileFormatError(f"field element {token!r} needs {field.h} residues mod {field.p}")
    return field.encode(coeffs)


def format_plucker(geometry: Geometry, line_id: int) -> str:
    return " ".join(format_element(geometry.field, c) for c in geometry.plucker[line_id])


@dataclass
class LineFile:
    line_class: LineClass
    form: QuadraticForm
    header: dict[str, str]


def dumps(L: LineClass, form: QuadraticForm | None = None) -> str:
    g = L.geometry
    F = g.field
    form = form or default_elliptic_form(F)
    out = io.StringIO()
    out.write(f"p={F.p}\nh={F.h}\n")
    out.write("modulus=" + ",".join(str(c) for c in F.modulus_poly) + "\n")
    out.write("form=" + " ".join(format_element(F, c) for c in form.coeffs) + "\n")
    out.write(f"convention={CONVENTION}\n")
    for lid in L.ids:
        out.write(format_plucker(g, int(lid)) + "\n")
    return out.getvalue()


def write_line_class(dest: str | os.PathLike | TextIO, L: LineClass, form: QuadraticForm | None = None) -> None:
    text = dumps(L, form)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="ascii") as fh:
            fh.write(text)


def loads(text: str, geometry: Geometry | None = None) -> LineFile:
    header: dict[str, str] = {}
    rows = [r.strip() for r in text.splitlines()]
    rows = [r for r in rows if r and not r.startswith("#")]
    k = 0
    while k < len(rows) and "=" in rows[k]:
        key, _, value = rows[k].partition("=")
        header[key.strip()] = value.strip()
        k += 1
    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise FileFormatError(f"missing header keys: {', '.join(missing)}")
    if header["convention"] != CONVENTION:
        raise FileFormatError(f"unsupported convention {header['convention']!r}")
    try:
        p, h = int(header["p"]), int(header["h"])
        modulus = [int(c) for c in header["modulus"].split(",")]
    except ValueError as exc:
        raise FileFormatError("malformed p/h/modulus header") from exc
    field = field_new(p, h, modulus)
    if geometry is None:
        geometry = build_geometry(field)
    elif geometry.field != field:
        raise FileFormatError(f"file is over {field!r}, geometry over {geometry.field!r}")
    form_tokens = header["form"].split()
    if len(form_tokens) != 10:
        raise FileFormatError("form needs 10 coefficients")
    form = QuadraticForm(field, tuple(parse_element(field, t) for t in form_tokens))

    ids = []
    for row in rows[k:]:
        tokens = row.split()
        if len(tokens) != 6:
            raise FileFormatError(f"expected 6 Plücker coordinates, got {row!r}")
        coords = [parse_element(field, t) for t in tokens]
        try:
            lid = geometry.line_id(coords)
        except (UnknownLine, ValueError) as exc:
            raise UnknownLine(f"{row!r} is not a line of PG(3,{field.q})") from exc
        ids.append(lid)
    if len(set(ids)) != len(ids):
        raise FileFormatError("duplicate line in file")
    mask = np.zeros(geometry.num_lines, dtype=bool)
    mask[ids] = True
    return LineFile(LineClass(geometry, mask), form, header)


def read_line_class(src: str | os.PathLike | TextIO, geometry: Geometry | None = None) -> LineFile:
    if hasattr(src, "read"):
        return loads(src.read(), geometry)
    try:
        with open(src, encoding="ascii") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise FileFormatError(f"cannot read {src}: {exc}") from exc
    return loads(text, geometry)

