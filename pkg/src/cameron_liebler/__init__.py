"""Cameron-Liebler line classes in PG(3,q): construction, switching and exact verification."""

from .errors import GeometryError
from .finite_field import FieldElement, FieldSpec, field_new, is_square
from .geometry import Collineation, Geometry, Line, Plane, Point, build_geometry
from .line_classes import (
    LineClass,
    PatternMatrix,
    PatternReport,
    SwitchablePair,
    boundary_parameter,
    check_pattern_identities,
    complement,
    parameter_system_solutions,
    pattern,
    plane_spectrum,
    point_spectrum,
    solve_parameter_system,
    switch,
    switch_unchecked,
    switchable_pairs,
)
from .linefile import read_line_class, write_line_class
from .quadric import EllipticQuadric, LineKind, QuadraticForm, bruen_drudge, default_elliptic_form
from .verification import (
    Comparison,
    Spread,
    Verdict,
    VerificationReport,
    compare_invariants,
    degree_check,
    full_verify,
    regular_spread,
    sample_spreads,
    spread_intersection,
)

__version__ = "0.1.0"
