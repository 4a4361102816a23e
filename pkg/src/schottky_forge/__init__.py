"""Exact construction and checking of a rank-2 Fuchsian Schottky group family.

Submodules: :mod:`algebraic` (exact numbers), :mod:`mobius` (maps),
:mod:`geometry` (semicircles), :mod:`engine` (words, orbits, ping-pong check),
:mod:`construction` (the family, its constants and bound evaluators),
:mod:`render` (SVG scenes) and :mod:`cli`.
"""

__version__ = "0.1.0"

from .algebraic import INF, AlgebraicPoint, exact_sign, is_finite, simplify, to_decimal
from .construction import *  # noqa: F401,F403
from .construction import __all__ as _construction_all
from .engine import *  # noqa: F401,F403
from .engine import __all__ as _engine_all
from .errors import *  # noqa: F401,F403
from .geometry import (
    AxisRay,
    Semicircle,
    axis_intersections,
    check_non_crossing,
    consecutive_gap,
    designated_axis_value,
    disjoint,
    from_center_radius,
    gaps_on_real_line,
    image_under_map,
    interior_contains,
    nested,
    relation,
    separates,
    tangent,
)
from .mobius import (
    IDENTITY,
    MapClass,
    MobiusMap,
    apply_boundary,
    apply_interior,
    boundary_derivative,
    classify,
    compose,
    fixed_points,
    inverse,
    isometric_circle,
)
from .render import Scene, figure_preset, render_scene, system_scene

__all__ = [
    "__version__",
    "INF", "AlgebraicPoint", "exact_sign", "is_finite", "simplify", "to_decimal",
    "AxisRay", "Semicircle", "axis_intersections", "check_non_crossing", "consecutive_gap",
    "designated_axis_value", "disjoint", "from_center_radius", "gaps_on_real_line", "image_under_map",
    "interior_contains", "nested", "relation", "separates", "tangent",
    "IDENTITY", "MapClass", "MobiusMap", "apply_boundary", "apply_interior", "boundary_derivative",
    "classify", "compose", "fixed_points", "inverse", "isometric_circle",
    "Scene", "figure_preset", "render_scene", "system_scene",
    *_construction_all, *_engine_all,
]
