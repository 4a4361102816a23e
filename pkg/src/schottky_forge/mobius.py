"""Exact real Möbius maps acting on the upper half-plane and on R ∪ {∞}.

Matrices are stored unnormalized with rational entries; the determinant is
only required to be positive.  Two maps compare equal when their entries
agree up to a common nonzero scalar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import INF, AlgebraicPoint, as_rational, rational_sqrt, simplify
from .errors import DegenerateMapError, EllipticMapError, GeometryError, PoleError


class MapClass(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with rational entries and ad - bc > 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.det <= 0:
            raise ValueError(f"determinant must be positive, got {self.det}")

    @classmethod
    def from_rows(cls, rows) -> "MobiusMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def normalize(self) -> "MobiusMap":
        """Projective representative whose first nonzero entry is 1."""
        lead = next(x for x in (self.a, self.b, self.c, self.d) if x != 0)
        return MobiusMap(self.a / lead, self.b / lead, self.c / lead, self.d / lead)

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return self.normalize().rows == other.normalize().rows

    def __hash__(self):
        return hash(self.normalize().rows)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def __call__(self, x):
        return apply_boundary(self, x)

    def __repr__(self):
        return f"MobiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


IDENTITY = MobiusMap(1, 0, 0, 1)


def compose(g: MobiusMap, h: MobiusMap) -> MobiusMap:
    """Matrix product: (g∘h)(z) = g(h(z))."""
    return MobiusMap(
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
    )


def inverse(g: MobiusMap) -> MobiusMap:
    """Adjugate [[d, -b], [-c, a]]; same determinant, inverse map."""
    return MobiusMap(g.d, -g.b, -g.c, g.a)


def apply_boundary(g: MobiusMap, x):
    """Image of a boundary point.  g(∞) = a/c and g(-d/c) = ∞.

    Rational inputs give Fractions; AlgebraicPoint inputs give simplified
    AlgebraicPoints (NestedRadicalError if that is impossible).
    """
    if x is INF:
        return INF if g.c == 0 else g.a / g.c
    if not isinstance(x, AlgebraicPoint):
        x = as_rational(x)
    den = g.c * x + g.d
    if den == 0:
        return INF
    return simplify((g.a * x + g.b) / den)


def apply_interior(g: MobiusMap, z):
    """Action on a point (x, y) of the upper half-plane in binary floating point."""
    x, y = float(z[0]), float(z[1])
    if not y > 0:
        raise GeometryError(f"interior point needs y > 0, got y={y}")
    w = complex(x, y)
    img = (float(g.a) * w + float(g.b)) / (float(g.c) * w + float(g.d))
    return (img.real, img.imag)


def classify(g: MobiusMap) -> MapClass:
    if g.b == 0 and g.c == 0 and g.a == g.d:
        return MapClass.IDENTITY
    t2, four_det = g.trace**2, 4 * g.det
    if t2 > four_det:
        return MapClass.HYPERBOLIC
    if t2 == four_det:
        return MapClass.PARABOLIC
    return MapClass.ELLIPTIC


def fixed_points(g: MobiusMap):
    """Both boundary fixed points, ascending (∞ last).  Parabolic maps return a doubled point."""
    kind = classify(g)
    if kind is MapClass.IDENTITY:
        raise DegenerateMapError("the identity fixes every point")
    if kind is MapClass.ELLIPTIC:
        raise EllipticMapError(f"elliptic map has no real fixed points: {g!r}")
    if g.c == 0:
        if g.a == g.d:
            return (INF, INF)
        return (g.b / (g.d - g.a), INF)
    # roots of c z^2 + (d - a) z - b = 0
    disc = g.trace**2 - 4 * g.det
    base = (g.a - g.d) / (2 * g.c)
    if disc == 0:
        return (base, base)
    root = rational_sqrt(disc)
    if root is not None:
        lo, hi = sorted([base - root / (2 * g.c), base + root / (2 * g.c)])
        return (lo, hi)
    scale = abs(1 / (2 * g.c))
    return (AlgebraicPoint(base, -scale, disc), AlgebraicPoint(base, scale, disc))


def boundary_derivative(g: MobiusMap, x):
    """|g'(x)| = det / (c x + d)^2 at a finite boundary point."""
    if x is INF:
        raise ValueError("derivative at ∞ is not defined on the boundary line")
    if not isinstance(x, AlgebraicPoint):
        x = as_rational(x)
    den = g.c * x + g.d
    if den == 0:
        raise PoleError(f"x = {x} is the pole of {g!r}")
    return simplify(g.det / (den * den))


def isometric_circle(g: MobiusMap):
    """The circle |c z + d|^2 = det: center -d/c, radius sqrt(det)/|c|."""
    from .geometry import from_center_radius

    if g.c == 0:
        raise DegenerateMapError("c == 0: the map has no isometric circle")
    center = -g.d / g.c
    root = rational_sqrt(g.det)
    radius = root / abs(g.c) if root is not None else AlgebraicPoint(0, 1 / abs(g.c), g.det)
    return from_center_radius(center, radius)
