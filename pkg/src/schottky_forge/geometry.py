"""Semicircles orthogonal to the real axis and the predicates built on them.

A :class:`Semicircle` is a geodesic of the upper half-plane stored by its
two boundary endpoints.  Everything here is exact; interval relations are
read off the endpoints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import INF, AlgebraicPoint, as_rational, simplify
from .errors import CrossingCirclesError, GeometryError, NestedRadicalError, TangentialDegeneracyError
from .mobius import MobiusMap, apply_boundary


def _point(x):
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "∞"):
        return INF
    if isinstance(x, AlgebraicPoint):
        return x.simplify()
    return as_rational(x)


@dataclass(frozen=True)
class Semicircle:
    """Geodesic with boundary endpoints p < q; ``q is INF`` encodes the vertical line x = p.

    ``interior_right`` only matters for vertical lines: it selects which side
    counts as the interior (x > p by default).  It is a side hint, not part
    of the geodesic, so it takes no part in equality or hashing: a map whose
    pole lies inside a half-disk turns that half-disk inside out, and two
    routes to the same line may disagree on the side.
    """

    p: object
    q: object
    interior_right: bool = field(default=True, compare=False)

    def __post_init__(self):
        p, q = _point(self.p), _point(self.q)
        if p is INF and q is INF:
            raise GeometryError("a semicircle needs at least one finite endpoint")
        if p is INF:
            p, q = q, p
        if q is not INF and p > q:
            p, q = q, p
        if p == q:
            raise GeometryError(f"degenerate semicircle with equal endpoints {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if q is not INF:
            object.__setattr__(self, "interior_right", True)

    @property
    def is_line(self) -> bool:
        return self.q is INF

    @property
    def center(self):
        if self.is_line:
            raise GeometryError("a vertical line has no center")
        return simplify((self.p + self.q) / 2)

    @property
    def radius(self):
        if self.is_line:
            raise GeometryError("a vertical line has no radius")
        return simplify((self.q - self.p) / 2)

    def span(self):
        """Closed real interval covered by the half-disk; unbounded ends are ±inf floats."""
        if not self.is_line:
            return (self.p, self.q)
        return (self.p, float("inf")) if self.interior_right else (float("-inf"), self.p)

    def __repr__(self):
        if self.is_line:
            side = "right" if self.interior_right else "left"
            return f"Semicircle(line x={self.p}, interior {side})"
        return f"Semicircle({self.p}, {self.q})"


class AxisRay(enum.IntEnum):
    """i^(k-1) R+: 1 = positive real, 2 = positive imaginary, 3 = negative real."""

    POSITIVE_REAL = 1
    POSITIVE_IMAGINARY = 2
    NEGATIVE_REAL = 3


@dataclass(frozen=True)
class GapInterval:
    lo: object
    hi: object
    length: object = field(default=None)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise GeometryError(f"gap needs lo < hi, got ({self.lo}, {self.hi})")
        if self.length is None:
            object.__setattr__(self, "length", simplify(self.hi - self.lo))

    def contains(self, x) -> bool:
        return self.lo < x < self.hi


def from_center_radius(c, r) -> Semicircle:
    c = _point(c)
    r = _point(r)
    if not r > 0:
        raise GeometryError(f"radius must be positive, got {r}")
    return Semicircle(simplify(c - r), simplify(c + r))


def image_under_map(C: Semicircle, g: MobiusMap) -> Semicircle:
    """Image geodesic; a vertical line results when an endpoint goes to ∞."""
    gp, gq = apply_boundary(g, C.p), apply_boundary(g, C.q)
    if gp is not INF and gq is not INF:
        return Semicircle(gp, gq)
    finite = gq if gp is INF else gp
    probe = _interior_probe(C)
    gm = apply_boundary(g, probe)
    return Semicircle(finite, INF, interior_right=gm > finite)


def _interior_probe(C: Semicircle):
    if not C.is_line:
        return simplify((C.p + C.q) / 2)
    return C.p + 1 if C.interior_right else C.p - 1


def interior_contains(C: Semicircle, x) -> bool:
    """Strictly inside the half-disk bounded by C (points on C are not inside)."""
    if x is INF:
        return False
    if C.is_line:
        return x > C.p if C.interior_right else x < C.p
    return C.p < x < C.q


def on_circle(C: Semicircle, x) -> bool:
    return x == C.p or x == C.q


def relation(C1: Semicircle, C2: Semicircle) -> str:
    """One of 'equal', 'disjoint', 'tangent', 'nested', 'crossing'."""
    if C1 == C2:
        return "equal"
    lo1, hi1 = C1.span()
    lo2, hi2 = C2.span()
    if hi1 < lo2 or hi2 < lo1:
        return "disjoint"
    shared = sum(1 for a in (C1.p, C1.q) if a is not INF and a in (C2.p, C2.q))
    if shared == 1:
        return "tangent"
    if (lo1 < lo2 and hi2 < hi1) or (lo2 < lo1 and hi1 < hi2):
        return "nested"
    return "crossing"


def disjoint(C1: Semicircle, C2: Semicircle) -> bool:
    return relation(C1, C2) == "disjoint"


def tangent(C1: Semicircle, C2: Semicircle) -> bool:
    return relation(C1, C2) == "tangent"


def nested(C1: Semicircle, C2: Semicircle) -> bool:
    return relation(C1, C2) == "nested"


def nested_inside(inner: Semicircle, outer: Semicircle) -> bool:
    """inner's closed interval lies in outer's open interval."""
    lo1, hi1 = inner.span()
    lo2, hi2 = outer.span()
    return lo2 < lo1 and hi1 < hi2


def separates(C: Semicircle, x, y) -> bool:
    for pt in (x, y):
        if on_circle(C, pt):
            raise TangentialDegeneracyError(f"point {pt} lies on {C!r}")
    return interior_contains(C, x) != interior_contains(C, y)


def _sqrt_point(v):
    if isinstance(v, AlgebraicPoint):
        if not v.is_rational:
            raise NestedRadicalError("square root of an irrational value")
        v = v.base
    return AlgebraicPoint.sqrt(v).simplify()


def axis_intersections(C: Semicircle, ray) -> tuple:
    """Distances from the origin at which C meets the ray i^(k-1) R+, ascending."""
    k = AxisRay(ray)
    if C.is_line:
        if k is AxisRay.POSITIVE_IMAGINARY:
            if C.p == 0:
                raise GeometryError("the line x = 0 contains the whole imaginary ray")
            return ()
        ends = [C.p]
    else:
        ends = [C.p, C.q]
    if k is AxisRay.POSITIVE_REAL:
        return tuple(sorted(e for e in ends if e > 0))
    if k is AxisRay.NEGATIVE_REAL:
        return tuple(sorted(simplify(-e) for e in ends if e < 0))
    # c^2 + y^2 = r^2  <=>  y^2 = -p q
    if C.p < 0 < C.q:
        return (_sqrt_point(-(C.p * C.q)),)
    return ()


def designated_axis_value(C: Semicircle, ray):
    """The single Y value used for gap measurement: the outer intersection, or None."""
    values = axis_intersections(C, ray)
    return values[-1] if values else None


@dataclass(frozen=True)
class ConsecutiveGap:
    value: object
    ray: int
    per_ray: dict


def consecutive_gap(Cj: Semicircle, Cj1: Semicircle) -> ConsecutiveGap:
    """Z = max over rays hit by both circles of |Y_j - Y_(j+1)| (outer-endpoint rule)."""
    per_ray = {}
    for k in AxisRay:
        yj, yj1 = designated_axis_value(Cj, k), designated_axis_value(Cj1, k)
        if yj is None or yj1 is None:
            continue
        per_ray[int(k)] = simplify(abs(yj - yj1))
    if not per_ray:
        raise GeometryError(f"{Cj!r} and {Cj1!r} meet no common axis ray")
    best = max(per_ray, key=lambda k: per_ray[k])
    return ConsecutiveGap(per_ray[best], best, per_ray)


def check_non_crossing(circles) -> None:
    """Raise CrossingCirclesError unless the family is laminar (disjoint, tangent or nested)."""
    spans = sorted(((C.span(), C) for C in circles), key=lambda t: (t[0][0], -t[0][1]))
    stack = []
    for (lo, hi), C in spans:
        while stack and stack[-1][0][1] <= lo:
            stack.pop()
        if stack:
            (tlo, thi), top = stack[-1]
            if hi > thi:
                raise CrossingCirclesError(f"{top!r} crosses {C!r}")
        stack.append(((lo, hi), C))


def gaps_on_real_line(circles, window) -> list:
    """Maximal open subintervals of ``window`` covered by no circle's closed interval."""
    circles = list(circles)
    check_non_crossing(circles)
    wlo, whi = (_point(w) for w in window)
    if not wlo < whi:
        raise GeometryError("window needs lo < hi")
    spans = sorted((C.span() for C in circles), key=lambda s: s[0])
    gaps = []
    cur = wlo
    for lo, hi in spans:
        if lo > cur:
            end = lo if lo < whi else whi
            if cur < end:
                gaps.append(GapInterval(cur, end))
        if hi > cur:
            cur = hi
        if not cur < whi:
            break
    if cur < whi:
        gaps.append(GapInterval(cur, whi))
    return gaps
