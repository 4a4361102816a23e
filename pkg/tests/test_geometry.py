from fractions import Fraction

import pytest

from schottky_forge.algebraic import INF, AlgebraicPoint
from schottky_forge.errors import CrossingCirclesError, GeometryError, TangentialDegeneracyError
from schottky_forge.geometry import (
    AxisRay,
    GapInterval,
    Semicircle,
    axis_intersections,
    check_non_crossing,
    consecutive_gap,
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
from schottky_forge.mobius import IDENTITY, MobiusMap

K = Fraction(1, 10**12)
TAU = AlgebraicPoint.sqrt(15)


def paper_circles(kappa, lam=Fraction(2)):
    r = 1 - kappa
    return [from_center_radius(c, r) for c in (lam + 2, lam, -lam, -lam - 2)]


def test_from_center_radius():
    assert from_center_radius(4, 1 - K) == Semicircle(3 + K, 5 - K)
    assert from_center_radius(0, 1) == Semicircle(-1, 1)
    assert from_center_radius(-2, 1) == Semicircle(-3, -1)
    with pytest.raises(GeometryError):
        from_center_radius(0, 0)


def test_semicircle_canonical_order():
    assert Semicircle(5, 3) == Semicircle(3, 5)
    assert Semicircle(INF, 2).q is INF
    with pytest.raises(GeometryError):
        Semicircle(1, 1)


def test_image_pairing_exact():
    lam = Fraction(2)
    m2 = (1 - K) ** 2
    h1 = MobiusMap(lam, lam**2 - m2, 1, lam)
    sc1, sc2, sc3, sc4 = paper_circles(K)
    assert image_under_map(sc3, h1) == sc2
    assert image_under_map(sc2, IDENTITY) == sc2


def test_image_through_pole_is_a_line():
    line = image_under_map(Semicircle(-2, 0), MobiusMap(2, 3, 1, 2))
    assert line.is_line and line.p == Fraction(3, 2)
    # the midpoint -1 maps to 1 < 3/2, so the interior is on the left
    assert not line.interior_right


def test_interior_contains():
    sc4 = paper_circles(K)[3]
    assert interior_contains(sc4, -TAU)
    assert not interior_contains(sc4, TAU)
    assert interior_contains(Semicircle(-1, 1), 0)
    assert not interior_contains(Semicircle(-1, 1), 1)


def test_relations():
    sc1, sc2, _, _ = paper_circles(K)
    assert disjoint(sc1, sc2)
    t1, t2, _, _ = paper_circles(Fraction(0))
    assert tangent(t1, t2)
    assert nested(Semicircle(-1, 1), Semicircle(Fraction(-1, 2), Fraction(1, 2)))
    assert relation(Semicircle(0, 2), Semicircle(1, 3)) == "crossing"
    assert relation(sc1, sc1) == "equal"


def test_separates():
    sc4 = paper_circles(K)[3]
    assert separates(sc4, TAU, -TAU)
    assert not separates(Semicircle(-1, 1), -2, 2)
    assert separates(Semicircle(-1, 1), 0, 2)
    with pytest.raises(TangentialDegeneracyError):
        separates(Semicircle(-1, 1), 1, 2)


def test_axis_intersections():
    C = Semicircle(-2, 2)
    for k in AxisRay:
        assert axis_intersections(C, k) == (2,)
    sc1 = Semicircle(3, 5)
    assert axis_intersections(sc1, 1) == (3, 5)
    assert axis_intersections(sc1, 2) == ()
    assert axis_intersections(sc1, 3) == ()
    assert axis_intersections(Semicircle(-1, 3), 2) == (AlgebraicPoint.sqrt(3),)


def test_consecutive_gap_examples():
    C = Semicircle(-2, 2)
    assert consecutive_gap(C, C).value == 0
    assert consecutive_gap(C, Semicircle(-3, 3)).value == 1
    g = consecutive_gap(C, Semicircle(-2, 4))
    assert g.value == 2 and g.ray == 1
    assert g.per_ray[2] == abs(2 - AlgebraicPoint.sqrt(8))
    assert g.per_ray[3] == 0


def test_consecutive_gap_needs_common_ray():
    with pytest.raises(GeometryError):
        consecutive_gap(Semicircle(3, 5), Semicircle(-5, -3))


def test_gaps_on_real_line_examples():
    assert gaps_on_real_line([], (-1, 1)) == [GapInterval(-1, 1)]
    assert gaps_on_real_line([Semicircle(-1, 1)], (-1, 1)) == []
    gaps = gaps_on_real_line(paper_circles(K), (-6, 6))
    assert len(gaps) == 5
    assert GapInterval(3 - K, 3 + K) in gaps


def test_gaps_reject_crossing():
    with pytest.raises(CrossingCirclesError):
        gaps_on_real_line([Semicircle(0, 2), Semicircle(1, 3)], (-5, 5))


def test_check_non_crossing_accepts_laminar():
    check_non_crossing([Semicircle(-3, 3), Semicircle(-1, 1), Semicircle(1, 2), Semicircle(4, 5)])
