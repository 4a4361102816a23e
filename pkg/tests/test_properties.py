"""Property suites for the exactness invariants."""

import itertools
import random
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from schottky_forge.algebraic import INF
from schottky_forge.construction import PaperParams, build_circles, build_generators, build_system, lemma24_bound
from schottky_forge.engine import (
    LETTERS,
    ReducedWord,
    chainrule_derivative,
    check_orbit_laminar,
    enumerate_words,
    orbit_circles,
    word_map,
)
from schottky_forge.errors import PoleError, TangentialDegeneracyError
from schottky_forge.geometry import (
    AxisRay,
    Semicircle,
    axis_intersections,
    gaps_on_real_line,
    image_under_map,
    on_circle,
    relation,
    separates,
)
from schottky_forge.mobius import (
    MobiusMap,
    apply_boundary,
    apply_interior,
    boundary_derivative,
    compose,
    fixed_points,
    isometric_circle,
)

small = st.integers(-12, 12)
rationals = st.fractions(-20, 20, max_denominator=50)


@st.composite
def maps(draw):
    a, b, c, d = draw(small), draw(small), draw(small), draw(small)
    if a * d - b * c < 0:
        a, b = -a, -b
    assume(a * d - b * c != 0)
    return MobiusMap(a, b, c, d)


@st.composite
def circles(draw):
    p, q = draw(rationals), draw(rationals)
    assume(p != q)
    return Semicircle(p, q)


@st.composite
def paper_params(draw):
    lam = draw(st.fractions(Fraction(101, 100), 10, max_denominator=1000))
    kappa = draw(st.fractions(Fraction(1, 10**6), Fraction(1, 2), max_denominator=10**6))
    assume(lam > 1 and 0 < kappa < Fraction(1, 2))
    return PaperParams(lam, kappa)


# --- mobius ---------------------------------------------------------------

@given(maps(), st.fractions(Fraction(1, 100), 50, max_denominator=100))
def test_projective_normalization(g, s):
    scaled = MobiusMap(g.a * s, g.b * s, g.c * s, g.d * s)
    assert scaled.normalize().rows == g.normalize().rows


@given(maps(), maps(), st.lists(rationals, min_size=1, max_size=100))
def test_compose_acts_as_composition(g, h, xs):
    gh = compose(g, h)
    for x in xs + [INF]:
        assert apply_boundary(gh, x) == apply_boundary(g, apply_boundary(h, x))


@given(maps(), maps(), rationals)
def test_chain_rule(g, h, x):
    hx = apply_boundary(h, x)
    assume(hx is not INF and h.c * x + h.d != 0 and g.c * hx + g.d != 0)
    assert boundary_derivative(compose(g, h), x) == boundary_derivative(g, hx) * boundary_derivative(h, x)


@given(maps())
def test_fixed_points_are_fixed(g):
    tr2, det4 = g.trace**2, 4 * g.det
    assume(tr2 >= det4 and not (g.b == 0 and g.c == 0 and g.a == g.d))
    for p in fixed_points(g):
        assert apply_boundary(g, p) == p


@given(maps(), rationals)
def test_derivative_one_iff_on_isometric_circle(g, x):
    assume(g.c != 0 and g.c * x + g.d != 0)
    C = isometric_circle(g)
    assert (boundary_derivative(g, x) == 1) == on_circle(C, x)


@given(maps())
def test_derivative_one_at_isometric_endpoints(g):
    assume(g.c != 0)
    C = isometric_circle(g)
    for x in (C.p, C.q):
        assert boundary_derivative(g, x) == 1


def test_apply_interior_keeps_upper_half_plane():
    rng = random.Random(7)
    for _ in range(10_000):
        a, b, c, d = (rng.uniform(-10, 10) for _ in range(4))
        if a * d - b * c <= 1e-6:
            a, b = -a, -b
        if a * d - b * c <= 1e-6:
            continue
        g = MobiusMap(Fraction(a), Fraction(b), Fraction(c), Fraction(d))
        _, y = apply_interior(g, (rng.uniform(-50, 50), rng.uniform(1e-3, 50)))
        assert y > 0


# --- geometry -------------------------------------------------------------

@given(circles(), maps(), maps())
def test_image_respects_composition(C, g, h):
    assert image_under_map(image_under_map(C, h), g) == image_under_map(C, compose(g, h))


@given(circles(), circles())
def test_relation_symmetric_and_exclusive(C1, C2):
    r = relation(C1, C2)
    assert r == relation(C2, C1)
    assert r in {"equal", "disjoint", "tangent", "nested", "crossing"}


@given(circles(), rationals, rationals, maps())
def test_separates_invariant(C, x, y, g):
    assume(not on_circle(C, x) and not on_circle(C, y))
    gx, gy = apply_boundary(g, x), apply_boundary(g, y)
    gC = image_under_map(C, g)
    try:
        after = separates(gC, gx, gy)
    except TangentialDegeneracyError:
        raise AssertionError("a Möbius map cannot move a point onto the image circle")
    assert separates(C, x, y) == after


@given(circles())
def test_axis_values_on_circle(C):
    c, r = C.center, C.radius
    for k in AxisRay:
        for v in axis_intersections(C, k):
            if k is AxisRay.POSITIVE_IMAGINARY:
                assert v * v == r * r - c * c
            elif k is AxisRay.POSITIVE_REAL:
                assert abs(v - c) == r
            else:
                assert abs(-v - c) == r


@st.composite
def laminar_families(draw):
    """Disjoint top-level intervals with optional nested children."""
    cuts = sorted(set(draw(st.lists(st.integers(-40, 40), min_size=0, max_size=12))))
    fam = []
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        fam.append(Semicircle(lo, hi))
        if hi - lo > 2 and draw(st.booleans()):
            fam.append(Semicircle(lo + Fraction(1, 2), hi - Fraction(1, 2)))
    return fam


@given(laminar_families())
def test_gaps_tile_window(fam):
    lo, hi = Fraction(-45), Fraction(45)
    gaps = gaps_on_real_line(fam, (lo, hi))
    covered = sorted([(g.lo, g.hi) for g in gaps] + [C.span() for C in fam if not any(
        D is not C and D.p < C.p and C.q < D.q for D in fam)])
    total = sum(b - a for a, b in covered)
    assert total == hi - lo
    for (a1, b1), (a2, b2) in zip(covered, covered[1:]):
        assert b1 <= a2


# --- engine ---------------------------------------------------------------

def test_word_counts_exact_length():
    for ell in range(1, 9):
        exact = [w for w in enumerate_words(ell) if len(w) == ell]
        assert len(exact) == 4 * 3 ** (ell - 1)


GENS = build_generators(PaperParams(2, Fraction(1, 10**12)))
WORDS4 = [ReducedWord()] + enumerate_words(4)


def test_word_map_homomorphism_exhaustive():
    cache = {w: word_map(w, GENS) for w in WORDS4}
    for u, v in itertools.product(WORDS4, repeat=2):
        if len(u) + len(v) > 4:
            continue
        if u.letters and v.letters and {u.letters[-1], v.letters[0]} in ({"A", "A'"}, {"B", "B'"}):
            continue
        assert cache[u + v] == compose(cache[u], cache[v])


def test_chainrule_equals_direct_formula():
    rng = random.Random(11)
    probes = [Fraction(rng.randrange(-600, 600), rng.randrange(1, 97)) for _ in range(25)]
    for w in WORDS4:
        g = word_map(w, GENS)
        for x in probes:
            try:
                lhs = chainrule_derivative(w, x, GENS)
            except PoleError:
                continue
            assert lhs == g.det / (g.c * x + g.d) ** 2


def test_depth5_orbit_laminar():
    entries = orbit_circles(build_system(PaperParams(2, Fraction(1, 10**12))), 5)
    report = check_orbit_laminar(entries)
    assert report.non_crossing and report.unique_parents, report.problems[:3]


# --- construction ---------------------------------------------------------

@settings(max_examples=50)
@given(paper_params())
def test_pairing_identity_random(p):
    sc1, sc2, sc3, sc4 = build_circles(p)
    h1, h2 = build_generators(p)
    assert image_under_map(sc3, h1) == sc2
    assert image_under_map(sc4, h2) == sc1


@settings(max_examples=50)
@given(paper_params())
def test_h2star_fixed_points(p):
    from schottky_forge.algebraic import AlgebraicPoint

    root = AlgebraicPoint.sqrt((p.lam + 2) ** 2 - (1 - p.kappa) ** 2)
    assert fixed_points(build_generators(p)[1]) == (-root, root)


def _dichotomy(g, C, rng, n=1000):
    lo, hi = C.p, C.q
    for _ in range(n):
        t = Fraction(rng.randrange(1, 10**6), 10**6)
        inside = lo + t * (hi - lo)
        assert boundary_derivative(g, inside) > 1
        side = rng.choice((-1, 1))
        outside = (hi if side > 0 else lo) + side * Fraction(rng.randrange(1, 10**6), 10**4)
        assert boundary_derivative(g, outside) < 1
    assert boundary_derivative(g, lo) == 1 and boundary_derivative(g, hi) == 1


def test_contraction_dichotomy():
    rng = random.Random(5)
    for lam in (Fraction(2), Fraction(5, 3)):
        for kappa in (Fraction(1, 10**12), Fraction(4, 10**12), Fraction(9, 10**12)):
            p = PaperParams(lam, kappa)
            sc1, sc2, sc3, sc4 = build_circles(p)
            h1, h2 = build_generators(p)
            _dichotomy(h1, sc3, rng, 200)
            _dichotomy(h2, sc4, rng, 200)


@given(st.fractions(Fraction(1, 10**9), 1, max_denominator=10**9), st.integers(2, 50))
def test_lemma24_linear(eps, c):
    from decimal import Decimal, localcontext

    p = PaperParams(2, Fraction(1, 10**11))
    a = lemma24_bound(p, eps).value
    b = lemma24_bound(p, eps * c).value
    with localcontext() as ctx:
        ctx.prec = 80
        assert abs(b / a - c) < Decimal("1e-47")


def test_letters_order():
    assert LETTERS == ("A", "A'", "B", "B'")
