"""The explicit two-generator construction and evaluators for its quantitative bounds.

Generators (denominators cleared, det = (1 - kappa)^2)::

    h*  = [[lam,     lam^2 - (1-kappa)^2],     [1, lam]]
    h** = [[lam + 2, (lam+2)^2 - (1-kappa)^2], [1, lam + 2]]

Bound formulas involve irrational constants, so they are evaluated in
decimal floating point at ``working_precision()`` significant digits
(50 unless SCHOTTKY_PRECISION is set).  Everything else is exact.
"""

from __future__ import annotations

import decimal
import itertools
import os
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .algebraic import INF, AlgebraicPoint, as_rational, rational_str, simplify, to_decimal
from .engine import GeneratorPairing, SchottkySystem, orbit_circles
from .errors import BoundError
from .geometry import GapInterval, Semicircle, gaps_on_real_line
from .mobius import MobiusMap, apply_boundary, compose, fixed_points, inverse

DEFAULT_PRECISION = 50
GUARD_DIGITS = 10
SQRT_2_01_ARG = Fraction(201, 100)
LEMMA25_THRESHOLD = Fraction(1, 5)


def working_precision() -> int:
    env = os.environ.get("SCHOTTKY_PRECISION")
    if env:
        prec = int(env)
        if prec < 10:
            raise ValueError("SCHOTTKY_PRECISION must be at least 10")
        return prec
    return DEFAULT_PRECISION


@dataclass(frozen=True)
class PaperParams:
    lam: Fraction
    kappa: Fraction

    def __post_init__(self):
        lam, kappa = as_rational(self.lam), as_rational(self.kappa)
        if not lam > 1:
            raise ValueError(f"lambda must exceed 1, got {lam}")
        # kappa = 0 is the tangent limit; allowed here for limit checks
        if not 0 <= kappa < 1:
            raise ValueError(f"kappa must lie in [0, 1), got {kappa}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "kappa", kappa)

    def with_kappa(self, kappa) -> "PaperParams":
        return PaperParams(self.lam, kappa)

    def to_json(self):
        return {"lambda": rational_str(self.lam), "kappa": rational_str(self.kappa)}


@dataclass(frozen=True)
class Preset:
    name: str
    lam: Fraction
    kappa_threshold: Fraction | None
    description: str


PRESETS = {
    "lambda2": Preset("lambda2", Fraction(2), Fraction(4, 10**12), "lambda = 2, kappa_1 < 4e-12"),
    "lambda5over3": Preset("lambda5over3", Fraction(5, 3), Fraction(9, 10**12), "lambda = 5/3 exactly, kappa_2 < 9e-12"),
    "lambda5over3-decimal": Preset(
        "lambda5over3-decimal",
        Fraction("1.6666666667"),
        Fraction(9, 10**12),
        "lambda = 1.6666666667 read literally as a decimal",
    ),
}
DEFAULT_KAPPA = Fraction(1, 10**12)


def preset_params(name: str, kappa=None) -> PaperParams:
    preset = PRESETS[name]
    return PaperParams(preset.lam, DEFAULT_KAPPA if kappa is None else kappa)


# --- generators and circles ------------------------------------------------

def build_generators(p: PaperParams):
    lam, m2 = p.lam, (1 - p.kappa) ** 2
    h1 = MobiusMap(lam, lam**2 - m2, 1, lam)
    h2 = MobiusMap(lam + 2, (lam + 2) ** 2 - m2, 1, lam + 2)
    return h1, h2


def build_circles(p: PaperParams):
    """SC1..SC4 centered at lam+2, lam, -lam, -(lam+2), all of radius 1 - kappa."""
    lam, r = p.lam, 1 - p.kappa
    return tuple(Semicircle(c - r, c + r) for c in (lam + 2, lam, -lam, -(lam + 2)))


def build_system(p: PaperParams) -> SchottkySystem:
    """Validated system with pairings h*: SC3 -> SC2 and h**: SC4 -> SC1."""
    sc1, sc2, sc3, sc4 = build_circles(p)
    h1, h2 = build_generators(p)
    system = SchottkySystem((sc1, sc2, sc3, sc4), (GeneratorPairing(h1, sc3, sc2), GeneratorPairing(h2, sc4, sc1)))
    return system.validate()


def centers_outside_unit_interval(p: PaperParams) -> bool:
    return all(abs(C.center) > 1 for C in build_circles(p))


@dataclass(frozen=True)
class DerivedConstants:
    tau: AlgebraicPoint
    e: AlgebraicPoint
    A: Fraction
    h_star_fixed: tuple
    h_2star_fixed: tuple

    @property
    def tau_is_exact_fixed_point(self) -> bool:
        return self.h_2star_fixed[1] == self.tau


def derived_constants(p: PaperParams) -> DerivedConstants:
    lam, m2 = p.lam, (1 - p.kappa) ** 2
    h1, h2 = build_generators(p)
    return DerivedConstants(
        tau=AlgebraicPoint.sqrt((lam + 1) * (lam + 3)),
        e=AlgebraicPoint.sqrt(lam**2 - m2),
        A=(lam + 2) ** 2 - m2,
        h_star_fixed=fixed_points(h1),
        h_2star_fixed=fixed_points(h2),
    )


def paper_tau(p: PaperParams) -> AlgebraicPoint:
    return AlgebraicPoint.sqrt((p.lam + 1) * (p.lam + 3))


# --- quartic ---------------------------------------------------------------

QUARTIC = (9, 48, 91, 72, 20)


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_roots(coeffs) -> list:
    """Rational roots of an integer polynomial (highest degree first), ascending, without multiplicity."""
    coeffs = [int(c) for c in coeffs]
    roots = set()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        roots.add(Fraction(0))
    if len(coeffs) < 2:
        return sorted(roots)
    lead, const = coeffs[0], coeffs[-1]
    for num, den in itertools.product(_divisors(const), _divisors(lead)):
        for cand in (Fraction(num, den), Fraction(-num, den)):
            if poly_eval(coeffs, cand) == 0:
                roots.add(cand)
    return sorted(roots)


def quartic_roots() -> list:
    roots = rational_roots(QUARTIC)
    assert all(poly_eval(QUARTIC, r) == 0 for r in roots)
    return roots


def quartic_residual(x) -> Fraction:
    return poly_eval(QUARTIC, as_rational(x))


# --- commutator ------------------------------------------------------------

def commutator_map(p: PaperParams) -> MobiusMap:
    """D = h* h** h* (h**)^-1, unnormalized (det = (1 - kappa)^8)."""
    h1, h2 = build_generators(p)
    return compose(compose(compose(h1, h2), h1), inverse(h2))


@dataclass(frozen=True)
class ClosedFormFixedPoints:
    minus: Decimal
    plus: Decimal
    denominator: Fraction
    leading: Fraction
    radicand: Fraction
    matrix_radicand: Fraction
    precision: int


def _ctx(prec):
    return decimal.Context(prec=prec + GUARD_DIGITS)


def _dec(x, ctx) -> Decimal:
    x = as_rational(x)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def commutator_fixed_points_closed_form(p: PaperParams, prec: int | None = None) -> ClosedFormFixedPoints:
    """Closed-form fixed points of D, evaluated with x = lam.

    ``matrix_radicand`` is the radicand the matrix itself produces.  It
    differs from ``radicand`` by kappa^6 x^2: the closed form carries -2x^2 as
    its kappa^6 coefficient where the matrix gives -x^2.
    """
    prec = prec or working_precision()
    x, k = p.lam, p.kappa
    den = 4 * x**2 + 9 * x + 4 - 2 * x * k + x * k**2
    lead = 2 * (2 * x**3 + 6 * x**2 + 5 * x + 1 + 2 * (x + 1) * k - (x + 1) * k**2)
    rad = (
        poly_eval(QUARTIC, x)
        + 2 * k * (6 * x**4 + 16 * x**3 + 3 * x**2 - 16 * x - 8)
        + k**2 * (-2 * x**4 - 16 * x**3 + x**2 + 48 * x + 24)
        + 4 * k**3 * (-x**4 + x**2 - 8 * x - 4)
        + k**4 * (x**4 - 11 * x**2 + 8 * x + 4)
        + 6 * k**5 * x**2
        - 2 * k**6 * x**2
    )
    if rad < 0:
        raise BoundError(f"closed-form discriminant is negative: {rad}", value=rad)
    ctx = _ctx(prec)
    root = ctx.sqrt(_dec(rad, ctx))
    lead_d, den_d = _dec(lead, ctx), _dec(den, ctx)
    out = decimal.Context(prec=prec)
    minus = out.plus(ctx.divide(ctx.subtract(lead_d, root), den_d))
    plus = out.plus(ctx.divide(ctx.add(lead_d, root), den_d))
    return ClosedFormFixedPoints(minus, plus, den, lead, rad, rad + k**6 * x**2, prec)


# --- bound reports ---------------------------------------------------------

@dataclass
class BoundReport:
    lemma: str
    inputs: dict
    value: Decimal
    precision: int
    threshold: Fraction | None = None
    verdict: str = "n/a"
    intermediates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def value_float(self) -> float:
        return float(self.value)

    @property
    def value_str(self) -> str:
        return format_decimal(self.value, self.precision)

    def add(self, name, value, provenance="derived"):
        if isinstance(value, Decimal):
            text = format_decimal(value, self.precision)
        elif isinstance(value, Fraction):
            text = rational_str(value)
        else:
            text = str(value)
        self.intermediates.append({"name": name, "value": text, "provenance": provenance})

    def to_json(self):
        return {
            "lemma": self.lemma,
            "inputs": self.inputs,
            "value": self.value_str,
            "value_float": self.value_float,
            "precision": self.precision,
            "threshold": None if self.threshold is None else rational_str(self.threshold),
            "verdict": self.verdict,
            "intermediates": self.intermediates,
            "notes": self.notes,
        }


def format_decimal(x: Decimal, prec: int) -> str:
    if x == 0:
        return "0"
    return f"{decimal.Context(prec=prec).plus(x):.{prec - 1}E}"


def _verdict(value: Decimal, threshold: Fraction, prec) -> str:
    ctx = _ctx(prec)
    return "holds" if ctx.compare(value, _dec(threshold, ctx)) < 0 else "fails"


def _inner_radicand(lam: Fraction) -> Fraction:
    return 6 * lam**4 + 16 * lam**3 + 3 * lam**2 - 16 * lam - 8


def _lemma22_raw(p: PaperParams, prec):
    ctx = _ctx(prec)
    inner = _inner_radicand(p.lam)
    if inner < 0:
        raise BoundError(f"inner radicand 6l^4+16l^3+3l^2-16l-8 is negative: {inner}", value=inner)
    prefactor = Fraction(2) / (4 * p.lam**2 + 9 * p.lam + 3)
    s201 = ctx.sqrt(_dec(SQRT_2_01_ARG, ctx))
    sk = ctx.sqrt(_dec(p.kappa, ctx))
    si = ctx.sqrt(_dec(inner, ctx))
    value = ctx.multiply(ctx.multiply(ctx.multiply(_dec(prefactor, ctx), s201), sk), si)
    return value, {"prefactor": prefactor, "sqrt_2_01": s201, "sqrt_kappa": sk, "inner_radicand": inner, "sqrt_inner": si}


def _inputs(p: PaperParams, **extra):
    d = p.to_json()
    d.update({k: (rational_str(v) if isinstance(v, Fraction) else str(v)) for k, v in extra.items()})
    return d


def lemma22_bound(p: PaperParams, prec: int | None = None) -> BoundReport:
    """Component-length bound 2/(4l^2+9l+3) * sqrt(2.01) * sqrt(kappa) * sqrt(6l^4+16l^3+3l^2-16l-8)."""
    prec = prec or working_precision()
    raw, parts = _lemma22_raw(p, prec)
    rep = BoundReport("2.2", _inputs(p), decimal.Context(prec=prec).plus(raw), prec)
    rep.add("prefactor 2/(4l^2+9l+3)", parts["prefactor"])
    rep.add("sqrt(2.01)", parts["sqrt_2_01"], "paper constant")
    rep.add("sqrt(kappa)", parts["sqrt_kappa"])
    rep.add("inner radicand 6l^4+16l^3+3l^2-16l-8", parts["inner_radicand"])
    rep.add("sqrt(inner radicand)", parts["sqrt_inner"])
    rep.notes.append("bound on real-line components meeting [-(l+3),-(l+1)] U [l+1,l+3]; no threshold")
    return rep


def lemma23_bound(p: PaperParams, prec: int | None = None) -> BoundReport:
    """(lam + 2) times the lemma-2.2 bound, for components on the window i[0, (lam+2)(lam+3)]."""
    prec = prec or working_precision()
    raw, _ = _lemma22_raw(p, prec)
    l22 = decimal.Context(prec=prec).plus(raw)
    value = decimal.Context(prec=prec).multiply(_dec(p.lam + 2, _ctx(prec)), l22)
    rep = BoundReport("2.3", _inputs(p), value, prec)
    rep.add("lemma 2.2 bound", l22)
    rep.add("scale lam+2 (h: z -> (lam+2) z)", p.lam + 2)
    rep.add("vertical window upper end (lam+2)(lam+3)", (p.lam + 2) * (p.lam + 3))
    return rep


def lemma24_factor(p: PaperParams, prec: int | None = None):
    """[((2l+5)/(2 sqrt2 sqrt(l+2)) + 1)(16[(2l+5)(1+s+s^2)] + 1) + 1] with s = l + 2 + tau."""
    prec = prec or working_precision()
    ctx = _ctx(prec)
    lam = p.lam
    tau = ctx.sqrt(_dec((lam + 1) * (lam + 3), ctx))
    s = ctx.add(_dec(lam + 2, ctx), tau)
    poly = ctx.add(ctx.add(Decimal(1), s), ctx.multiply(s, s))
    inner = ctx.add(ctx.multiply(Decimal(16), ctx.multiply(_dec(2 * lam + 5, ctx), poly)), Decimal(1))
    first = ctx.add(
        ctx.divide(_dec(2 * lam + 5, ctx), ctx.multiply(ctx.multiply(Decimal(2), ctx.sqrt(Decimal(2))), ctx.sqrt(_dec(lam + 2, ctx)))),
        Decimal(1),
    )
    factor = ctx.add(ctx.multiply(first, inner), Decimal(1))
    return factor, {"tau": tau, "s = lam+2+tau": s, "1+s+s^2": poly, "first factor": first, "second factor": inner}


def lemma24_bound(p: PaperParams, epsilon, prec: int | None = None) -> BoundReport:
    prec = prec or working_precision()
    ctx = _ctx(prec)
    eps = epsilon if isinstance(epsilon, Decimal) else _dec(epsilon, ctx)
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    factor, parts = lemma24_factor(p, prec)
    value = decimal.Context(prec=prec).plus(ctx.multiply(factor, eps))
    rep = BoundReport("2.4", _inputs(p, epsilon=format_decimal(eps, prec)), value, prec)
    for name, v in parts.items():
        rep.add(name, v)
    rep.add("factor", factor)
    return rep


EPSILON_SOURCES = ("lemma22", "lemma23")


def lemma25_pipeline(p: PaperParams, epsilon_source: str = "lemma22", prec: int | None = None) -> BoundReport:
    """Feed the chosen component bound into the lemma-2.4 bound and compare with 1/5."""
    prec = prec or working_precision()
    if epsilon_source == "lemma22":
        eps = lemma22_bound(p, prec)
    elif epsilon_source == "lemma23":
        eps = lemma23_bound(p, prec)
    else:
        raise ValueError(f"epsilon_source must be one of {EPSILON_SOURCES}, got {epsilon_source!r}")
    z = lemma24_bound(p, eps.value, prec)
    rep = BoundReport("2.5", _inputs(p, epsilon_source=epsilon_source), z.value, prec, LEMMA25_THRESHOLD)
    rep.verdict = _verdict(z.value, LEMMA25_THRESHOLD, prec)
    rep.add("epsilon", eps.value)
    rep.add("lemma 2.4 factor", Decimal(z.intermediates[-1]["value"]))
    return rep


def lemma25_both(p: PaperParams, prec: int | None = None) -> dict:
    """Both epsilon sources side by side; ``discrepancy`` is set when the verdicts differ."""
    reports = {src: lemma25_pipeline(p, src, prec) for src in EPSILON_SOURCES}
    verdicts = {src: r.verdict for src, r in reports.items()}
    return {"reports": reports, "discrepancy": len(set(verdicts.values())) > 1}


def corollary_check(preset: str, prec: int | None = None) -> dict:
    """Lemma-2.5 pipeline at a preset's stated kappa threshold under both epsilon sources."""
    pr = PRESETS[preset]
    return lemma25_both(PaperParams(pr.lam, pr.kappa_threshold), prec)


def theorem_diameter_check(p: PaperParams, prec: int | None = None) -> BoundReport:
    """|h*(-(lam+2)(lam+3)) - h*(tau)| compared exactly with 1/5."""
    prec = prec or working_precision()
    h1, _ = build_generators(p)
    tau = paper_tau(p)
    left = -(p.lam + 2) * (p.lam + 3)
    y1, y2 = apply_boundary(h1, left), apply_boundary(h1, tau)
    diff = simplify(abs(y1 - y2))
    rep = BoundReport("diameter", _inputs(p), to_decimal(diff, prec), prec, LEMMA25_THRESHOLD)
    rep.verdict = "holds" if diff > LEMMA25_THRESHOLD else "fails"
    rep.add("x1 = -(lam+2)(lam+3)", left)
    rep.add("h*(x1)", y1)
    rep.add("h*(x1) decimal", to_decimal(y1, prec))
    rep.add("h*(tau) exact", _exact_str(y2))
    rep.add("h*(tau) decimal", to_decimal(y2, prec))
    rep.add("difference exact", _exact_str(diff))
    rep.notes.append("verdict 'holds' means the difference exceeds 1/5")
    return rep


def _exact_str(x) -> str:
    if isinstance(x, AlgebraicPoint) and not x.is_rational:
        return f"{rational_str(x.base)} + {rational_str(x.coeff)}*sqrt({rational_str(x.radicand)})"
    return rational_str(simplify(x))


@dataclass(frozen=True)
class ModulusCheck:
    t: Fraction
    quotient: Fraction
    margin: Fraction

    @property
    def holds(self) -> bool:
        return self.margin > 0


def modulus_quotient_check(p: PaperParams, t) -> ModulusCheck:
    """((lam+2) t + A) / (t + (lam+2)) against lam + 2 for a modulus t = |z| >= 0."""
    t = as_rational(t)
    if t < 0:
        raise ValueError("t is a modulus and must be nonnegative")
    c = p.lam + 2
    A = c**2 - (1 - p.kappa) ** 2
    q = (c * t + A) / (t + c)
    return ModulusCheck(t, q, c - q)


# --- psi components --------------------------------------------------------

@dataclass(frozen=True)
class PsiInterval:
    name: str
    lo: object
    hi: object
    wraps_infinity: bool

    @property
    def length(self):
        return simplify(self.hi - self.lo)


@dataclass
class PsiReport:
    params: PaperParams
    depth: int
    intervals: list
    gaps: list
    bound: BoundReport
    gap_at_lam_plus_1: GapInterval | None

    @property
    def max_bounded_gap(self):
        inner = [g for g in self.gaps if not g["touches_window_edge"]]
        return max((g["gap"].length for g in inner), default=None)


def _image_interval(name, g: MobiusMap, lo, hi) -> PsiInterval:
    a, b = apply_boundary(g, lo), apply_boundary(g, hi)
    pole = None if g.c == 0 else -g.d / g.c
    wraps = pole is not None and lo < pole < hi
    if a is INF or b is INF:
        wraps = True
        a = b = INF
        return PsiInterval(name, a, b, wraps)
    lo2, hi2 = (a, b) if a < b else (b, a)
    return PsiInterval(name, lo2, hi2, wraps)


def psi_components(p: PaperParams, depth: int, workers: int = 1, prec: int | None = None) -> PsiReport:
    """Literal intervals psi_1..psi_4 plus the real-line gaps left by the circles of depth exactly ``depth``."""
    h1, h2 = build_generators(p)
    z_lo, z_hi = fixed_points(commutator_map(p))
    psi1 = PsiInterval("psi1", z_lo, z_hi, False)
    psi2 = _image_interval("psi2", inverse(h1), psi1.lo, psi1.hi)
    psi3 = (
        _image_interval("psi3", inverse(h2), psi2.lo, psi2.hi)
        if psi2.lo is not INF
        else PsiInterval("psi3", INF, INF, True)
    )
    psi4 = _image_interval("psi4", inverse(h2), psi1.lo, psi1.hi)

    system = build_system(p)
    # the limit set lies inside the union of the depth-L circles, so the gaps
    # between them under-approximate the real components of the complement
    circles = [e.circle for e in orbit_circles(system, depth, workers) if e.depth == depth]
    lam = p.lam
    outer = (-(lam + 4), lam + 4)
    windows = ((-(lam + 3), -(lam + 1)), (lam + 1, lam + 3))
    gaps = []
    for g in gaps_on_real_line(circles, outer):
        meets = [w for w in windows if g.lo <= w[1] and g.hi >= w[0]]
        if meets:
            gaps.append({"gap": g, "touches_window_edge": g.lo == outer[0] or g.hi == outer[1]})
    at = next((d["gap"] for d in gaps if d["gap"].contains(lam + 1)), None)
    return PsiReport(p, depth, [psi1, psi2, psi3, psi4], gaps, lemma22_bound(p, prec), at)


__all__ = [
    "PaperParams",
    "PRESETS",
    "preset_params",
    "build_generators",
    "build_circles",
    "build_system",
    "derived_constants",
    "quartic_roots",
    "commutator_map",
    "commutator_fixed_points_closed_form",
    "lemma22_bound",
    "lemma23_bound",
    "lemma24_bound",
    "lemma25_pipeline",
    "lemma25_both",
    "theorem_diameter_check",
    "modulus_quotient_check",
    "psi_components",
    "corollary_check",
    "paper_tau",
    "lemma24_factor",
    "quartic_residual",
    "rational_roots",
    "centers_outside_unit_interval",
    "BoundReport",
    "PsiReport",
    "ModulusCheck",
    "DerivedConstants",
    "ClosedFormFixedPoints",
    "working_precision",
]
