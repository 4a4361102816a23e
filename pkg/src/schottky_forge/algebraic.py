"""Exact numbers for boundary points: rationals, square-root extensions, and infinity.

Finite boundary points are either :class:`fractions.Fraction` or
:class:`AlgebraicPoint`, a value ``base + sum(coeff_i * sqrt(radicand_i))``.
Radicands are kept as positive integers with small square factors pulled
out, and two radicands whose ratio is a perfect square are always merged,
so the set of terms is linearly independent over Q.  That makes equality
and hashing exact without any factoring.  Signs (and hence ordering) are
decided exactly for up to two irrational terms, which covers everything
the construction needs.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction
from numbers import Rational

from .errors import NestedRadicalError

Rat = Fraction

_SMALL_PRIMES = [p for p in range(2, 200) if all(p % q for q in range(2, int(p**0.5) + 1))]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and exact strings ("3/7", "1e-12") to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, decimal.Decimal):
        return Fraction(x)
    if isinstance(x, AlgebraicPoint) and x.is_rational:
        return x.base
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def rational_str(x: Fraction) -> str:
    """Serialize a rational as "p/q" (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    n = _isqrt_exact(x.numerator)
    d = _isqrt_exact(x.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def _reduce_radicand(r: Fraction):
    """Write sqrt(r) = s * sqrt(m) with rational s and integer m >= 1.

    Returns (s, m); m == 1 means sqrt(r) is rational.
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    if r == 0:
        return Fraction(0), 1
    m = r.numerator * r.denominator
    s = Fraction(1, r.denominator)
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > m:
            break
        while m % pp == 0:
            m //= pp
            s *= p
    root = _isqrt_exact(m)
    if root is not None:
        return s * root, 1
    return s, m


class _Infinity:
    """The point at infinity of R ∪ {∞}; a singleton that sorts after every finite point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("schottky_forge.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


def _term_add(terms: dict, coeff: Fraction, radicand: int):
    """Add coeff*sqrt(radicand) into a {radicand: coeff} map, merging square classes."""
    if coeff == 0:
        return
    for r in terms:
        if r == radicand:
            terms[r] += coeff
            return
        k = _isqrt_exact(r * radicand)
        if k is not None:
            # sqrt(radicand) = k / r * sqrt(r)
            terms[r] += coeff * Fraction(k, r)
            return
    terms[radicand] = coeff


def _sign_one(base: Fraction, c: Fraction, r: int) -> int:
    """Exact sign of base + c*sqrt(r)."""
    sc = (c > 0) - (c < 0)
    sb = (base > 0) - (base < 0)
    if sc == 0:
        return sb
    if sb == 0 or sb == sc:
        return sc
    diff = base * base - c * c * r
    if diff > 0:
        return sb
    if diff < 0:
        return sc
    return 0


class AlgebraicPoint:
    """Exact real number ``base + sum(c_i * sqrt(r_i))`` with one radical layer.

    The common case is a single term, exposed through ``coeff``/``radicand``.
    Values whose radical part vanishes are pure rationals (``coeff == 0``).
    """

    __slots__ = ("base", "terms", "_hash")

    def __init__(self, base=0, coeff=0, radicand=0):
        base = as_rational(base)
        coeff = as_rational(coeff)
        radicand = as_rational(radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        terms: dict = {}
        if coeff != 0 and radicand != 0:
            s, m = _reduce_radicand(radicand)
            if m == 1:
                base += coeff * s
            else:
                _term_add(terms, coeff * s, m)
        self._set(base, terms)

    def _set(self, base, terms):
        self.base = base
        self.terms = tuple(sorted((r, c) for r, c in terms.items() if c != 0))
        self._hash = None

    @classmethod
    def _from_parts(cls, base, terms: dict) -> "AlgebraicPoint":
        obj = cls.__new__(cls)
        obj._set(Fraction(base), terms)
        return obj

    @classmethod
    def sqrt(cls, x) -> "AlgebraicPoint":
        """Exact sqrt of a nonnegative rational."""
        return cls(0, 1, as_rational(x))

    # -- views ----------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.terms

    @property
    def coeff(self) -> Fraction:
        if len(self.terms) > 1:
            raise NestedRadicalError("value has more than one radical term")
        return self.terms[0][1] if self.terms else Fraction(0)

    @property
    def radicand(self) -> Fraction:
        if len(self.terms) > 1:
            raise NestedRadicalError("value has more than one radical term")
        return Fraction(self.terms[0][0]) if self.terms else Fraction(0)

    def simplify(self):
        """Return a plain Fraction when the value is rational, else self."""
        return self.base if not self.terms else self

    def conjugate(self) -> "AlgebraicPoint":
        if len(self.terms) > 1:
            raise NestedRadicalError("conjugate of a multi-radical value")
        return AlgebraicPoint._from_parts(self.base, {r: -c for r, c in self.terms})

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _lift(x) -> "AlgebraicPoint":
        if isinstance(x, AlgebraicPoint):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return AlgebraicPoint._from_parts(Fraction(x), {})
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for r, c in o.terms:
            _term_add(terms, c, r)
        return AlgebraicPoint._from_parts(self.base + o.base, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicPoint._from_parts(-self.base, {r: -c for r, c in self.terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        base = self.base * o.base
        terms: dict = {}
        for r, c in self.terms:
            _term_add(terms, c * o.base, r)
        for r, c in o.terms:
            _term_add(terms, c * self.base, r)
        for r1, c1 in self.terms:
            for r2, c2 in o.terms:
                s, m = _reduce_radicand(Fraction(r1 * r2))
                if m == 1:
                    base += c1 * c2 * s
                else:
                    _term_add(terms, c1 * c2 * s, m)
        return AlgebraicPoint._from_parts(base, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_rational:
            if o.base == 0:
                raise ZeroDivisionError("division by zero")
            inv = 1 / o.base
            return AlgebraicPoint._from_parts(self.base * inv, {r: c * inv for r, c in self.terms})
        if len(o.terms) > 1:
            raise NestedRadicalError("division by a multi-radical value")
        conj = o.conjugate()
        norm = (o * conj).base
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return (self * conj) / norm

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparison -----------------------------------------------------
    def sign(self) -> int:
        """Exact sign (-1, 0, 1)."""
        t = self.terms
        if not t:
            return (self.base > 0) - (self.base < 0)
        if len(t) == 1:
            return _sign_one(self.base, t[0][1], t[0][0])
        if len(t) == 2:
            (r1, c1), (r2, c2) = t
            sx = _sign_one(self.base, c1, r1)
            sy = (c2 > 0) - (c2 < 0)
            if sx == 0:
                return sy
            if sx == sy:
                return sx
            # compare X^2 with Y^2 where X = base + c1*sqrt(r1), Y = c2*sqrt(r2)
            d = _sign_one(self.base**2 + c1 * c1 * r1 - c2 * c2 * r2, 2 * self.base * c1, r1)
            if d > 0:
                return sx
            if d < 0:
                return sy
            return 0
        raise NestedRadicalError("sign of a value with more than two radical terms")

    def _cmp(self, other):
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        if other is INF:
            return -1
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, float):
            return False
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.base == o.base and self._key() == o._key()

    def _key(self):
        # (sign, c^2 r) identifies c*sqrt(r) independently of the radicand chosen
        return frozenset(((c > 0) - (c < 0), c * c * r) for r, c in self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.base) if not self.terms else hash((self.base, self._key()))
        return self._hash

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    # -- conversion -----------------------------------------------------
    def to_decimal(self, prec: int = 50) -> decimal.Decimal:
        ctx = decimal.Context(prec=prec + 10)
        total = ctx.divide(decimal.Decimal(self.base.numerator), decimal.Decimal(self.base.denominator))
        for r, c in self.terms:
            root = ctx.sqrt(decimal.Decimal(r))
            term = ctx.multiply(ctx.divide(decimal.Decimal(c.numerator), decimal.Decimal(c.denominator)), root)
            total = ctx.add(total, term)
        return decimal.Context(prec=prec).plus(total)

    def __float__(self):
        return float(self.to_decimal(30))

    def __repr__(self):
        parts = [str(self.base)] if self.base or not self.terms else []
        for r, c in self.terms:
            parts.append(f"{c}*sqrt({r})")
        return "AlgebraicPoint(" + " + ".join(parts) + ")"

    def __reduce__(self):
        return (AlgebraicPoint._from_parts, (self.base, dict(self.terms)))


def is_finite(x) -> bool:
    return x is not INF


def to_decimal(x, prec: int = 50) -> decimal.Decimal:
    """Decimal value of a finite boundary point at ``prec`` significant digits."""
    if isinstance(x, AlgebraicPoint):
        return x.to_decimal(prec)
    x = as_rational(x)
    ctx = decimal.Context(prec=prec)
    return ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))


def simplify(x):
    """Collapse pure-rational AlgebraicPoints to Fraction; pass other points through."""
    if isinstance(x, AlgebraicPoint):
        return x.simplify()
    if x is INF:
        return x
    return as_rational(x)


def exact_sign(x) -> int:
    if isinstance(x, AlgebraicPoint):
        return x.sign()
    return (x > 0) - (x < 0)
