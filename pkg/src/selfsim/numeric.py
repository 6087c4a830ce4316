"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt d).

Every value that enters a decision is exact.  A :class:`QuadraticReal` whose
irrational part vanishes collapses to a plain ``Fraction`` so that equality,
hashing and set membership behave the same for both representations.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import mpmath

__all__ = [
    "ExactReal",
    "QuadraticReal",
    "DegenerateSetError",
    "MixedRadicalError",
    "as_exact",
    "parse_exact",
    "format_exact",
    "exact_sign",
    "radicand_of",
    "rational_set_gcd",
    "ratio_is_rational",
    "to_mpf",
    "is_squarefree",
]


class DegenerateSetError(ValueError):
    """Raised when a gcd is requested for a set containing only zeros."""


class MixedRadicalError(ValueError):
    """Raised when values from two different quadratic fields are combined."""


@functools.lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _split_square(n: int) -> tuple[int, int]:
    """Write n = s**2 * d with d squarefree; return (s, d)."""
    s, d, f = 1, n, 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


@dataclass(frozen=True, eq=False)
class QuadraticReal:
    """The real number ``p + r*sqrt(d)`` with rational p, r and squarefree d >= 2."""

    p: Fraction
    r: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "r", Fraction(self.r))
        if not is_squarefree(self.d):
            raise ValueError(f"radicand must be squarefree and >= 2, got {self.d}")

    @property
    def is_rational(self) -> bool:
        return self.r == 0

    def conjugate(self) -> QuadraticReal:
        return QuadraticReal(self.p, -self.r, self.d)

    def sign(self) -> int:
        p, r = self.p, self.r
        sp = (p > 0) - (p < 0)
        sr = (r > 0) - (r < 0)
        if sr == 0:
            return sp
        if sp == 0 or sp == sr:
            return sr
        # opposite signs: the larger of p**2 and r**2*d wins
        diff = p * p - r * r * self.d
        return sp if diff > 0 else sr

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> QuadraticReal | None:
        if isinstance(other, QuadraticReal):
            if other.d != self.d:
                raise MixedRadicalError(f"sqrt({self.d}) and sqrt({other.d}) in one expression")
            return other
        if isinstance(other, Rational):
            return QuadraticReal(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.p + o.p, self.r + o.r, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.p, -self.r, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.p - o.p, self.r - o.r, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(o.p - self.p, o.r - self.r, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.p * o.p + self.r * o.r * self.d, self.p * o.r + self.r * o.p, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.p * o.p - o.r * o.r * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        num = self * o.conjugate()
        if isinstance(num, Fraction):
            return num / norm
        return _make(num.p / norm, num.r / norm, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadraticReal):
            if self.r == 0 and other.r == 0:
                return self.p == other.p
            return (self.p, self.r, self.d) == (other.p, other.r, other.d)
        if isinstance(other, Rational):
            return self.r == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.r == 0:
            return hash(self.p)
        return hash((self.p, self.r, self.d))

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return QuadraticReal(self.p - o.p, self.r - o.r, self.d).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __float__(self):
        return float(to_mpf(self, 64))

    def __str__(self):
        return format_exact(self)

    def __repr__(self):
        return f"QuadraticReal({format_exact(self)!r})"


ExactReal = Union[Fraction, QuadraticReal]


def _make(p: Fraction, r: Fraction, d: int) -> ExactReal:
    if r == 0:
        return Fraction(p)
    return QuadraticReal(p, r, d)


def as_exact(x) -> ExactReal:
    """Coerce ints, Fractions and QuadraticReals; strings go through :func:`parse_exact`."""
    if isinstance(x, QuadraticReal):
        return _make(x.p, x.r, x.d)
    if isinstance(x, bool):
        raise TypeError("bool is not an exact real")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return parse_exact(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact real (floats are rejected)")


def exact_sign(x: ExactReal) -> int:
    if isinstance(x, QuadraticReal):
        return x.sign()
    return (x > 0) - (x < 0)


def radicand_of(values: Iterable[ExactReal]) -> int | None:
    """Shared radicand of the irrational members, None when all are rational."""
    d = None
    for v in values:
        if isinstance(v, QuadraticReal) and v.r != 0:
            if d is None:
                d = v.d
            elif d != v.d:
                raise MixedRadicalError(f"sqrt({d}) and sqrt({v.d}) in one set")
    return d


# text syntax ----------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^(?P<p>[+-]?{_RAT}(?![\d/*]))?"
    rf"(?:(?P<sgn>[+-])?(?:(?P<r>{_RAT})\*)?sqrt\((?P<d>\d+)\))?$"
)


def parse_exact(text: str) -> ExactReal:
    """Parse ``a``, ``a/b``, ``a/b+c/e*sqrt(d)``, ``sqrt(d)`` and friends."""
    s = text.strip()
    m = _EXACT_RE.match(s)
    if not s or m is None or (m.group("p") is None and m.group("d") is None):
        raise ValueError(f"not an exact real literal: {text!r}")
    p = Fraction(m.group("p")) if m.group("p") else Fraction(0)
    if m.group("d") is None:
        return p
    if m.group("p") is not None and m.group("sgn") is None:
        raise ValueError(f"missing sign before sqrt in {text!r}")
    r = Fraction(m.group("r")) if m.group("r") else Fraction(1)
    if m.group("sgn") == "-":
        r = -r
    n = int(m.group("d"))
    if n == 0:
        return p
    s_, d = _split_square(n)
    if d == 1:
        return p + r * s_
    return _make(p, r * s_, d)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_exact(x: ExactReal) -> str:
    """Inverse of :func:`parse_exact`; rationals print as ``num/den`` in lowest terms."""
    if not isinstance(x, QuadraticReal):
        return _fmt_rat(Fraction(x))
    if x.r == 0:
        return _fmt_rat(x.p)
    mag = abs(x.r)
    rad = f"sqrt({x.d})" if mag == 1 else f"{_fmt_rat(mag)}*sqrt({x.d})"
    if x.p == 0:
        return rad if x.r > 0 else "-" + rad
    return f"{_fmt_rat(x.p)}{'+' if x.r > 0 else '-'}{rad}"


def to_mpf(x: ExactReal, prec: int = 128) -> mpmath.mpf:
    """High-precision rendering for display and cross-checks only."""
    with mpmath.workprec(prec):
        if isinstance(x, QuadraticReal):
            p = mpmath.mpf(x.p.numerator) / x.p.denominator
            r = mpmath.mpf(x.r.numerator) / x.r.denominator
            return p + r * mpmath.sqrt(x.d)
        x = Fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator


# gcd machinery --------------------------------------------------------------

def rational_set_gcd(values: Sequence[Rational]) -> Fraction:
    """Largest delta > 0 with every value in delta*Z.

    >>> rational_set_gcd([Fraction(1, 2), Fraction(3, 2), 5])
    Fraction(1, 2)
    """
    if not values:
        raise ValueError("gcd of an empty set")
    fr = [Fraction(v) for v in values]
    den = math.lcm(*(v.denominator for v in fr))
    g = math.gcd(*(v.numerator * (den // v.denominator) for v in fr))
    if g == 0:
        raise DegenerateSetError("all values are zero; the common divisor is unbounded")
    return Fraction(g, den)


def ratio_is_rational(a: ExactReal, b: ExactReal) -> bool:
    """True iff a/b lies in Q.  Decided by linear dependence over Q, no division."""
    a, b = as_exact(a), as_exact(b)
    if exact_sign(b) == 0:
        raise ZeroDivisionError("ratio with zero denominator")
    radicand_of([a, b])
    pa, ra = (a.p, a.r) if isinstance(a, QuadraticReal) else (a, Fraction(0))
    pb, rb = (b.p, b.r) if isinstance(b, QuadraticReal) else (b, Fraction(0))
    return pa * rb == ra * pb
