"""Digit sets and the quantities read directly off them.

A digit set is kept sorted and duplicate-free.  Its contraction ratio defaults
to ``1/m`` (m = number of digits), the critical case where measure questions
are decidable through residues and vanishing sums; an explicit ratio may be
given for the threshold and interval-approximation routines.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .numeric import (
    ExactReal,
    as_exact,
    exact_sign,
    format_exact,
    parse_exact,
    radicand_of,
    ratio_is_rational,
    rational_set_gcd,
)

__all__ = [
    "SigmaSet",
    "Normalization",
    "ResidueProfile",
    "IrrationalStructureError",
    "parse_sigma",
    "difference_set",
    "common_divisor",
    "normalize",
    "residue_profile",
    "max_gap",
    "diameter",
    "interval_threshold",
    "containment_threshold",
    "subset_sums",
    "SUBSET_LIMIT",
]

SUBSET_LIMIT = 20


class IrrationalStructureError(ValueError):
    """The difference set has no common divisor, so no integer model exists."""


@dataclass(frozen=True)
class SigmaSet:
    digits: tuple
    q: Fraction | None = None

    def __post_init__(self):
        vals = sorted(as_exact(v) for v in self.digits)
        if len(vals) < 2:
            raise ValueError("a digit set needs at least two digits")
        if any(a == b for a, b in zip(vals, vals[1:])):
            raise ValueError("digits must be distinct")
        radicand_of(vals)
        object.__setattr__(self, "digits", tuple(vals))
        if self.q is not None:
            q = Fraction(self.q)
            if not 0 < q < 1:
                raise ValueError(f"ratio must lie in (0, 1), got {q}")
            object.__setattr__(self, "q", q)

    @classmethod
    def from_values(cls, values: Iterable, q=None) -> SigmaSet:
        """Build from a possibly repeating collection; duplicates are merged."""
        return cls(tuple(set(as_exact(v) for v in values)), q)

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def ratio(self) -> Fraction:
        return self.q if self.q is not None else Fraction(1, self.m)

    @property
    def is_critical(self) -> bool:
        """True when ratio * |digits| == 1."""
        return self.ratio * self.m == 1

    @property
    def radicand(self) -> int | None:
        return radicand_of(self.digits)

    @property
    def is_rational(self) -> bool:
        return self.radicand is None

    def scaled(self, a, b=0) -> SigmaSet:
        """The digit set a*sigma + b (a != 0), same ratio."""
        a, b = as_exact(a), as_exact(b)
        if exact_sign(a) == 0:
            raise ValueError("scale factor must be nonzero")
        return SigmaSet(tuple(a * s + b for s in self.digits), self.q)

    def __str__(self):
        body = ",".join(format_exact(s) for s in self.digits)
        return "{" + body + "}"


def parse_sigma(text: str, q=None) -> SigmaSet:
    """Parse ``0,1,8,9``-style digit lists.  Repeated digits are an error."""
    parts = [t for t in text.split(",")]
    if any(not t.strip() for t in parts):
        raise ValueError(f"empty entry in digit list {text!r}")
    if isinstance(q, str):
        q = Fraction(q)
    return SigmaSet(tuple(parse_exact(t) for t in parts), q)


@dataclass(frozen=True)
class Normalization:
    sigma_star: tuple[int, ...]
    shift: ExactReal
    scale: ExactReal


@dataclass(frozen=True)
class ResidueProfile:
    modulus: int
    residues: tuple[int, ...]
    complete: bool


def difference_set(sigma: SigmaSet) -> list:
    ds = {a - b for a in sigma.digits for b in sigma.digits}
    return sorted(ds)


def common_divisor(sigma: SigmaSet) -> ExactReal | None:
    """Greatest delta > 0 with D(sigma) inside delta*Z, or None if none exists.

    D(sigma) generates the same subgroup of R as the differences to the
    smallest digit, so only those are inspected.
    """
    lo = sigma.digits[0]
    diffs = [s - lo for s in sigma.digits[1:]]
    base = diffs[0]
    for d in diffs[1:]:
        if not ratio_is_rational(d, base):
            return None
    ratios = [Fraction(d / base) for d in diffs]
    return base * rational_set_gcd(ratios)


def normalize(sigma: SigmaSet) -> Normalization:
    delta = common_divisor(sigma)
    if delta is None:
        raise IrrationalStructureError(f"{sigma} has no common divisor of its differences")
    x = sigma.digits[0]
    star = []
    for s in sigma.digits:
        v = (s - x) / delta
        v = Fraction(v)  # exact: delta divides every difference
        assert v.denominator == 1
        star.append(int(v))
    return Normalization(tuple(star), x, delta)


def residue_profile(norm: Normalization, m: int) -> ResidueProfile:
    res = tuple(s % m for s in norm.sigma_star)
    return ResidueProfile(m, res, sorted(res) == list(range(m)))


def max_gap(sigma: SigmaSet) -> ExactReal:
    return _max_gap(sigma.digits)


def _max_gap(ds) -> ExactReal:
    return max(b - a for a, b in zip(ds, ds[1:]))


def diameter(sigma: SigmaSet) -> ExactReal:
    return sigma.digits[-1] - sigma.digits[0]


def _threshold(ds) -> ExactReal:
    gap = _max_gap(ds)
    return gap / (gap + (ds[-1] - ds[0]))


def interval_threshold(sigma: SigmaSet) -> ExactReal:
    """Smallest ratio at which E(sigma, q) is a single interval."""
    return _threshold(sigma.digits)


def containment_threshold(sigma: SigmaSet) -> ExactReal:
    """Minimum of :func:`interval_threshold` over all subsets with >= 2 digits."""
    if sigma.m > SUBSET_LIMIT:
        raise ValueError(f"subset enumeration too large: {sigma.m} digits > {SUBSET_LIMIT}")
    ds = sigma.digits
    best = None
    for size in range(2, len(ds) + 1):
        for sub in itertools.combinations(ds, size):
            t = _threshold(sub)
            if best is None or t < best:
                best = t
    return best



def subset_sums(terms) -> list:
    """All sums over subsets of ``terms`` (empty subset included), deduplicated and sorted."""
    sums = {Fraction(0)}
    for t in terms:
        t = as_exact(t)
        sums |= {s + t for s in sums}
    return sorted(sums)
