"""Finite levels F_n of E(sigma, q) in an exact integer model.

After normalising ``sigma = x + delta * sigma_star`` and writing ``q = a/b``,
every point of F_n is ``x*(q + ... + q**n) + delta * W / b**n`` with the
integer

    W = sum_i sigma_star_i * a**i * b**(n - i),

so levels are advanced by ``W -> b*W + a**(n+1) * s`` over the integer
digits ``s``.  Values live in sorted numpy arrays; int64 is used while the
magnitudes provably fit, object arrays of Python ints afterwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .cyclotomic import VanishCertificate, vanishing_sum
from .numeric import ExactReal, QuadraticReal, format_exact, to_mpf
from .sigma import IrrationalStructureError, SigmaSet, common_divisor, normalize

__all__ = [
    "ENUMERATION_LIMIT",
    "EnumerationLimitError",
    "LevelSet",
    "IntervalUnion",
    "EnvelopeBounds",
    "Collision",
    "FreenessScan",
    "DimensionBound",
    "level_zero",
    "advance_level",
    "iter_levels",
    "level_set",
    "scan_freeness",
    "first_collision",
    "hausdorff_upper",
    "envelope",
    "level_intervals",
    "level_measure",
    "stable_intervals",
    "pushforward_histogram",
    "fourier_zero_factor",
    "fourier_partial",
    "interval_csv_rows",
]

ENUMERATION_LIMIT = 10**8
_INT64_SAFE = 1 << 62
# exact-sum fallback for digit sets without a common divisor
_IRRATIONAL_LEVEL_CAP = 12
_IRRATIONAL_VALUE_LIMIT = 2_000_000


class EnumerationLimitError(RuntimeError):
    """The next level would hold more candidate values than allowed."""

    def __init__(self, level: int, size: int, limit: int):
        super().__init__(
            f"level {level} would need {size} candidate values (limit {limit}); "
            "lower the level or raise the limit"
        )
        self.level = level
        self.size = size
        self.limit = limit


@dataclass(frozen=True, eq=False)
class LevelSet:
    """Level n of the integer model, with multiplicities (weights of mu_n times m**n)."""

    level: int
    q: Fraction
    shift: ExactReal
    delta: ExactReal
    values: np.ndarray
    multiplicities: np.ndarray
    m: int

    @property
    def total(self) -> int:
        return self.m**self.level

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def is_free(self) -> bool:
        return self.size == self.total

    @property
    def scale(self) -> ExactReal:
        """Factor turning a stored integer into its offset from the level's origin."""
        return self.delta / self.q.denominator**self.level

    @property
    def origin(self) -> ExactReal:
        q, n = self.q, self.level
        geom = q * (1 - q**n) / (1 - q)
        return self.shift * geom

    def points(self) -> list:
        o, s = self.origin, self.scale
        return [o + s * int(v) for v in self.values]


def _fits(bound: int) -> bool:
    return bound < _INT64_SAFE


def level_zero(sigma: SigmaSet) -> LevelSet:
    norm = normalize(sigma)
    return LevelSet(
        0, sigma.ratio, norm.shift, norm.scale,
        np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64), sigma.m,
    )


def advance_level(prev: LevelSet, digits: Sequence[int], limit: int = ENUMERATION_LIMIT) -> LevelSet:
    """Level n+1 from level n: all ``b*W + a**(n+1)*s``, merged with summed multiplicities."""
    a, b = prev.q.numerator, prev.q.denominator
    n1 = prev.level + 1
    count = prev.size * len(digits)
    if count > limit:
        raise EnumerationLimitError(n1, count, limit)
    step = a**n1
    vmax = max(abs(int(prev.values[0])), abs(int(prev.values[-1])))
    smax = max(abs(int(s)) for s in digits)
    vbound = b * vmax + step * smax
    mbound = prev.m**n1
    if _fits(vbound):
        vals = prev.values.astype(np.int64)
        dig = np.asarray([step * int(s) for s in digits], dtype=np.int64)
    else:
        vals = prev.values.astype(object)
        dig = np.empty(len(digits), dtype=object)
        dig[:] = [step * int(s) for s in digits]
    cand = (vals * b)[:, None] + dig[None, :]
    cand = cand.ravel()
    mult = prev.multiplicities
    mult = mult.astype(np.int64) if _fits(mbound) else mult.astype(object)
    mult = np.repeat(mult, len(digits))
    order = np.argsort(cand, kind="stable")
    cand = cand[order]
    mult = mult[order]
    starts = np.flatnonzero(np.concatenate(([True], cand[1:] != cand[:-1])))
    return LevelSet(
        n1, prev.q, prev.shift, prev.delta,
        cand[starts], np.add.reduceat(mult, starts), prev.m,
    )


def iter_levels(sigma: SigmaSet, n: int, limit: int = ENUMERATION_LIMIT) -> Iterator[LevelSet]:
    """Yield levels 0..n."""
    lev = level_zero(sigma)
    digits = normalize(sigma).sigma_star
    yield lev
    for _ in range(n):
        lev = advance_level(lev, digits, limit)
        yield lev


def level_set(sigma: SigmaSet, n: int, limit: int = ENUMERATION_LIMIT) -> LevelSet:
    lev = None
    for lev in iter_levels(sigma, n, limit):
        pass
    return lev


# freeness -------------------------------------------------------------------

@dataclass(frozen=True)
class Collision:
    """Two distinct digit strings (coarsest digit first) with the same level-n sum."""

    level: int
    value: ExactReal
    witness: tuple[tuple, tuple]


@dataclass(frozen=True)
class FreenessScan:
    levels_checked: int
    sizes: tuple[int, ...]
    collision: Collision | None
    truncated: bool = False


def _decode(levels: list[LevelSet], k: int, w: int, digits) -> tuple[int, ...]:
    """Digit-index string of w at level k; levels below k must be free."""
    out = []
    for j in range(k, 0, -1):
        lev = levels[j - 1]
        a, b = lev.q.numerator, lev.q.denominator
        step = a**j
        for idx, s in enumerate(digits):
            r = w - step * s
            if r % b:
                continue
            u = r // b
            pos = np.searchsorted(lev.values, u)
            if pos < lev.size and int(lev.values[pos]) == u:
                out.append(idx)
                w = u
                break
        else:  # pragma: no cover - unreachable for consistent levels
            raise AssertionError("value not reachable from previous level")
    return tuple(reversed(out))


def _preimages(levels: list[LevelSet], n: int, w: int, digits) -> list[tuple[int, ...]]:
    lev = levels[n - 1]
    a, b = lev.q.numerator, lev.q.denominator
    step = a**n
    found = []
    for idx, s in enumerate(digits):
        r = w - step * s
        if r % b:
            continue
        u = r // b
        pos = np.searchsorted(lev.values, u)
        if pos < lev.size and int(lev.values[pos]) == u:
            found.append(_decode(levels, n - 1, u, digits) + (idx,))
    return sorted(found)


def scan_freeness(sigma: SigmaSet, n_max: int, limit: int = ENUMERATION_LIMIT) -> FreenessScan:
    """Enumerate levels until a collision, n_max, or the candidate limit.

    Hitting the limit is not an error here: the scan reports how far it got
    with ``truncated=True``.
    """
    if common_divisor(sigma) is None:
        return _scan_irrational(sigma, n_max, limit)
    norm = normalize(sigma)
    digits = norm.sigma_star
    levels = [level_zero(sigma)]
    sizes = [1]
    for n in range(1, n_max + 1):
        try:
            lev = advance_level(levels[-1], digits, limit)
        except EnumerationLimitError:
            return FreenessScan(n - 1, tuple(sizes), None, truncated=True)
        levels.append(lev)
        sizes.append(lev.size)
        if not lev.is_free:
            pos = int(np.flatnonzero(lev.multiplicities > 1)[0])
            w = int(lev.values[pos])
            strings = _preimages(levels, n, w, digits)
            pair = tuple(tuple(sigma.digits[i] for i in s) for s in strings[:2])
            value = lev.origin + lev.scale * w
            return FreenessScan(n, tuple(sizes), Collision(n, value, pair))
    return FreenessScan(n_max, tuple(sizes), None)


def _scan_irrational(sigma: SigmaSet, n_max: int, limit: int) -> FreenessScan:
    if n_max > _IRRATIONAL_LEVEL_CAP:
        raise ValueError(
            f"exact-sum enumeration without a common divisor is capped at level {_IRRATIONAL_LEVEL_CAP}"
        )
    limit = min(limit, _IRRATIONAL_VALUE_LIMIT)
    m = sigma.m
    digits = sigma.digits
    q = sigma.ratio
    # exact level-n value -> digit-index string
    current: dict = {Fraction(0): ()}
    sizes = [1]
    for n in range(1, n_max + 1):
        if len(current) * m > limit:
            return FreenessScan(n - 1, tuple(sizes), None, truncated=True)
        nxt: dict = {}
        clashes: dict = {}
        step = [d * q**n for d in digits]
        for w, s in current.items():
            for idx, d in enumerate(step):
                v = w + d
                t = s + (idx,)
                if v in nxt:
                    clashes.setdefault(v, [nxt[v]]).append(t)
                else:
                    nxt[v] = t
        sizes.append(len(nxt))
        if clashes:
            v = min(clashes)
            strings = sorted(clashes[v])[:2]
            pair = tuple(tuple(digits[i] for i in st) for st in strings)
            return FreenessScan(n, tuple(sizes), Collision(n, v, pair))
        current = nxt
    return FreenessScan(n_max, tuple(sizes), None)


def first_collision(sigma: SigmaSet, n_max: int, limit: int = ENUMERATION_LIMIT) -> Collision | None:
    """Smallest level <= n_max with |F_n| < m**n, plus a witness pair; None if free.

    Raises :class:`EnumerationLimitError` when the scan cannot reach n_max.
    """
    scan = scan_freeness(sigma, n_max, limit)
    if scan.truncated:
        raise EnumerationLimitError(scan.levels_checked + 1, -1, limit)
    return scan.collision


@dataclass(frozen=True)
class DimensionBound:
    """(1/n) * log_m |F_n| as the exact pair (count, level) with a float rendering."""

    count: int
    level: int
    m: int

    @property
    def value(self) -> float:
        return math.log(self.count) / (self.level * math.log(self.m))

    @property
    def below_one(self) -> bool:
        return self.count < self.m**self.level


def hausdorff_upper(sigma: SigmaSet, n: int, limit: int = ENUMERATION_LIMIT) -> DimensionBound:
    if n <= 0:
        raise ValueError("the dimension bound needs a level n >= 1")
    if common_divisor(sigma) is None:
        scan = _scan_irrational(sigma, n, limit)
        if scan.collision is not None and scan.levels_checked < n:
            raise ValueError("exact-sum path stops at the first collision level")
        return DimensionBound(scan.sizes[n], n, sigma.m)
    return DimensionBound(level_set(sigma, n, limit).size, n, sigma.m)


# outer approximations -------------------------------------------------------

@dataclass(frozen=True)
class EnvelopeBounds:
    e_min: ExactReal
    e_max: ExactReal


def envelope(sigma: SigmaSet) -> EnvelopeBounds:
    q = sigma.ratio
    f = q / (1 - q)
    return EnvelopeBounds(sigma.digits[0] * f, sigma.digits[-1] * f)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted disjoint closed intervals; touching pieces are merged."""

    intervals: tuple[tuple, ...] = ()

    @classmethod
    def from_intervals(cls, pieces) -> IntervalUnion:
        merged: list[list] = []
        for lo, hi in sorted(pieces, key=lambda p: p[0]):
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def measure(self):
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def translate(self, t) -> IntervalUnion:
        return IntervalUnion(tuple((lo + t, hi + t) for lo, hi in self.intervals))

    def union(self, other: IntervalUnion) -> IntervalUnion:
        return IntervalUnion.from_intervals(self.intervals + other.intervals)

    def intersection(self, other: IntervalUnion) -> IntervalUnion:
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion.from_intervals(out)

    def covers(self, lo, hi) -> bool:
        """Is [lo, hi] inside a single component?"""
        return any(a <= lo and hi <= b for a, b in self.intervals)

    def is_subset_of(self, other: IntervalUnion) -> bool:
        return all(other.covers(lo, hi) for lo, hi in self.intervals)

    def __str__(self):
        return " ∪ ".join(f"[{format_exact(lo)}, {format_exact(hi)}]" for lo, hi in self.intervals)


def _interval_model(sigma: SigmaSet, n: int, limit: int):
    """Merged components of the level-n outer cover in integer units.

    Returns (starts, ends, unit, origin) with real endpoint ``origin + unit*t``.
    """
    if common_divisor(sigma) is None:
        raise IrrationalStructureError(f"{sigma}: interval model needs a common divisor")
    lev = level_set(sigma, n, limit)
    q = sigma.ratio
    a, b = q.numerator, q.denominator
    top = max(normalize(sigma).sigma_star)
    length = a ** (n + 1) * top
    bound = (b - a) * max(abs(int(lev.values[0])), abs(int(lev.values[-1]))) + length
    vals = lev.values.astype(np.int64 if _fits(bound) else object)
    starts = vals * (b - a)
    gaps = np.flatnonzero(starts[1:] - starts[:-1] > length)
    first = np.concatenate(([0], gaps + 1))
    last = np.concatenate((gaps, [len(starts) - 1]))
    unit = lev.delta / ((b - a) * b**n)
    origin = lev.shift * q / (1 - q)
    return starts[first], starts[last] + length, unit, origin


def level_intervals(sigma: SigmaSet, n: int, limit: int = ENUMERATION_LIMIT) -> IntervalUnion:
    """Union of ``v + q**n * [e_min, e_max]`` over v in F_n; always contains E."""
    lo, hi, unit, origin = _interval_model(sigma, n, limit)
    return IntervalUnion(tuple(
        (origin + unit * int(x), origin + unit * int(y)) for x, y in zip(lo, hi)
    ))


def level_measure(sigma: SigmaSet, n: int, limit: int = ENUMERATION_LIMIT) -> ExactReal:
    """Total length of :func:`level_intervals`; a non-increasing upper bound for the measure of E."""
    lo, hi, unit, _ = _interval_model(sigma, n, limit)
    total = int((hi - lo).sum()) if len(lo) else 0
    return unit * total


def stable_intervals(sigma: SigmaSet, n_max: int, limit: int = ENUMERATION_LIMIT):
    """First level n < n_max whose cover equals the next one, with that cover.

    Level n+1 is the image of level n under x -> F_1 + q*x, so two equal
    consecutive covers repeat forever and equal E itself.  Returns
    ``(n, union)`` or None when no repetition shows up by n_max.
    """
    prev = level_intervals(sigma, 0, limit)
    for n in range(1, n_max + 1):
        cur = level_intervals(sigma, n, limit)
        if cur == prev:
            return n - 1, cur
        prev = cur
    return None


def interval_csv_rows(level: int, union: IntervalUnion) -> list[tuple[int, int, int, int, int]]:
    rows = []
    for lo, hi in union:
        lo, hi = Fraction(lo), Fraction(hi)
        rows.append((level, lo.numerator, lo.denominator, hi.numerator, hi.denominator))
    return rows


# distributional checks ------------------------------------------------------

def _rational(x, what: str) -> Fraction:
    if isinstance(x, QuadraticReal):
        if x.r != 0:
            raise TypeError(f"{what} must be rational here")
        return x.p
    return Fraction(x)


def pushforward_histogram(sigma: SigmaSet, delta, n: int, limit: int = ENUMERATION_LIMIT) -> Fraction:
    """Sup-distance between the law of (v/delta mod 1) under mu_n and Uniform[0,1).

    Exact: the empirical CDF is a step function, so the supremum is attained
    at the atoms and computed over a common integer denominator.
    """
    delta = _rational(delta, "delta")
    if delta <= 0:
        raise ValueError("delta must be positive")
    lev = level_set(sigma, n, limit)
    origin = _rational(lev.origin, "the level origin")
    scale = _rational(lev.scale, "the level scale")
    c0, c1 = origin / delta, scale / delta
    den = math.lcm(c0.denominator, c1.denominator)
    a0 = c0.numerator * (den // c0.denominator)
    a1 = c1.numerator * (den // c1.denominator)
    total = lev.total
    vals = [int(v) for v in lev.values]
    mults = [int(w) for w in lev.multiplicities]
    weight: dict[int, int] = {}
    for v, w in zip(vals, mults):
        r = (a0 + a1 * v) % den
        weight[r] = weight.get(r, 0) + w
    best = 0
    cum = 0
    for r in sorted(weight):
        # left limit of the CDF at r, then its value at r
        best = max(best, r * total - cum * den)
        cum += weight[r]
        best = max(best, cum * den - r * total)
    return Fraction(best, total * den)


def _factor_exponents(sigma: SigmaSet, delta: Fraction, n: int, k: int):
    q = sigma.ratio
    ts = [n * _rational(s, "digits") * q**k / delta for s in sigma.digits]
    den = math.lcm(*(t.denominator for t in ts))
    return [t.numerator * (den // t.denominator) for t in ts], den


def fourier_zero_factor(sigma: SigmaSet, delta, n: int, K: int) -> tuple[int, VanishCertificate] | None:
    """First k <= K whose factor ``sum exp(2 pi i n s q**k / delta)`` vanishes exactly.

    Only rational digit sets and delta are certifiable; otherwise returns None.
    """
    if not sigma.is_rational or isinstance(delta, QuadraticReal) and delta.r != 0:
        return None
    delta = _rational(delta, "delta")
    for k in range(1, K + 1):
        exps, den = _factor_exponents(sigma, delta, n, k)
        cert = vanishing_sum(exps, den)
        if cert.vanishes:
            return k, cert
    return None


def fourier_partial(sigma: SigmaSet, delta, n: int, K: int, prec: int = 113) -> mpmath.mpc:
    """Partial product over k = 1..K of ``q * sum_s exp(2 pi i n s q**k / delta)``.

    Exact zeros come from :func:`fourier_zero_factor`; otherwise the value is
    evaluated with ``prec`` bits of working precision.
    """
    if K < 1:
        raise ValueError("need at least one factor")
    if fourier_zero_factor(sigma, delta, n, K) is not None:
        return mpmath.mpc(0)
    with mpmath.workprec(prec):
        q = mpmath.mpf(sigma.ratio.numerator) / sigma.ratio.denominator
        dl = to_mpf(delta, prec)
        ds = [to_mpf(s, prec) for s in sigma.digits]
        prod = mpmath.mpc(1)
        for k in range(1, K + 1):
            qk = q**k
            fac = q * mpmath.fsum(mpmath.expjpi(2 * n * s * qk / dl) for s in ds)
            prod *= fac
        return prod
