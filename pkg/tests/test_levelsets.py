import cmath
import itertools
import math
from collections import Counter
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsim.numeric import parse_exact
from selfsim.levelsets import (
    EnumerationLimitError,
    IntervalUnion,
    envelope,
    first_collision,
    fourier_partial,
    fourier_zero_factor,
    hausdorff_upper,
    interval_csv_rows,
    level_intervals,
    level_measure,
    level_set,
    pushforward_histogram,
    scan_freeness,
    stable_intervals,
)
from selfsim.sigma import SigmaSet, parse_sigma


# oracles ---------------------------------------------------------------------

def brute_points(digits, q, n):
    """Counter of sum_{i=1..n} d_i q**i over all digit strings."""
    return Counter(
        sum((d * q ** (i + 1) for i, d in enumerate(w)), Fraction(0))
        for w in itertools.product(digits, repeat=n)
    )


def brute_first_collision(digits, q, n_max):
    for n in range(1, n_max + 1):
        if len(brute_points(digits, q, n)) < len(digits) ** n:
            return n
    return None


def brute_merge(pieces):
    out = []
    for lo, hi in sorted(pieces):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def brute_cover(digits, q, n):
    f = q / (1 - q)
    lo, hi = min(digits) * f, max(digits) * f
    return brute_merge((p + q**n * lo, p + q**n * hi) for p in brute_points(digits, q, n))


def brute_discrepancy(digits, q, delta, n):
    m = len(digits)
    fracs = sorted((p / delta) % 1 for p in brute_points(digits, q, n).elements())
    total = m**n
    best = Fraction(0)
    for i, x in enumerate(fracs):
        best = max(best, abs(Fraction(i, total) - x), abs(Fraction(i + 1, total) - x))
    return best


small_sets = st.lists(st.integers(0, 12), min_size=2, max_size=4, unique=True)


# level sets --------------------------------------------------------------------

def test_level_two_of_0_1_3():
    lev = level_set(SigmaSet((0, 1, 3)), 2)
    assert list(lev.values) == [0, 1, 3, 4, 6, 9, 10, 12]
    assert list(lev.multiplicities) == [1, 1, 2, 1, 1, 1, 1, 1]
    assert not lev.is_free and lev.total == 9


@settings(max_examples=60, deadline=None)
@given(small_sets, st.sampled_from([None, Fraction(1, 3), Fraction(2, 7)]), st.integers(1, 4))
def test_level_set_matches_brute_force(digits, q, n):
    s = SigmaSet(tuple(digits), q)
    lev = level_set(s, n)
    brute = brute_points(s.digits, s.ratio, n)
    got = Counter(dict(zip(lev.points(), (int(w) for w in lev.multiplicities))))
    assert got == brute


def test_object_dtype_for_large_values():
    s = SigmaSet((0, 1, 10**17))
    # the largest value at level 5 is 121 * 10**17 > 2**62
    lev = level_set(s, 5)
    assert lev.values.dtype == object
    assert Counter(lev.points()) == Counter(set(brute_points(s.digits, s.ratio, 5)))
    assert lev.is_free


def test_quadratic_level_points():
    s = parse_sigma("0,sqrt(2),3*sqrt(2)")
    lev = level_set(s, 3)
    assert Counter(dict(zip(lev.points(), (int(w) for w in lev.multiplicities)))) == brute_points(
        s.digits, s.ratio, 3
    )


def test_enumeration_guard():
    with pytest.raises(EnumerationLimitError) as err:
        level_set(SigmaSet((0, 1, 8, 9)), 6, limit=1000)
    assert err.value.level == 5 and err.value.limit == 1000


# freeness ------------------------------------------------------------------------

def test_collision_witnesses():
    c = first_collision(SigmaSet((0, 1, 3)), 4)
    assert c.level == 2 and c.value == Fraction(1, 3)
    assert set(c.witness) == {(0, 3), (1, 0)}
    c = first_collision(SigmaSet((0, 1, 4)), 4)
    assert c.level == 2 and set(c.witness) == {(0, 4), (1, 1)}


@settings(max_examples=80, deadline=None)
@given(small_sets)
def test_first_collision_matches_brute_force(digits):
    s = SigmaSet(tuple(digits))
    c = first_collision(s, 4)
    want = brute_first_collision(s.digits, s.ratio, 4)
    assert (None if c is None else c.level) == want
    if c is not None:
        a, b = c.witness
        q = s.ratio
        assert a != b
        assert sum(d * q ** (i + 1) for i, d in enumerate(a)) == c.value
        assert sum(d * q ** (i + 1) for i, d in enumerate(b)) == c.value


def test_irrational_scan():
    free = scan_freeness(parse_sigma("0,1,sqrt(2)"), 6)
    assert free.collision is None and free.sizes == tuple(3**n for n in range(7))
    s = SigmaSet((0, 1, 3, parse_exact("sqrt(2)")), Fraction(1, 3))
    c = scan_freeness(s, 4).collision
    assert c.level == 2 and c.value == brute_collision_value(s, 2)
    with pytest.raises(ValueError):
        scan_freeness(parse_sigma("0,1,sqrt(2)"), 40)


def brute_collision_value(s, n):
    pts = brute_points(s.digits, s.ratio, n)
    return min(v for v, c in pts.items() if c > 1)


def test_scan_truncation():
    scan = scan_freeness(SigmaSet((0, 1, 8, 9)), 12, limit=5000)
    assert scan.truncated and scan.collision is None and scan.levels_checked == 6
    with pytest.raises(EnumerationLimitError):
        first_collision(SigmaSet((0, 1, 8, 9)), 12, limit=5000)


def test_dimension_bound():
    b = hausdorff_upper(SigmaSet((0, 1, 3)), 6)
    assert b.count == len(brute_points((0, 1, 3), Fraction(1, 3), 6))
    assert b.below_one and b.value < 1
    assert math.isclose(b.value, math.log(b.count) / (6 * math.log(3)))
    assert not hausdorff_upper(SigmaSet((0, 1, 2)), 5).below_one


# intervals -------------------------------------------------------------------------

def test_interval_union_merges():
    u = IntervalUnion.from_intervals([(3, 4), (0, 1), (1, 2), (Fraction(5, 2), 3)])
    assert u.intervals == ((0, 2), (Fraction(5, 2), 4))
    assert u.measure() == Fraction(7, 2)
    v = IntervalUnion.from_intervals([(1, 3)])
    assert u.intersection(v).intervals == ((1, 2), (Fraction(5, 2), 3))
    assert u.covers(0, 2) and not u.covers(1, 3)
    assert v.translate(1).intervals == ((2, 4),)
    with pytest.raises(ValueError):
        IntervalUnion.from_intervals([(2, 1)])


intervals = st.lists(
    st.tuples(st.fractions(0, 10, max_denominator=6), st.fractions(0, 3, max_denominator=6)).map(
        lambda t: (t[0], t[0] + t[1])
    ),
    max_size=6,
)


@given(intervals, intervals, st.lists(st.fractions(-1, 14, max_denominator=12), max_size=20))
def test_interval_union_membership(a, b, probes):
    ua, ub = IntervalUnion.from_intervals(a), IntervalUnion.from_intervals(b)

    def inside(pieces, x):
        return any(lo <= x <= hi for lo, hi in pieces)

    for x in probes:
        assert inside(ua.intervals, x) == inside(a, x)
        assert inside(ua.union(ub).intervals, x) == (inside(a, x) or inside(b, x))
        assert inside(ua.intersection(ub).intervals, x) == (inside(a, x) and inside(b, x))
    assert ua.measure() == sum((hi - lo for lo, hi in brute_merge(a)), Fraction(0))


def test_level_intervals_frozen():
    s = SigmaSet((0, 1, 8, 9))
    for n in range(1, 6):
        assert level_intervals(s, n).intervals == ((0, 1), (2, 3))
        assert level_measure(s, n) == 2
    c = SigmaSet((0, 1), Fraction(1, 3))
    assert level_measure(c, 1) == Fraction(1, 3)
    assert level_intervals(c, 2).intervals == (
        (0, Fraction(1, 18)), (Fraction(1, 9), Fraction(1, 6)),
        (Fraction(1, 3), Fraction(7, 18)), (Fraction(4, 9), Fraction(1, 2)),
    )


@settings(max_examples=60, deadline=None)
@given(small_sets, st.sampled_from([None, Fraction(1, 3), Fraction(2, 5)]), st.integers(0, 4))
def test_level_intervals_match_brute_force(digits, q, n):
    s = SigmaSet(tuple(digits), q)
    assert list(level_intervals(s, n).intervals) == brute_cover(s.digits, s.ratio, n)


@settings(max_examples=40, deadline=None)
@given(small_sets)
def test_level_measure_non_increasing(digits):
    s = SigmaSet(tuple(digits))
    ms = [level_measure(s, n) for n in range(0, 7)]
    assert all(a >= b for a, b in zip(ms, ms[1:]))
    env = envelope(s)
    assert ms[0] == env.e_max - env.e_min


def test_stable_intervals():
    n, u = stable_intervals(SigmaSet((0, 1, 8, 9)), 5)
    assert n == 1 and u.intervals == ((0, 1), (2, 3))
    assert stable_intervals(SigmaSet((0, 1, 2)), 3)[1].intervals == ((0, 1),)
    assert stable_intervals(SigmaSet((0, 2, 3, 5)), 5) is None


def test_csv_rows():
    u = IntervalUnion.from_intervals([(Fraction(2, 4), Fraction(3, 2))])
    assert interval_csv_rows(3, u) == [(3, 1, 2, 3, 2)]


# distribution checks --------------------------------------------------------------

def test_pushforward_frozen():
    s = SigmaSet((0, 1, 2))
    for n in range(1, 9):
        assert pushforward_histogram(s, 1, n) == Fraction(1, 3**n)
    assert pushforward_histogram(SigmaSet((0, 1, 3)), 1, 3) == Fraction(10, 27)


@settings(max_examples=40, deadline=None)
@given(small_sets, st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(3)]), st.integers(1, 3))
def test_pushforward_matches_brute_force(digits, delta, n):
    s = SigmaSet(tuple(digits))
    assert pushforward_histogram(s, delta, n) == brute_discrepancy(s.digits, s.ratio, delta, n)


def direct_partial(digits, delta, n, K):
    m = len(digits)
    prod = 1
    for k in range(1, K + 1):
        prod *= sum(cmath.exp(2j * math.pi * n * d / (delta * m**k)) for d in digits) / m
    return prod


def test_fourier_partial_zero_and_nonzero():
    assert fourier_partial(SigmaSet((0, 1, 2)), 1, 1, 1) == 0
    assert fourier_zero_factor(SigmaSet((0, 1, 2)), 1, 1, 1)[0] == 1
    assert fourier_partial(SigmaSet((0, 1, 8, 9)), 1, 1, 2) == 0
    v = fourier_partial(SigmaSet((0, 1, 3)), 1, 1, 8)
    assert abs(v) > 1e-3
    assert abs(complex(v) - direct_partial((0, 1, 3), 1, 1, 8)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(small_sets, st.integers(1, 9), st.integers(1, 8))
def test_fourier_partial_bounded_and_consistent(digits, n, K):
    s = SigmaSet(tuple(digits))
    v = fourier_partial(s, 1, n, K)
    assert abs(v) <= 1
    direct = direct_partial(s.digits, 1, n, K)
    if v == 0:
        assert abs(direct) < 1e-9
    else:
        assert abs(complex(v) - direct) < 1e-9


def test_fourier_partial_quadratic_is_numeric():
    s = parse_sigma("0,1,sqrt(2)")
    assert fourier_zero_factor(s, 1, 1, 4) is None
    v = fourier_partial(s, 1, 1, 4)
    assert isinstance(v, mpmath.mpc) and 0 < abs(v) <= 1


def test_numpy_arrays_sorted_and_unique():
    lev = level_set(SigmaSet((0, 2, 3, 5)), 5)
    assert np.all(np.diff(lev.values.astype(np.int64)) > 0)
    assert int(lev.multiplicities.sum()) == 4**5
