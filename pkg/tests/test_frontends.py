import cmath
import itertools
import math
from fractions import Fraction

import pytest

from selfsim.decide import Verdict
from selfsim.frontends import (
    FOUR_MAP,
    GASKET,
    Multigeometric,
    build_sigma,
    counterexample_search,
    ifs_decide,
    ifs_project,
    ifs_sweep,
    nitecki_classify,
    parse_ifs,
    reduce_multigeometric,
    stern_brocot,
    sweep_candidates,
)
from selfsim.numeric import parse_exact


def test_multigeometric():
    mg = Multigeometric((1, 8), 4)
    assert mg.q == Fraction(1, 4) and mg.total == 3 and mg.critical
    assert build_sigma(mg).digits == (0, 1, 8, 9)
    assert reduce_multigeometric(mg).k == (1, 2)
    assert reduce_multigeometric(Multigeometric((16, 3), 4)).k == (1, 3)
    assert not Multigeometric((1, 1), 4).critical
    with pytest.raises(ValueError):
        Multigeometric((0, 1), 4)
    with pytest.raises(ValueError):
        Multigeometric((1,), 1)


def test_nitecki():
    r = nitecki_classify(Multigeometric((1, 2), 4))
    assert r.kind == "Interval"
    # the series (1, 2; 1/4) sums to 1, which is where the interval ends
    assert r.interval == (0, 1)
    assert r.printed_endpoint == 4
    assert nitecki_classify(Multigeometric((3, 2), 4)).kind == "Cantorval"
    assert nitecki_classify(Multigeometric((1, 8), 4)).kind == "NotApplicable"
    assert nitecki_classify(Multigeometric((1, 1), 4)).kind == "NotApplicable"


def test_parse_ifs():
    ifs = parse_ifs("0,0:1,0:1,1:0,sqrt(2)")
    assert ifs.points == FOUR_MAP.points and ifs.k == 4 and not ifs.is_rational
    assert GASKET.is_rational
    with pytest.raises(ValueError):
        parse_ifs("0,0:1")
    with pytest.raises(ValueError):
        parse_ifs("0,0")


def test_projection():
    s = ifs_project(FOUR_MAP, 1)
    assert s.digits == (0, 1, parse_exact("sqrt(2)"), 2)
    assert s.ratio == Fraction(1, 4)
    merged = ifs_project(GASKET, 1)
    assert merged.digits == (0, 1) and not merged.is_critical


def brute_stern_brocot(h):
    return sorted({Fraction(p, s) for p in range(1, h + 1) for s in range(1, h + 1)})


@pytest.mark.parametrize("h", [1, 2, 3, 5, 8, 13])
def test_stern_brocot_matches_brute(h):
    assert list(stern_brocot(h)) == brute_stern_brocot(h)


def test_sweep_candidates_symmetric():
    c = sweep_candidates(4)
    assert c == sorted(c) and 0 in c
    assert [-x for x in reversed(c)] == c


def test_gasket_rule():
    rows = ifs_sweep(GASKET, 5)
    pos = {u for u, rep in rows if rep.verdict is Verdict.POSITIVE}
    want = {u for u in sweep_candidates(5) if (u.numerator + u.denominator) % 3 == 0}
    assert pos == want
    assert {Fraction(2), Fraction(1, 2), Fraction(5)} <= pos


def test_four_map_all_zero():
    for u in ["1", "2", "1/2", "sqrt(2)", "2*sqrt(2)", "-3/4"]:
        rep = ifs_decide(FOUR_MAP, parse_exact(u))
        assert rep.verdict is Verdict.ZERO
        assert rep.fired_condition == "no-common-divisor"
    for u in [0, -1]:
        rep = ifs_decide(FOUR_MAP, u)
        assert rep.verdict is Verdict.ZERO and rep.fired_condition == "degenerate projection"


def test_degenerate_single_point():
    ifs = parse_ifs("0,0:0,1")
    rep = ifs_decide(ifs, 0)
    assert rep.sigma is None and rep.verdict is Verdict.ZERO


def brute_search(size, bound):
    """Independent filter: residue-incomplete sets whose levels stay free and whose sums vanish."""
    out = []
    for rest in itertools.combinations(range(1, bound + 1), size - 1):
        d = (0,) + rest
        if math.gcd(*rest) != 1 or sorted(x % size for x in d) == list(range(size)):
            continue
        free = all(
            len({sum(w[i] * size ** (n - 1 - i) for i in range(n))
                 for w in itertools.product(d, repeat=n)}) == size**n
            for n in range(1, 5)
        )
        vanish = all(
            any(abs(sum(cmath.exp(2j * math.pi * n * s / size**k) for s in d)) < 1e-9
                for k in range(1, 6))
            for n in range(1, 5)
        )
        if free and vanish:
            out.append(d)
    return out


def test_counterexample_search():
    assert [s.digits for s in counterexample_search(4, 9)] == [(0, 1, 8, 9)]
    assert counterexample_search(3, 20) == []
    assert [s.digits for s in counterexample_search(4, 9, n_max=4)] == brute_search(4, 9)
    with pytest.raises(ValueError):
        counterexample_search(1, 4)
