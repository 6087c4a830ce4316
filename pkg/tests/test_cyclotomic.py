import cmath
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsim.cyclotomic import (
    IntPolynomial,
    vanishing_search,
    cyclotomic_poly,
    default_k_limit,
    valuation,
    vanishing_sum,
)

X = sympy.Symbol("X")


def direct_sum(exponents, n):
    return sum(cmath.exp(2j * math.pi * e / n) for e in exponents)


@pytest.mark.parametrize("n", list(range(1, 121)) + [243, 256, 729])
def test_cyclotomic_matches_sympy(n):
    ref = sympy.Poly(sympy.cyclotomic_poly(n, X), X).all_coeffs()[::-1]
    assert cyclotomic_poly(n).coeffs == tuple(int(c) for c in ref)


def test_polynomial_basics():
    p = IntPolynomial.from_exponents([0, 1, 1, 4])
    assert p.coeffs == (1, 2, 0, 0, 1)
    assert p.degree == 4 and p(2) == 21
    assert IntPolynomial((0, 0)).is_zero()
    q, r = p.divmod_monic(IntPolynomial((1, 1)))
    prod = q * IntPolynomial((1, 1))
    full = [a + b for a, b in zip(prod.coeffs + (0,) * 5, r.coeffs + (0,) * 9)]
    assert IntPolynomial(tuple(full)) == p
    with pytest.raises(ValueError):
        p.divmod_monic(IntPolynomial((1, 2)))


@settings(max_examples=300)
@given(st.sampled_from([3, 4, 6, 8, 9, 12, 16, 27, 30]), st.data())
def test_vanishing_matches_complex_sum(n, data):
    exps = data.draw(st.lists(st.integers(0, 3 * n), min_size=1, max_size=12))
    cert = vanishing_sum(exps, n)
    assert cert.vanishes == (abs(direct_sum(exps, n)) < 1e-9)
    assert cert.verify()


@given(st.sampled_from([9, 16, 27, 15, 20]), st.data())
def test_galois_invariance(n, data):
    exps = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=10))
    j = data.draw(st.sampled_from([u for u in range(1, n) if math.gcd(u, n) == 1]))
    assert vanishing_sum(exps, n).vanishes == vanishing_sum([j * e for e in exps], n).vanishes


@given(st.sampled_from([(12, 3), (12, 4), (16, 2), (27, 3), (30, 5)]), st.data())
def test_coset_sums_vanish(np_, data):
    n, p = np_
    a = data.draw(st.integers(0, n - 1))
    coset = [a + k * (n // p) for k in range(p)]
    cert = vanishing_sum(coset, n)
    assert cert.vanishes
    assert cert.quotient * cyclotomic_poly(n) == cert.digit_polynomial()


def test_non_vanishing_certificate():
    cert = vanishing_sum([0, 1, 3], 3)
    assert not cert.vanishes and cert.quotient is None and cert.verify()


def test_valuation():
    assert valuation(81, 3) == 4
    assert valuation(10, 3) == 0
    assert default_k_limit(9, 3) == 5


def test_vanishing_table_0_1_2():
    t = vanishing_search((0, 1, 2), 3, 81)
    assert t.complete
    assert all(t.table[n] == valuation(n, 3) + 1 for n in range(1, 82))


def test_vanishing_table_0_1_8_9():
    t = vanishing_search((0, 1, 8, 9), 4, 4)
    assert t.table == {1: 2, 2: 1, 3: 2, 4: 3}
    # direct check of the certified levels
    for n, k in t.table.items():
        assert abs(direct_sum([n * s for s in (0, 1, 8, 9)], 4**k)) < 1e-9
        for j in range(1, k):
            assert abs(direct_sum([n * s for s in (0, 1, 8, 9)], 4**j)) > 1e-9


def test_vanishing_table_0_1_3_fails():
    t = vanishing_search((0, 1, 3), 3, 1, k_max=6)
    assert t.table == {1: None} and t.failures == [1] and not t.complete
    assert t.certificate(1) is None


def test_stop_at_failure():
    t = vanishing_search((0, 1, 3), 3, 10, stop_at_failure=True)
    assert list(t.table) == [1]
