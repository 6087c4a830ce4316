"""Vanishing sums of roots of unity, decided by exact division by Phi_N.

``sum(zeta**e) == 0`` for a primitive N-th root ``zeta`` exactly when the
cyclotomic polynomial Phi_N (the minimal polynomial of zeta) divides
``sum(X**e)``.  Phi_N is monic, so the division stays in Z[X] and the
quotient is a reproducible witness.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial",
    "VanishCertificate",
    "VanishingTable",
    "cyclotomic_poly",
    "vanishing_sum",
    "vanishing_search",
    "valuation",
    "default_k_limit",
]


def _trim(c: list[int]) -> list[int]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, ``coeffs[i]`` multiplies ``X**i``; () is zero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) for c in self.coeffs])))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> IntPolynomial:
        exps = list(exponents)
        c = [0] * (max(exps) + 1 if exps else 0)
        for e in exps:
            c[e] += 1
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        nz_b = [(j, c) for j, c in enumerate(b) if c]
        for i, ca in enumerate(a):
            if ca:
                for j, cb in nz_b:
                    out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division by a monic divisor; cost scales with its nonzero terms."""
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        dd = len(d) - 1
        rem = list(self.coeffs)
        if len(rem) <= dd:
            return IntPolynomial(()), IntPolynomial(tuple(rem))
        quot = [0] * (len(rem) - dd)
        tail = [(j, c) for j, c in enumerate(d[:-1]) if c]
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                shift = i - dd
                quot[shift] = c
                rem[i] = 0
                for j, cj in tail:
                    rem[shift + j] -= c * cj
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]))


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in _factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@functools.lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """Phi_n as the exact quotient of products of binomials ``X**d - 1``.

    Phi_n = prod_{d | n} (X**d - 1) ** mu(n/d); the numerator binomials are
    multiplied out and the denominator ones removed by exact division.
    """
    if n < 1:
        raise ValueError("order must be positive")
    num = [1]
    den = []
    for d in _divisors(n):
        mu = _mobius(n // d)
        if mu == 1:
            # multiply by X**d - 1
            out = [0] * (len(num) + d)
            for i, c in enumerate(num):
                out[i + d] += c
                out[i] -= c
            num = out
        elif mu == -1:
            den.append(d)
    for d in den:
        # divide by X**d - 1:  q[i] = q[i + d] + num[i + d], from the top
        deg = len(num) - 1
        q = [0] * (deg - d + 1)
        for i in range(deg - d, -1, -1):
            q[i] = num[i + d] + (q[i + d] if i + d <= deg - d else 0)
        # remainder check: low coefficients must agree
        for i in range(d):
            assert num[i] == -q[i] if i < len(q) else num[i] == 0
        num = q
    # the sign convention (X**d - 1 vs 1 - X**d) keeps Phi_n monic for n > 1
    poly = IntPolynomial(tuple(num))
    if poly.coeffs[-1] == -1:
        poly = IntPolynomial(tuple(-c for c in poly.coeffs))
    return poly


@dataclass(frozen=True)
class VanishCertificate:
    order: int
    exponents: tuple[int, ...]
    vanishes: bool
    quotient: IntPolynomial | None = None

    def digit_polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_exponents(self.exponents)

    def verify(self) -> bool:
        """Recompute the claim from scratch; quotient * Phi_N must give the digit polynomial."""
        fresh = vanishing_sum(self.exponents, self.order)
        if fresh.vanishes != self.vanishes:
            return False
        if self.vanishes:
            return self.quotient * cyclotomic_poly(self.order) == self.digit_polynomial()
        return True


def vanishing_sum(exponents: Iterable[int], n: int) -> VanishCertificate:
    """Does ``sum(exp(2*pi*i*e/n) for e in exponents)`` vanish?"""
    if n < 1:
        raise ValueError("order must be positive")
    exps = tuple(sorted(int(e) % n for e in exponents))
    p = IntPolynomial.from_exponents(exps)
    quot, rem = p.divmod_monic(cyclotomic_poly(n))
    if rem.is_zero():
        return VanishCertificate(n, exps, True, quot)
    return VanishCertificate(n, exps, False, None)


def valuation(n: int, m: int) -> int:
    """Largest j with m**j dividing n (n >= 1, m >= 2)."""
    j = 0
    while n % m == 0:
        n //= m
        j += 1
    return j


def default_k_limit(n: int, m: int) -> int:
    return valuation(n, m) + 3


@dataclass(frozen=True)
class VanishingTable:
    """Smallest vanishing level k for each tested frequency n (None = not found)."""

    m: int
    digits: tuple[int, ...]
    table: dict = field(default_factory=dict)
    k_limits: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return bool(self.table) and all(k is not None for k in self.table.values())

    @property
    def failures(self) -> list[int]:
        return [n for n, k in self.table.items() if k is None]

    def certificate(self, n: int) -> VanishCertificate | None:
        k = self.table.get(n)
        if k is None:
            return None
        return vanishing_sum((n * s for s in self.digits), self.m**k)


def vanishing_search(
    digits: Sequence[int],
    m: int,
    n_max: int,
    k_max: int | None = None,
    stop_at_failure: bool = False,
) -> VanishingTable:
    """For n = 1..n_max find the least k <= k_max with sum_s zeta_{m^k}^(n*s) = 0.

    ``k_max=None`` uses the per-frequency default valuation_m(n) + 3.
    A missing k is inconclusive, not a disproof.
    """
    digits = tuple(int(s) for s in digits)
    table: dict[int, int | None] = {}
    limits: dict[int, int] = {}
    for n in range(1, n_max + 1):
        limit = default_k_limit(n, m) if k_max is None else k_max
        limits[n] = limit
        found = None
        for k in range(1, limit + 1):
            if vanishing_sum((n * s for s in digits), m**k).vanishes:
                found = k
                break
        table[n] = found
        if found is None and stop_at_failure:
            break
    return VanishingTable(m, digits, table, limits)
