"""Problem builders: multigeometric series, projected planar IFS, and searches."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .cyclotomic import vanishing_search
from .decide import Certificates, DecisionReport, Verdict, decide_measure
from .levelsets import scan_freeness
from .numeric import ExactReal, as_exact, parse_exact
from .sigma import SigmaSet, subset_sums

__all__ = [
    "Multigeometric",
    "PlanarIFS",
    "NiteckiResult",
    "build_sigma",
    "reduce_multigeometric",
    "nitecki_classify",
    "parse_ifs",
    "ifs_project",
    "stern_brocot",
    "sweep_candidates",
    "ifs_decide",
    "ifs_sweep",
    "counterexample_search",
    "GASKET",
    "FOUR_MAP",
]


@dataclass(frozen=True)
class Multigeometric:
    """The series k_1/n, ..., k_m/n, k_1/n**2, ... with positive integer k_i."""

    k: tuple[int, ...]
    base: int

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if not k or any(x <= 0 for x in k):
            raise ValueError("multigeometric coefficients must be positive integers")
        if self.base < 2:
            raise ValueError("base must be at least 2")
        object.__setattr__(self, "k", k)

    @property
    def q(self) -> Fraction:
        return Fraction(1, self.base)

    @property
    def total(self) -> Fraction:
        return sum(self.k) * self.q / (1 - self.q)

    @property
    def critical(self) -> bool:
        """|sigma| == base, the hypothesis of the measure-based routes."""
        return len(subset_sums(self.k)) == self.base


def build_sigma(mg: Multigeometric) -> SigmaSet:
    return SigmaSet(tuple(subset_sums(mg.k)), mg.q)


def reduce_multigeometric(mg: Multigeometric) -> Multigeometric:
    """Divide out every coefficient divisible by the base; the topological type is unchanged."""
    k = list(mg.k)
    for i, x in enumerate(k):
        while x % mg.base == 0:
            x //= mg.base
        k[i] = x
    return Multigeometric(tuple(k), mg.base)


@dataclass(frozen=True)
class NiteckiResult:
    kind: str  # "Interval", "Cantorval" or "NotApplicable"
    interval: tuple[Fraction, Fraction] | None = None
    printed_endpoint: Fraction | None = None
    reason: str = ""


def nitecki_classify(mg: Multigeometric) -> NiteckiResult:
    """Residue-complete multigeometric series: an interval iff sigma is 0, s, 2s, ...

    The interval's right end is the series total ``sum(k) * q / (1 - q)``.
    The value ``n/(n-1) * sum(k)`` is returned alongside as
    ``printed_endpoint``; it disagrees with the total whenever sum(k) > 0.
    """
    sigma = subset_sums(mg.k)
    n = mg.base
    if len(sigma) != n:
        return NiteckiResult("NotApplicable", reason=f"|sigma| = {len(sigma)} != {n}")
    res = sorted(int(s) % n for s in sigma)
    if res != list(range(n)):
        return NiteckiResult("NotApplicable", reason=f"residues {res} mod {n} are incomplete")
    step = sigma[1]
    if all(s == i * step for i, s in enumerate(sigma)):
        return NiteckiResult(
            "Interval",
            (Fraction(0), mg.total),
            Fraction(n, n - 1) * sum(mg.k),
        )
    return NiteckiResult("Cantorval")


# planar IFS -----------------------------------------------------------------

@dataclass(frozen=True)
class PlanarIFS:
    """Maps f_i(x, y) = ((x + a_i)/k, (y + b_i)/k), one per point (a_i, b_i)."""

    points: tuple[tuple, ...]

    def __post_init__(self):
        pts = tuple((as_exact(a), as_exact(b)) for a, b in self.points)
        if len(pts) < 2:
            raise ValueError("an IFS needs at least two maps")
        object.__setattr__(self, "points", pts)

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for p in self.points for c in p)


GASKET = PlanarIFS(((0, 0), (1, 0), (0, 1)))
FOUR_MAP = PlanarIFS(((0, 0), (1, 0), (1, 1), (0, parse_exact("sqrt(2)"))))


def parse_ifs(text: str) -> PlanarIFS:
    """``a1,b1:a2,b2:...`` with exact-real coordinates."""
    pts = []
    for chunk in text.split(":"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad IFS point {chunk!r}; expected 'a,b'")
        pts.append((parse_exact(parts[0]), parse_exact(parts[1])))
    return PlanarIFS(tuple(pts))


def ifs_project(ifs: PlanarIFS, u) -> SigmaSet:
    """Digits a_i + u*b_i of the projection x + u*y, with ratio 1/k.

    Coinciding digits are merged; the result is then subcritical
    (``not sigma.is_critical``) and its projection has measure zero.
    """
    u = as_exact(u)
    return SigmaSet.from_values((a + u * b for a, b in ifs.points), Fraction(1, ifs.k))


def stern_brocot(height: int) -> Iterator[Fraction]:
    """Positive rationals p/s with p, s <= height, in increasing order.

    In-order walk of the Stern-Brocot tree; a subtree is skipped once its
    root exceeds the height, since descendants have larger terms.
    """
    stack: list = []
    lo, hi = (0, 1), (1, 0)
    while True:
        p, s = lo[0] + hi[0], lo[1] + hi[1]
        if p <= height and s <= height:
            stack.append((lo, hi, (p, s)))
            hi = (p, s)
            continue
        if not stack:
            return
        lo, hi, node = stack.pop()
        yield Fraction(*node)
        lo = node


def sweep_candidates(height: int) -> list[Fraction]:
    pos = list(stern_brocot(height))
    return [-x for x in reversed(pos)] + [Fraction(0)] + pos


def _degenerate_report(sigma: SigmaSet | None) -> DecisionReport:
    return DecisionReport(
        sigma, Verdict.ZERO, "degenerate projection", Certificates(),
        lambda_e=Fraction(0), lambda_exact=True,
    )


def ifs_decide(ifs: PlanarIFS, u, n_max: int = 8, k_max: int | None = None) -> DecisionReport:
    """Decision for one projection; merged digits give measure zero outright."""
    u = as_exact(u)
    digits = {a + u * b for a, b in ifs.points}
    if len(digits) < ifs.k:
        sigma = ifs_project(ifs, u) if len(digits) > 1 else None
        return _degenerate_report(sigma)
    return decide_measure(ifs_project(ifs, u), n_max, k_max)


def ifs_sweep(ifs: PlanarIFS, height: int, n_max: int = 8, k_max: int | None = None):
    """Decide every projection u = p/s with |p|, s <= height; sorted by u."""
    return [(u, ifs_decide(ifs, u, n_max, k_max)) for u in sweep_candidates(height)]


# searches ---------------------------------------------------------------------

def counterexample_search(size: int, bound: int, n_max: int = 6, k_max: int | None = None) -> list[SigmaSet]:
    """Digit sets in {0..bound} of the given size that look positive without residue completeness.

    Candidates have min 0 and gcd 1, incomplete residues mod ``size``, no
    collision through level ``n_max``, and a vanishing sum for every
    frequency n <= n_max.
    """
    if size < 2 or bound < size - 1:
        raise ValueError("need size >= 2 and bound >= size - 1")
    found = []
    for rest in itertools.combinations(range(1, bound + 1), size - 1):
        if math.gcd(*rest) != 1:
            continue
        digits = (0,) + rest
        if sorted(d % size for d in digits) == list(range(size)):
            continue
        table = vanishing_search(digits, size, n_max, k_max, stop_at_failure=True)
        if not table.complete or len(table.table) < n_max:
            continue
        sigma = SigmaSet(digits)
        if scan_freeness(sigma, n_max).collision is not None:
            continue
        found.append(sigma)
    return found
