"""Verdicts on the Lebesgue measure of E(sigma, 1/|sigma|) with certificates.

The chain runs cheapest-first and stops at the first route that fires:

    no-common-divisor   -> MeasureZero
    residue-complete    -> PositiveMeasure, measure = delta
    prime-corollary     -> MeasureZero (prime |sigma|, residues incomplete)
    collision           -> MeasureZero (|F_n| < m**n)
    interval-threshold  -> PositiveMeasure (q >= i(sigma))
    condition-ix        -> PositiveMeasure, bounded evidence only
    otherwise           -> Unknown, with dimension and measure bounds
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cyclotomic import VanishingTable, vanishing_search
from .levelsets import (
    Collision,
    DimensionBound,
    IntervalUnion,
    envelope,
    level_intervals,
    level_measure,
    scan_freeness,
    stable_intervals,
)
from .numeric import ExactReal, to_mpf
from .sigma import (
    SUBSET_LIMIT,
    Normalization,
    ResidueProfile,
    SigmaSet,
    common_divisor,
    containment_threshold,
    normalize,
    residue_profile,
    subset_sums,
)

__all__ = [
    "Verdict",
    "DecisionReport",
    "Certificates",
    "CriticalRatioError",
    "NotApplicableError",
    "TilingCertificate",
    "KakeyaCondition",
    "GNSType",
    "GNSResult",
    "DECIDE_LIMIT",
    "decide_measure",
    "prime_decide",
    "tiling_certificate",
    "kakeya_check",
    "gns_classify",
    "is_prime",
]

# candidate-value budget for the collision scan inside a decision
DECIDE_LIMIT = 1 << 22
# levels whose outer measure is attached to bounded or unknown verdicts
_MEASURE_BOUND_LIMIT = 1 << 18


class CriticalRatioError(ValueError):
    """The decision chain needs q * |sigma| == 1."""


class NotApplicableError(ValueError):
    """The requested corollary's hypothesis does not hold."""


class Verdict(str, enum.Enum):
    POSITIVE = "PositiveMeasure"
    ZERO = "MeasureZero"
    UNKNOWN = "Unknown"


@dataclass
class Certificates:
    delta: ExactReal | None = None
    normalization: Normalization | None = None
    residues: ResidueProfile | None = None
    collision: Collision | None = None
    free_through: int | None = None
    vanishing_table: VanishingTable | None = None
    dimension_bound: DimensionBound | None = None
    threshold: ExactReal | None = None
    measure_bounds: list = field(default_factory=list)
    stable_level: int | None = None


@dataclass
class DecisionReport:
    sigma: SigmaSet
    verdict: Verdict
    fired_condition: str
    certificates: Certificates
    lambda_e: ExactReal | None = None
    lambda_exact: bool = False
    lambda_level: int | None = None
    bounded_evidence: bool = False
    n_max: int = 0
    k_max: int | None = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, math.isqrt(n) + 1))


def _measure_bounds(sigma: SigmaSet, n_top: int) -> list[tuple[int, ExactReal]]:
    out = []
    for n in range(1, n_top + 1):
        if sigma.m**n > _MEASURE_BOUND_LIMIT:
            break
        out.append((n, level_measure(sigma, n)))
    return out


def decide_measure(
    sigma: SigmaSet,
    n_max: int = 8,
    k_max: int | None = None,
    limit: int = DECIDE_LIMIT,
) -> DecisionReport:
    """Run the certificate chain on a critical digit set (q = 1/|sigma|).

    ``n_max`` bounds both the collision scan and the frequencies tried in
    the vanishing-sum search; ``k_max=None`` uses the per-frequency default.
    """
    if not sigma.is_critical:
        raise CriticalRatioError(
            f"ratio {sigma.ratio} with {sigma.m} digits: need q * |sigma| == 1"
        )
    m = sigma.m
    cert = Certificates()

    def report(verdict, route, **kw):
        return DecisionReport(sigma, verdict, route, cert, n_max=n_max, k_max=k_max, **kw)

    delta = common_divisor(sigma)
    if delta is None:
        return report(Verdict.ZERO, "no-common-divisor", lambda_e=Fraction(0), lambda_exact=True)
    cert.delta = delta
    norm = normalize(sigma)
    cert.normalization = norm
    cert.residues = residue_profile(norm, m)

    if cert.residues.complete:
        cert.vanishing_table = vanishing_search(norm.sigma_star, m, n_max, k_max)
        return report(Verdict.POSITIVE, "residue-complete", lambda_e=delta, lambda_exact=True)

    scan = scan_freeness(sigma, n_max, limit)
    cert.collision = scan.collision
    cert.free_through = scan.levels_checked if scan.collision is None else scan.levels_checked - 1
    if scan.collision is not None:
        lvl = scan.collision.level
        cert.dimension_bound = DimensionBound(scan.sizes[lvl], lvl, m)

    if is_prime(m):
        return report(Verdict.ZERO, "prime-corollary", lambda_e=Fraction(0), lambda_exact=True)
    if scan.collision is not None:
        return report(Verdict.ZERO, "collision", lambda_e=Fraction(0), lambda_exact=True)

    if scan.levels_checked:
        lvl = scan.levels_checked
        cert.dimension_bound = DimensionBound(scan.sizes[lvl], lvl, m)
    cert.measure_bounds = _measure_bounds(sigma, n_max)
    best = cert.measure_bounds[-1] if cert.measure_bounds else (None, None)
    exact = False
    if len(cert.measure_bounds) >= 2:
        stable = stable_intervals(sigma, cert.measure_bounds[-1][0])
        if stable is not None:
            cert.stable_level = stable[0]
            best, exact = (stable[0], stable[1].measure()), True

    if m <= SUBSET_LIMIT:
        cert.threshold = containment_threshold(sigma)
        if sigma.ratio >= cert.threshold:
            return report(Verdict.POSITIVE, "interval-threshold",
                          lambda_e=best[1], lambda_level=best[0], lambda_exact=exact)

    cert.vanishing_table = vanishing_search(norm.sigma_star, m, n_max, k_max)
    if cert.vanishing_table.complete:
        return report(Verdict.POSITIVE, "condition-ix (bounded)", bounded_evidence=True,
                      lambda_e=best[1], lambda_level=best[0], lambda_exact=exact)
    return report(Verdict.UNKNOWN, "none", lambda_e=best[1], lambda_level=best[0],
                  lambda_exact=exact)


def prime_decide(sigma: SigmaSet) -> bool:
    """Prime |sigma|: E contains an interval iff the normalised digits hit every residue."""
    if not is_prime(sigma.m):
        raise NotApplicableError(f"|sigma| = {sigma.m} is not prime")
    if common_divisor(sigma) is None:
        return False
    return residue_profile(normalize(sigma), sigma.m).complete


# tiling ---------------------------------------------------------------------

@dataclass(frozen=True)
class TilingCertificate:
    delta: ExactReal
    window: Fraction
    level: int
    covered: bool
    max_overlap: ExactReal
    overlap_bound: ExactReal
    lambda_e: ExactReal

    @property
    def overlap_ok(self) -> bool:
        return self.max_overlap <= self.overlap_bound


def _floor(x) -> int:
    f = int(mpmath.floor(to_mpf(x)))
    while f > x:
        f -= 1
    while f + 1 <= x:
        f += 1
    return f


def tiling_certificate(sigma: SigmaSet, n: int, window) -> TilingCertificate:
    """Check at level n that translates by delta*Z of the outer cover tile [-M, M].

    The cover of the window shrunk by the envelope reach must be complete,
    and pairwise overlaps can only come from the level-n excess over delta.
    """
    if not sigma.is_critical:
        raise CriticalRatioError("tiling by delta*Z needs q * |sigma| == 1")
    delta = common_divisor(sigma)
    if delta is None or not residue_profile(normalize(sigma), sigma.m).complete:
        raise NotApplicableError(f"{sigma}: normalised digits are not residue-complete")
    M = Fraction(window)
    cover = level_intervals(sigma, n)
    env = envelope(sigma)
    reach = max(abs(env.e_min), abs(env.e_max))
    J = _floor(M / delta)
    tiles = IntervalUnion.from_intervals(
        (lo + j * delta, hi + j * delta) for j in range(-J, J + 1) for lo, hi in cover
    )
    lo, hi = -M + reach, M - reach
    covered = lo > hi or tiles.covers(lo, hi)
    span = cover.intervals[-1][1] - cover.intervals[0][0]
    overlap = Fraction(0)
    t = 1
    while t * delta < span:
        o = cover.intersection(cover.translate(t * delta)).measure()
        overlap = max(overlap, o)
        t += 1
    bound = 2 * (level_measure(sigma, n) - delta)
    return TilingCertificate(delta, M, n, covered, overlap, bound, delta)


# achievement sets -----------------------------------------------------------

class KakeyaCondition(str, enum.Enum):
    CANTOR = "CantorCondition"
    INTERVAL_UNION = "IntervalUnionCondition"
    NEITHER = "Neither"


def kakeya_check(terms, q) -> KakeyaCondition:
    """Compare each term of the multigeometric series with its tail, for almost all n.

    Sorted terms satisfy x_{n+m} = q*x_n once they drop below min(k)*q, and
    the tails scale the same way, so one period there decides both conditions.
    """
    ks = [Fraction(t) for t in terms]
    q = Fraction(q)
    if not ks or any(k <= 0 for k in ks):
        raise ValueError("terms must be positive")
    if not 0 < q < 1:
        raise ValueError("ratio must lie in (0, 1)")
    m = len(ks)
    kmin, kmax = min(ks), max(ks)
    total = sum(ks) * q / (1 - q)
    stable = kmin * q
    depth = math.ceil(math.log(kmax / kmin) / math.log(1 / q)) + 2
    while True:
        xs = sorted((k * q**j for j in range(1, depth + 1) for k in ks), reverse=True)
        floor_ = kmax * q ** (depth + 1)
        xs = [x for x in xs if x > floor_]
        start = next((i for i, x in enumerate(xs) if x < stable), None)
        if start is not None and start + m <= len(xs):
            break
        depth += 2
    head = sum(xs[:start], Fraction(0))
    le = []
    for x in xs[start:start + m]:
        head += x
        le.append(x <= total - head)
    if all(le):
        return KakeyaCondition.INTERVAL_UNION
    if not any(le):
        return KakeyaCondition.CANTOR
    return KakeyaCondition.NEITHER


class GNSType(str, enum.Enum):
    FINITE_UNION = "FiniteUnionOfIntervals"
    CANTOR_SET = "CantorSet"
    CANTORVAL = "Cantorval"
    UNKNOWN = "Unknown"


@dataclass
class GNSResult:
    kind: GNSType
    sigma: SigmaSet
    kakeya: KakeyaCondition
    route: str
    decision: DecisionReport | None = None


def gns_classify(terms, q, n_max: int = 8, k_max: int | None = None) -> GNSResult:
    """Topological type of the achievement set of the multigeometric series (terms; q)."""
    q = Fraction(q)
    sigma = SigmaSet(tuple(subset_sums(terms)), q)
    kak = kakeya_check(terms, q)
    if kak is KakeyaCondition.INTERVAL_UNION:
        return GNSResult(GNSType.FINITE_UNION, sigma, kak, "kakeya")
    if kak is KakeyaCondition.CANTOR:
        return GNSResult(GNSType.CANTOR_SET, sigma, kak, "kakeya")
    if sigma.is_critical:
        dec = decide_measure(sigma, n_max, k_max)
        kind = {
            Verdict.ZERO: GNSType.CANTOR_SET,
            Verdict.POSITIVE: GNSType.CANTORVAL,
            Verdict.UNKNOWN: GNSType.UNKNOWN,
        }[dec.verdict]
        return GNSResult(kind, sigma, kak, "measure:" + dec.fired_condition, dec)
    if q * sigma.m < 1:
        return GNSResult(GNSType.CANTOR_SET, sigma, kak, "ratio-below-critical")
    if sigma.m <= SUBSET_LIMIT and q >= containment_threshold(sigma):
        return GNSResult(GNSType.CANTORVAL, sigma, kak, "interval-threshold")
    return GNSResult(GNSType.UNKNOWN, sigma, kak, "none")
