"""Exact decisions on the Lebesgue measure of self-similar digit sets."""
from .numeric import (
    DegenerateSetError,
    MixedRadicalError,
    QuadraticReal,
    as_exact,
    exact_sign,
    format_exact,
    parse_exact,
    to_mpf,
)
from .sigma import (
    SigmaSet,
    common_divisor,
    containment_threshold,
    interval_threshold,
    normalize,
    parse_sigma,
    residue_profile,
    subset_sums,
)
from .cyclotomic import vanishing_search, cyclotomic_poly, vanishing_sum
from .levelsets import (
    EnumerationLimitError,
    IntervalUnion,
    first_collision,
    fourier_partial,
    hausdorff_upper,
    level_intervals,
    level_measure,
    level_set,
    pushforward_histogram,
    scan_freeness,
    stable_intervals,
)
from .decide import (
    GNSType,
    KakeyaCondition,
    Verdict,
    gns_classify,
    kakeya_check,
    prime_decide,
    decide_measure,
    tiling_certificate,
)
from .frontends import (
    FOUR_MAP,
    GASKET,
    Multigeometric,
    PlanarIFS,
    counterexample_search,
    ifs_decide,
    ifs_project,
    ifs_sweep,
    nitecki_classify,
    reduce_multigeometric,
    stern_brocot,
)

__version__ = "0.1.0"
