"""JSON report documents and their independent validator.

Exact quantities are written with the scalar text syntax (``num/den`` or
``a/b+c/e*sqrt(d)``).  The only floats are fields whose name ends in
``_float`` and the ``timing_ms`` field.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .cyclotomic import IntPolynomial, cyclotomic_poly
from .decide import DecisionReport, GNSResult, Verdict, is_prime, decide_measure
from .levelsets import (
    EnumerationLimitError,
    IntervalUnion,
    level_intervals,
    stable_intervals,
)
from .numeric import format_exact, parse_exact
from .sigma import (
    SUBSET_LIMIT,
    SigmaSet,
    common_divisor,
    containment_threshold,
)

__all__ = [
    "SCHEMA_VERSION",
    "ReportError",
    "dumps",
    "exact_list",
    "intervals_doc",
    "decision_doc",
    "gns_doc",
    "decide_document",
    "verify_document",
]

SCHEMA_VERSION = "1"
# levels of interval lists attached to a decide report are capped by this many candidates
INTERVAL_LIMIT = 1 << 20


class ReportError(ValueError):
    """A report document is malformed."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def exact_list(values) -> list[str]:
    return [format_exact(v) for v in values]


def intervals_doc(union: IntervalUnion) -> list[list[str]]:
    return [[format_exact(lo), format_exact(hi)] for lo, hi in union]


def _poly_doc(p: IntPolynomial) -> list[list[int]]:
    return [[i, c] for i, c in enumerate(p.coeffs) if c]


def _certificates_doc(rep: DecisionReport) -> dict:
    c = rep.certificates
    doc: dict = {
        "delta": None if c.delta is None else format_exact(c.delta),
        "residues": None,
        "collision": None,
        "free_through": c.free_through,
        "vanishing_table": None,
        "dimension_bound": None,
        "threshold": None if c.threshold is None else format_exact(c.threshold),
        "measure_bounds": [
            {"level": n, "measure": format_exact(v)} for n, v in c.measure_bounds
        ],
        "stable_level": c.stable_level,
    }
    if c.residues is not None:
        doc["residues"] = {
            "modulus": c.residues.modulus,
            "residues": list(c.residues.residues),
            "complete": c.residues.complete,
        }
    if c.collision is not None:
        doc["collision"] = {
            "level": c.collision.level,
            "value": format_exact(c.collision.value),
            "witness": [exact_list(w) for w in c.collision.witness],
        }
    if c.vanishing_table is not None:
        t = c.vanishing_table
        rows = {}
        for n, k in t.table.items():
            row = {"k": k, "k_limit": t.k_limits[n]}
            if k is not None:
                cert = t.certificate(n)
                row["order"] = cert.order
                row["quotient"] = _poly_doc(cert.quotient)
            rows[str(n)] = row
        doc["vanishing_table"] = {"complete": t.complete, "rows": rows}
    if c.dimension_bound is not None:
        b = c.dimension_bound
        doc["dimension_bound"] = {
            "count": b.count,
            "level": b.level,
            "m": b.m,
            "below_one": b.below_one,
            "value_float": round(b.value, 12),
        }
    return doc


def decision_doc(rep: DecisionReport) -> dict:
    """Verdict, certificates and the measure of E for one decision."""
    norm = rep.certificates.normalization
    return {
        "sigma": None if rep.sigma is None else exact_list(rep.sigma.digits),
        "verdict": rep.verdict.value,
        "fired_condition": rep.fired_condition,
        "bounded_evidence": rep.bounded_evidence,
        "normalization": None if norm is None else {
            "sigma_star": list(norm.sigma_star),
            "shift": format_exact(norm.shift),
            "delta": format_exact(norm.scale),
        },
        "lambda_E": {
            "value": None if rep.lambda_e is None else format_exact(rep.lambda_e),
            "exact": rep.lambda_exact,
            "level": rep.lambda_level,
        },
        "certificates": _certificates_doc(rep),
    }


def gns_doc(res: GNSResult) -> dict:
    return {
        "sigma": exact_list(res.sigma.digits),
        "q": format_exact(res.sigma.ratio),
        "classification": res.kind.value,
        "kakeya": res.kakeya.value,
        "route": res.route,
        "decision": None if res.decision is None else decision_doc(res.decision),
    }


def decide_document(sigma: SigmaSet, n_max: int, k_max: int | None, levels) -> dict:
    """Everything ``decide`` prints, minus the timing field."""
    rep = decide_measure(sigma, n_max, k_max)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "decide",
        "input": {
            "sigma": exact_list(sigma.digits),
            "nmax": n_max,
            "kmax": k_max,
            "levels": sorted(set(levels)),
        },
        **decision_doc(rep),
        "intervals": {},
    }
    if rep.verdict is not Verdict.ZERO or rep.fired_condition != "no-common-divisor":
        for n in doc["input"]["levels"]:
            try:
                doc["intervals"][str(n)] = intervals_doc(level_intervals(sigma, n, INTERVAL_LIMIT))
            except EnumerationLimitError:
                doc["intervals"][str(n)] = None
    return doc


# validation -------------------------------------------------------------------

def _sigma_from(doc: dict) -> SigmaSet:
    try:
        return SigmaSet(tuple(parse_exact(s) for s in doc["input"]["sigma"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"bad input echo: {exc}") from exc


def _check_collision(sigma: SigmaSet, col: dict) -> list[str]:
    n = col["level"]
    q = sigma.ratio
    a, b = (tuple(parse_exact(s) for s in w) for w in col["witness"])
    if len(a) != n or len(b) != n:
        return ["collision witness length differs from its level"]
    if a == b:
        return ["collision witness strings are identical"]
    digits = set(sigma.digits)
    if not set(a) <= digits or not set(b) <= digits:
        return ["collision witness uses a non-digit"]
    sa = sum((d * q ** (i + 1) for i, d in enumerate(a)), Fraction(0))
    sb = sum((d * q ** (i + 1) for i, d in enumerate(b)), Fraction(0))
    if sa != sb:
        return ["collision witness strings have different sums"]
    if format_exact(sa) != col["value"]:
        return ["collision value does not match the witness sum"]
    return []


def _check_vanishing(norm: dict, m: int, table: dict) -> list[str]:
    problems = []
    star = norm["sigma_star"]
    for key, row in table["rows"].items():
        n, k = int(key), row["k"]
        if k is None:
            if table["complete"]:
                problems.append(f"table marked complete but n={n} has no level")
            continue
        order = m**k
        if row["order"] != order:
            problems.append(f"n={n}: order {row['order']} is not {m}**{k}")
            continue
        target = IntPolynomial.from_exponents((n * s) % order for s in star)
        coeffs = [0] * (max((i for i, _ in row["quotient"]), default=-1) + 1)
        for i, c in row["quotient"]:
            coeffs[i] = c
        if IntPolynomial(tuple(coeffs)) * cyclotomic_poly(order) != target:
            problems.append(f"n={n}: quotient times the cyclotomic polynomial misses the digit sum")
    return problems


def _check_route(sigma: SigmaSet, doc: dict) -> list[str]:
    """Re-derive the fired certificate from the digits alone."""
    route = doc["fired_condition"]
    cert = doc["certificates"]
    norm = doc["normalization"]
    m = sigma.m
    if route == "no-common-divisor":
        return [] if common_divisor(sigma) is None else ["the digits do have a common divisor"]
    if norm is None:
        return ["normalization missing"]
    shift, delta = parse_exact(norm["shift"]), parse_exact(norm["delta"])
    rebuilt = sorted(shift + delta * s for s in norm["sigma_star"])
    if rebuilt != list(sigma.digits) or min(norm["sigma_star"]) != 0:
        return ["normalization does not reproduce the digits"]
    residues = sorted(s % m for s in norm["sigma_star"])
    complete = residues == list(range(m))
    if route == "residue-complete":
        return [] if complete else ["normalised digits miss a residue"]
    if route == "prime-corollary":
        if not is_prime(m):
            return [f"|sigma| = {m} is not prime"]
        return [] if not complete else ["normalised digits are residue-complete"]
    if route == "collision":
        if cert["collision"] is None:
            return ["collision certificate missing"]
        return _check_collision(sigma, cert["collision"])
    if route == "interval-threshold":
        if m > SUBSET_LIMIT:
            return ["too many digits for the threshold route"]
        t = containment_threshold(sigma)
        if format_exact(t) != cert["threshold"] or sigma.ratio < t:
            return ["ratio is below the containment threshold"]
        return []
    if route == "condition-ix (bounded)":
        if cert["vanishing_table"] is None or not cert["vanishing_table"]["complete"]:
            return ["vanishing-sum table missing or incomplete"]
        return _check_vanishing(norm, m, cert["vanishing_table"])
    if route == "none":
        return [] if doc["verdict"] == Verdict.UNKNOWN.value else ["route 'none' must be Unknown"]
    return [f"unknown route {route!r}"]


def _check_intervals(sigma: SigmaSet, doc: dict) -> list[str]:
    problems = []
    lam = doc["lambda_E"]
    if lam["exact"] and doc["certificates"]["stable_level"] is not None:
        stable = stable_intervals(sigma, doc["certificates"]["stable_level"] + 1)
        if stable is None or format_exact(stable[1].measure()) != lam["value"]:
            problems.append("stable cover does not reproduce the measure")
    return problems


def verify_document(doc: dict) -> list[str]:
    """Problems found in a report document; an empty list means it is accepted.

    A decide report is checked twice: its fired certificate is re-derived
    from the digits, and the whole document is recomputed and compared.
    """
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ReportError("not a schema-version-1 report")
    cmd = doc.get("command")
    if cmd != "decide":
        raise ReportError(f"cannot verify {cmd!r} documents")
    sigma = _sigma_from(doc)
    inp = doc["input"]
    problems = _check_route(sigma, doc)
    problems += _check_intervals(sigma, doc)
    fresh = decide_document(sigma, inp["nmax"], inp["kmax"], inp["levels"])
    stale = {k: v for k, v in doc.items() if k != "timing_ms"}
    if fresh != stale:
        diff = sorted(k for k in set(fresh) | set(stale) if fresh.get(k) != stale.get(k))
        problems.append("recomputed report differs in: " + ", ".join(diff))
    return problems
