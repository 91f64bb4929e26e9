"""Machine checks of the rank/index inequalities, single-polynomial and population-wide."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Callable, Iterator, TextIO

import numpy as np

from .carlitz import invertibility, linearity
from .cyclotomic import (
    CyclotomicMap,
    compute_index,
    cyc_eval,
    same_coset,
    wang_is_permutation,
)
from .errors import (
    CosetMismatchError,
    DegreeTooSmallError,
    NonzeroOriginError,
    NotPermutationError,
    OracleTooLargeError,
    ScanTooLargeError,
)
from .field import FieldCtx
from .moebius import (
    MoebiusMap,
    agreement_counts,
    agreement_spectrum,
    canonicalize_rows,
    enumerate_pgl2,
    max_agreement,
)
from .permpoly import PermPoly, degree_weight, is_permutation, normalize_origin
from .rank_oracle import DEFAULT_LIMIT_Q, crk_exact, lehmer_rank

Q_MINUS_R_CONDITION = "alpha != 0 or delta != 0"
FULL_SCAN_MAX_Q = 8
SAMPLED_SCAN_MAX_Q = 11


@dataclass
class TheoremReport:
    theorem: str
    field: str
    poly: list[int]
    quantities: dict = dc_field(default_factory=dict)
    bounds: dict = dc_field(default_factory=dict)
    checks: dict[str, bool | None] = dc_field(default_factory=dict)
    findings: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "field": self.field,
            "table": self.poly,
            "quantities": self.quantities,
            "bounds": self.bounds,
            "checks": self.checks,
            "findings": self.findings,
            "passed": self.passed,
        }


def _require_perm_origin(f: PermPoly) -> None:
    if not is_permutation(f):
        raise NotPermutationError("theorem checks need a permutation")
    if f.table[0] != 0:
        raise NonzeroOriginError("normalize f to f(0) = 0 first")


def _exact_or_none(f: PermPoly, limit_q: int) -> int | None:
    return crk_exact(f, limit_q) if f.q <= limit_q else None


def verify_thm1(f: PermPoly, limit_q: int = DEFAULT_LIMIT_Q) -> TheoremReport:
    """Crk(f) >= q - max{3 Ind, sqrt(3q), L, I}, plus the agreement form behind it."""
    _require_perm_origin(f)
    q = f.q
    ind, _ = compute_index(f)
    lin, inv = linearity(f), invertibility(f)
    nmax, arg = max_agreement(f)
    m = max(3 * ind, math.sqrt(3 * q), lin, inv)
    bound = q - m
    exact = _exact_or_none(f, limit_q)
    rep = TheoremReport("1", f.field.spec_string(), f.table.tolist())
    rep.quantities = {"ind": ind, "lin": lin, "inv": inv, "nmax": nmax,
                      "argmax": list(arg.as_tuple()), "crk_lb": max(0, q - nmax),
                      "crk_exact": exact}
    rep.bounds = {"max_term": m, "crk_bound": bound}
    rep.checks = {
        "agreement": nmax <= m,
        "rank": None if exact is None else exact >= bound,
    }
    if nmax == m:
        rep.findings.append(
            f"strict form N < max{{...}} fails with equality N = {nmax} ({_dominant(ind, q, lin, inv)})")
    if exact is not None and exact == bound:
        rep.findings.append(
            f"strict form Crk > q - max{{...}} fails with equality Crk = {exact} "
            f"({_dominant(ind, q, lin, inv)})")
    return rep


def _dominant(ind: int, q: int, lin: int, inv: int) -> str:
    terms = {"3*Ind": 3 * ind, "sqrt(3q)": math.sqrt(3 * q), "L": lin, "I": inv}
    top = max(terms.values())
    return "attained by " + ", ".join(k for k, v in terms.items() if v == top)


def _degenerate_mask(quads: np.ndarray) -> np.ndarray:
    """Rows with beta = gamma = 0 or alpha = delta = 0."""
    a, b, c, d = quads.T
    return ((b == 0) & (c == 0)) | ((a == 0) & (d == 0))


def verify_thm2(m: CyclotomicMap, limit_q: int = DEFAULT_LIMIT_Q) -> TheoremReport:
    """Same-coset bound Crk(f) >= q - max{3 sqrt(q), L, I} and its character-sum count."""
    if not same_coset(m):
        raise CosetMismatchError("coefficients a_i are not in one coset")
    if not wang_is_permutation(m):
        raise NotPermutationError("cyclotomic map is not a permutation")
    field = m.field
    q = field.q
    f = PermPoly.from_table(field, cyc_eval(m))
    ind, _ = compute_index(f)
    lin, inv = linearity(f), invertibility(f)
    nmax, arg = max_agreement(f)
    top = max(3 * math.sqrt(q), lin, inv)
    bound = q - top
    exact = _exact_or_none(f, limit_q)
    crk_lb = max(0, q - nmax)

    keys, agree = agreement_spectrum(f)
    quads = np.stack([keys // q**3, keys // q**2 % q, keys // q % q, keys % q], axis=1)
    nondeg = ~_degenerate_mask(quads)
    n_nd = int(agree[nondeg].max()) if nondeg.any() else 2
    count_bound = q / m.ell + 2 * math.sqrt(q)

    rep = TheoremReport("2", field.spec_string(), f.table.tolist())
    rep.quantities = {"ell": m.ell, "r": m.r, "a": list(m.a), "ind": ind, "lin": lin,
                      "inv": inv, "nmax": nmax, "argmax": list(arg.as_tuple()),
                      "nmax_nondegenerate": n_nd, "crk_lb": crk_lb, "crk_exact": exact}
    rep.bounds = {"max_term": top, "crk_bound": bound, "count_bound": count_bound}
    rep.checks = {
        "agreement": nmax <= top,
        "rank_lower": crk_lb >= bound,
        "rank": None if exact is None else exact >= bound,
        "count_estimate": n_nd < count_bound,
    }
    if lin == q:
        rep.findings.append("L = q: f is linear and the bound is attained (Crk = 0)")
    if exact is not None and exact == bound:
        rep.findings.append(f"equality Crk = {exact} = q - max{{...}}")
    return rep


def _sample_classes(field: FieldCtx, n: int, rng: np.random.Generator) -> np.ndarray:
    q = field.q
    out = []
    while sum(len(x) for x in out) < n:
        raw = rng.integers(0, q, size=(2 * n, 4))
        det = field.vsub(field.vmul(raw[:, 0], raw[:, 3]), field.vmul(raw[:, 1], raw[:, 2]))
        out.append(canonicalize_rows(field, raw[det != 0]))
    return np.concatenate(out)[:n]


def verify_rate_bounds(m: CyclotomicMap, samples: int = 10_000, seed: int = 0,
                       exhaustive_max_q: int = 9) -> TheoremReport:
    """Per-map agreement bounds (r+1) ell and (q-r) ell for a cyclotomic permutation.

    Every lift r + j(q-1)/ell in [0, q-1) is a valid exponent; the smallest lift
    gives the tightest (r+1) ell bound and the largest the tightest (q-r) ell one.
    The (q-r) ell count covers nonzero inputs; agreement at 0 is reported
    separately as a finding when it pushes the total past the bound.
    """
    if not wang_is_permutation(m):
        raise NotPermutationError("cyclotomic map is not a permutation")
    field = m.field
    q = field.q
    f = PermPoly.from_table(field, cyc_eval(m))
    lifts = list(range(m.r % m.orbit, q - 1, m.orbit)) or [m.r]
    r_lo, r_hi = min(lifts), max(lifts)
    if q <= exhaustive_max_q:
        classes = enumerate_pgl2(field)
        mode = "exhaustive"
    else:
        classes = _sample_classes(field, samples, np.random.default_rng(seed))
        mode = f"sampled({samples}, seed={seed})"
    total = agreement_counts(f, classes)
    # agreement at c = 0: f(0) = 0 = beta/delta
    at_zero = (classes[:, 1] == 0) & (classes[:, 3] != 0)
    nonzero = total - at_zero

    a, b, c, d = classes.T
    cond_lo = (b != 0) | (c != 0)
    cond_hi = (a != 0) | (d != 0)
    bound_lo = (r_lo + 1) * m.ell
    bound_hi = (q - r_hi) * m.ell
    over_lo = cond_lo & (total > bound_lo)
    over_hi = cond_hi & (nonzero > bound_hi)
    over_hi_total = cond_hi & (total > bound_hi) & ~over_hi

    rep = TheoremReport("rate", field.spec_string(), f.table.tolist())
    rep.quantities = {"ell": m.ell, "r": m.r, "lifts": lifts, "classes": int(len(classes)),
                      "mode": mode,
                      "max_agreement_r_plus_one": int(total[cond_lo].max(initial=0)),
                      "max_nonzero_agreement_q_minus_r": int(nonzero[cond_hi].max(initial=0))}
    rep.bounds = {"r_plus_one": bound_lo, "q_minus_r": bound_hi,
                  "q_minus_r_condition": Q_MINUS_R_CONDITION}
    rep.checks = {"r_plus_one": not over_lo.any(), "q_minus_r": not over_hi.any()}
    for name, mask, bnd in (("r_plus_one", over_lo, bound_lo), ("q_minus_r", over_hi, bound_hi)):
        if mask.any():
            i = int(np.flatnonzero(mask)[0])
            rep.findings.append(
                f"{name} violated by {int(mask.sum())} maps, e.g. {classes[i].tolist()} "
                f"agrees on {int(total[i])} > {bnd}")
    if over_hi_total.any():
        i = int(np.flatnonzero(over_hi_total)[0])
        rep.findings.append(
            f"q_minus_r counted over all of F_q fails for {int(over_hi_total.sum())} maps "
            f"because of the extra agreement at c = 0, e.g. {classes[i].tolist()} agrees on "
            f"{int(total[i])} > {bound_hi}")
    return rep


def is_shifted_inversion(f: PermPoly) -> bool:
    """f = a + b x^(q-2) with b != 0."""
    q = f.q
    co = f.coeffs
    return len(co) == q - 1 and co[-1] != 0 and all(c == 0 for c in co[1:-1])


def verify_deg_weight_ineqs(f: PermPoly, limit_q: int = DEFAULT_LIMIT_Q) -> TheoremReport:
    """Crk >= q - deg - 1 and, unless f = a + b x^(q-2), Crk > q/(w+2) - 1."""
    if f.q > limit_q:
        raise OracleTooLargeError(f"q = {f.q} exceeds the oracle limit {limit_q}")
    deg, w = degree_weight(f)
    if deg < 2:
        raise DegreeTooSmallError("both inequalities assume deg(f) >= 2")
    q = f.q
    crk = crk_exact(f, limit_q)
    excluded = is_shifted_inversion(f)
    b2 = q - deg - 1
    b3 = q / (w + 2) - 1
    rep = TheoremReport("ineq", f.field.spec_string(), f.table.tolist())
    rep.quantities = {"deg": deg, "w": w, "crk_exact": crk, "shifted_inversion": excluded}
    rep.bounds = {"ineq2": b2, "ineq3": b3}
    rep.checks = {"ineq2": crk >= b2, "ineq3": None if excluded else crk > b3}
    if crk == b2:
        rep.findings.append(f"ineq2 holds with equality Crk = {crk}")
    return rep


# --- population scans -------------------------------------------------------

CSV_COLUMNS = ["perm_id", "table", "deg", "w", "ind", "lin", "inv", "nmax", "crk_lb",
               "crk_exact", "thm1_pass", "ineq2_pass", "ineq3_pass"]


def measure_row(f: PermPoly, limit_q: int = DEFAULT_LIMIT_Q) -> dict:
    """One scan row: deg/w of f itself, everything else on f - f(0)."""
    q = f.q
    deg, w = degree_weight(f)
    g = normalize_origin(f)
    ind, _ = compute_index(g)
    lin, inv = linearity(g), invertibility(g)
    nmax, _ = max_agreement(g)
    exact = _exact_or_none(g, limit_q)
    top = max(3 * ind, math.sqrt(3 * q), lin, inv)
    thm1 = nmax <= top and (exact is None or exact >= q - top)
    ineq2 = ineq3 = None
    if deg >= 2 and exact is not None:
        ineq2 = exact >= q - deg - 1
        if not is_shifted_inversion(f):
            ineq3 = exact > q / (w + 2) - 1
    return {
        "perm_id": int(lehmer_rank(f.table[None, :])[0]),
        "table": " ".join(map(str, f.table.tolist())),
        "deg": deg, "w": w, "ind": ind, "lin": lin, "inv": inv, "nmax": nmax,
        "crk_lb": max(0, q - nmax), "crk_exact": exact,
        "thm1_pass": thm1, "ineq2_pass": ineq2, "ineq3_pass": ineq3,
    }


def _tables(field: FieldCtx, sample: int | None, seed: int) -> Iterator[np.ndarray]:
    q = field.q
    if sample is None:
        if q > FULL_SCAN_MAX_Q:
            raise ScanTooLargeError(
                f"full enumeration is limited to q <= {FULL_SCAN_MAX_Q}; pass a sample size")
        for perm in permutations(range(q)):
            yield np.array(perm, dtype=np.int64)
        return
    if q > SAMPLED_SCAN_MAX_Q:
        raise ScanTooLargeError(f"sampled scans are limited to q <= {SAMPLED_SCAN_MAX_Q}")
    rng = np.random.default_rng(seed)
    rows = np.array([rng.permutation(q) for _ in range(sample)], dtype=np.int64)
    rows = np.unique(rows, axis=0)  # lexicographic and deduplicated
    yield from rows


def scan_rows(field: FieldCtx, sample: int | None = None, seed: int = 0,
              limit_q: int = DEFAULT_LIMIT_Q) -> Iterator[dict]:
    for table in _tables(field, sample, seed):
        yield measure_row(PermPoly.from_table(field, table), limit_q)


@dataclass
class ScanSummary:
    rows: int = 0
    thm1_violations: int = 0
    ineq2_violations: int = 0
    ineq3_violations: int = 0
    crk_histogram: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def scan_all(field: FieldCtx, sink: Callable[[dict], None] | None = None,
             sample: int | None = None, seed: int = 0,
             limit_q: int = DEFAULT_LIMIT_Q) -> ScanSummary:
    """Stream one row per permutation to ``sink`` and tally violations."""
    summary = ScanSummary()
    for row in scan_rows(field, sample, seed, limit_q):
        summary.rows += 1
        summary.thm1_violations += row["thm1_pass"] is False
        summary.ineq2_violations += row["ineq2_pass"] is False
        summary.ineq3_violations += row["ineq3_pass"] is False
        k = row["crk_exact"]
        summary.crk_histogram[k] = summary.crk_histogram.get(k, 0) + 1
        if sink is not None:
            sink(row)
    return summary


def csv_sink(stream: TextIO) -> Callable[[dict], None]:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS)
    writer.writeheader()

    def emit(row: dict) -> None:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})

    return emit


def theorem1_equality_cases(field: FieldCtx, limit_q: int = DEFAULT_LIMIT_Q) -> list[TheoremReport]:
    """All permutations with f(0) = 0 where the strict Theorem 1 form is attained."""
    out = []
    q = field.q
    for rest in permutations(range(1, q)):
        f = PermPoly.from_table(field, np.array((0,) + rest))
        rep = verify_thm1(f, limit_q)
        if rep.findings:
            out.append(rep)
    return out
