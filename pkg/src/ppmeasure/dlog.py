"""The discrete-logarithm permutation f(xi^i) = i + 1, f(0) = 0 of a prime field."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .carlitz import invertibility, linearity
from .cyclotomic import compute_index
from .errors import InvalidInputError, NotPrimeFieldError
from .field import FieldCtx, prime_factors
from .moebius import max_agreement
from .permpoly import PermPoly, degree_weight, is_permutation
from .rank_oracle import DEFAULT_LIMIT_Q, crk_exact


def _check(field: FieldCtx, xi: int | None) -> int:
    if field.k != 1 or field.p == 2:
        raise NotPrimeFieldError("the discrete-log permutation needs an odd prime field")
    if xi is None:
        return field.xi
    p = field.p
    if not 0 < xi < p or any(pow(xi, (p - 1) // r, p) == 1 for r in prime_factors(p - 1)):
        raise InvalidInputError(f"{xi} is not a primitive element of F_{p}")
    return xi


@dataclass(frozen=True)
class DlogPerm:
    field: FieldCtx
    xi: int
    poly: PermPoly


def build_dlog_table(field: FieldCtx, xi: int | None = None) -> DlogPerm:
    xi = _check(field, xi)
    p = field.p
    table = np.zeros(p, dtype=np.int64)
    x = 1
    for i in range(p - 1):
        table[x] = (i + 1) % p
        x = x * xi % p
    return DlogPerm(field, xi, PermPoly.from_table(field, table))


def dlog_coeffs(field: FieldCtx, xi: int | None = None) -> PermPoly:
    """Closed form: the coefficient of c^i is (xi^-i - 1)^-1 for 1 <= i <= p-2."""
    xi = _check(field, xi)
    p = field.p
    coeffs = [0] + [pow((pow(xi, -i, p) - 1) % p, -1, p) for i in range(1, p - 1)]
    return PermPoly.from_coeffs(field, coeffs)


@dataclass
class Thm3Report:
    prime: int
    xi: int
    deg: int
    w: int
    ind: int
    lin: int
    lin_bound: float
    inv: int
    inv_bound: float
    nmax: int
    nmax_bound: float
    crk_lb: int
    crk_bound: float
    crk_exact: int | None
    checks: dict[str, bool | None] = dc_field(default_factory=dict)
    findings: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items()}
        d["passed"] = self.passed
        return d


def verify_thm3(field: FieldCtx, xi: int | None = None,
                limit_q: int = DEFAULT_LIMIT_Q) -> Thm3Report:
    """Measure the discrete-log permutation against its stated degree/index/rank bounds.

    A check is ``None`` when it does not apply (index for p = 3, exact rank
    above the oracle limit).
    """
    perm = build_dlog_table(field, xi)
    f = perm.poly
    p = field.p
    assert is_permutation(f)
    deg, w = degree_weight(f)
    ind, _ = compute_index(f)
    lin, inv = linearity(f), invertibility(f)
    nmax, _ = max_agreement(f)
    root = math.sqrt(p - 2)
    lin_bound = math.sqrt(2 * (p - 2)) + 1
    inv_bound = 2 * root + 1
    nmax_bound = 2 * root + 1
    crk_bound = p - 2 * root - 1
    crk_lb = max(0, p - nmax)
    exact = crk_exact(f, limit_q) if p <= limit_q else None

    checks: dict[str, bool | None] = {
        "deg": deg == p - 2,
        "w": w == p - 2,
        "ind": ind == p - 1 if p > 3 else None,
        "lin": lin < lin_bound,
        "inv": inv < inv_bound,
        "nmax": nmax <= nmax_bound,
        "crk_lb": crk_lb > crk_bound,
        "crk_exact": exact > crk_bound if exact is not None else None,
    }
    report = Thm3Report(p, perm.xi, deg, w, ind, lin, lin_bound, inv, inv_bound,
                        nmax, nmax_bound, crk_lb, crk_bound, exact, checks)
    for name, ok in checks.items():
        if ok is False:
            report.findings.append(f"p={p}: check '{name}' fails")
    return report
