"""Multiplicative characters of F_q and the mixed character sums of the same-coset bound."""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import OrderNotDividingError, SingularMoebiusError, WeilBoundViolation
from .field import FieldCtx
from .moebius import determinant

WEIL_TOL = 1e-6


@dataclass(frozen=True)
class CharSpec:
    """chi(xi^k) = exp(2 pi i k / ell), chi(0) = 0; ``power`` raises the summand."""

    field: FieldCtx
    ell: int
    power: int = 1

    def __post_init__(self):
        if self.ell < 1 or (self.field.q - 1) % self.ell:
            raise OrderNotDividingError(
                f"character order {self.ell} does not divide q-1 = {self.field.q - 1}")

    @property
    def effective_order(self) -> int:
        """Order of chi^power."""
        return self.ell // gcd(self.ell, self.power % self.ell or self.ell)


def char_eval(spec: CharSpec, x: int) -> complex:
    if x == 0:
        return 0j
    k = spec.field.dlog(x) * spec.power % spec.ell
    return cmath.exp(2j * math.pi * k / spec.ell)


def char_table(spec: CharSpec) -> np.ndarray:
    field = spec.field
    k = (field.log_table * spec.power) % spec.ell
    vals = np.exp(2j * np.pi * k / spec.ell)
    vals[0] = 0
    return vals


def root_multiplicities(field: FieldCtx, alpha: int, beta: int, gamma: int,
                        delta: int, r: int) -> dict[int, int]:
    """Zero/pole orders of (alpha x + beta) / ((gamma x + delta) x^r) at finite points."""
    mult: dict[int, int] = defaultdict(int)
    if alpha:
        mult[field.neg(field.div(beta, alpha))] += 1
    if gamma:
        mult[field.neg(field.div(delta, gamma))] -= 1
    mult[0] -= r
    return {x: m for x, m in mult.items() if m}


def is_trivial_composition(spec: CharSpec, alpha: int, beta: int, gamma: int,
                           delta: int, r: int) -> bool:
    """True when chi^power of the rational function is constant on its domain.

    That happens exactly when every zero/pole order is divisible by the order
    of chi^power; otherwise the Weil bound applies.
    """
    d = spec.effective_order
    mult = root_multiplicities(spec.field, alpha, beta, gamma, delta, r)
    return all(m % d == 0 for m in mult.values())


def weil_sum(spec: CharSpec, alpha: int, beta: int, gamma: int, delta: int, r: int,
             check: bool = True) -> complex:
    """sum_c (chi(alpha c + beta) conj chi(gamma c + delta) conj chi(c^r))^power.

    With ``check`` set, raises WeilBoundViolation if the composition is
    non-trivial and |S| exceeds 2 sqrt(q) (+1e-6).
    """
    field = spec.field
    if determinant(field, alpha, beta, gamma, delta) == 0:
        raise SingularMoebiusError("alpha*delta = beta*gamma")
    x = field.elements
    num = field.vadd(field.vmul(alpha, x), beta)
    den = field.vadd(field.vmul(gamma, x), delta)
    xr = field.vpow(x, r)
    live = (num != 0) & (den != 0) & (xr != 0)
    n = field.q - 1
    k = (field.log_table[num] - field.log_table[den] - field.log_table[xr]) % n
    k = (k[live] * spec.power) % spec.ell
    total = complex(np.exp(2j * np.pi * k / spec.ell).sum())
    if check and not is_trivial_composition(spec, alpha, beta, gamma, delta, r):
        bound = 2 * math.sqrt(field.q) + WEIL_TOL
        if abs(total) > bound:
            raise WeilBoundViolation(f"|S| = {abs(total):.6f} > {bound:.6f}")
    return total
