"""Cyclotomic cosets, r-th order cyclotomic mappings and the index of a polynomial.

For a divisor ``ell`` of q-1, ``C_0`` is the subgroup of nonzero ell-th
powers and ``C_i = xi^i C_0``.  A cyclotomic mapping of index ell sends 0 to 0
and ``x in C_i`` to ``a_i * x^r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .errors import (
    InvalidInputError,
    NoCyclotomicFormError,
    NonzeroOriginError,
    OrderNotDividingError,
)
from .field import FieldCtx, divisors
from .permpoly import PermPoly


@dataclass(frozen=True)
class CosetStructure:
    field: FieldCtx
    ell: int
    coset_of: np.ndarray  # coset_of[x] = dlog(x) mod ell, -1 at x = 0

    @property
    def size(self) -> int:
        return (self.field.q - 1) // self.ell

    def coset(self, i: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.coset_of == i)]


def coset_structure(field: FieldCtx, ell: int) -> CosetStructure:
    if ell < 1 or (field.q - 1) % ell:
        raise OrderNotDividingError(f"ell = {ell} does not divide q-1 = {field.q - 1}")
    coset_of = field.log_table % ell
    coset_of = np.where(field.elements == 0, -1, coset_of)
    coset_of.setflags(write=False)
    return CosetStructure(field, ell, coset_of)


@dataclass(frozen=True)
class CyclotomicMap:
    field: FieldCtx
    ell: int
    r: int
    a: tuple[int, ...]

    def __post_init__(self):
        q = self.field.q
        if self.ell < 1 or (q - 1) % self.ell:
            raise OrderNotDividingError(f"ell = {self.ell} does not divide q-1 = {q - 1}")
        if len(self.a) != self.ell:
            raise InvalidInputError(f"need {self.ell} coefficients, got {len(self.a)}")
        if any(not 0 < c < q for c in self.a):
            raise InvalidInputError("coefficients must be nonzero field elements")
        object.__setattr__(self, "a", tuple(int(c) for c in self.a))
        object.__setattr__(self, "r", self.r % (q - 1))

    @property
    def orbit(self) -> int:
        """|C_0| = (q-1)/ell."""
        return (self.field.q - 1) // self.ell

    def to_dict(self) -> dict:
        return {"ell": self.ell, "r": self.r, "a": list(self.a)}


def cyc_eval(m: CyclotomicMap) -> np.ndarray:
    field = m.field
    x = field.elements
    coset = field.log_table % m.ell
    a = np.asarray(m.a, dtype=np.int64)[coset]
    table = field.vmul(a, field.vpow(x, m.r))
    table[0] = 0
    return table


def wang_is_permutation(m: CyclotomicMap) -> bool:
    """Permutation test via coset bookkeeping, never touching the value table.

    The map permutes F_q iff gcd(r, (q-1)/ell) = 1 and the products
    ``a_i * xi^(i r)`` fall into ell distinct cosets of C_0.
    """
    if gcd(m.r, m.orbit) != 1:
        return False
    field = m.field
    hit = {(field.dlog(ai) + i * m.r) % m.ell for i, ai in enumerate(m.a)}
    return len(hit) == m.ell


def same_coset(m: CyclotomicMap) -> bool:
    """True if every a_i lies in one cyclotomic coset of index ell."""
    field = m.field
    return len({field.dlog(ai) % m.ell for ai in m.a}) == 1


def same_coset_claim_finding(m: CyclotomicMap) -> str | None:
    """Check the shortcut 'gcd(r,(q-1)/ell)=1 and all a_i in one coset => permutation'.

    Returns a description when the hypotheses hold but the map is not a
    permutation, otherwise None.
    """
    if gcd(m.r, m.orbit) != 1 or not same_coset(m):
        return None
    if wang_is_permutation(m):
        return None
    return (
        f"q={m.field.q}, ell={m.ell}, r={m.r}, a={list(m.a)}: gcd(r,(q-1)/ell)=1 and "
        f"all a_i share a coset, yet the map is not a permutation "
        f"(gcd(r, ell) = {gcd(m.r, m.ell)} != 1)"
    )


def _ensure_origin(f: PermPoly) -> None:
    if f.table[0] != 0:
        raise NonzeroOriginError("index is defined for f(0) = 0; normalize first")


def _fits(logs: np.ndarray, ell: int, n: int) -> int | None:
    """Exponent t (mod (q-1)/ell) if f acts as a_i x^t on every coset, else None.

    ``logs[m]`` is dlog f(xi^m).
    """
    qm1 = logs.shape[0]
    orbit = qm1 // ell
    if orbit == 1:
        return 0
    diff = (logs[ell] - logs[0]) % qm1
    if diff % ell:
        return None
    t = diff // ell
    grid = logs.reshape(orbit, ell)
    j = np.arange(orbit, dtype=np.int64)[:, None]
    ok = (grid - grid[0] - ell * t * j) % qm1 == 0
    return int(t % orbit) if ok.all() else None


def compute_index(f: PermPoly) -> tuple[int, CyclotomicMap]:
    """Smallest ell | q-1 with f of the cyclotomic form, plus a witness map."""
    _ensure_origin(f)
    field = f.field
    qm1 = field.q - 1
    on_powers = f.table[field.exp_table]
    if (on_powers == 0).any():
        raise NoCyclotomicFormError("f vanishes on F_q^*; no cyclotomic form exists")
    logs = field.log_table[on_powers]
    for ell in divisors(qm1):
        t = _fits(logs, ell, qm1)
        if t is None:
            continue
        a = tuple(field.exp((int(logs[i]) - i * t) % qm1) for i in range(ell))
        return ell, CyclotomicMap(field, ell, t, a)
    raise AssertionError("ell = q-1 always fits")


def verify_index_witness(f: PermPoly, m: CyclotomicMap) -> bool:
    return f.field == m.field and np.array_equal(cyc_eval(m), f.table)


def index_of(f: PermPoly) -> int:
    """Index of f, normalizing f(0) to 0 first."""
    if f.table[0] != 0:
        f = PermPoly(f.field, f.field.vsub(f.table, int(f.table[0])))
    return compute_index(f)[0]


def make_map(field: FieldCtx, ell: int, r: int, a: Sequence[int]) -> CyclotomicMap:
    return CyclotomicMap(field, ell, r, tuple(a))
