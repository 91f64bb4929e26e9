"""Carlitz chains, linearity/invertibility and Carlitz-rank bounds.

A chain ``(c_0, c_1, ..., c_{n+1})`` denotes the permutation obtained from
``y = c_0 x + c_1`` by ``n`` steps ``y <- y^(q-2) + c_k``.  With ``n = 0`` it is
the affine map ``c_0 x + c_1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateChainError,
    InvalidChainError,
    NonzeroOriginError,
    NotPermutationError,
)
from .field import FieldCtx
from .moebius import MoebiusMap, determinant, max_agreement, moebius_canonical
from .permpoly import PermPoly, is_permutation


@dataclass(frozen=True)
class CarlitzChain:
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) < 2:
            raise InvalidChainError("a chain needs at least c_0 and c_1")
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def n(self) -> int:
        return len(self.c) - 2

    def validate(self, field: FieldCtx) -> None:
        if any(not 0 <= x < field.q for x in self.c):
            raise InvalidChainError("chain entries must be element codes")
        if self.c[0] == 0:
            raise InvalidChainError("c_0 must be nonzero")
        for i in range(2, self.n + 1):
            if self.c[i] == 0:
                raise InvalidChainError(f"c_{i} must be nonzero")


def _chain_trace(ch: CarlitzChain, field: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    ch.validate(field)
    x = field.elements
    y = field.vadd(field.vmul(ch.c[0], x), ch.c[1])
    poles = np.zeros(field.q, dtype=bool)
    for ck in ch.c[2:]:
        poles |= y == 0
        y = field.vadd(field.vinv(y), ck)
    return y, poles


def chain_eval(ch: CarlitzChain, field: FieldCtx) -> np.ndarray:
    return _chain_trace(ch, field)[0]


def chain_to_moebius(ch: CarlitzChain, field: FieldCtx) -> tuple[MoebiusMap, frozenset[int]]:
    """The fractional linear map the chain follows, and the inputs where it does not.

    Poles are the inputs at which some inversion step receives 0; there are at
    most n of them.
    """
    _, poles = _chain_trace(ch, field)
    mul, add = field.mul, field.add
    # 2x2 matrix [[a, b], [c, d]] accumulated in application order
    a, b, c, d = ch.c[0], ch.c[1], 0, 1
    for ck in ch.c[2:]:
        a, b, c, d = c, d, a, b                    # inversion [[0,1],[1,0]]
        a, b = add(a, mul(ck, c)), add(b, mul(ck, d))  # translation [[1,ck],[0,1]]
    if determinant(field, a, b, c, d) == 0:
        raise DegenerateChainError("chain collapses to a constant map")
    return moebius_canonical(field, (a, b, c, d)), frozenset(int(i) for i in np.flatnonzero(poles))


def linearity(f: PermPoly) -> int:
    """max over a != 0 of #{c : f(c) = a c}."""
    if f.table[0] != 0:
        raise NonzeroOriginError("linearity is defined for f(0) = 0")
    field = f.field
    x = field.elements[1:]
    fx = f.table[1:]
    nz = fx != 0
    if not nz.any():
        return 1
    ratios = field.vdiv(fx[nz], x[nz])
    return 1 + int(np.bincount(ratios, minlength=field.q).max())


def invertibility(f: PermPoly) -> int:
    """max over c != 0 of #{x != 0 : f(x) = c / x}."""
    field = f.field
    x = field.elements[1:]
    fx = f.table[1:]
    nz = fx != 0
    if not nz.any():
        return 0
    prods = field.vmul(fx[nz], x[nz])
    return int(np.bincount(prods, minlength=field.q).max())


def crk_lower_bound(f: PermPoly) -> int:
    """q minus the best Moebius agreement; Crk(f) is at least this."""
    if not is_permutation(f):
        raise NotPermutationError("Carlitz rank is defined for permutations")
    n_max, _ = max_agreement(f)
    return max(0, f.q - n_max)


@dataclass(frozen=True)
class RankResult:
    lower_bound: int
    agreement: int
    argmax: MoebiusMap
    exact: int | None = None

    def to_dict(self) -> dict:
        return {
            "crk_lb": self.lower_bound,
            "nmax": self.agreement,
            "argmax": list(self.argmax.as_tuple()),
            "crk_exact": self.exact,
        }


def carlitz_rank(f: PermPoly, exact: bool = True, limit_q: int | None = None) -> RankResult:
    """Lower bound from Moebius agreement, plus the exact rank when q is small enough."""
    from .rank_oracle import DEFAULT_LIMIT_Q, crk_exact

    if not is_permutation(f):
        raise NotPermutationError("Carlitz rank is defined for permutations")
    limit = DEFAULT_LIMIT_Q if limit_q is None else limit_q
    n_max, arg = max_agreement(f)
    value = None
    if exact and f.q <= limit:
        value = crk_exact(f, limit)
    return RankResult(max(0, f.q - n_max), n_max, arg, value)


def low_rank_witness(f: PermPoly) -> CarlitzChain | None:
    """A chain with at most one inversion equal to f, or None if none exists."""
    field = f.field
    t = f.table
    q = field.q
    if q >= 2:
        c0 = field.sub(int(t[1]), int(t[0]))
        if c0:
            ch = CarlitzChain((c0, int(t[0])))
            if np.array_equal(chain_eval(ch, field), t):
                return ch
    # (c_0 x + c_1)^(q-2) + c_2: c_2 is forced by the unique preimage of c_2.
    for c0 in range(1, q):
        for c1 in range(q):
            y = field.vinv(field.vadd(field.vmul(c0, field.elements), c1))
            c2 = field.sub(int(t[0]), int(y[0]))
            if np.array_equal(field.vadd(y, c2), t):
                return CarlitzChain((c0, c1, c2))
    return None


def random_chain(field: FieldCtx, n: int, rng: np.random.Generator) -> CarlitzChain:
    q = field.q
    c = [int(rng.integers(1, q)), int(rng.integers(0, q))]
    c += [int(rng.integers(1, q)) for _ in range(max(0, n - 1))]
    if n >= 1:
        c.append(int(rng.integers(0, q)))
    return CarlitzChain(tuple(c))
