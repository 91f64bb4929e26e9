"""Fractional linear maps x -> (alpha x + beta)/(gamma x + delta) over F_q.

A map is stored in canonical projective form: the first nonzero entry of
(alpha, beta, gamma, delta) is scaled to 1.  Agreement with a value table is
only counted at inputs where gamma x + delta != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import NotPermutationError, SingularMoebiusError
from .field import FieldCtx
from .permpoly import PermPoly, is_permutation


@dataclass(frozen=True, order=True)
class MoebiusMap:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def key(self, q: int) -> int:
        a, b, c, d = self.as_tuple()
        return ((a * q + b) * q + c) * q + d

    @classmethod
    def from_key(cls, key: int, q: int) -> "MoebiusMap":
        d = key % q
        key //= q
        c = key % q
        key //= q
        return cls(key // q, key % q, c, d)

    def to_dict(self) -> dict:
        return dict(zip(("alpha", "beta", "gamma", "delta"), self.as_tuple()))


def determinant(field: FieldCtx, a: int, b: int, c: int, d: int) -> int:
    return field.sub(field.mul(a, d), field.mul(b, c))


def moebius_canonical(field: FieldCtx, quad) -> MoebiusMap:
    a, b, c, d = (int(x) for x in quad)
    if determinant(field, a, b, c, d) == 0:
        raise SingularMoebiusError(f"alpha*delta = beta*gamma for {(a, b, c, d)}")
    lead = next(x for x in (a, b, c, d) if x)
    s = field.inv(lead)
    return MoebiusMap(*(field.mul(x, s) for x in (a, b, c, d)))


def canonicalize_rows(field: FieldCtx, quads: np.ndarray) -> np.ndarray:
    """Vectorised canonical form for an (N, 4) array of nonsingular quadruples."""
    nz = quads != 0
    first = np.argmax(nz, axis=1)
    lead = quads[np.arange(quads.shape[0]), first]
    return field.vmul(quads, field.vinv(lead)[:, None])


def encode_rows(quads: np.ndarray, q: int) -> np.ndarray:
    return ((quads[:, 0] * q + quads[:, 1]) * q + quads[:, 2]) * q + quads[:, 3]


def moebius_values(field: FieldCtx, m: MoebiusMap, points=None) -> tuple[np.ndarray, np.ndarray]:
    """(values, defined) over ``points`` (default: all of F_q)."""
    x = field.elements if points is None else np.asarray(points, dtype=np.int64)
    num = field.vadd(field.vmul(m.alpha, x), m.beta)
    den = field.vadd(field.vmul(m.gamma, x), m.delta)
    return field.vdiv(num, den), den != 0


def agreement_count(f: PermPoly, m: MoebiusMap) -> int:
    vals, ok = moebius_values(f.field, m)
    return int(np.count_nonzero(ok & (vals == f.table)))


def enumerate_pgl2(field: FieldCtx) -> np.ndarray:
    """All q^3 - q canonical quadruples, as an (N, 4) array in lexicographic order."""
    q = field.q
    e = field.elements
    b, c, d = (g.ravel() for g in np.meshgrid(e, e, e, indexing="ij"))
    ones = np.ones_like(b)
    det = field.vsub(d, field.vmul(b, c))
    lead_one = np.stack([ones, b, c, d], axis=1)[det != 0]
    c2, d2 = (g.ravel() for g in np.meshgrid(e[1:], e, indexing="ij"))
    lead_zero = np.stack([np.zeros_like(c2), np.ones_like(c2), c2, d2], axis=1)
    out = np.concatenate([lead_zero, lead_one])
    assert out.shape[0] == q**3 - q
    return out


def agreement_counts(f: PermPoly, quads: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Agreement of f with every row of ``quads`` (brute force, O(N q))."""
    field = f.field
    x = field.elements[None, :]
    out = np.empty(quads.shape[0], dtype=np.int64)
    for s in range(0, quads.shape[0], chunk):
        qd = quads[s:s + chunk]
        num = field.vadd(field.vmul(qd[:, 0:1], x), qd[:, 1:2])
        den = field.vadd(field.vmul(qd[:, 2:3], x), qd[:, 3:4])
        hit = (den != 0) & (field.vdiv(num, den) == f.table[None, :])
        out[s:s + chunk] = hit.sum(axis=1)
    return out


def _cross_ratio_matrices(field: FieldCtx, c1, c2, c3):
    # Rows [[c3-c2, -c1(c3-c2)], [c3-c1, -c2(c3-c1)]] send c1->0, c2->inf, c3->1.
    u = field.vsub(c3, c2)
    v = field.vsub(c3, c1)
    return (u, field.vneg(field.vmul(c1, u)), v, field.vneg(field.vmul(c2, v)))


def triple_maps(field: FieldCtx, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Canonical quadruples of the unique maps sending xs[:, i] -> ys[:, i], i = 0..2."""
    a11, a12, a21, a22 = _cross_ratio_matrices(field, xs[:, 0], xs[:, 1], xs[:, 2])
    b11, b12, b21, b22 = _cross_ratio_matrices(field, ys[:, 0], ys[:, 1], ys[:, 2])
    # adj(B) @ A, with adj(B) = [[b22, -b12], [-b21, b11]]
    mul, sub = field.vmul, field.vsub
    alpha = sub(mul(b22, a11), mul(b12, a21))
    beta = sub(mul(b22, a12), mul(b12, a22))
    gamma = sub(mul(b11, a21), mul(b21, a11))
    delta = sub(mul(b11, a22), mul(b21, a12))
    return canonicalize_rows(field, np.stack([alpha, beta, gamma, delta], axis=1))


def _triples(q: int) -> np.ndarray:
    return np.array(list(combinations(range(q), 3)), dtype=np.int64).reshape(-1, 3)


_TRIPLE_CACHE: dict[int, np.ndarray] = {}


def agreement_spectrum(f: PermPoly) -> tuple[np.ndarray, np.ndarray]:
    """Every Moebius map agreeing with f on >= 3 points, with its agreement.

    Each triple of inputs determines one map; a map agreeing on A points is
    produced by exactly C(A, 3) triples.  Returns (keys, agreements) with the
    keys sorted ascending (lexicographic in alpha, beta, gamma, delta).
    """
    if not is_permutation(f):
        raise NotPermutationError("agreement spectrum needs distinct values")
    field, q = f.field, f.field.q
    idx = _TRIPLE_CACHE.get(q)
    if idx is None:
        idx = _TRIPLE_CACHE.setdefault(q, _triples(q))
    if idx.shape[0] == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    quads = triple_maps(field, idx, f.table[idx])
    keys, hits = np.unique(encode_rows(quads, q), return_counts=True)
    inverse = {comb(a, 3): a for a in range(3, q + 1)}
    agree = np.array([inverse[int(h)] for h in hits], dtype=np.int64) if hits.size else hits
    return keys, agree


def max_agreement(f: PermPoly) -> tuple[int, MoebiusMap]:
    """Largest number of points on which f agrees with one Moebius map.

    Ties go to the lexicographically smallest canonical quadruple.
    """
    field, q = f.field, f.field.q
    keys, agree = agreement_spectrum(f)
    if keys.size:
        best = int(agree.max())
        key = int(keys[np.flatnonzero(agree == best)[0]])
        return best, MoebiusMap.from_key(key, q)
    # q <= 2: every permutation is affine; take the line through the two points.
    if not is_permutation(f):
        raise NotPermutationError("max_agreement needs a permutation")
    if q == 1:
        return 1, MoebiusMap(1, 0, 0, 1)
    slope = field.div(field.sub(int(f.table[1]), int(f.table[0])), 1)
    return q, moebius_canonical(field, (slope, int(f.table[0]), 0, 1))
