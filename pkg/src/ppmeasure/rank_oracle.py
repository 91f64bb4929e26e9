"""Exact Carlitz rank for small q by breadth-first search over permutations.

Affine maps cost nothing and each x^(q-2) costs one, so the rank of f is its
distance from the affine group in the graph whose moves are
``g -> L o x^(q-2) o g``.  Two reductions keep the search small:

* States are left cosets ``AGL(1,q) o g``.  AGL(1,q) is sharply 2-transitive,
  so every coset has exactly one member with g(0) = 0 and g(1) = 1; that member
  is also the lexicographically smallest table in the coset.  There are
  (q-2)! such states, ranked by the Lehmer code of g(2..q-1).
* Since (a y)^(q-2) = a^(q-2) y^(q-2), the coset of ``x^(q-2) o (a x + b) o g``
  only depends on b/a, so each state has q successors (one per translation).

For q = 11 that is 9! = 362880 states and ~4e6 successor evaluations.
"""

from __future__ import annotations

from math import factorial
from weakref import WeakKeyDictionary

import numpy as np

from .errors import NotPermutationError, OracleTooLargeError
from .field import FieldCtx
from .permpoly import PermPoly, is_permutation

DEFAULT_LIMIT_Q = 11
UNSEEN = -1


def lehmer_rank(perms: np.ndarray) -> np.ndarray:
    """Rank rows of an (N, m) array of permutations of 0..m-1 in lexicographic order."""
    perms = np.atleast_2d(np.asarray(perms, dtype=np.int64))
    m = perms.shape[1]
    rank = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(m - 1):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        rank += smaller * factorial(m - 1 - i)
    return rank


def lehmer_unrank(ranks, m: int) -> np.ndarray:
    ranks = np.atleast_1d(np.asarray(ranks, dtype=np.int64)).copy()
    digits = np.empty((ranks.shape[0], m), dtype=np.int64)
    for i in range(m):
        f = factorial(m - 1 - i)
        digits[:, i] = ranks // f
        ranks %= f
    # digit i counts smaller entries to the right; decode right to left
    out = digits.copy()
    for i in range(m - 2, -1, -1):
        right = out[:, i + 1:]
        right += right >= out[:, i:i + 1]
    return out


def canonical_tables(field: FieldCtx, tables: np.ndarray) -> np.ndarray:
    """Left-compose each row with the affine map sending (g(0), g(1)) to (0, 1)."""
    g0 = tables[:, :1]
    scale = field.vinv(field.vsub(tables[:, 1:2], g0))
    return field.vmul(field.vsub(tables, g0), scale)


def state_ranks(tables: np.ndarray) -> np.ndarray:
    """Ranks of canonical tables (g(0) = 0, g(1) = 1)."""
    return lehmer_rank(tables[:, 2:] - 2)


def state_count(q: int) -> int:
    """Number of BFS states, q!/(q(q-1))."""
    return factorial(max(q - 2, 0))


_DISTANCES: "WeakKeyDictionary[FieldCtx, np.ndarray]" = WeakKeyDictionary()


def _check_limit(field: FieldCtx, limit_q: int) -> None:
    if field.q > limit_q:
        raise OracleTooLargeError(
            f"q = {field.q} exceeds the oracle limit {limit_q} "
            f"({state_count(field.q)} states would be needed)")


def coset_distances(field: FieldCtx, limit_q: int = DEFAULT_LIMIT_Q) -> np.ndarray:
    """Carlitz rank of every left AGL coset, indexed by state rank (cached per field)."""
    _check_limit(field, limit_q)
    dist = _DISTANCES.get(field)
    if dist is not None:
        return dist
    q = field.q
    dist = np.full(state_count(q), UNSEEN, dtype=np.int8)
    frontier = field.elements[None, :].copy()
    dist[state_ranks(frontier)] = 0
    level = 0
    while frontier.shape[0]:
        level += 1
        found_ranks, found_rows = [], []
        for b in range(q):
            nxt = canonical_tables(field, field.vinv(field.vadd(frontier, b)))
            ranks = state_ranks(nxt)
            fresh = dist[ranks] == UNSEEN
            if not fresh.any():
                continue
            ranks, first = np.unique(ranks[fresh], return_index=True)
            dist[ranks] = level
            found_ranks.append(ranks)
            found_rows.append(nxt[fresh][first])
        frontier = np.concatenate(found_rows) if found_rows else frontier[:0]
    assert (dist != UNSEEN).all(), "every permutation is a Carlitz chain"
    dist.setflags(write=False)
    _DISTANCES[field] = dist
    return dist


def crk_exact(f: PermPoly, limit_q: int = DEFAULT_LIMIT_Q) -> int:
    """Minimum number of x^(q-2) steps in any decomposition of f into affine maps."""
    if not is_permutation(f):
        raise NotPermutationError("Carlitz rank is defined for permutations")
    dist = coset_distances(f.field, limit_q)
    if f.q <= 2:
        return 0
    rank = state_ranks(canonical_tables(f.field, f.table[None, :]))
    return int(dist[rank[0]])


def crk_exact_many(field: FieldCtx, tables: np.ndarray,
                   limit_q: int = DEFAULT_LIMIT_Q) -> np.ndarray:
    """Vectorised :func:`crk_exact` for an (N, q) array of permutation tables."""
    dist = coset_distances(field, limit_q)
    tables = np.atleast_2d(np.asarray(tables, dtype=np.int64))
    if field.q <= 2:
        return np.zeros(tables.shape[0], dtype=np.int64)
    return dist[state_ranks(canonical_tables(field, tables))].astype(np.int64)


def layer_sizes(field: FieldCtx, limit_q: int = DEFAULT_LIMIT_Q) -> list[int]:
    """Number of permutations of F_q with Carlitz rank exactly k, for k = 0, 1, ..."""
    dist = coset_distances(field, limit_q)
    per_coset = field.q * (field.q - 1)
    return [int(c) * per_coset for c in np.bincount(dist.astype(np.int64))]


def cumulative_layers(field: FieldCtx, limit_q: int = DEFAULT_LIMIT_Q) -> list[int]:
    """|S_k|: number of permutations with Carlitz rank at most k."""
    return [int(x) for x in np.cumsum(layer_sizes(field, limit_q))]
