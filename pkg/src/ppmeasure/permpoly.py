"""Polynomials over F_q reduced modulo x^q - x, paired with their value tables."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadTableLengthError, InvalidInputError, ZeroPolynomialError
from .field import FieldCtx


def reduce_coeffs(field: FieldCtx, coeffs: Iterable[int]) -> tuple[int, ...]:
    """Fold exponents >= q down using x^q = x and strip trailing zeros."""
    q = field.q
    out = [0] * q
    for e, c in enumerate(coeffs):
        c = int(c)
        if c == 0:
            continue
        if e >= q:
            e = (e - 1) % (q - 1) + 1
        out[e] = field.add(out[e], c)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def horner(field: FieldCtx, coeffs: Sequence[int], points) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    acc = np.zeros_like(points)
    for c in reversed(coeffs):
        acc = field.vadd(field.vmul(acc, points), c)
    return acc


class PermPoly:
    """A polynomial function on F_q.

    Either side may be supplied: coefficients (the table is evaluated at once)
    or a value table (coefficients are interpolated on first access).  The
    name follows the package's use case; nothing forces the map to be
    bijective, see :func:`is_permutation`.
    """

    __slots__ = ("field", "table", "__dict__")

    def __init__(self, field: FieldCtx, table: np.ndarray,
                 coeffs: tuple[int, ...] | None = None):
        self.field = field
        table = np.array(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        if coeffs is not None:
            self.__dict__["coeffs"] = coeffs

    @classmethod
    def from_coeffs(cls, field: FieldCtx, coeffs: Iterable[int]) -> "PermPoly":
        red = reduce_coeffs(field, coeffs)
        return cls(field, horner(field, red, field.elements), red)

    @classmethod
    def from_table(cls, field: FieldCtx, table: Sequence[int]) -> "PermPoly":
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (field.q,):
            raise BadTableLengthError(
                f"expected {field.q} values, got {table.shape[0] if table.ndim else 0}")
        if table.min(initial=0) < 0 or table.max(initial=0) >= field.q:
            raise InvalidInputError("table entries must be element codes in [0, q)")
        return cls(field, table)

    @cached_property
    def coeffs(self) -> tuple[int, ...]:
        return _newton_interpolate(self.field, self.table)

    @property
    def q(self) -> int:
        return self.field.q

    def __call__(self, c: int) -> int:
        return int(self.table[c])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermPoly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.field, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"PermPoly({self.field.spec_string()}, coeffs={list(self.coeffs)})"


def eval_poly(f: PermPoly, c: int) -> int:
    """Horner evaluation from the coefficient vector (not the cached table)."""
    field = f.field
    acc = 0
    for coef in reversed(f.coeffs):
        acc = field.add(field.mul(acc, c), coef)
    return acc


def _newton_interpolate(field: FieldCtx, table: np.ndarray) -> tuple[int, ...]:
    # Newton divided differences on the nodes 0..q-1, then expansion of the
    # Newton form into the monomial basis.
    q = field.q
    xs = field.elements
    dd = np.array(table, dtype=np.int64)
    for j in range(1, q):
        num = field.vsub(dd[j:], dd[j - 1:-1])
        den = field.vsub(xs[j:], xs[:-j])
        dd[j:] = field.vdiv(num, den)
    poly = np.array([dd[q - 1]], dtype=np.int64)
    for j in range(q - 2, -1, -1):
        shifted = np.concatenate([[0], poly])
        scaled = np.concatenate([field.vmul(poly, xs[j]), [0]])
        poly = field.vsub(shifted, scaled)
        poly[0] = field.add(int(poly[0]), int(dd[j]))
    coeffs = [int(c) for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def interpolate(field: FieldCtx, table: Sequence[int]) -> PermPoly:
    """The unique polynomial of degree <= q-1 with the given value table."""
    f = PermPoly.from_table(field, table)
    _ = f.coeffs
    return f


def is_permutation(f: PermPoly) -> bool:
    seen = np.zeros(f.q, dtype=bool)
    seen[f.table] = True
    return bool(seen.all())


def degree_weight(f: PermPoly) -> tuple[int, int]:
    """(degree, number of nonzero coefficients) of the reduced polynomial."""
    if not f.coeffs:
        raise ZeroPolynomialError("the zero polynomial has no degree")
    return len(f.coeffs) - 1, sum(1 for c in f.coeffs if c)


def normalize_origin(f: PermPoly) -> PermPoly:
    """Return f - f(0)."""
    f0 = int(f.table[0])
    if f0 == 0:
        return f
    field = f.field
    table = field.vsub(f.table, f0)
    if "coeffs" in f.__dict__:
        coeffs = list(f.coeffs) or [0]
        coeffs[0] = field.sub(coeffs[0], f0)
        return PermPoly(field, table, reduce_coeffs(field, coeffs))
    return PermPoly(field, table)
