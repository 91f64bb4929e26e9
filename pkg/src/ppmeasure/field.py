"""Table-driven arithmetic in F_q for prime q and small prime powers q = p^k.

Elements are dense integer codes in ``[0, q)``.  For ``k > 1`` the element
``a_0 + a_1 x + ... + a_{k-1} x^{k-1}`` (reduced modulo the defining
polynomial) is encoded as ``sum(a_j * p**j)``.  Multiplication, division and
powers go through exp/log tables built around a fixed primitive element.

Scalar methods (``add``, ``mul``, ...) take and return Python ints.  The
``v``-prefixed methods work elementwise on integer numpy arrays and are what
every hot loop in the package uses.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import (
    FieldTooLargeError,
    InvalidInputError,
    ModulusRequiredError,
    NonPrimeError,
    ReducibleModulusError,
    ZeroInverseError,
    ZeroLogError,
)

MAX_ORDER = 2**20
BUILTIN_MAX_ORDER = 2**16
BUILTIN_MAX_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# --- polynomials over F_p, ascending coefficient lists -----------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - coef * mj) % p
        _trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most k/2."""
    m = [c % p for c in modulus]
    k = len(m) - 1
    if k < 1 or m[-1] == 0:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(m, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``k`` over F_p (ascending coefficients).

    Candidates are ordered by the integer code of their lower coefficients, so
    the result is deterministic: x^2+1 for F_9, x^3+x+1 for F_8, and so on.
    """
    if k == 1:
        return ()
    if p**k > BUILTIN_MAX_ORDER or k > BUILTIN_MAX_DEGREE:
        raise ModulusRequiredError(
            f"no built-in irreducible for p={p}, k={k}; supply a modulus"
        )
    for code in range(p**k):
        low = [(code // p**j) % p for j in range(k)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _digits(code: int, p: int, k: int) -> list[int]:
    return [(code // p**j) % p for j in range(k)]


def _undigits(d: Sequence[int], p: int) -> int:
    return sum(c * p**j for j, c in enumerate(d))


def _ext_mul(a: int, b: int, p: int, modulus: Sequence[int]) -> int:
    k = len(modulus) - 1
    da, db = _digits(a, p, k), _digits(b, p, k)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] += x * y
    r = _poly_rem(prod, modulus, p)
    return _undigits(r, p)


def _ext_pow(a: int, e: int, p: int, modulus: Sequence[int]) -> int:
    result, base = 1, a
    while e:
        if e & 1:
            result = _ext_mul(result, base, p, modulus)
        base = _ext_mul(base, base, p, modulus)
        e >>= 1
    return result


class FieldCtx:
    """Immutable finite field context.

    Attributes mirror the construction: ``p``, ``k``, ``q``, ``modulus``
    (ascending, empty for prime fields), ``xi`` (the primitive element used for
    logarithms), ``exp_table`` and ``log_table``.  ``log_table[0]`` holds a
    sentinel and must not be read as a logarithm; use :meth:`dlog`.
    """

    __slots__ = (
        "p", "k", "q", "modulus", "xi", "exp_table", "log_table",
        "_log_ext", "_exp_ext", "_elements", "__weakref__",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...], xi: int,
                 exp_table: np.ndarray):
        q = p**k
        self.p, self.k, self.q = p, k, q
        self.modulus = modulus
        self.xi = xi
        self.exp_table = exp_table
        n = q - 1
        log = np.full(q, 2 * n, dtype=np.int64)
        log[exp_table] = np.arange(n, dtype=np.int64)
        self.log_table = log
        # exp_ext[i] = xi^i for i < 2n and 0 beyond, so that
        # exp_ext[log[a] + log[b]] = a*b including zero operands.
        ext = np.zeros(4 * n + 1, dtype=np.int64)
        ext[: 2 * n] = np.concatenate([exp_table, exp_table])
        self._exp_ext = ext
        self._log_ext = log
        self._elements = np.arange(q, dtype=np.int64)
        for arr in (self.exp_table, self.log_table, self._exp_ext, self._elements):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldCtx({self.spec_string()}, xi={self.xi})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus, self.xi) == (
            other.p, other.k, other.modulus, other.xi)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus, self.xi))

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    def spec_string(self) -> str:
        if self.k == 1:
            return f"q={self.q}"
        return f"p={self.p},k={self.k},mod=" + ",".join(map(str, self.modulus))

    # --- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.vadd(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return int(self.vneg(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError("0 has no multiplicative inverse")
        return int(self.exp_table[-self.log_table[a] % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp_table[self.log_table[a] * e % (self.q - 1)])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroLogError("discrete logarithm of 0 is undefined")
        return int(self.log_table[a])

    def exp(self, i: int) -> int:
        return int(self.exp_table[i % (self.q - 1)])

    # --- vectorised arithmetic ------------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        base = 1
        for _ in range(self.k):
            out += ((a // base + b // base) % p) * base
            base *= p
        return out

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        if self.k == 1:
            return -a % p
        if p == 2:
            return a.copy()
        out = np.zeros_like(a)
        base = 1
        for _ in range(self.k):
            out += (-(a // base) % p) * base
            base *= p
        return out

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self._exp_ext[self._log_ext[a] + self._log_ext[b]]

    def vinv(self, a) -> np.ndarray:
        """Elementwise x^(q-2): the inverse on nonzero entries, 0 at 0."""
        a = np.asarray(a, dtype=np.int64)
        n = self.q - 1
        return np.where(a == 0, 0, self.exp_table[-self.log_table[a] % n])

    def vdiv(self, a, b) -> np.ndarray:
        """a * b^(q-2); entries with b = 0 come out as 0."""
        return self.vmul(a, self.vinv(b))

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = self.q - 1
        if e == 0:
            return np.ones_like(a)
        nz = self.exp_table[(self.log_table[a] % n) * (e % n) % n]
        return np.where(a == 0, 0, nz)

    def vlog(self, a) -> np.ndarray:
        """Discrete logs; entries for 0 carry the sentinel ``2(q-1)``."""
        return self.log_table[np.asarray(a, dtype=np.int64)]


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build F_{p^k} with its smallest-code primitive element.

    >>> make_field(7).xi
    3
    >>> make_field(3, 2, [1, 0, 1]).xi
    4
    """
    if not is_prime(p):
        raise NonPrimeError(f"characteristic {p} is not prime")
    if k < 1:
        raise InvalidInputError("extension degree must be >= 1")
    q = p**k
    if q > MAX_ORDER:
        raise FieldTooLargeError(f"q = {q} exceeds 2^20")
    if k == 1:
        mod: tuple[int, ...] = ()
    elif modulus is None:
        mod = default_modulus(p, k)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1:
            raise InvalidInputError(f"modulus must have degree {k}")
        if mod[-1] != 1:
            raise InvalidInputError("modulus must be monic")
        if not is_irreducible(mod, p):
            raise ReducibleModulusError(f"{list(mod)} factors over F_{p}")
    return _build(p, k, mod)


@lru_cache(maxsize=64)
def _build(p: int, k: int, mod: tuple[int, ...]) -> FieldCtx:
    q = p**k
    n = q - 1
    cofactors = [n // r for r in prime_factors(n)] if n > 1 else []

    if k == 1:
        def power(a, e):
            return pow(a, e, p)
    else:
        def power(a, e):
            return _ext_pow(a, e, p, mod)

    xi = 1 if q == 2 else None
    if xi is None:
        for g in range(2, q):
            if all(power(g, c) != 1 for c in cofactors):
                xi = g
                break
    assert xi is not None

    exp = np.empty(n, dtype=np.int64)
    x = 1
    for i in range(n):
        exp[i] = x
        x = x * xi % p if k == 1 else _ext_mul(x, xi, p, mod)
    assert x == 1
    return FieldCtx(p, k, mod, xi, exp)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse ``"q=5"``, ``"q=9"`` or ``"p=3,k=2,mod=1,0,1"`` into a field."""
    text = text.replace(" ", "")
    if text.startswith("q="):
        q = int(text[2:])
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise NonPrimeError(f"q = {q} is not a prime power")
        k, rest = 0, q
        while rest % p == 0:
            rest //= p
            k += 1
        if rest != 1:
            raise NonPrimeError(f"q = {q} is not a prime power")
        return make_field(p, k)
    fields: dict[str, str] = {}
    head, _, mod_part = text.partition("mod=")
    for item in filter(None, head.split(",")):
        key, _, val = item.partition("=")
        fields[key] = val
    if "p" not in fields:
        raise InvalidInputError(f"cannot parse field spec {text!r}")
    p = int(fields["p"])
    k = int(fields.get("k", 1))
    modulus = [int(c) for c in mod_part.split(",")] if mod_part else None
    return make_field(p, k, modulus)
