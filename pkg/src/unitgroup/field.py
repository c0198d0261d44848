"""Finite fields GF(p^k) = GF(p)[t]/(m(t)).

Every element has an integer *code*: its little-endian coefficient digits
read as a base-p number, so ``sum(c_i * p**i)``.  The code is what gets
stored in numpy arrays and what reports serialize.  :class:`FieldElement`
is the explicit coefficient-tuple view used by the scalar API.

Array arithmetic (``F.add``, ``F.mul``, ``F.dot`` ...) works on int64 code
arrays of any shape.  Extension fields with ``q <= 2**16`` get log/exp
tables; larger ones fall back to digit-plane convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeZero, FieldTooLarge, NonPrime, ZeroInverse

Q_CAP = 2**32
LOG_TABLE_MAX = 2**16
ADD_TABLE_MAX = 256
_FLOAT_EXACT = 2**52
_INT_EXACT = 2**62


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
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


@dataclass(frozen=True)
class FieldElement:
    """Coefficients of t^0 .. t^(k-1), each in [0, p)."""

    coeffs: tuple[int, ...]

    def code(self, p: int) -> int:
        return sum(c * p**i for i, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]  # low -> high, monic, length k + 1

    def __post_init__(self):
        if self.k < 1:
            raise DegreeZero()
        if not is_prime(self.p):
            raise NonPrime(self.p)
        if self.p ** min(self.k, 33) > Q_CAP:
            raise FieldTooLarge(self.p**self.k if self.k <= 33 else -1)
        m = tuple(int(c) % self.p for c in self.modulus)
        if len(m) != self.k + 1 or m[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.k}: {self.modulus}")
        object.__setattr__(self, "modulus", m)
        if self.k > 1 and not _modulus_is_irreducible(self.p, m):
            raise ValueError(f"modulus {m} is reducible over GF({self.p})")

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # ------------------------------------------------------------------
    # element views
    # ------------------------------------------------------------------
    def element(self, code: int) -> FieldElement:
        code = int(code)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self}")
        digits = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            digits.append(r)
        return FieldElement(tuple(digits))

    def code(self, a: FieldElement) -> int:
        if len(a.coeffs) != self.k or any(not 0 <= c < self.p for c in a.coeffs):
            raise ValueError(f"{a} is not an element of {self}")
        return a.code(self.p)

    def from_int(self, n: int) -> int:
        """Code of the image of the integer n in the prime subfield."""
        return int(n) % self.p

    def elements(self) -> range:
        return range(self.q)

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=size, dtype=np.int64)

    # ------------------------------------------------------------------
    # scalar arithmetic on codes
    # ------------------------------------------------------------------
    def sadd(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        if self._tables is not None:
            exp, log, zech = self._tables_py
            la = log[a]
            z = zech[(log[b] - la) % (self.q - 1)]
            return 0 if z < 0 else exp[(la + z) % (self.q - 1)]
        return self._from_digits_scalar(
            [(x + y) % self.p for x, y in zip(self._digits_scalar(a), self._digits_scalar(b))]
        )

    def sneg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2 or a == 0:
            return a
        if self._tables is not None:
            exp, log, _ = self._tables_py
            return exp[(log[a] + (self.q - 1) // 2) % (self.q - 1)]
        return self._from_digits_scalar([(-x) % self.p for x in self._digits_scalar(a)])

    def ssub(self, a: int, b: int) -> int:
        return self.sadd(a, self.sneg(b))

    def smul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._tables is not None:
            exp, log, _ = self._tables_py
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._from_digits_scalar(
            _poly_mulmod(self._digits_scalar(a), self._digits_scalar(b), self.modulus, self.p)
        )

    def sinv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse()
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._tables is not None:
            exp, log, _ = self._tables_py
            return exp[(-log[a]) % (self.q - 1)]
        return self.code(ff_inv(self.element(a), self))

    def spow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.sinv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.smul(result, a)
            a = self.smul(a, a)
            e >>= 1
        return result

    def _digits_scalar(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits_scalar(self, d: Sequence[int]) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(d))

    # ------------------------------------------------------------------
    # vectorized arithmetic on int64 code arrays
    # ------------------------------------------------------------------
    @cached_property
    def _wide(self) -> bool:
        return self.p * self.p >= _INT_EXACT

    @cached_property
    def _powers(self) -> np.ndarray:
        return np.array([self.p**i for i in range(self.k)], dtype=np.int64)

    def digits(self, a) -> np.ndarray:
        """Shape ``a.shape + (k,)`` array of base-p digits."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def undigits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) * self._powers).sum(axis=-1)

    @cached_property
    def _add_table(self):
        if self.k == 1 or self.q > ADD_TABLE_MAX:
            return None
        d = self.digits(np.arange(self.q))
        return self.undigits((d[:, None, :] + d[None, :, :]) % self.p).ravel()

    @cached_property
    def _neg_table(self):
        if self.k == 1:
            return None
        return self.undigits((-self.digits(np.arange(self.q))) % self.p)

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return np.take(self._add_table, a * self.q + b)
        if self._tables is not None:
            exp, log, zech = self._tables
            n = self.q - 1
            la = log[a]
            z = zech[(log[b] - la) % n]
            out = np.where(z < 0, 0, exp[(la + z) % n])
            out = np.where(a == 0, b, out)
            return np.where(b == 0, a, out)
        return self.undigits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        if self.q <= LOG_TABLE_MAX:
            return self._neg_table[a]
        return self.undigits((-self.digits(a)) % self.p)

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    @cached_property
    def _tables(self):
        """(exp, log, zech) arrays for small extension fields, else None.

        ``zech[n]`` is log(1 + g^n), or -1 where 1 + g^n = 0.
        """
        if self.k == 1 or self.q > LOG_TABLE_MAX:
            return None
        g = self._primitive_element()
        n = self.q - 1
        block = 1
        while block * block < n:
            block *= 2
        head = np.empty(block, dtype=np.int64)
        x = 1
        for i in range(block):
            head[i] = x
            x = self._from_digits_scalar(
                _poly_mulmod(self._digits_scalar(x), self._digits_scalar(g), self.modulus, self.p)
            )
        step = x  # g ** block
        chunks = []
        cur = 1
        while len(chunks) * block < n:
            chunks.append(self._mul_digits(head, np.full(block, cur, dtype=np.int64)))
            cur = self._from_digits_scalar(
                _poly_mulmod(self._digits_scalar(cur), self._digits_scalar(step), self.modulus, self.p)
            )
        exp = np.concatenate(chunks)[:n]
        log = np.zeros(self.q, dtype=np.int64)
        log[exp] = np.arange(n)
        d = self.digits(exp)
        d[:, 0] = (d[:, 0] + 1) % self.p
        one_plus = self.undigits(d)
        zech = np.where(one_plus == 0, -1, log[one_plus])
        return exp, log, zech

    @cached_property
    def _tables_py(self):
        return tuple(t.tolist() for t in self._tables)

    def _primitive_element(self) -> int:
        n = self.q - 1
        rs = prime_factors(n)
        for g in range(2, self.q):
            gd = self._digits_scalar(g)
            if all(self._pow_raw(gd, n // r) != [1] + [0] * (self.k - 1) for r in rs):
                return g
        return 1  # q == 2 is handled by the prime branch; unreachable otherwise

    def _pow_raw(self, d: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.k - 1)
        while e:
            if e & 1:
                result = _poly_mulmod(result, d, self.modulus, self.p)
            d = _poly_mulmod(d, d, self.modulus, self.p)
            e >>= 1
        return result

    def _mul_digits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        da, db = self.digits(a), self.digits(b)
        k, p = self.k, self.p
        c = np.zeros(np.broadcast_shapes(da.shape, db.shape)[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                c[..., i + j] = (c[..., i + j] + da[..., i] * db[..., j]) % p
        return self.undigits(_reduce_planes(c, self.modulus, p, axis=-1))

    @cached_property
    def _mul_table(self):
        if self.k == 1 or self.q > ADD_TABLE_MAX:
            return None
        exp, log, _ = self._tables
        a = np.arange(self.q)
        t = exp[(log[a][:, None] + log[a][None, :]) % (self.q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return t.ravel()

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            if self._wide:
                return ((a.astype(object) * b) % self.p).astype(np.int64)
            return (a * b) % self.p
        if self._mul_table is not None:
            return np.take(self._mul_table, a * self.q + b)
        if self._tables is not None:
            exp, log, _ = self._tables
            out = exp[(log[a] + log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        return self._mul_digits(a, b)

    def scale(self, c: int, a) -> np.ndarray:
        return self.mul(np.int64(c), a)

    @cached_property
    def _inv_table(self):
        if self.k == 1 and self.p <= LOG_TABLE_MAX:
            t = np.zeros(self.p, dtype=np.int64)
            t[1:] = [pow(a, self.p - 2, self.p) for a in range(1, self.p)]
            return t
        return None

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroInverse()
        if self._inv_table is not None:
            return self._inv_table[a]
        if self._tables is not None:
            exp, log, _ = self._tables
            return exp[(-log[a]) % (self.q - 1)]
        return np.vectorize(self.sinv, otypes=[np.int64])(a)

    def sum(self, a, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            if self._wide:
                return (a.astype(object).sum(axis=axis) % self.p).astype(np.int64)
            return a.sum(axis=axis) % self.p
        d = self.digits(a)
        if axis is None:
            return self.undigits(d.reshape(-1, self.k).sum(axis=0) % self.p)
        axis = axis % a.ndim
        return self.undigits(d.sum(axis=axis) % self.p)

    def dot(self, A, B) -> np.ndarray:
        """Matrix product over the field (shapes as for ``numpy.matmul``)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        n = A.shape[-1]
        if n == 0:
            shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
            return np.zeros(shape, dtype=np.int64)
        p, k = self.p, self.k
        bound = n * k * (p - 1) ** 2
        if k == 1:
            return _matmul_mod(A, B, p, bound)
        dA = np.moveaxis(self.digits(A), -1, 0)
        dB = np.moveaxis(self.digits(B), -1, 0)
        planes = [None] * (2 * k - 1)
        for i in range(k):
            for j in range(k):
                term = _matmul_mod(dA[i], dB[j], p, n * (p - 1) ** 2)
                planes[i + j] = term if planes[i + j] is None else (planes[i + j] + term) % p
        c = np.stack(planes, axis=-1)
        return self.undigits(_reduce_planes(c, self.modulus, p, axis=-1))

    def matvec(self, A, v) -> np.ndarray:
        return self.dot(A, np.asarray(v, dtype=np.int64)[:, None])[:, 0]

    def pow_array(self, a, e: int) -> np.ndarray:
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int, bound: int) -> np.ndarray:
    if bound < _FLOAT_EXACT:
        out = np.matmul(A.astype(np.float64), B.astype(np.float64))
        return np.rint(out).astype(np.int64) % p
    if bound < _INT_EXACT:
        return np.matmul(A, B) % p
    return (np.matmul(A.astype(object), B.astype(object)) % p).astype(np.int64)


def _reduce_planes(c: np.ndarray, modulus: Sequence[int], p: int, axis: int = -1) -> np.ndarray:
    """Reduce digit planes of degree >= k using t^k = -sum(m_i t^i)."""
    c = np.moveaxis(c, axis, -1).copy()
    k = len(modulus) - 1
    for deg in range(c.shape[-1] - 1, k - 1, -1):
        top = c[..., deg]
        if not top.any():
            continue
        for i in range(k):
            if modulus[i]:
                c[..., deg - k + i] = (c[..., deg - k + i] - top * modulus[i]) % p
        c[..., deg] = 0
    return np.moveaxis(c[..., :k], -1, axis)


# ----------------------------------------------------------------------
# Polynomials over GF(p) as little-endian int lists (used for the modulus)
# ----------------------------------------------------------------------
def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    k = len(m) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k):
                prod[deg - k + i] = (prod[deg - k + i] - c * m[i]) % p
            prod[deg] = 0
    out = prod[:k]
    return out + [0] * (k - len(out))


def _poly_divmod_p(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return quot, a


@lru_cache(maxsize=None)
def _modulus_is_irreducible(p: int, m: tuple[int, ...]) -> bool:
    from .poly import is_irreducible

    return is_irreducible(list(m), FieldSpec(p, 1, (0, 1)))


# ----------------------------------------------------------------------
# public scalar API
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Candidates ``t^k + c_{k-1} t^{k-1} + ... + c_0`` are ordered by the
    base-p integer ``sum(c_i p^i)``, i.e. by ``c_{k-1}`` first.
    """
    if k < 1:
        raise DegreeZero()
    if not is_prime(p):
        raise NonPrime(p)
    if k > 32 or p**k > Q_CAP:
        raise FieldTooLarge(p**min(k, 33))
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    from .poly import is_irreducible

    prime = FieldSpec(p, 1, (0, 1))
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        if is_irreducible(low + [1], prime):
            return FieldSpec(p, k, tuple(low + [1]))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def ff_add(a: FieldElement, b: FieldElement, F: FieldSpec) -> FieldElement:
    return FieldElement(tuple((x + y) % F.p for x, y in zip(a.coeffs, b.coeffs)))


def ff_neg(a: FieldElement, F: FieldSpec) -> FieldElement:
    return FieldElement(tuple((-x) % F.p for x in a.coeffs))


def ff_sub(a: FieldElement, b: FieldElement, F: FieldSpec) -> FieldElement:
    return ff_add(a, ff_neg(b, F), F)


def ff_mul(a: FieldElement, b: FieldElement, F: FieldSpec) -> FieldElement:
    return FieldElement(tuple(_poly_mulmod(a.coeffs, b.coeffs, F.modulus, F.p)))


def ff_inv(a: FieldElement, F: FieldSpec) -> FieldElement:
    """Inverse via the extended Euclidean algorithm against the modulus."""
    p = F.p
    if not any(a.coeffs):
        raise ZeroInverse()
    r0, r1 = list(F.modulus), _trim(list(a.coeffs))
    s0, s1 = [], [1]
    while len(r1) > 1:
        quot, rem = _poly_divmod_p(r0, r1, p)
        prod = [0] * (len(quot) + len(s1))
        for i, x in enumerate(quot):
            for j, y in enumerate(s1):
                prod[i + j] = (prod[i + j] + x * y) % p
        width = max(len(s0), len(prod))
        s_next = _trim([((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % p
                        for i in range(width)])
        r0, r1 = r1, rem
        s0, s1 = s1, s_next
    c = pow(r1[0], p - 2, p)
    out = [(x * c) % p for x in s1]
    out = out + [0] * (F.k - len(out))
    return FieldElement(tuple(out[: F.k]))


def ff_pow(a: FieldElement, e: int, F: FieldSpec) -> FieldElement:
    return F.element(F.spow(F.code(a), e))


def one(F: FieldSpec) -> FieldElement:
    return F.element(1)


def zero(F: FieldSpec) -> FieldElement:
    return F.element(0)


def codes(values: Iterable[int], F: FieldSpec) -> np.ndarray:
    """Integers -> prime-subfield codes as an int64 array."""
    return np.array([F.from_int(v) for v in values], dtype=np.int64)
