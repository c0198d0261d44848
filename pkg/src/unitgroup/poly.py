"""Univariate polynomials over GF(q) and Berlekamp factorization.

A polynomial is a tuple of field codes, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ZeroPolynomial
from .field import FieldSpec
from .linalg import kernel

Poly = tuple

ENUMERATE_SPLIT_MAX = 256


def trim(a: Sequence[int]) -> Poly:
    a = list(int(c) for c in a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, F: FieldSpec) -> Poly:
    n = max(len(a), len(b))
    return trim(F.sadd(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def sub(a: Poly, b: Poly, F: FieldSpec) -> Poly:
    n = max(len(a), len(b))
    return trim(F.ssub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def scale(c: int, a: Poly, F: FieldSpec) -> Poly:
    return trim(F.smul(c, x) for x in a)


def mul(a: Poly, b: Poly, F: FieldSpec) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.sadd(out[i + j], F.smul(x, y))
    return trim(out)


def divmod_poly(a: Poly, b: Poly, F: FieldSpec) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = F.sinv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.smul(a[-1], inv_lead)
        shift = len(a) - len(b)
        quot[shift] = c
        if c:
            for i, y in enumerate(b):
                a[shift + i] = F.ssub(a[shift + i], F.smul(c, y))
        a = list(trim(a))
    return trim(quot), trim(a)


def mod(a: Poly, b: Poly, F: FieldSpec) -> Poly:
    return divmod_poly(a, b, F)[1]


def monic(a: Poly, F: FieldSpec) -> Poly:
    if not a:
        return ()
    return scale(F.sinv(a[-1]), a, F)


def gcd(a: Poly, b: Poly, F: FieldSpec) -> Poly:
    while b:
        a, b = b, mod(a, b, F)
    return monic(a, F)


def derivative(a: Poly, F: FieldSpec) -> Poly:
    return trim(F.smul(F.from_int(i), a[i]) for i in range(1, len(a)))


def powmod(base: Poly, e: int, m: Poly, F: FieldSpec) -> Poly:
    result: Poly = (1,)
    base = mod(base, m, F)
    while e:
        if e & 1:
            result = mod(mul(result, base, F), m, F)
        base = mod(mul(base, base, F), m, F)
        e >>= 1
    return mod(result, m, F)


def evaluate(a: Poly, x: int, F: FieldSpec) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.sadd(F.smul(acc, x), c)
    return acc


def eval_matrix(a: Poly, A: np.ndarray, F: FieldSpec) -> np.ndarray:
    """a(A) by Horner's rule."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(a):
        out = F.dot(out, A)
        if c:
            out[np.arange(n), np.arange(n)] = F.add(out[np.arange(n), np.arange(n)], c)
    return out


def from_roots(roots: Sequence[int], F: FieldSpec) -> Poly:
    out: Poly = (1,)
    for r in roots:
        out = mul(out, (F.sneg(r), 1), F)
    return out


def _pth_root(a: Poly, F: FieldSpec) -> Poly:
    """Inverse Frobenius of a polynomial whose exponents are multiples of p."""
    e = F.q // F.p
    return trim(F.spow(a[i], e) for i in range(0, len(a), F.p))


def squarefree_factorization(f: Poly, F: FieldSpec) -> list[tuple[Poly, int]]:
    f = monic(trim(f), F)
    if degree(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    c = gcd(f, derivative(f, F), F)
    w = divmod_poly(f, c, F)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(w, c, F)
        fac = divmod_poly(w, y, F)[0]
        if degree(fac) > 0:
            out.append((fac, i))
        w = y
        c = divmod_poly(c, y, F)[0]
        i += 1
    if degree(c) > 0:
        for g, m in squarefree_factorization(_pth_root(c, F), F):
            out.append((g, m * F.p))
    return out


def berlekamp_kernel(f: Poly, F: FieldSpec) -> np.ndarray:
    """Basis of {v : v^q = v mod f} for monic squarefree f (rows are v)."""
    n = degree(f)
    xq = powmod((0, 1), F.q, f, F)
    Q = np.zeros((n, n), dtype=np.int64)
    row: Poly = (1,)
    for i in range(n):
        Q[i, : len(row)] = row
        row = mod(mul(row, xq, F), f, F)
    Q[np.arange(n), np.arange(n)] = F.sub(Q[np.arange(n), np.arange(n)], 1)
    return kernel(Q.T, F).basis


def _split_enumerate(f: Poly, vs: np.ndarray, F: FieldSpec) -> list[Poly]:
    r = vs.shape[0]
    factors = [f]
    for v in vs:
        v = trim(v)
        if degree(v) < 1:
            continue
        for s in range(F.q):
            if len(factors) == r:
                return factors
            shifted = sub(v, (s,), F)
            nxt = []
            for g in factors:
                if degree(g) <= 1:
                    nxt.append(g)
                    continue
                h = gcd(g, shifted, F)
                if 0 < degree(h) < degree(g):
                    nxt.extend([h, divmod_poly(g, h, F)[0]])
                else:
                    nxt.append(g)
            factors = nxt
    return factors


def _split_random(f: Poly, vs: np.ndarray, F: FieldSpec, seed: int = 0) -> list[Poly]:
    r = vs.shape[0]
    rng = np.random.default_rng(seed)
    factors = [f]
    while len(factors) < r:
        w = trim(F.dot(F.random(rng, (1, r)), vs)[0])
        nxt = []
        for g in factors:
            if degree(g) <= 1:
                nxt.append(g)
                continue
            if F.p == 2:
                t, acc = mod(w, g, F), mod(w, g, F)
                for _ in range(F.k - 1):
                    t = mod(mul(t, t, F), g, F)
                    acc = add(acc, t, F)
                probe = acc
            else:
                probe = sub(powmod(w, (F.q - 1) // 2, g, F), (1,), F)
            h = gcd(g, probe, F)
            if 0 < degree(h) < degree(g):
                nxt.extend([h, divmod_poly(g, h, F)[0]])
            else:
                nxt.append(g)
        factors = nxt
    return factors


def _sort_key(f: Poly):
    return (degree(f), tuple(reversed(f)))


def berlekamp_factor(f: Sequence[int], F: FieldSpec) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of f with multiplicities.

    Sorted by degree, then lexicographically from the leading coefficient
    down.  The product of the factors equals f up to its leading unit.
    """
    f = trim(f)
    if not f:
        raise ZeroPolynomial()
    out: dict[Poly, int] = {}
    for g, m in squarefree_factorization(f, F):
        vs = berlekamp_kernel(g, F)
        if vs.shape[0] == 1:
            pieces = [g]
        elif F.q <= ENUMERATE_SPLIT_MAX:
            pieces = _split_enumerate(g, vs, F)
        else:
            pieces = _split_random(g, vs, F)
        for h in pieces:
            h = monic(h, F)
            out[h] = out.get(h, 0) + m
    return sorted(out.items(), key=lambda item: _sort_key(item[0]))


def is_irreducible(f: Sequence[int], F: FieldSpec) -> bool:
    f = monic(trim(f), F)
    if degree(f) < 1:
        return False
    if degree(f) == 1:
        return True
    if degree(gcd(f, derivative(f, F), F)) > 0:
        return False
    return berlekamp_kernel(f, F).shape[0] == 1


def charpoly(A, F: FieldSpec) -> Poly:
    """Characteristic polynomial det(tI - A) via Hessenberg reduction."""
    H = np.array(A, dtype=np.int64, copy=True)
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        u = F.scale(F.sinv(int(H[j + 1, j])), H[j + 2:, j])
        if np.any(u):
            H[j + 2:, :] = F.sub(H[j + 2:, :], F.mul(u[:, None], H[j + 1][None, :]))
            H[:, j + 1] = F.add(H[:, j + 1], F.matvec(H[:, j + 2:], u))
    # p[m] = charpoly of the leading m x m block, as length n+1 code arrays
    p = [np.zeros(n + 1, dtype=np.int64) for _ in range(n + 1)]
    p[0][0] = 1
    for m in range(n):
        shifted = np.concatenate([[0], p[m][:-1]])
        acc = F.sub(shifted, F.scale(int(H[m, m]), p[m]))
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = F.smul(prod, int(H[i + 1, i]))
            if prod == 0:
                break
            c = F.smul(int(H[i, m]), prod)
            if c:
                acc = F.sub(acc, F.scale(c, p[i]))
        p[m + 1] = acc
    return trim(p[n])
