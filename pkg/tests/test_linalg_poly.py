from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF, Matrix, ZZ, symbols, Poly as SPoly
from sympy.polys.matrices import DomainMatrix
from sympy.polys.galoistools import gf_factor

from unitgroup.errors import AmbientMismatch
from unitgroup.field import make_field
from unitgroup.linalg import Subspace, identity, intersect, inverse, kernel, rank, rref, solve
from unitgroup.poly import berlekamp_factor, charpoly, divmod_poly, gcd, is_irreducible, mul, powmod, trim


def _all_vectors(F, n):
    return np.array(list(itertools.product(range(F.q), repeat=n)), dtype=np.int64)


def _matrices(F, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c).map(
                lambda v: np.array(v, dtype=np.int64).reshape(r, c)
            )
        )
    )


# ----------------------------------------------------------------------
# rref / kernel / intersect
# ----------------------------------------------------------------------
def test_rref_examples():
    F2 = make_field(2)
    R, r, piv = rref(identity(3), F2)
    assert r == 3 and np.array_equal(R, identity(3)) and piv == [0, 1, 2]
    R, r, piv = rref(np.zeros((2, 3), dtype=np.int64), F2)
    assert r == 0 and not R.any()
    R, r, piv = rref(np.array([[1, 1], [0, 1]]), F2)
    assert r == 2 and np.array_equal(R, identity(2))


def test_kernel_examples():
    F5 = make_field(5)
    assert kernel(identity(3), F5).dim == 0
    assert kernel(np.zeros((2, 3), dtype=np.int64), F5) == Subspace.full(F5, 3)
    M = np.array([[1, 2], [2, 4]])
    K = kernel(M, F5)
    assert K.dim == 1
    null = [v for v in _all_vectors(F5, 2) if not F5.matvec(M, v).any()]
    assert len(null) == 5 and all(K.contains(v) for v in null)


def test_intersect_examples():
    F2 = make_field(2)
    U = Subspace.span([[1, 0, 0], [0, 1, 0]], F2)
    V = Subspace.span([[0, 1, 0], [0, 0, 1]], F2)
    line = intersect(U, V)
    members = [v for v in _all_vectors(F2, 3) if U.contains(v) and V.contains(v)]
    assert line.dim == 1 and len(members) == 2
    assert all(line.contains(v) for v in members)
    assert intersect(U, U) == U
    assert intersect(U, Subspace.zero(F2, 3)).dim == 0
    with pytest.raises(AmbientMismatch):
        intersect(U, Subspace.zero(F2, 4))


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_rank_against_exhaustive_null_count(p, k):
    F = make_field(p, k)

    @given(_matrices(F, 3, 3))
    def check(M):
        vecs = _all_vectors(F, M.shape[1])
        nulls = sum(1 for v in vecs if not F.matvec(M, v).any())
        assert nulls == F.q ** (M.shape[1] - rank(M, F))
        assert kernel(M, F).dim == M.shape[1] - rank(M, F)

    check()


@pytest.mark.parametrize("p", [2, 3, 7])
def test_rank_against_sympy_over_prime_field(p):
    F = make_field(p)
    rng = np.random.default_rng(p)
    for _ in range(20):
        M = F.random(rng, (5, 6))
        M[3] = F.add(M[0], F.scale(2 % p, M[1]))
        K = GF(p)
        dm = DomainMatrix([[K(int(x)) for x in row] for row in M], M.shape, K)
        assert rank(M, F) == dm.rank()


@pytest.mark.parametrize("p,k", [(2, 2), (3, 1), (5, 2)])
def test_subspace_canonical_form(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(7)
    for _ in range(15):
        rows = F.random(rng, (3, 5))
        mix = F.random(rng, (3, 3))
        while rank(mix, F) < 3:
            mix = F.random(rng, (3, 3))
        U = Subspace.span(rows, F)
        V = Subspace.span(F.dot(mix, rows), F)
        assert U == V and hash(U) == hash(V)
        assert len(set(U.pivots)) == U.dim
        W = Subspace.span(F.random(rng, (2, 5)), F)
        I = U.intersect(W)
        assert I <= U and I <= W
        assert (U + W).dim == U.dim + W.dim - I.dim


def test_solve_and_inverse():
    F = make_field(7)
    rng = np.random.default_rng(0)
    for _ in range(20):
        A = F.random(rng, (4, 4))
        x = F.random(rng, 4)
        b = F.matvec(A, x)
        sol = solve(A, b, F)
        assert sol is not None and np.array_equal(F.matvec(A, sol), b)
        inv = inverse(A, F)
        if rank(A, F) == 4:
            assert np.array_equal(F.dot(A, inv), identity(4))
        else:
            assert inv is None


# ----------------------------------------------------------------------
# polynomials
# ----------------------------------------------------------------------
def test_berlekamp_examples():
    F2, F5 = make_field(2), make_field(5)
    assert berlekamp_factor([1, 0, 0, 0, 0, 1], F2) == [((1, 1), 1), ((1, 1, 1, 1, 1), 1)]
    # the quartic has no quadratic factor
    quart = (1, 1, 1, 1, 1)
    for q in [(a, b, 1) for a in range(2) for b in range(2)]:
        assert any(divmod_poly(quart, q, F2)[1])
    assert berlekamp_factor([1, 0, 1], F5) == [((2, 1), 1), ((3, 1), 1)]
    assert berlekamp_factor([1, 1, 1], F2) == [((1, 1, 1), 1)]


def _from_sympy_factor(f_low, p):
    lc, facs = gf_factor(list(reversed(f_low)), p, ZZ)
    return sorted((tuple(reversed([int(c) % p for c in g])), e) for g, e in facs)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_berlekamp_against_sympy(p):
    F = make_field(p)
    rng = np.random.default_rng(p)

    def rand_monic(deg):
        return tuple(int(c) for c in F.random(rng, deg)) + (1,)

    for _ in range(25):
        f = rand_monic(int(rng.integers(1, 8)))
        if rng.random() < 0.4:  # force a repeated factor
            g = rand_monic(int(rng.integers(1, 3)))
            f = mul(mul(f, g, F), g, F)
        got = sorted(berlekamp_factor(f, F))
        assert got == _from_sympy_factor(f, p)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 4), (5, 2), (3, 2)])
def test_berlekamp_extension_fields_reconstructs(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(11)
    for _ in range(15):
        f = tuple(list(F.random(rng, int(rng.integers(1, 7)))) + [1])
        facs = berlekamp_factor(f, F)
        prod = (1,)
        for g, e in facs:
            assert is_irreducible(g, F)
            for _ in range(e):
                prod = mul(prod, g, F)
        assert prod == trim(f)


def test_poly_helpers():
    F = make_field(7)
    a, b = (1, 2, 3), (5, 1)
    q, r = divmod_poly(a, b, F)
    assert trim([F.sadd(x, y) for x, y in itertools.zip_longest(mul(q, b, F), r, fillvalue=0)]) == trim(a)
    assert gcd((6, 0, 1), (1, 1), F) == (1, 1)  # gcd(x^2 - 1, x + 1) = x + 1
    m = (1, 0, 1)
    direct = (1,)
    for _ in range(7):
        direct = divmod_poly(mul(direct, (0, 1), F), m, F)[1]
    assert powmod((0, 1), 7, m, F) == direct


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_charpoly_against_sympy(p):
    F = make_field(p)
    rng = np.random.default_rng(p + 100)
    t = symbols("t")
    for _ in range(10):
        n = int(rng.integers(1, 7))
        A = F.random(rng, (n, n))
        expect = SPoly(Matrix(A.tolist()).charpoly(t).as_expr(), t, modulus=p)
        coeffs = [int(c) % p for c in reversed(expect.all_coeffs())]
        assert list(charpoly(A, F)) == coeffs


@pytest.mark.parametrize("p,k", [(2, 2), (5, 2)])
def test_charpoly_cayley_hamilton_extension(p, k):
    from unitgroup.poly import eval_matrix

    F = make_field(p, k)
    rng = np.random.default_rng(5)
    for _ in range(10):
        A = F.random(rng, (5, 5))
        assert not eval_matrix(charpoly(A, F), A, F).any()
