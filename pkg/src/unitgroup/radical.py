"""Jacobson radicals via composition factors of the regular module.

The chopper is MeatAxe-style: take a random element of the acting algebra,
factor its characteristic polynomial, and spin a null vector of each
factor.  A module is certified irreducible by the Holt-Rees condition: the
null space of f(theta) has dimension deg(f) and a null vector spins to
the whole module in both the module and its dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import FiniteAlgebra, quotient_algebra
from .errors import CertificationFailure, ChopperStall, NotNilpotent, UnitGroupError
from .field import FieldSpec
from .linalg import Subspace, inverse, kernel, left_kernel
from .poly import berlekamp_factor, charpoly, degree, eval_matrix

RETRY_BUDGET = 64
_POOL_EXTRA = 8


def spin(vectors, gens: list[np.ndarray], F: FieldSpec) -> Subspace:
    """Smallest subspace containing ``vectors`` and invariant under ``gens``."""
    n = gens[0].shape[0]
    S = Subspace.span(vectors, F, n)
    frontier = S.basis
    while frontier.shape[0]:
        images = np.concatenate([F.dot(frontier, A.T) for A in gens])
        residue = S.reduce(images)
        residue = residue[np.any(residue, axis=1)]
        if residue.shape[0] == 0:
            break
        new = Subspace.span(residue, F, n)
        S = S + new
        frontier = new.basis
    return S


def sub_action(S: Subspace, gens: list[np.ndarray]) -> list[np.ndarray]:
    F = S.field
    piv = list(S.pivots)
    return [F.dot(S.basis, A.T)[:, piv].T.copy() for A in gens]


def quotient_action(S: Subspace, gens: list[np.ndarray]) -> list[np.ndarray]:
    comp = S.non_pivots()
    return [S.reduce(A[:, comp].T)[:, comp].T.copy() for A in gens]


def hom_space(gens_a: list[np.ndarray], gens_b: list[np.ndarray], F: FieldSpec) -> Subspace:
    """Module maps X (d_b x d_a, row-major vectorized) with X A_i = B_i X."""
    da, db = gens_a[0].shape[0], gens_b[0].shape[0]
    blocks = []
    for A, B in zip(gens_a, gens_b):
        left = np.kron(np.eye(db, dtype=np.int64), A.T)
        right = np.kron(B, np.eye(da, dtype=np.int64))
        blocks.append(F.sub(left, right))
    return kernel(np.concatenate(blocks), F)


def _random_element(pool: list[np.ndarray], F: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    coeffs = F.random(rng, len(pool))
    if not np.any(coeffs):
        coeffs[rng.integers(len(pool))] = 1
    out = np.zeros_like(pool[0])
    for c, M in zip(coeffs, pool):
        if c:
            out = F.add(out, F.scale(int(c), M))
    return out


def find_submodule(gens: list[np.ndarray], F: FieldSpec, rng: np.random.Generator,
                   budget: int = RETRY_BUDGET) -> Subspace | None:
    """A proper nonzero invariant subspace, or None if the module is irreducible."""
    n = gens[0].shape[0]
    if n == 1:
        return None
    dual = [A.T.copy() for A in gens]
    pool = list(gens)
    for _ in range(budget):
        i, j = rng.integers(len(pool), size=2)
        pool.append(F.dot(pool[i], pool[j]))
        if len(pool) > len(gens) + _POOL_EXTRA:
            pool.pop(len(gens))
        theta = _random_element(pool, F, rng)
        for f, _mult in berlekamp_factor(charpoly(theta, F), F):
            N = eval_matrix(f, theta, F)
            K = kernel(N, F)
            S = spin(K.basis[:1], gens, F)
            if S.dim < n:
                return S
            Kt = left_kernel(N, F)
            St = spin(Kt.basis[:1], dual, F)
            if St.dim < n:
                return kernel(St.basis, F)
            if K.dim == degree(f):
                return None
    raise ChopperStall(n, budget)


def chop(gens: list[np.ndarray], F: FieldSpec, seed: int = 0, budget: int = RETRY_BUDGET) -> list[list[np.ndarray]]:
    """Composition factors (as generator images) of the module, with repeats."""
    rng = np.random.default_rng(seed)
    out = []
    stack = [gens]
    while stack:
        g = stack.pop()
        if g[0].shape[0] == 0:
            continue
        S = find_submodule(g, F, rng, budget)
        if S is None:
            out.append(g)
        else:
            stack.append(quotient_action(S, g))
            stack.append(sub_action(S, g))
    return out


@dataclass(frozen=True, eq=False)
class WordBasis:
    """A basis of A made of words in the generators, built by spinning 1.

    Word t equals ``gens[gen[t]] * word[parent[t]]``; word 0 is the unit.
    """

    gen: tuple[int, ...]
    parent: tuple[int, ...]
    to_standard: np.ndarray  # row j: coefficients of b_j in terms of the words


def word_basis(A: FiniteAlgebra) -> WordBasis:
    F = A.field
    gens = A.generators
    vecs = [A.unit]
    gen_idx, parent = [-1], [-1]
    S = Subspace.span([A.unit], F, A.dim)
    frontier = [0]
    while frontier and S.dim < A.dim:
        nxt = []
        for t in frontier:
            for gi, g in enumerate(gens):
                v = A.mul(g, vecs[t])
                if not S.contains(v):
                    S = S + Subspace.span([v], F, A.dim)
                    vecs.append(v)
                    gen_idx.append(gi)
                    parent.append(t)
                    nxt.append(len(vecs) - 1)
        frontier = nxt
    if S.dim < A.dim:
        raise UnitGroupError("algebra generators do not span the algebra")
    W = np.stack(vecs)
    return WordBasis(tuple(gen_idx), tuple(parent), inverse(W, F))


@dataclass(frozen=True, eq=False)
class IrreducibleRep:
    field: FieldSpec
    dim: int
    gen_images: tuple[np.ndarray, ...]
    images: np.ndarray  # (algebra dim, d, d): image of each basis element
    multiplicity: int = 1

    def __call__(self, a) -> np.ndarray:
        d = self.dim
        flat = self.images.reshape(self.images.shape[0], d * d)
        return self.field.dot(np.asarray(a, dtype=np.int64)[None, :], flat).reshape(d, d)

    @cached_property
    def endomorphism_dim(self) -> int:
        return hom_space(list(self.gen_images), list(self.gen_images), self.field).dim

    def is_isomorphic(self, other: "IrreducibleRep") -> bool:
        if self.dim != other.dim:
            return False
        return hom_space(list(self.gen_images), list(other.gen_images), self.field).dim > 0


def _basis_images(gen_images: list[np.ndarray], wb: WordBasis, F: FieldSpec) -> np.ndarray:
    d = gen_images[0].shape[0]
    words = [np.eye(d, dtype=np.int64)]
    for g, par in zip(wb.gen[1:], wb.parent[1:]):
        words.append(F.dot(gen_images[g], words[par]))
    stacked = np.stack(words).reshape(len(words), d * d)
    return F.dot(wb.to_standard, stacked).reshape(-1, d, d)


def composition_factors(A: FiniteAlgebra, seed: int = 0) -> list[IrreducibleRep]:
    """Distinct composition factors of the left regular module of A."""
    if A.dim < 1:
        raise ValueError("algebra must have dimension >= 1")
    F = A.field
    gens = [A.left_matrix(g) for g in A.generators]
    wb = word_basis(A)
    reps: list[IrreducibleRep] = []
    counts: list[int] = []
    for g in chop(gens, F, seed):
        rep = IrreducibleRep(F, g[0].shape[0], tuple(g), _basis_images(g, wb, F))
        for i, r in enumerate(reps):
            if r.is_isomorphic(rep):
                counts[i] += 1
                break
        else:
            reps.append(rep)
            counts.append(1)
    out = [IrreducibleRep(r.field, r.dim, r.gen_images, r.images, c) for r, c in zip(reps, counts)]
    out.sort(key=lambda r: (r.dim, -r.multiplicity))
    return out


def radical_from_factors(A: FiniteAlgebra, factors: list[IrreducibleRep]) -> Subspace:
    F = A.field
    blocks = [r.images.reshape(A.dim, -1).T for r in factors]
    return kernel(np.concatenate(blocks), F)


def nilpotency_index(J: Subspace, A: FiniteAlgebra) -> int:
    """Least m with J^m = 0."""
    P = J
    m = 1
    while P.dim > 0:
        nxt = A.product_space(P, J)
        if nxt == P or m > A.dim:
            raise NotNilpotent()
        P = nxt
        m += 1
    return m


def jacobson_radical(A: FiniteAlgebra, seed: int = 0, certify: bool = True) -> Subspace:
    """J(A) as the common kernel of all irreducible representations."""
    factors = composition_factors(A, seed)
    J = radical_from_factors(A, factors)
    if not certify:
        return J
    ok, side = A.is_two_sided_ideal(J)
    if not ok:
        raise CertificationFailure(f"radical is not closed under {side} multiplication")
    try:
        nilpotency_index(J, A)
    except NotNilpotent as exc:
        raise CertificationFailure("radical is not nilpotent") from exc
    expected = sum(r.dim * r.dim // r.endomorphism_dim for r in factors)
    if A.dim - J.dim != expected:
        raise CertificationFailure(
            f"dim A/J = {A.dim - J.dim} but the factors account for {expected}"
        )
    if J.dim:
        Q, _ = quotient_algebra(A, J)
        if jacobson_radical(Q, seed + 1, certify=False).dim:
            raise CertificationFailure("A/J has a nonzero radical")
    return J
