"""Group algebras FG and finite-dimensional algebras given by structure constants.

Elements of an algebra are coordinate vectors (int64 arrays of field codes).
Matrices of multiplication operators use the column convention:
``left_matrix(a) @ v`` is the coordinate vector of ``a * v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotAnIdeal
from .field import FieldSpec
from .groups import GroupTable, conjugacy_classes, quotient_by
from .linalg import Subspace, identity, kernel, solve


class FiniteAlgebra:
    """Common machinery for unital associative algebras over a finite field."""

    field: FieldSpec
    dim: int
    unit: np.ndarray

    @property
    def generators(self) -> list[np.ndarray]:
        """Elements that generate the algebra (with the unit)."""
        return [self.basis_vector(i) for i in range(self.dim)]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def left_matrix(self, a) -> np.ndarray:
        raise NotImplementedError

    def right_matrix(self, a) -> np.ndarray:
        raise NotImplementedError

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``c[i, j, :]`` = coordinates of ``b_i * b_j``."""
        n = self.dim
        c = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            c[i] = self.left_matrix(self.basis_vector(i)).T
        return c

    def mul(self, a, b) -> np.ndarray:
        return self.field.matvec(self.left_matrix(a), b)

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, np.asarray(coeffs, dtype=np.int64))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit.copy())

    def left_products(self, a, vectors) -> np.ndarray:
        """Rows ``a * v`` for each row v."""
        V = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        return self.field.dot(V, self.left_matrix(a).T)

    def product_space(self, U: Subspace, V: Subspace) -> Subspace:
        """span{u v : u in U, v in V}."""
        n = self.dim
        if U.dim == 0 or V.dim == 0:
            return Subspace.zero(self.field, n)
        rows = [self.left_products(u, V.basis) for u in U.basis]
        return Subspace.span(np.concatenate(rows), self.field, n)

    def is_two_sided_ideal(self, I: Subspace) -> tuple[bool, str]:
        for u in I.basis:
            if not I.contains(self.left_matrix(u).T):
                return False, "right"
            if not I.contains(self.right_matrix(u).T):
                return False, "left"
        return True, ""

    def minimal_polynomial(self, a, identity_elem=None) -> tuple:
        """Monic minimal polynomial of a inside the algebra with the given identity."""
        F = self.field
        e = self.unit if identity_elem is None else np.asarray(identity_elem, dtype=np.int64)
        powers = [e]
        while True:
            nxt = self.mul(a, powers[-1])
            M = np.stack(powers).T
            x = solve(M, nxt, F)
            if x is not None:
                # a^d = sum x_i a^i  ->  t^d - sum x_i t^i
                return tuple(int(c) for c in F.neg(x)) + (1,)
            powers.append(nxt)


class GroupAlgebra(FiniteAlgebra):
    """FG with basis the group elements in table order."""

    def __init__(self, G: GroupTable, F: FieldSpec):
        self.group = G
        self.field = F
        self.dim = G.order
        self.unit = self.basis_vector(0)
        self._left_idx = G.mul[np.arange(G.order)[:, None], G.inv[None, :]]
        self._right_idx = G.mul[G.inv[None, :], np.arange(G.order)[:, None]]
        self._conv_idx = G.mul[G.inv[:, None], np.arange(G.order)[None, :]]

    def __repr__(self) -> str:
        return f"{self.field}[{self.group.spec}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebra) and other.group is self.group and other.field == self.field

    def __hash__(self) -> int:
        return hash((id(self.group), self.field))

    @property
    def generators(self) -> list[np.ndarray]:
        gens = sorted(set(self.group.generators.values()) - {0})
        return [self.basis_vector(g) for g in gens] or [self.unit.copy()]

    def left_matrix(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)[self._left_idx]

    def right_matrix(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)[self._right_idx]

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = np.flatnonzero(a)
        if nz.size == 0:
            return self.zero()
        F = self.field
        return F.sum(F.mul(a[nz, None], b[self._conv_idx[nz]]), axis=0)

    def mul_batch(self, a, b) -> np.ndarray:
        """Row-wise products of two stacks of elements (shape (N, |G|))."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        F = self.field
        return F.sum(F.mul(a[:, :, None], b[:, self._conv_idx]), axis=1)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        n = self.dim
        c = np.zeros((n, n, n), dtype=np.int64)
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        c[i, j, self.group.mul] = 1
        return c

    def g(self, name_or_index) -> "AlgebraElement":
        """The group element as an algebra element (by generator word or index)."""
        idx = name_or_index if isinstance(name_or_index, (int, np.integer)) else self.group.word(name_or_index)
        return AlgebraElement(self, self.basis_vector(int(idx)))

    def hat(self, S: Iterable[int]) -> "AlgebraElement":
        return hat(S, self.group, self.field, self)


class AlgebraPresentation(FiniteAlgebra):
    """Algebra given by structure constants ``table[i, j, :] = b_i * b_j``."""

    def __init__(self, F: FieldSpec, table, unit, generators: Sequence | None = None, name: str = ""):
        self.field = F
        self.table = np.asarray(table, dtype=np.int64)
        self.dim = self.table.shape[0]
        self.unit = np.asarray(unit, dtype=np.int64)
        self._generators = None if generators is None else [np.asarray(g, dtype=np.int64) for g in generators]
        self.name = name

    def __repr__(self) -> str:
        return f"AlgebraPresentation({self.name or 'dim ' + str(self.dim)} over {self.field})"

    @property
    def generators(self) -> list[np.ndarray]:
        if self._generators is None:
            return super().generators
        return self._generators

    @property
    def structure_constants(self) -> np.ndarray:
        return self.table

    @cached_property
    def _left_flat(self) -> np.ndarray:
        return self.table.reshape(self.dim, self.dim * self.dim)

    @cached_property
    def _right_flat(self) -> np.ndarray:
        return self.table.transpose(1, 0, 2).reshape(self.dim, self.dim * self.dim)

    def left_matrix(self, a) -> np.ndarray:
        n = self.dim
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        a = np.asarray(a, dtype=np.int64)
        return self.field.dot(a[None, :], self._left_flat).reshape(n, n).T

    def right_matrix(self, a) -> np.ndarray:
        n = self.dim
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        a = np.asarray(a, dtype=np.int64)
        return self.field.dot(a[None, :], self._right_flat).reshape(n, n).T

    def check_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        n = self.dim
        if samples is None and n <= 32:
            triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
        else:
            rng = np.random.default_rng(seed)
            triples = [tuple(t) for t in rng.integers(0, n, size=(samples or 500, 3))]
        for i, j, k in triples:
            left = self.mul(self.table[i, j], self.basis_vector(k))
            right = self.mul(self.basis_vector(i), self.table[j, k])
            if not np.array_equal(left, right):
                return False
        for i in range(n):
            b = self.basis_vector(i)
            if not (np.array_equal(self.mul(self.unit, b), b) and np.array_equal(self.mul(b, self.unit), b)):
                return False
        return True


def matrix_algebra(n: int, F: FieldSpec) -> AlgebraPresentation:
    """M(n, F) with basis E_ij in row-major order."""
    d = n * n
    table = np.zeros((d, d, d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                table[i * n + j, j * n + k, i * n + k] = 1
    unit = np.zeros(d, dtype=np.int64)
    unit[[i * n + i for i in range(n)]] = 1
    return AlgebraPresentation(F, table, unit, name=f"M({n},{F})")


# ----------------------------------------------------------------------
# elements with operator overloading
# ----------------------------------------------------------------------
class AlgebraElement:
    """An element of a finite algebra; integers coerce into the prime subfield."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FiniteAlgebra, coeffs):
        self.algebra = algebra
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        if self.coeffs.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coefficients, got shape {self.coeffs.shape}")

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise ValueError("elements belong to different algebras")
            return other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.algebra.field.scale(self.algebra.field.from_int(int(other)), self.algebra.unit)
        return NotImplemented

    def _new(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self.algebra, coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.algebra.field.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.algebra.field.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.algebra.field.sub(o, self.coeffs))

    def __neg__(self):
        return self._new(self.algebra.field.neg(self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.algebra.mul(self.coeffs, o))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.algebra.mul(o, self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            inv = ga_inverse(self)
            if inv is None:
                raise ZeroDivisionError("element is not a unit")
            return inv ** (-e)
        result, base = self.algebra.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "AlgebraElement":
        """Multiply by the field element with code c."""
        return self._new(self.algebra.field.scale(c, self.coeffs))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return bool(np.array_equal(self.coeffs, o))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __repr__(self) -> str:
        alg = self.algebra
        names = alg.group.names if isinstance(alg, GroupAlgebra) else [f"b{i}" for i in range(alg.dim)]
        terms = [f"{c}*{names[i]}" if c != 1 else names[i] for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


# ----------------------------------------------------------------------
# spec-level operations
# ----------------------------------------------------------------------
def _vec(a) -> np.ndarray:
    return a.coeffs if isinstance(a, AlgebraElement) else np.asarray(a, dtype=np.int64)


def ga_mul(a, b, G: GroupTable | None = None, F: FieldSpec | None = None):
    """Convolution product in FG."""
    if isinstance(a, AlgebraElement):
        return a * b
    return GroupAlgebra(G, F).mul(a, b)


def hat(S: Iterable[int], G: GroupTable, F: FieldSpec, algebra: GroupAlgebra | None = None) -> AlgebraElement:
    A = algebra if algebra is not None and algebra.group is G else GroupAlgebra(G, F)
    v = np.zeros(G.order, dtype=np.int64)
    v[list(S)] = 1
    return AlgebraElement(A, v)


def regular_rep(a: AlgebraElement) -> np.ndarray:
    return a.algebra.left_matrix(a.coeffs)


def ga_inverse(a: AlgebraElement) -> AlgebraElement | None:
    """Two-sided inverse of a, or None when a is not a unit."""
    A = a.algebra
    x = solve(A.left_matrix(a.coeffs), A.unit, A.field)
    if x is None:
        return None
    return AlgebraElement(A, x)


def annihilator(a, side: str = "left", algebra: FiniteAlgebra | None = None) -> Subspace:
    """``side="left"``: {x : x a = 0};  ``side="right"``: {x : a x = 0}."""
    A = algebra if algebra is not None else a.algebra
    v = _vec(a)
    if side == "left":
        return kernel(A.right_matrix(v), A.field)
    if side == "right":
        return kernel(A.left_matrix(v), A.field)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def class_sums(G: GroupTable, F: FieldSpec, algebra: GroupAlgebra | None = None) -> list[AlgebraElement]:
    A = algebra if algebra is not None and algebra.group is G else GroupAlgebra(G, F)
    return [hat(c, G, F, A) for c in conjugacy_classes(G).classes]


def center_basis(A: FiniteAlgebra) -> Subspace:
    """Z(A): elements commuting with the algebra generators."""
    F = A.field
    gens = A.generators
    if not gens:
        return Subspace.full(F, A.dim)
    M = np.concatenate([F.sub(A.right_matrix(g), A.left_matrix(g)) for g in gens])
    return kernel(M, F)


@dataclass(frozen=True)
class QuotientMap:
    """Linear projection A -> A/I onto the non-pivot coordinates of I."""

    ideal: Subspace
    complement: tuple[int, ...]

    def __call__(self, v) -> np.ndarray:
        r = self.ideal.reduce(_vec(v))
        return r[..., list(self.complement)]

    @property
    def matrix(self) -> np.ndarray:
        return self(identity(self.ideal.ambient_dim)).T


def quotient_algebra(A: FiniteAlgebra, I: Subspace) -> tuple[AlgebraPresentation, QuotientMap]:
    ok, side = A.is_two_sided_ideal(I)
    if not ok:
        raise NotAnIdeal(side)
    comp = tuple(I.non_pivots())
    proj = QuotientMap(I, comp)
    C = A.structure_constants[np.ix_(comp, comp)]
    table = proj(C.reshape(-1, A.dim)).reshape(len(comp), len(comp), len(comp))
    Q = AlgebraPresentation(
        A.field, table, proj(A.unit), [proj(g) for g in A.generators],
        name=f"{A!r}/I{I.dim}",
    )
    return Q, proj


def induced_quotient_map(G: GroupTable, N: Iterable[int], F: FieldSpec) -> tuple[np.ndarray, Subspace]:
    """Matrix of FG -> F[G/N] (summing over cosets) and its kernel."""
    Q, proj = quotient_by(G, N)
    eta = np.zeros((Q.order, G.order), dtype=np.int64)
    eta[proj, np.arange(G.order)] = 1
    return eta, kernel(eta, F)


def coset_augmentations(a, G: GroupTable, N: Iterable[int], F: FieldSpec) -> np.ndarray:
    eta, _ = induced_quotient_map(G, N, F)
    return F.matvec(eta, _vec(a))
