"""Dense exact linear algebra over GF(q).

Matrices are 2-D int64 numpy arrays of field codes; the field travels as a
separate argument.  Subspaces are kept in reduced row-echelon form, which
makes them canonical: two subspaces are equal iff their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import AmbientMismatch
from .field import FieldSpec


def as_matrix(rows, cols: int | None = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(0 if cols is None else -1, cols or 0) if M.size == 0 else M[None, :]
    return M


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(M, F: FieldSpec) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of M, its rank, and its pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r, c:] = F.scale(F.sinv(lead), R[r, c:])
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit, c:] = F.sub(R[hit, c:], F.mul(col[hit, None], R[r, None, c:]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(M, F: FieldSpec) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return rref(M, F)[1]


def kernel(M, F: FieldSpec) -> "Subspace":
    """Right null space {v : M v = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return Subspace.full(F, ncols)
    R, r, pivots = rref(M, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    if not free:
        return Subspace.zero(F, ncols)
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        if r:
            K[row, pivots] = F.neg(R[:r, f])
    return Subspace.span(K, F, ncols)


def left_kernel(M, F: FieldSpec) -> "Subspace":
    """{w : w M = 0}."""
    return kernel(np.asarray(M, dtype=np.int64).T, F)


def solve(A, b, F: FieldSpec) -> np.ndarray | None:
    """One solution x of A x = b, or None if the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, r, pivots = rref(aug, F)
    if pivots and pivots[-1] == A.shape[1]:
        return None
    x = np.zeros(A.shape[1], dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = R[row, -1]
    return x


def inverse(A, F: FieldSpec) -> np.ndarray | None:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, r, pivots = rref(np.concatenate([A, identity(n)], axis=1), F)
    if r < n or pivots[n - 1] != n - 1:
        return None
    return R[:, n:]


def is_zero(M) -> bool:
    return not np.any(M)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` (RREF, no zero rows) inside GF(q)^ambient_dim."""

    field: FieldSpec
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def span(cls, vectors, F: FieldSpec, ambient_dim: int | None = None) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = V.shape[-1]
        V = V.reshape(-1, ambient_dim)
        if V.shape[0] == 0:
            return cls.zero(F, ambient_dim)
        R, r, pivots = rref(V, F)
        basis = R[:r].copy()
        basis.setflags(write=False)
        return cls(F, ambient_dim, basis, tuple(pivots))

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        b = np.zeros((0, n), dtype=np.int64)
        b.setflags(write=False)
        return cls(F, n, b, ())

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        b = identity(n)
        b.setflags(write=False)
        return cls(F, n, b, tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(self.ambient_dim, other.ambient_dim)

    def reduce(self, v) -> np.ndarray:
        """Remainder of v (vector or row stack) modulo this subspace."""
        v = np.asarray(v, dtype=np.int64)
        if self.dim == 0:
            return v.copy()
        F = self.field
        coeffs = v[..., list(self.pivots)]
        return F.sub(v, F.dot(np.atleast_2d(coeffs), self.basis).reshape(v.shape))

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of v with respect to ``basis``; v must lie in the span."""
        v = np.asarray(v, dtype=np.int64)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return v[..., list(self.pivots)]

    def combine(self, coeffs) -> np.ndarray:
        return self.field.dot(np.atleast_2d(coeffs), self.basis).reshape(np.shape(coeffs)[:-1] + (self.ambient_dim,))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.field, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim == 0 or other.contains(self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def non_pivots(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V by the Zassenhaus block elimination."""
    U._check(V)
    F, n = U.field, U.ambient_dim
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(F, n)
    top = np.concatenate([U.basis, U.basis], axis=1)
    bottom = np.concatenate([V.basis, np.zeros_like(V.basis)], axis=1)
    R, r, _ = rref(np.concatenate([top, bottom]), F)
    rows = [i for i in range(r) if not np.any(R[i, :n])]
    return Subspace.span(R[rows, n:], F, n)
