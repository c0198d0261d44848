"""Unit-group invariants of FG.

Orders come from the Wedderburn data: |U(FG)| = q^dim J times the product
of |GL(n, q^d)| over the simple components.  Subgroups of V = 1 + J are
handled linearly: a family ``1 + X`` for a subspace X of J, and
centralizers computed inside J (xu = ux is linear in x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .algebra import AlgebraElement, FiniteAlgebra, GroupAlgebra, quotient_algebra
from .errors import ReferenceMismatch, TooLarge
from .field import FieldSpec
from .groups import GroupTable
from .linalg import Subspace, kernel
from .radical import jacobson_radical, nilpotency_index
from .wedderburn import (
    Decomposition,
    FerrazData,
    central_decomposition,
    ferraz_decomposition,
    predicted_C3xD10,
)

BRUTE_FORCE_CAP = 2**20
OUTSIDE_TABLE = "outside reference table"


def gl_order(n: int, q: int) -> int:
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    return math.prod(q**n - q**i for i in range(n))


def unit_group_order(dec: Decomposition, radical_dim: int, q: int) -> int:
    out = q**radical_dim
    for c in dec.components:
        out *= gl_order(c.n, q**c.d) ** c.count
    return out


# ----------------------------------------------------------------------
# affine families 1 + X
# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class WitnessFamily:
    """The set ``{1 + sum_i c_i * directions[i] : c_i in F}``.

    ``directions`` fixes the parameter order (rows are algebra elements);
    ``space`` is their span.
    """

    name: str
    algebra: FiniteAlgebra
    directions: np.ndarray

    def __post_init__(self):
        D = np.asarray(self.directions, dtype=np.int64).reshape(-1, self.algebra.dim)
        object.__setattr__(self, "directions", D)
        if self.space.dim != D.shape[0]:
            raise ValueError(f"directions of {self.name} are linearly dependent")

    @property
    def space(self) -> Subspace:
        return Subspace.span(self.directions, self.algebra.field, self.algebra.dim)

    @property
    def dim(self) -> int:
        return self.directions.shape[0]

    @property
    def size(self) -> int:
        return self.algebra.field.q ** self.dim

    def coords(self, params) -> np.ndarray:
        """Coordinates of the member(s) for parameter vector(s)."""
        F = self.algebra.field
        P = np.atleast_2d(np.asarray(params, dtype=np.int64))
        if self.dim == 0:
            out = np.zeros((P.shape[0], self.algebra.dim), dtype=np.int64)
        else:
            out = F.dot(P, self.directions)
        out = F.add(out, self.algebra.unit[None, :])
        return out if np.ndim(params) > 1 else out[0]

    def __call__(self, params) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.coords(params))

    def contains(self, a) -> bool:
        v = a.coeffs if isinstance(a, AlgebraElement) else np.asarray(a, dtype=np.int64)
        F = self.algebra.field
        return self.space.contains(F.sub(v, self.algebra.unit))

    def sample_params(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self.algebra.field.random(rng, (count, self.dim))

    def all_params(self) -> Iterator[np.ndarray]:
        q, n = self.algebra.field.q, self.dim
        for code in range(q**n):
            yield np.array([(code // q**i) % q for i in range(n)], dtype=np.int64)

    def is_closed(self) -> bool:
        """1 + X is closed under products iff X * X lies in X."""
        X = self.space
        return self.algebra.product_space(X, X) <= X

    def is_abelian(self) -> bool:
        A, F = self.algebra, self.algebra.field
        for i, a in enumerate(self.directions):
            for b in self.directions[i + 1:]:
                if np.any(F.sub(A.mul(a, b), A.mul(b, a))):
                    return False
        return True


def v_group(J: Subspace, A: FiniteAlgebra) -> WitnessFamily:
    """V = 1 + J, parameterized by the canonical basis of J."""
    return WitnessFamily("V", A, J.basis)


def centralizer_space(targets: Sequence, J: Subspace, A: FiniteAlgebra | None = None) -> Subspace:
    """{x in J : x t = t x for every target t}."""
    targets = list(targets)
    if not targets:
        raise ValueError("need at least one target")
    if A is None:
        A = targets[0].algebra
    F = A.field
    if J.dim == 0:
        return J
    blocks = []
    for t in targets:
        v = t.coeffs if isinstance(t, AlgebraElement) else np.asarray(t, dtype=np.int64)
        comm = F.sub(A.right_matrix(v), A.left_matrix(v))  # x -> x t - t x
        blocks.append(F.dot(comm, J.basis.T))
    K = kernel(np.concatenate(blocks), F)
    if K.dim == 0:
        return Subspace.zero(F, A.dim)
    return Subspace.span(F.dot(K.basis, J.basis), F, A.dim)


def center_of_V(J: Subspace, A: FiniteAlgebra) -> Subspace:
    """Directions of Z(V): the centralizer of J inside J."""
    if J.dim == 0:
        return J
    return centralizer_space(list(J.basis), J, A)


# ----------------------------------------------------------------------
# brute force oracle
# ----------------------------------------------------------------------
class _ByteOps:
    """Field ops on uint8 code arrays through q*q lookup tables (q <= 16)."""

    def __init__(self, F: FieldSpec):
        a = np.arange(F.q)
        self.q = F.q
        self.mul_t = F.mul(a[:, None], a[None, :]).astype(np.uint8).ravel()
        self.sub_t = F.sub(a[:, None], a[None, :]).astype(np.uint8).ravel()
        self.inv_t = np.concatenate([[0], F.inv(a[1:])]).astype(np.uint8)

    def _idx(self, a, b):
        return (a * np.uint8(self.q)) + b

    def mul(self, a, b):
        return np.take(self.mul_t, self._idx(a, b))

    def sub(self, a, b):
        return np.take(self.sub_t, self._idx(a, b))

    def inv(self, a):
        return np.take(self.inv_t, a)


def _batched_invertible(M: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Boolean mask of nonsingular matrices in a stack of shape (N, n, n)."""
    ops = _ByteOps(F) if F.q <= 16 else F
    M = M.astype(np.uint8) if F.q <= 16 else M.copy()
    N, n, _ = M.shape
    ok = np.ones(N, dtype=bool)
    for c in range(n):
        nz = M[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        swap = np.flatnonzero(piv != c)
        if swap.size:
            rows = M[swap, piv[swap]].copy()
            M[swap, piv[swap]] = M[swap, c]
            M[swap, c] = rows
        if c == n - 1:
            break
        lead = np.where(has, M[:, c, c], 1).astype(M.dtype)
        # column c below the pivot is never read again, so only update c+1:
        f = ops.mul(ops.inv(lead)[:, None], M[:, c + 1:, c])
        M[:, c + 1:, c + 1:] = ops.sub(M[:, c + 1:, c + 1:], ops.mul(f[:, :, None], M[:, c:c + 1, c + 1:]))
    return ok


def brute_force_units(G: GroupTable, F: FieldSpec, cap: int = BRUTE_FORCE_CAP, chunk: int = 1 << 14) -> int:
    """Count units of FG by testing every element's regular representation.

    Units are stable under nonzero scalars, so only elements whose first
    nonzero coefficient is 1 are tested and the count is scaled by q - 1.
    """
    n, q = G.order, F.q
    total = q**n
    if total > cap:
        raise TooLarge(total, cap)
    A = GroupAlgebra(G, F)
    count = 0
    for lead in range(n):
        tail = n - 1 - lead
        powers = q ** np.arange(tail, dtype=np.int64)
        for start in range(0, q**tail, chunk):
            codes = np.arange(start, min(start + chunk, q**tail), dtype=np.int64)
            coeffs = np.zeros((codes.size, n), dtype=np.int64)
            coeffs[:, lead] = 1
            coeffs[:, lead + 1:] = (codes[:, None] // powers[None, :]) % q
            mats = coeffs[:, A._left_idx]
            count += int(_batched_invertible(mats, F).sum())
    return count * (q - 1)


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class UnitReport:
    field: FieldSpec
    group: str
    group_order: int
    radical_dim: int
    nilpotency_index: int
    decomposition: Decomposition
    unit_order: int
    structure: str
    case_label: str
    ferraz: FerrazData

    def to_dict(self) -> dict:
        """Canonical record; key order is part of the output format."""
        F = self.field
        return {
            "field": {"p": F.p, "k": F.k, "q": F.q, "modulus": list(F.modulus)},
            "group": {"spec": self.group, "order": self.group_order},
            "radical_dim": self.radical_dim,
            "nilpotency_index": self.nilpotency_index,
            "components": self.decomposition.as_list(),
            "unit_group_order": str(self.unit_order),
            "structure": self.structure,
            "case_label": self.case_label,
            "ferraz": {"m": self.ferraz.m, "orbit_sizes": self.ferraz.orbit_sizes},
        }


def generic_structure(dec: Decomposition, radical_dim: int, F: FieldSpec) -> str:
    """Unit group written from the computed data, e.g. ``V ⋊ (C_1 × GL(2,4)^3)``."""
    factors = []
    for c in dec.components:
        qd = F.q**c.d
        term = f"C_{qd - 1}" if c.n == 1 else f"GL({c.n},{qd})"
        factors.append(term if c.count == 1 else f"{term}^{c.count}")
    body = " × ".join(factors)
    if radical_dim == 0:
        return body
    return f"V ⋊ ({body}); |V| = {F.p}^{radical_dim * F.k}"


def _is_reference_group(G: GroupTable) -> bool:
    return G.spec == "C3xD10"


def structure_report(G: GroupTable, F: FieldSpec, seed: int = 0) -> UnitReport:
    """Radical, decomposition (two methods) and unit-group order of FG.

    For GF(p^k)[C3 x D10] with p != 3 the result is also checked against
    the reference table and a mismatch raises :class:`ReferenceMismatch`.
    """
    A = GroupAlgebra(G, F)
    J = jacobson_radical(A, seed=seed)
    nil = nilpotency_index(J, A)
    semisimple = quotient_algebra(A, J)[0] if J.dim else A
    central = central_decomposition(semisimple, seed=seed)
    counted, data = ferraz_decomposition(G, F, radical_dim=J.dim)
    if central != counted:
        raise ReferenceMismatch(f"central splitting gives {central}, class counting gives {counted}")
    if central.total_dim != G.order - J.dim:
        raise ReferenceMismatch(f"components cover {central.total_dim} of {G.order - J.dim} dimensions")
    if data.r != central.r:
        raise ReferenceMismatch(f"{data.r} cyclotomic orbits but {central.r} components")
    order = unit_group_order(central, J.dim, F.q)
    if _is_reference_group(G) and F.p != 3:
        pred = predicted_C3xD10(F.p, F.k)
        if pred.decomposition != central or pred.radical_dim != J.dim:
            raise ReferenceMismatch(
                f"table row {pred.case_label!r} predicts {pred.decomposition} with dim J = "
                f"{pred.radical_dim}; computed {central} with dim J = {J.dim}"
            )
        structure, label = pred.structure, pred.case_label
    else:
        structure, label = generic_structure(central, J.dim, F), OUTSIDE_TABLE
    return UnitReport(F, G.spec, G.order, J.dim, nil, central, order, structure, label, data)
