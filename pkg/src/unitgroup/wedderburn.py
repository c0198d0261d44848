"""Wedderburn decompositions of FG/J(FG).

Two independent routes produce the same ``(n, d, count)`` data:

* :func:`ferraz_decomposition` counts orbits of ``g -> g^q`` on p-regular
  classes (one simple component per orbit, center degree = orbit size),
  takes the commutative components from F(G/G'), and pins down the
  remaining matrix degrees from the dimension count.
* :func:`central_decomposition` splits the center of a semisimple algebra
  into primitive idempotents and reads off each block's dimensions.

:func:`predicted_C3xD10` is the reference table for G = C3 x D10.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .algebra import FiniteAlgebra, GroupAlgebra, center_basis
from .errors import (
    AmbiguousDegrees,
    CertificationFailure,
    CharThree,
    DegreeZero,
    NonPrime,
    NonsquareDimension,
    NotSemisimple,
)
from .field import FieldSpec, is_prime
from .groups import GroupTable, derived_quotient, p_regular_classes
from .linalg import Subspace, kernel, rank
from .poly import berlekamp_factor, degree, divmod_poly, mul as pmul, powmod

# ----------------------------------------------------------------------
# result types
# ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SimpleComponent:
    """``count`` copies of M(n, K) with [K : F] = d."""

    n: int
    d: int
    count: int = 1

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.count < 1:
            raise ValueError(f"invalid component {self}")

    @property
    def dim(self) -> int:
        return self.n * self.n * self.d

    def as_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "count": self.count}


@dataclass(frozen=True)
class Decomposition:
    components: tuple[SimpleComponent, ...]

    @classmethod
    def from_blocks(cls, blocks: Sequence[tuple[int, int]]) -> "Decomposition":
        """Group a list of (n, d) blocks into components sorted by (n, d)."""
        counts = Counter((int(n), int(d)) for n, d in blocks)
        return cls(tuple(SimpleComponent(n, d, c) for (n, d), c in sorted(counts.items())))

    @classmethod
    def from_triples(cls, triples: Sequence[tuple[int, int, int]]) -> "Decomposition":
        return cls.from_blocks([(n, d) for n, d, c in triples for _ in range(c)])

    @property
    def r(self) -> int:
        return sum(c.count for c in self.components)

    @property
    def s(self) -> int:
        return sum(c.count for c in self.components if c.n == 1)

    @property
    def total_dim(self) -> int:
        return sum(c.dim * c.count for c in self.components)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(c.n, c.d, c.count) for c in self.components]

    def as_list(self) -> list[dict]:
        return [c.as_dict() for c in self.components]

    def __str__(self) -> str:
        parts = []
        for c in self.components:
            base = "F" if c.d == 1 else f"F_{c.d}"
            term = base if c.n == 1 else f"M({c.n},{base})"
            parts.append(term if c.count == 1 else f"{term}^{c.count}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class FerrazData:
    """Orbits of the q-power map on p-regular classes."""

    m: int
    orbits: tuple[tuple[int, ...], ...]  # each orbit: representatives of its classes
    p: int = 0
    q: int = 0

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    @property
    def r(self) -> int:
        return len(self.orbits)


# ----------------------------------------------------------------------
# Ferraz counting
# ----------------------------------------------------------------------
def cyclotomic_classes(G: GroupTable, p: int, q: int) -> FerrazData:
    """Orbits of ``[g] -> [g^q]`` on the p-regular classes of G.

    Orbits are listed in order of their smallest class representative; each
    orbit lists the representatives of its classes in increasing order.
    """
    parts, m = p_regular_classes(G, p)
    where = {}
    for i, cls in enumerate(parts.classes):
        for g in cls:
            where[g] = i
    image = [where[G.power(r, q)] for r in parts.representatives]
    seen = [False] * len(parts)
    orbits = []
    order = sorted(range(len(parts)), key=lambda i: parts.representatives[i])
    for i in order:
        if seen[i]:
            continue
        orbit = []
        j = i
        while not seen[j]:
            seen[j] = True
            orbit.append(parts.representatives[j])
            j = image[j]
        orbits.append(tuple(sorted(orbit)))
    return FerrazData(m, tuple(orbits), p, q)


def _abelian_decomposition(G: GroupTable, F: FieldSpec) -> tuple[Decomposition, FerrazData]:
    if not G.is_abelian:
        raise ValueError("expected an abelian group")
    data = cyclotomic_classes(G, F.p, F.q)
    return Decomposition.from_blocks([(1, s) for s in data.orbit_sizes]), data


def _solve_degrees(ds: Sequence[int], target: int) -> list[tuple[tuple[int, int], ...]]:
    """All multisets {(n_i, d_i)} with n_i >= 2 and sum n_i^2 d_i = target."""
    groups = sorted(Counter(ds).items())
    solutions: list[tuple[tuple[int, int], ...]] = []

    def rec(gi: int, remaining: int, acc: list[tuple[int, int]]):
        if gi == len(groups):
            if remaining == 0:
                solutions.append(tuple(sorted(acc)))
            return
        d, count = groups[gi]
        rest_min = sum(4 * dd * c for dd, c in groups[gi + 1:])
        top = math.isqrt(max(remaining, 0) // d) if d else 0
        for ns in combinations_with_replacement(range(2, top + 1), count):
            used = d * sum(n * n for n in ns)
            if used + rest_min <= remaining:
                rec(gi + 1, remaining - used, acc + [(n, d) for n in ns])

    rec(0, target, [])
    return sorted(set(solutions))


def ferraz_decomposition(
    G: GroupTable,
    F: FieldSpec,
    radical_dim: int | None = None,
    seed: int = 0,
) -> tuple[Decomposition, FerrazData]:
    """Decomposition of FG/J from cyclotomic classes and dimension counting.

    ``radical_dim`` is dim J(FG); it is 0 when p does not divide |G| and is
    computed with :func:`jacobson_radical` otherwise unless supplied.
    """
    data = cyclotomic_classes(G, F.p, F.q)
    if G.order % F.p == 0:
        if radical_dim is None:
            from .radical import jacobson_radical

            radical_dim = jacobson_radical(GroupAlgebra(G, F), seed=seed).dim
    else:
        radical_dim = 0
    semisimple_dim = G.order - radical_dim
    _, Q, _ = derived_quotient(G)
    comm, _ = _abelian_decomposition(Q, F)
    left = Counter(data.orbit_sizes)
    for c in comm.components:
        if left[c.d] < c.count:
            raise CertificationFailure(
                f"commutative part {comm} does not fit the orbit sizes {data.orbit_sizes}"
            )
        left[c.d] -= c.count
    ds = sorted(left.elements())
    target = semisimple_dim - comm.total_dim
    sols = _solve_degrees(ds, target)
    if len(sols) > 1:
        raise AmbiguousDegrees(sols)
    if not sols:
        raise CertificationFailure(
            f"no degrees n_i >= 2 with sum n_i^2 d_i = {target} for d = {ds}"
        )
    blocks = [(c.n, c.d) for c in comm.components for _ in range(c.count)] + list(sols[0])
    return Decomposition.from_blocks(blocks), data


# ----------------------------------------------------------------------
# central idempotents
# ----------------------------------------------------------------------
def _eval_poly(A: FiniteAlgebra, f: Sequence[int], a: np.ndarray, e: np.ndarray) -> np.ndarray:
    """f(a) inside the algebra with identity e (Horner)."""
    F = A.field
    out = A.zero()
    for c in reversed(f):
        out = F.add(A.mul(out, a), F.scale(int(c), e))
    return out


def _split(A: FiniteAlgebra, e: np.ndarray, c: np.ndarray) -> list[np.ndarray]:
    """Split the central idempotent e using the central element c."""
    F = A.field
    a = A.mul(e, c)
    f = A.minimal_polynomial(a, e)
    factors = berlekamp_factor(f, F)
    if any(mult > 1 for _, mult in factors):
        raise NotSemisimple()
    if len(factors) == 1:
        return [e]
    out = []
    for g, _ in factors:
        cof = divmod_poly(f, g, F)[0]
        # cof * (cof^-1 mod g) is 1 mod g and 0 mod the other factors
        inv = _poly_inverse_mod(cof, g, F)
        u = divmod_poly(pmul(cof, inv, F), f, F)[1]
        out.append(_eval_poly(A, u, a, e))
    return out


def _poly_inverse_mod(a, m, F: FieldSpec):
    # a^(-1) mod m for coprime a, m: the unit group of GF(q)[t]/(m) for
    # irreducible m has order q^deg(m) - 1
    return powmod(a, F.q ** degree(m) - 2, m, F)


def _frobenius_fixed(A: FiniteAlgebra, Z: Subspace) -> Subspace:
    """{z in Z : z^q = z}; its dimension is the number of blocks of Z."""
    F = A.field
    rows = []
    for b in Z.basis:
        acc, base, e = A.unit.copy(), b.copy(), F.q
        while e:
            if e & 1:
                acc = A.mul(acc, base)
            base = A.mul(base, base)
            e >>= 1
        rows.append(F.sub(acc, b))
    # coefficients c with sum c_i (b_i^q - b_i) = 0
    K = kernel(np.stack(rows).T, F)
    return Subspace.span(F.dot(K.basis, Z.basis), F, A.dim) if K.dim else Subspace.zero(F, A.dim)


def primitive_central_idempotents(A: FiniteAlgebra, seed: int = 0) -> list[np.ndarray]:
    """Primitive central idempotents of a semisimple algebra.

    Sweeps the center basis first, then a basis of the Frobenius-fixed
    part of the center (which always separates every block), then seeded
    random central elements as a last resort.
    """
    F = A.field
    Z = center_basis(A)
    target = _frobenius_fixed(A, Z).dim
    idems = [A.unit.copy()]
    rng = np.random.default_rng(seed)

    def sweep(candidates):
        nonlocal idems
        for c in candidates:
            if len(idems) >= target:
                return
            nxt = []
            for e in idems:
                nxt.extend(_split(A, e, c))
            idems = nxt

    sweep(Z.basis)
    sweep(_frobenius_fixed(A, Z).basis)
    for _ in range(64):
        if len(idems) >= target:
            break
        sweep([F.dot(F.random(rng, (1, Z.dim)), Z.basis)[0]])
    if len(idems) != target:
        raise CertificationFailure(f"found {len(idems)} central idempotents, expected {target}")
    return sorted(idems, key=lambda v: tuple(v))


def central_decomposition(A: FiniteAlgebra, seed: int = 0) -> Decomposition:
    """Wedderburn data of a semisimple algebra from its central idempotents."""
    F = A.field
    Z = center_basis(A)
    blocks = []
    total = 0
    for e in primitive_central_idempotents(A, seed):
        d = rank(np.stack([A.mul(e, z) for z in Z.basis]), F)
        dim_eA = rank(A.left_matrix(e), F)
        total += dim_eA
        n2, rem = divmod(dim_eA, d)
        n = math.isqrt(n2)
        if rem or n * n != n2:
            raise NonsquareDimension(dim_eA, d)
        blocks.append((n, d))
    if total != A.dim:
        raise CertificationFailure(f"blocks cover {total} of {A.dim} dimensions")
    return Decomposition.from_blocks(blocks)


# ----------------------------------------------------------------------
# reference table for C3 x D10
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Prediction:
    decomposition: Decomposition
    case_label: str
    radical_dim: int
    structure: str


_P5_V = "V ≅ (C_5^{15k} ⋊ C_5^{6k}) ⋊ C_5^{3k}, Z(V) ≅ C_5^{9k}"

_TABLE = {
    # (p-regime, residues, modulus): (triples, structure, radical dim)
    ("2", (1, 4), 15): (
        [(1, 1, 3), (2, 1, 6)],
        "C_2^{3k} ⋊ (C_{2^k-1}^3 × GL(2,F)^6)",
        3,
    ),
    ("2", (2, 8), 15): (
        [(1, 1, 1), (1, 2, 1), (2, 2, 3)],
        "C_2^{3k} ⋊ (C_{2^k-1} × C_{2^{2k}-1} × GL(2,F_2)^3)",
        3,
    ),
    ("5", (1,), 6): ([(1, 1, 6)], "V ⋊ C_{5^k-1}^6; " + _P5_V, 24),
    ("5", (5,), 6): ([(1, 1, 2), (1, 2, 2)], "V ⋊ (C_{5^k-1}^2 × C_{5^{2k}-1}^2); " + _P5_V, 24),
    (">5", (1, 19), 30): ([(1, 1, 6), (2, 1, 6)], "C_{p^k-1}^6 × GL(2,F)^6", 0),
    (">5", (11, 29), 30): (
        [(1, 1, 2), (1, 2, 2), (2, 1, 2), (2, 2, 2)],
        "C_{p^k-1}^2 × C_{p^{2k}-1}^2 × GL(2,F)^2 × GL(2,F_2)^2",
        0,
    ),
    (">5", (7, 13), 30): ([(1, 1, 6), (2, 2, 3)], "C_{p^k-1}^6 × GL(2,F_2)^3", 0),
    (">5", (17, 23), 30): (
        [(1, 1, 2), (1, 2, 2), (2, 2, 3)],
        "C_{p^k-1}^2 × C_{p^{2k}-1}^2 × GL(2,F_2)^3",
        0,
    ),
}


def _signed(residues: Sequence[int], mod: int) -> str:
    # the table writes the larger residue as a negative one
    vals = [r if r <= mod // 2 else r - mod for r in residues]
    return ", ".join(str(v) for v in sorted(vals, key=lambda v: (abs(v), v < 0)))


def predicted_C3xD10(p: int, k: int) -> Prediction:
    """The reference-table row for GF(p^k)[C3 x D10]."""
    if k < 1:
        raise DegreeZero()
    if not is_prime(p):
        raise NonPrime(p)
    if p == 3:
        raise CharThree()
    q = p**k
    regime = "2" if p == 2 else "5" if p == 5 else ">5"
    for (reg, residues, mod), (triples, structure, jdim) in _TABLE.items():
        if reg == regime and q % mod in residues:
            head = "p>5" if reg == ">5" else f"p={reg}"
            label = f"{head}: q ≡ {_signed(residues, mod)} mod {mod}"
            return Prediction(Decomposition.from_triples(triples), label, jdim, structure)
    raise AssertionError(f"no table row for q = {q}")  # pragma: no cover
