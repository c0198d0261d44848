"""Finite groups as explicit multiplication tables.

Groups come from spec strings ``term ('x' term)*`` with ``term`` one of
``C<n>`` (cyclic of order n >= 1) or ``D<n>`` (dihedral of ORDER n, n even).
So ``D10`` is the symmetry group of the pentagon, not of the decagon.

Element order: a direct product is mixed-radix over its factors, leftmost
factor slowest.  Inside ``D<n>`` the element ``x^a y^b`` (x the reflection,
y the rotation) has index ``a * n/2 + b``.  Identity is always index 0.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import NotNormal, OddDihedralOrder, ParseError


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    mul: np.ndarray
    inv: np.ndarray
    names: tuple[str, ...]
    generators: dict[str, int] = field(default_factory=dict)
    spec: str = ""

    def __repr__(self) -> str:
        return f"GroupTable({self.spec or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def product(self, *elems: int) -> int:
        return reduce(lambda a, b: int(self.mul[a, b]), elems, 0)

    def power(self, g: int, e: int) -> int:
        e %= self.element_orders[g]
        out, base = 0, g
        while e:
            if e & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            e >>= 1
        return out

    def gen(self, name: str) -> int:
        return self.generators[name]

    def word(self, text: str) -> int:
        """Evaluate a word like ``"x*y^2*z"`` in the named generators."""
        if text in ("", "1", "e"):
            return 0
        out = 0
        for part in text.split("*"):
            name, _, exp = part.partition("^")
            out = int(self.mul[out, self.power(self.generators[name], int(exp or 1))])
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            x, n = g, 1
            while x != 0:
                x = int(self.mul[x, g])
                n += 1
            orders[g] = n
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return int(self.mul[self.mul[h, g], self.inv[h]])

    def check_group_law(self, samples: int = 2000, seed: int = 0) -> bool:
        n = self.order
        if not np.all(self.mul[0] == np.arange(n)) or not np.all(self.mul[:, 0] == np.arange(n)):
            return False
        if not np.all(self.mul[np.arange(n), self.inv] == 0):
            return False
        if n <= 64:
            left = self.mul[self.mul[:, :, None], np.arange(n)[None, None, :]]
            right = self.mul[np.arange(n)[:, None, None], self.mul[None, :, :]]
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.all(self.mul[self.mul[a, b], c] == self.mul[a, self.mul[b, c]]))

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        """Closure of gens under multiplication."""
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(self.mul[a, g])
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(elems)

    def is_normal(self, N: Iterable[int]) -> bool:
        N = set(N)
        if 0 not in N:
            return False
        for n in N:
            for h in range(self.order):
                if self.conjugate(n, h) not in N:
                    return False
        return self.subgroup(N) == frozenset(N)


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple[frozenset[int], ...]
    representatives: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self, g: int) -> int:
        for i, c in enumerate(self.classes):
            if g in c:
                return i
        raise KeyError(g)


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------
_TERM = re.compile(r"([CD])(\d+)")


def _parse(spec: str) -> list[tuple[str, int]]:
    if not spec:
        raise ParseError("empty group spec", 0)
    terms = []
    pos = 0
    while True:
        m = _TERM.match(spec, pos)
        if m is None:
            raise ParseError(f"expected C<n> or D<n>, found {spec[pos:pos + 1]!r}", pos)
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise ParseError("group order must be >= 1", m.start(2))
        if kind == "D" and (n < 2 or n % 2):
            raise OddDihedralOrder(n, m.start())
        terms.append((kind, n))
        pos = m.end()
        if pos == len(spec):
            return terms
        if spec[pos] != "x":
            raise ParseError(f"expected 'x', found {spec[pos]!r}", pos)
        pos += 1


def _cyclic(n: int):
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    inv = (-idx) % n
    exps = [{"c": i} for i in range(n)]
    gens = {"c": 1 % n} if n > 1 else {}
    return mul, inv, exps, gens


def _dihedral(n: int):
    h = n // 2
    a = np.arange(n) // h
    b = np.arange(n) % h
    sign = np.where(a == 1, -1, 1)
    # x^a y^b * x^c y^d = x^(a+c) y^((-1)^c b + d)
    na = (a[:, None] + a[None, :]) % 2
    nb = (sign[None, :] * b[:, None] + b[None, :]) % h
    mul = na * h + nb
    inv = np.array([int(np.flatnonzero(mul[g] == 0)[0]) for g in range(n)])
    exps = [{"x": int(a[g]), "y": int(b[g])} for g in range(n)]
    gens = {"x": h}
    if h > 1:
        gens["y"] = 1
    return mul, inv, exps, gens


def _name(exps: dict[str, int]) -> str:
    parts = []
    for g in sorted(exps):
        e = exps[g]
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) or "1"


def build_group(spec: str) -> GroupTable:
    """Build the group named by ``spec``, e.g. ``"C3xD10"`` (order 30).

    Dihedral factors expose generators ``x`` (reflection) and ``y``
    (rotation); cyclic factors expose ``z``.  Names used by several factors
    get the 1-based factor position appended (``C2xC2`` has ``z1, z2``).
    """
    terms = _parse(spec)
    base_names = [("x", "y") if kind == "D" else ("z",) for kind, _ in terms]
    counts: dict[str, int] = {}
    for names in base_names:
        for nm in names:
            counts[nm] = counts.get(nm, 0) + 1
    factors = []
    for pos, (kind, n) in enumerate(terms, start=1):
        mul, inv, exps, gens = _dihedral(n) if kind == "D" else _cyclic(n)
        rename = {}
        for local, nm in ((("c", "z"),) if kind == "C" else (("x", "x"), ("y", "y"))):
            rename[local] = nm if counts[nm] == 1 else f"{nm}{pos}"
        exps = [{rename[k]: v for k, v in e.items()} for e in exps]
        gens = {rename[k]: v for k, v in gens.items()}
        factors.append((n, mul, inv, exps, gens))
    order = math.prod(f[0] for f in factors)
    # mixed radix, leftmost slowest
    digits = np.zeros((order, len(factors)), dtype=np.int64)
    rem = np.arange(order)
    for i in range(len(factors) - 1, -1, -1):
        digits[:, i] = rem % factors[i][0]
        rem = rem // factors[i][0]
    radix = np.ones(len(factors), dtype=np.int64)
    for i in range(len(factors) - 2, -1, -1):
        radix[i] = radix[i + 1] * factors[i + 1][0]
    mul = np.zeros((order, order), dtype=np.int64)
    inv = np.zeros(order, dtype=np.int64)
    for i, (n, fm, finv, _, _) in enumerate(factors):
        mul += fm[digits[:, i][:, None], digits[:, i][None, :]] * radix[i]
        inv += finv[digits[:, i]] * radix[i]
    names = []
    for g in range(order):
        exps: dict[str, int] = {}
        for i, f in enumerate(factors):
            exps.update(f[3][digits[g, i]])
        names.append(_name(exps))
    generators = {}
    for i, f in enumerate(factors):
        for nm, local in f[4].items():
            generators[nm] = int(local * radix[i])
    mul.setflags(write=False)
    inv.setflags(write=False)
    return GroupTable(order, mul, inv, tuple(names), generators, spec)


# ----------------------------------------------------------------------
# classes and quotients
# ----------------------------------------------------------------------
def _orbits(G: GroupTable, elems: Sequence[int]) -> ClassPartition:
    seen: set[int] = set()
    classes = []
    everyone = np.arange(G.order)
    for g in elems:
        if g in seen:
            continue
        cls = frozenset(int(c) for c in G.mul[G.mul[everyone, g], G.inv])
        seen |= cls
        classes.append(cls)
    return ClassPartition(tuple(classes), tuple(min(c) for c in classes))


def conjugacy_classes(G: GroupTable) -> ClassPartition:
    return _orbits(G, range(G.order))


def p_regular_classes(G: GroupTable, p: int) -> tuple[ClassPartition, int]:
    """Classes of elements of order prime to p, and the lcm m of those orders."""
    orders = G.element_orders
    regular = [g for g in range(G.order) if orders[g] % p]
    m = math.lcm(*(int(orders[g]) for g in regular))
    return _orbits(G, regular), m


def quotient_by(G: GroupTable, N: Iterable[int]) -> tuple[GroupTable, np.ndarray]:
    """Coset group G/N and the projection (index map G -> G/N).

    Cosets are numbered by their smallest element, so the identity coset
    is 0.
    """
    N = frozenset(int(n) for n in N)
    if not G.is_normal(N):
        raise NotNormal()
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    nlist = np.array(sorted(N))
    for g in range(G.order):
        if proj[g] < 0:
            proj[G.mul[g, nlist]] = len(reps)
            reps.append(g)
    m = len(reps)
    reps_arr = np.array(reps)
    mul = proj[G.mul[reps_arr[:, None], reps_arr[None, :]]]
    inv = proj[G.inv[reps_arr]]
    names = tuple(f"[{G.names[r]}]" if N != {0} else G.names[r] for r in reps)
    gens = {nm: int(proj[g]) for nm, g in G.generators.items()}
    mul.setflags(write=False)
    inv.setflags(write=False)
    spec = f"{G.spec}/N{len(N)}" if len(N) > 1 else G.spec
    return GroupTable(m, mul, inv, names, gens, spec), proj


def derived_subgroup(G: GroupTable) -> frozenset[int]:
    a = np.arange(G.order)
    comm = G.mul[G.mul[G.inv[:, None], G.inv[None, :]], G.mul[a[:, None], a[None, :]]]
    return G.subgroup(set(int(c) for c in np.unique(comm)))


def derived_quotient(G: GroupTable) -> tuple[frozenset[int], GroupTable, np.ndarray]:
    Gp = derived_subgroup(G)
    Q, proj = quotient_by(G, Gp)
    return Gp, Q, proj


def power_map_class(G: GroupTable, parts: ClassPartition, q: int) -> list[int]:
    """Index of the class of g^q for each class of ``parts``."""
    return [parts.class_of(G.power(r, q)) for r in parts.representatives]
