from __future__ import annotations

import itertools

import numpy as np
import pytest

from unitgroup.algebra import GroupAlgebra
from unitgroup.errors import TooLarge
from unitgroup.field import make_field
from unitgroup.groups import build_group
from unitgroup.linalg import Subspace
from unitgroup.radical import jacobson_radical
from unitgroup.units import (
    OUTSIDE_TABLE,
    WitnessFamily,
    brute_force_units,
    center_of_V,
    centralizer_space,
    gl_order,
    structure_report,
    unit_group_order,
    v_group,
)
from unitgroup.wedderburn import Decomposition


def _slow_units(spec, p, k):
    """Units by searching for a two-sided inverse among all elements (oracle)."""
    A = GroupAlgebra(build_group(spec), make_field(p, k))
    elems = np.array(list(itertools.product(range(A.field.q), repeat=A.dim)), dtype=np.int64)
    count = 0
    for a in elems:
        prods = A.mul_batch(np.broadcast_to(a, elems.shape), elems)
        if np.any(np.all(prods == A.unit, axis=1)):
            count += 1
    return count


def _gl_count(n, q):
    """|GL(n, q)| by counting invertible matrices over GF(q) (q prime)."""
    count = 0
    for entries in itertools.product(range(q), repeat=n * n):
        M = np.array(entries).reshape(n, n)
        if round(np.linalg.det(M)) % q:
            count += 1
    return count


def test_gl_order_examples():
    assert gl_order(1, 7) == 6
    assert gl_order(2, 2) == 6 == _gl_count(2, 2)
    assert gl_order(2, 3) == _gl_count(2, 3)
    assert gl_order(2, 4) == 180
    with pytest.raises(ValueError):
        gl_order(0, 2)


def test_unit_group_order_examples():
    dec = Decomposition.from_triples([(1, 1, 1), (1, 2, 1), (2, 2, 3)])
    assert unit_group_order(dec, 3, 2) == 2**3 * 1 * 3 * 180**3
    assert unit_group_order(Decomposition.from_triples([(1, 1, 6)]), 0, 7) == 6**6
    dec5 = Decomposition.from_triples([(1, 1, 2), (1, 2, 2)])
    assert unit_group_order(dec5, 24, 5) == 5**24 * 4**2 * 24**2


@pytest.mark.parametrize("spec,p,k", [("C2", 3, 1), ("C3", 2, 1), ("C2xC2", 2, 1), ("D6", 2, 1), ("C4", 2, 1), ("C2", 2, 2)])
def test_brute_force_against_slow_oracle(spec, p, k):
    assert brute_force_units(build_group(spec), make_field(p, k)) == _slow_units(spec, p, k)


def test_brute_force_examples():
    assert brute_force_units(build_group("C6"), make_field(2)) == 24
    assert brute_force_units(build_group("C2"), make_field(3)) == 4
    D10, F2 = build_group("D10"), make_field(2)
    assert brute_force_units(D10, F2) == structure_report(D10, F2).unit_order
    with pytest.raises(TooLarge):
        brute_force_units(build_group("D10"), make_field(5))


def test_v_group_examples(c3xd10):
    F = make_field(3)
    A0 = GroupAlgebra(build_group("C2"), F)
    assert v_group(Subspace.zero(F, 2), A0).dim == 0
    A5 = GroupAlgebra(c3xd10, make_field(5))
    V = v_group(jacobson_radical(A5), A5)
    assert V.dim == 24 and V.is_closed()
    vs = V.coords(V.sample_params(np.random.default_rng(0), 100))
    fifth = vs
    for _ in range(4):
        fifth = A5.mul_batch(fifth, vs)
    assert np.all(fifth == A5.unit)
    A2 = GroupAlgebra(c3xd10, make_field(2))
    V2 = v_group(jacobson_radical(A2), A2)
    assert V2.dim == 3 and V2.is_abelian()
    members = [V2.coords(p) for p in V2.all_params()]
    assert len(members) == 8
    assert all(np.array_equal(A2.mul(v, v), A2.unit) for v in members)


def test_witness_family_rejects_dependent_directions(c3xd10):
    A = GroupAlgebra(c3xd10, make_field(2))
    d = A.g("x").coeffs
    with pytest.raises(ValueError):
        WitnessFamily("bad", A, np.stack([d, d]))
    fam = WitnessFamily("one", A, d[None, :])
    assert fam.size == 2 and fam.contains(A.one() + A.g("x"))


def test_centralizer_examples(c3xd10):
    A = GroupAlgebra(c3xd10, make_field(5))
    J = jacobson_radical(A)
    assert centralizer_space([A.one()], J) == J
    y, x = A.g("y"), A.g("x")
    rd = y * (1 - y) ** 3 * x
    assert centralizer_space([rd], J).dim == 21
    assert centralizer_space([y], J).dim == 15


def test_centralizer_by_exhaustion_small():
    # C_J(t) against an exhaustive scan of J for GF(2)[D6]
    A = GroupAlgebra(build_group("D6"), make_field(2))
    J = jacobson_radical(A)
    t = A.g("x")
    C = centralizer_space([t], J)
    members = [J.combine(np.array(c)) for c in itertools.product(range(2), repeat=J.dim)]
    comm = [m for m in members if np.array_equal(A.mul(m, t.coeffs), A.mul(t.coeffs, m))]
    assert len(comm) == 2**C.dim and all(C.contains(m) for m in comm)


def test_center_of_V_examples(c3xd10):
    for k, want in [(1, 9), (2, 9)]:
        A = GroupAlgebra(c3xd10, make_field(5, k))
        Z = center_of_V(jacobson_radical(A), A)
        assert Z.dim == want
    F = make_field(7)
    assert center_of_V(Subspace.zero(F, 30), GroupAlgebra(c3xd10, F)).dim == 0


@pytest.mark.parametrize(
    "p,structure",
    [
        (2, "C_2^{3k} ⋊ (C_{2^k-1} × C_{2^{2k}-1} × GL(2,F_2)^3)"),
        (29, "C_{p^k-1}^2 × C_{p^{2k}-1}^2 × GL(2,F)^2 × GL(2,F_2)^2"),
        (23, "C_{p^k-1}^2 × C_{p^{2k}-1}^2 × GL(2,F_2)^3"),
    ],
)
def test_structure_report_examples(c3xd10, p, structure):
    # GF(29) sits in the q = -1, 11 mod 30 row; see the ledger for the example
    # that listed it under q = -7, -13
    rep = structure_report(c3xd10, make_field(p))
    assert rep.structure == structure


def test_structure_report_outside_table():
    rep = structure_report(build_group("C6"), make_field(7))
    assert rep.unit_order == 6**6 and rep.radical_dim == 0
    assert rep.case_label == OUTSIDE_TABLE
    rep3 = structure_report(build_group("C3xD10"), make_field(3))
    assert rep3.case_label == OUTSIDE_TABLE and rep3.radical_dim == 20


def test_report_dict_schema(c3xd10):
    d = structure_report(c3xd10, make_field(7)).to_dict()
    assert list(d) == [
        "field", "group", "radical_dim", "nilpotency_index", "components",
        "unit_group_order", "structure", "case_label", "ferraz",
    ]
    assert list(d["field"]) == ["p", "k", "q", "modulus"]
    assert list(d["group"]) == ["spec", "order"]
    assert list(d["ferraz"]) == ["m", "orbit_sizes"]
    assert isinstance(d["unit_group_order"], str) and int(d["unit_group_order"]) > 0
    assert d["components"] == [{"n": 1, "d": 1, "count": 6}, {"n": 2, "d": 2, "count": 3}]
