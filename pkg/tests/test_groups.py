from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unitgroup.errors import OddDihedralOrder, ParseError
from unitgroup.groups import (
    build_group,
    conjugacy_classes,
    derived_quotient,
    p_regular_classes,
    quotient_by,
)

SPECS = ["C1", "C2", "C6", "D2", "D6", "D10", "C2xC2", "C3xD10", "C2xD6", "D8", "C4xC2", "C5xD4"]


def _orbit_classes(G):
    """Conjugacy classes by direct orbit enumeration (oracle)."""
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        cls = {int(G.mul[G.mul[G.inv[h], g], h]) for h in range(G.order)}
        seen |= cls
        out.append(cls)
    return out


def _is_iso_cyclic(G, n):
    return G.order == n and max(G.element_orders) == n


@pytest.mark.parametrize("spec", SPECS)
def test_group_law_exhaustive(spec):
    G = build_group(spec)
    m = G.mul
    idx = np.arange(G.order)
    assert np.array_equal(m[0], idx) and np.array_equal(m[:, 0], idx)
    assert np.all(m[idx, G.inv] == 0)
    # associativity: (ab)c == a(bc) for all triples
    assert np.array_equal(m[m[:, :, None], idx[None, None, :]], m[idx[:, None, None], m[None, :, :]])
    # every row is a permutation
    assert all(len(set(row)) == G.order for row in m)


def test_build_group_examples():
    G = build_group("C3xD10")
    assert G.order == 30 and not G.is_abelian
    C6 = build_group("C6")
    assert C6.order == 6 and C6.is_abelian
    with pytest.raises(OddDihedralOrder):
        build_group("D7")
    for bad in ["", "E4", "C3*D10", "C3x", "Cx", "C0"]:
        with pytest.raises(ParseError):
            build_group(bad)


def test_c3xd10_relations(c3xd10):
    G = c3xd10
    x, y, z = G.gen("x"), G.gen("y"), G.gen("z")
    assert (x, y, z) == (5, 1, 10)
    assert G.product(x, y) == G.product(G.power(y, 4), x)  # xy = y^4 x
    assert G.power(y, 5) == 0 and G.power(x, 2) == 0 and G.power(z, 3) == 0
    assert G.product(z, x) == G.product(x, z) and G.product(z, y) == G.product(y, z)
    assert G.names[G.word("x*y^2*z")] == "x*y^2*z"


@pytest.mark.parametrize("spec", SPECS)
def test_conjugacy_classes_match_orbits(spec):
    G = build_group(spec)
    cp = conjugacy_classes(G)
    assert sorted(map(sorted, cp.classes)) == sorted(map(sorted, _orbit_classes(G)))
    assert all(r == min(c) for r, c in zip(cp.representatives, cp.classes))


def test_class_examples(c3xd10):
    cp = conjugacy_classes(c3xd10)
    assert len(cp) == 12
    assert sorted(cp.sizes()) == [1, 1, 1, 2, 2, 2, 2, 2, 2, 5, 5, 5]
    G = c3xd10
    for i in range(3):
        xz = G.word("x*z^%d" % i) if i else G.gen("x")
        cls = cp.classes[cp.class_of(xz)]
        assert {G.names[g] for g in cls} == {
            G.names[G.product(G.word("x*y^%d" % e) if e else G.gen("x"), G.power(G.gen("z"), i))]
            for e in range(5)
        }
    assert sorted(conjugacy_classes(build_group("C6")).sizes()) == [1] * 6
    assert sorted(conjugacy_classes(build_group("D10")).sizes()) == [1, 2, 2, 5]


def test_p_regular_examples(c3xd10):
    G = c3xd10
    cp, m = p_regular_classes(G, 2)
    assert m == 15 and len(cp) == 9
    names = {G.names[r] for r in cp.representatives}
    assert names == {"1", "y", "y^2", "z", "z^2", "y*z", "y*z^2", "y^2*z", "y^2*z^2"}
    cp7, m7 = p_regular_classes(G, 7)
    assert m7 == 30 and len(cp7) == 12
    assert len(p_regular_classes(build_group("C6"), 5)[0]) == 6


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_p_regular_elements_have_order_prime_to_p(spec, p):
    G = build_group(spec)
    cp, m = p_regular_classes(G, p)
    orders = G.element_orders
    regular = {g for g in range(G.order) if orders[g] % p}
    assert set().union(*cp.classes) == regular
    assert m % p and all(m % int(orders[g]) == 0 for g in regular)


def test_derived_quotient_examples(c3xd10):
    Gp, Q, proj = derived_quotient(c3xd10)
    assert len(Gp) == 5 and _is_iso_cyclic(Q, 6)
    Gp, Q, _ = derived_quotient(build_group("C6"))
    assert len(Gp) == 1 and _is_iso_cyclic(Q, 6)
    Gp, Q, _ = derived_quotient(build_group("D10"))
    assert len(Gp) == 5 and Q.order == 2


def test_quotient_examples(c3xd10):
    G = c3xd10
    K = G.subgroup([G.gen("y")])
    Q, proj = quotient_by(G, K)
    assert Q.order == 6 and Q.is_abelian and _is_iso_cyclic(Q, 6)
    Q1, proj1 = quotient_by(G, {0})
    assert Q1.order == 30 and np.array_equal(Q1.mul[proj1[:, None], proj1[None, :]], proj1[G.mul])
    D = build_group("D10")
    Qd, _ = quotient_by(D, D.subgroup([D.gen("y")]))
    assert Qd.order == 2


@pytest.mark.parametrize("spec", SPECS)
def test_quotient_projection_is_homomorphism(spec):
    G = build_group(spec)
    Gp, Q, proj = derived_quotient(G)
    assert Q.is_abelian
    assert np.array_equal(Q.mul[proj[:, None], proj[None, :]], proj[G.mul])


@given(st.sampled_from(SPECS), st.data())
def test_conjugation_preserves_order(spec, data):
    G = build_group(spec)
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    orders = G.element_orders
    assert orders[G.conjugate(g, h)] == orders[g]
