from __future__ import annotations

import numpy as np
import pytest

from unitgroup.errors import StepFailed
from unitgroup.field import make_field
from unitgroup.p5 import (
    DEFAULT_TERMS,
    EXPECTED_DIMS,
    P5Setting,
    group_generators,
    truncated_exp,
    truncated_log,
    verify_p5_structure,
)

DIMS = {"R": 1, "C_V(R)": 21, "S": 15, "T": 12, "U": 6, "M": 3, "Z(V)": 9}


@pytest.fixture(scope="module", params=[1, 2])
def report(request):
    return verify_p5_structure(make_field(5, request.param), seed=0)


def test_all_steps_pass(report):
    assert report.passed
    assert all(report.steps().values())
    assert set(report.steps()) == {0, 1, 2, 3, 4, 5, 6}


def test_dims(report):
    assert {k: report.dims[k] for k in DIMS} == DIMS == EXPECTED_DIMS
    assert report.dims["C_V(y)"] == 15 and report.dims["W"] == 6


def test_seed_and_sample_counts_recorded(report):
    assert report.seed == 0 and report.samples == 200
    names = [c.name for c in report.checks]
    assert "s^t in S (200 samples)" in names and "n^m in C_V(R) (200 samples)" in names
    assert "v^5 = 1 (100 samples)" in names


def test_displays_checked_separately(report):
    kinds = {c.name: c.kind for c in report.checks}
    assert kinds["s^t display with k1, k2, k3"] == "display"
    assert kinds["s^t in S (200 samples)"] == "structure"
    assert kinds["n^m display with k1, k2, d0..d4"] == "display"


def test_commutator_display_sign_is_flagged(report):
    # the displayed vy - yv is the negative of the computed commutator; the
    # report flags it without failing, because the vanishing condition and
    # the C_V(y) closed form are checked exactly
    flags = report.flags
    assert [c.name for c in flags] == ["vy - yv display"]
    assert flags[0].detail == "display equals yv - vy"


def test_fault_injection_k2():
    def negated_k2(P, b, c):
        return -DEFAULT_TERMS["step3.k2"](P, b, c)

    with pytest.raises(StepFailed) as exc:
        verify_p5_structure(make_field(5), overrides={"step3.k2": negated_k2})
    assert exc.value.step == 3
    assert exc.value.witness is not None
    rep = exc.value.report
    failed = {c.name for c in rep.failures}
    assert failed == {"s^t display with k1, k2, k3"}
    assert rep.steps()[3] is False and rep.steps()[2] is True


def test_fault_injection_step5_d_term():
    def bad_d(P, cs):
        ds = DEFAULT_TERMS["step5.d"](P, cs)
        return [ds[1], ds[0]] + ds[2:]

    rep = verify_p5_structure(make_field(5), overrides={"step5.d": bad_d}, raise_on_failure=False)
    assert [c.step for c in rep.failures] == [5]


def test_unknown_override_rejected():
    with pytest.raises(KeyError):
        verify_p5_structure(make_field(5), overrides={"nope": lambda *a: None})


def test_requires_characteristic_five():
    with pytest.raises(ValueError):
        P5Setting(make_field(7))


def test_seed_changes_samples_not_outcome():
    a = verify_p5_structure(make_field(5), seed=3, samples=50)
    b = verify_p5_structure(make_field(5), seed=11, samples=50)
    assert a.passed and b.passed and a.dims == b.dims


def test_exp_log_inverse_on_T():
    from unitgroup.p5 import t_directions, u_directions

    P = P5Setting(make_field(5))
    F = P.F
    T = P.family("T", t_directions(P))
    rng = np.random.default_rng(0)
    a = F.dot(F.random(rng, (30, T.dim)), T.space.basis)
    e = truncated_exp(P, a)
    assert np.array_equal(truncated_log(P, e), a)
    gens = group_generators(P, P.family("U", u_directions(P)), exp=True)
    assert gens.shape == (6, 30)
