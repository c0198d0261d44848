"""Witness-level verification of the structure of V = 1 + J for p = 5.

G = C3 x D10 and F = GF(5^k).  Every subgroup named in the argument is an
explicit family ``1 + X`` with X a subspace of J, so dimensions,
intersections, closure and normality are exact linear checks.  The
displayed coefficient formulas (conjugates r^v, s^t, n^m and friends) are
claims under test: they are evaluated term by term and compared with the
conjugate computed directly in FG.

Check numbering: 0 covers V itself, 1-5 the five steps of the argument
for V, 6 the center Z(V) and the centralizer C_V(y).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping

import numpy as np

from .algebra import AlgebraElement, GroupAlgebra, induced_quotient_map
from .errors import StepFailed
from .field import FieldSpec
from .groups import build_group
from .linalg import Subspace, kernel
from .radical import jacobson_radical, nilpotency_index
from .units import WitnessFamily, center_of_V, centralizer_space

SAMPLES = 200
V_SAMPLES = 100
EXHAUSTIVE_MAX = 5**6

EXPECTED_DIMS = {"R": 1, "C_V(R)": 21, "S": 15, "T": 12, "U": 6, "M": 3, "Z(V)": 9}


@dataclass
class CheckResult:
    step: int
    name: str
    passed: bool
    kind: str = "structure"  # "display" for a displayed formula, "advisory" never fails
    detail: str = ""
    witness: object = None

    def as_dict(self) -> dict:
        return {"step": self.step, "name": self.name, "kind": self.kind,
                "passed": self.passed, "detail": self.detail}


@dataclass
class WitnessReport:
    field: FieldSpec
    seed: int
    samples: int
    dims: dict[str, int] = dc_field(default_factory=dict)
    checks: list[CheckResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed and c.kind != "advisory"]

    @property
    def flags(self) -> list[CheckResult]:
        """Displays that disagree with the computation without failing a step."""
        return [c for c in self.checks if not c.passed and c.kind == "advisory"]

    def steps(self) -> dict[int, bool]:
        out: dict[int, bool] = {}
        for c in self.checks:
            ok = c.passed or c.kind == "advisory"
            out[c.step] = out.get(c.step, True) and ok
        return out

    def as_dict(self) -> dict:
        return {
            "field": {"p": self.field.p, "k": self.field.k, "q": self.field.q},
            "seed": self.seed,
            "samples": self.samples,
            "dims": dict(self.dims),
            "passed": self.passed,
            "flags": [c.name for c in self.flags],
            "checks": [c.as_dict() for c in self.checks],
        }


# ----------------------------------------------------------------------
# the algebra and the named elements
# ----------------------------------------------------------------------
class P5Setting:
    """GF(5^k)[C3 x D10] with x, y, z, yhat and J at hand."""

    def __init__(self, F: FieldSpec, seed: int = 0):
        if F.p != 5:
            raise ValueError("the p = 5 suite needs a field of characteristic 5")
        self.F = F
        self.G = build_group("C3xD10")
        self.A = GroupAlgebra(self.G, F)
        A = self.A
        self.one = A.one()
        self.x, self.y, self.z = A.g("x"), A.g("y"), A.g("z")
        self.K = self.G.subgroup([self.G.gen("y")])
        self.yhat = A.hat(self.K)
        self.J = jacobson_radical(A, seed=seed)
        self.nil = nilpotency_index(self.J, A)

    def i(self, n: int) -> int:
        return self.F.from_int(n)

    def zpoly(self, coefs) -> AlgebraElement:
        """sum_i coefs[i] z^i, an element of F<z>."""
        out = self.A.element(np.zeros(self.A.dim, dtype=np.int64))
        for i, cf in enumerate(coefs):
            if int(cf):
                out = out + (self.z ** i).scale(int(cf))
        return out

    def family(self, name: str, dirs) -> WitnessFamily:
        return WitnessFamily(name, self.A, np.stack([d.coeffs for d in dirs]))

    def span(self, elems) -> Subspace:
        return Subspace.span(np.stack([e.coeffs for e in elems]), self.F, self.A.dim)

    def inverse_batch(self, U: np.ndarray) -> np.ndarray:
        """Inverses of the rows of U, all in V, via the geometric series."""
        F, A = self.F, self.A
        a = F.sub(U, self.A.unit[None, :])
        neg = F.neg(a)
        out = np.broadcast_to(A.unit, U.shape).copy()
        term = out.copy()
        for _ in range(self.nil - 1):
            term = A.mul_batch(term, neg)
            out = F.add(out, term)
        return out

    def conj_batch(self, S: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Rows t^-1 s t."""
        A = self.A
        return A.mul_batch(A.mul_batch(self.inverse_batch(T), S), T)


# ----------------------------------------------------------------------
# families and displayed formulas
# ----------------------------------------------------------------------
def r_direction(P: P5Setting) -> AlgebraElement:
    y, x = P.y, P.x
    return y * (1 - y) ** 3 * x


def v_directions(P: P5Setting) -> list[AlgebraElement]:
    """(y^i - 1) z^j for b_{i+4j}, then (y^i - 1) z^j x for b_{i+4j+12}."""
    y, z, x = P.y, P.z, P.x
    first = [(y**i - 1) * z**j for j in range(3) for i in range(1, 5)]
    return first + [d * x for d in first]


def cvr_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x = P.y, P.z, P.x
    first = [((y**i - 1) + (y**4 - 1).scale(P.i(i))) * z**j for j in range(3) for i in range(1, 4)]
    second = [(y**i - 1) * z**j * x for j in range(3) for i in range(1, 5)]
    return first + second


def s_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x, one = P.y, P.z, P.x, P.one
    pre = y**3 * (y - 1) ** 2
    words = [y, y * (y + 2), one, y * x, (y + 1) ** 2 * x]
    return [pre * w * z**i for w in words for i in range(3)]


def t_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x = P.y, P.z, P.x
    pre = y**3 * (y - 1)
    words = [(y - 1) * y, (y - 1) * (y + 1) ** 2, y * x, (y * y + y + 1) * x]
    return [pre * w * z**i for w in words for i in range(3)]


def u_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z = P.y, P.z
    pre = y**3 * (y - 1) ** 2
    return [pre * w * z**i for w in (y, (y + 1) ** 2) for i in range(3)]


def m_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x = P.y, P.z, P.x
    md = y * (y + 1) ** 2 * (1 - y) * (1 + x)
    return [md * z**j for j in range(3)]


def zv_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x, yh = P.y, P.z, P.x, P.yhat
    return ([y**4 * (y - 1) ** 2 * z**j for j in range(3)]
            + [y**3 * (y * y - 1) ** 2 * z**j for j in range(3)]
            + [yh * z**j * x for j in range(3)])


def cy_directions(P: P5Setting) -> list[AlgebraElement]:
    y, z, x, yh = P.y, P.z, P.x, P.yhat
    return [(y**i - 1) * z**j for j in range(3) for i in range(1, 5)] + [yh * z**j * x for j in range(3)]


# Displayed right-hand sides.  Each takes the setting and the parameters
# and returns an AlgebraElement; ``overrides`` in verify_p5_structure can
# swap any of them out (used for fault injection).
def _rv_display(P, a, b):
    """r^v - r = 2a yhat sum_j sum_i i b_{i+4j} z^j x."""
    F = P.F
    inner = P.zpoly([0, 0, 0])
    for j in range(3):
        acc = 0
        for i in range(1, 5):
            acc = F.sadd(acc, F.smul(P.i(i), int(b[i - 1 + 4 * j])))
        inner = inner + (P.z**j).scale(acc)
    return (P.yhat * inner * P.x).scale(F.smul(P.i(2), int(a)))


def _k1_step3(P, b, c):
    b1, b2, b3, b4, b5 = b
    c1, c2, c3, c4 = c
    return (c4 + c3.scale(P.i(2))) * (b4 - b5)


def _k2_step3(P, b, c):
    b1, b2, b3, b4, b5 = b
    c1, c2, c3, c4 = c
    return (c4 + c3.scale(P.i(2))) * (b2 - b3)


def _k3_step3(P, b, c):
    b1, b2, b3, b4, b5 = b
    c1, c2, c3, c4 = c
    return (c4 * c4 - c3 * c4 - c3 * c3).scale(P.i(2)) * (b4 - b5)


def _st_display(P, b, c, terms):
    y, x = P.y, P.x
    b1, b2, b3, b4, b5 = b
    k1 = terms["step3.k1"](P, b, c)
    k2 = terms["step3.k2"](P, b, c)
    k3 = terms["step3.k3"](P, b, c)
    body = (y * b1 + y * (y + 2) * b2 + b3 + k1 * y**3 * (1 - y)
            + (y * b4 + (y + 1) ** 2 * b5 + (y - 1) ** 2 * (k2 + k3)) * x)
    return 1 + y**3 * (y - 1) ** 2 * body


def _coef_z(P, cs, offsets: Mapping[int, int], stride: int) -> AlgebraElement:
    """sum_j (sum_off coef * c_{off + stride*j}) z^j, c 1-based."""
    F = P.F
    out = P.zpoly([0])
    for j in range(3):
        acc = 0
        for off, cf in offsets.items():
            acc = F.sadd(acc, F.smul(P.i(cf), int(cs[off + stride * j - 1])))
        out = out + (P.z**j).scale(acc)
    return out


def _d_step5(P, cs):
    """d_0 .. d_4 of the n^m display."""
    return [
        _coef_z(P, cs, {10: 4, 11: 4, 12: 1, 13: 1}, 4),
        _coef_z(P, cs, {10: 4, 11: 3, 12: 3}, 4),
        _coef_z(P, cs, {11: 4, 12: 3, 13: 3}, 4),
        _coef_z(P, cs, {10: 2, 11: 2, 12: 1}, 4),
        _coef_z(P, cs, {11: 2, 12: 2, 13: 1}, 4),
    ]


def _b_step5(P, cs):
    """sum_i sum_k i c_{i+4k+9} z^k."""
    out = P.zpoly([0])
    for i in range(1, 5):
        out = out + _coef_z(P, cs, {i + 9: i}, 4)
    return out


def _k1_step5(P, cs, R):
    y = P.y
    a = _coef_z(P, cs, {10: 1, 11: -1, 12: -1, 13: 1}, 4)
    return R * (a + (R * _b_step5(P, cs)).scale(P.i(3))) * y * (1 - y) ** 3


def _k2_step5(P, cs, R):
    y = P.y
    e = _coef_z(P, cs, {2: 1, 3: -1}, 3)
    first = (R * (e * (1 - y) - R * _b_step5(P, cs)) * y * (1 - y) ** 3).scale(P.i(2))
    ds = P.terms["step5.d"](P, cs)
    tail = P.zpoly([0])
    for i, d in enumerate(ds):
        tail = tail + d * y**i
    return first - (R * tail).scale(P.i(2))


DEFAULT_TERMS: dict[str, Callable] = {
    "step2.rv": _rv_display,
    "step3.k1": _k1_step3,
    "step3.k2": _k2_step3,
    "step3.k3": _k3_step3,
    "step5.k1": _k1_step5,
    "step5.k2": _k2_step5,
    "step5.d": _d_step5,
}


# ----------------------------------------------------------------------
# helpers for exact checks
# ----------------------------------------------------------------------
def truncated_exp(P: P5Setting, a: np.ndarray) -> np.ndarray:
    """sum_{i<5} a^i / i! for rows a in a commutative algebra with a^5 = 0."""
    F, A = P.F, P.A
    a = np.atleast_2d(a)
    out = np.broadcast_to(A.unit, a.shape).copy()
    term = out.copy()
    fact = 1
    for i in range(1, F.p):
        term = A.mul_batch(term, a)
        fact = F.smul(fact, P.i(i))
        out = F.add(out, F.scale(F.sinv(fact), term))
    return out


def truncated_log(P: P5Setting, u: np.ndarray) -> np.ndarray:
    """sum_{0<i<5} (-1)^(i+1) (u-1)^i / i."""
    F, A = P.F, P.A
    a = F.sub(np.atleast_2d(u), A.unit[None, :])
    out = np.zeros_like(a)
    term = np.broadcast_to(A.unit, a.shape).copy()
    for i in range(1, F.p):
        term = A.mul_batch(term, a)
        c = F.sinv(P.i(i))
        if i % 2 == 0:
            c = F.sneg(c)
        out = F.add(out, F.scale(c, term))
    return out


def _prime_basis(F: FieldSpec) -> list[int]:
    """Codes of 1, t, ..., t^(k-1): an F_p-basis of F."""
    return [F.p**i for i in range(F.k)]


def group_generators(P: P5Setting, fam: WitnessFamily, exp: bool) -> np.ndarray:
    """Generators of the group 1 + X as a group (elementary abelian case).

    With ``exp`` the generators are exp(lambda * b) (correct whenever the
    family is a commutative group with X^5 = 0); otherwise 1 + lambda * b.
    """
    F = P.F
    dirs = np.stack([F.scale(lam, d) for d in fam.space.basis for lam in _prime_basis(F)])
    if exp:
        return truncated_exp(P, dirs)
    return F.add(dirs, P.A.unit[None, :])


def normalizes(P: P5Setting, gens: np.ndarray, X: Subspace) -> tuple[bool, object]:
    """Does g^-1 (1 + X) g = 1 + X for every generator g?  (Linear in X.)"""
    A = P.A
    inv = P.inverse_batch(gens)
    for g, gi in zip(gens, inv):
        conj = A.mul_batch(A.mul_batch(np.broadcast_to(gi, X.basis.shape), X.basis),
                           np.broadcast_to(g, X.basis.shape))
        if not X.contains(conj):
            return False, g
    return True, None


def _nilpotent_power(P: P5Setting, X: Subspace, e: int) -> Subspace:
    out = X
    for _ in range(e - 1):
        out = P.A.product_space(out, X)
    return out


def _params(P: P5Setting, rng, nparams: int, budget: int) -> np.ndarray:
    """All parameter vectors when there are at most EXHAUSTIVE_MAX, else a sample."""
    q = P.F.q
    if q**nparams <= EXHAUSTIVE_MAX:
        codes = np.arange(q**nparams)
        return (codes[:, None] // q ** np.arange(nparams)[None, :]) % q
    return P.F.random(rng, (budget, nparams))


# ----------------------------------------------------------------------
# the suite
# ----------------------------------------------------------------------
def verify_p5_structure(
    F: FieldSpec,
    seed: int = 0,
    samples: int = SAMPLES,
    v_samples: int = V_SAMPLES,
    overrides: Mapping[str, Callable] | None = None,
    raise_on_failure: bool = True,
) -> WitnessReport:
    """Check every step of the p = 5 argument for V over F = GF(5^k).

    Returns the report; with ``raise_on_failure`` the first failing check
    raises :class:`StepFailed` (the report is attached as ``exc.report``).
    """
    P = P5Setting(F, seed)
    P.terms = {**DEFAULT_TERMS, **(overrides or {})}
    unknown = set(overrides or ()) - set(DEFAULT_TERMS)
    if unknown:
        raise KeyError(f"unknown display terms: {sorted(unknown)}")
    A, J = P.A, P.J
    rng = np.random.default_rng(seed)
    rep = WitnessReport(F, seed, samples)

    def check(step, name, ok, detail="", witness=None, kind="structure"):
        rep.checks.append(CheckResult(step, name, bool(ok), kind, detail, witness))

    # -- V itself --------------------------------------------------------
    V = P.family("V", v_directions(P))
    _, ker_eta = induced_quotient_map(P.G, P.K, F)
    check(0, "dim J = 24", J.dim == 24, f"dim J = {J.dim}")
    check(0, "V closed form spans J", V.space == J)
    check(0, "J = ker eta", J == ker_eta)
    vs = V.coords(V.sample_params(rng, v_samples))
    fifth = vs
    for _ in range(4):
        fifth = A.mul_batch(fifth, vs)
    bad = np.flatnonzero(np.any(fifth != A.unit[None, :], axis=1))
    check(0, f"v^5 = 1 ({v_samples} samples)", bad.size == 0,
          f"{v_samples - bad.size}/{v_samples}", vs[bad[0]] if bad.size else None)

    # -- Step 1: R --------------------------------------------------------
    rd = r_direction(P)
    R = P.family("R", [rd])
    rep.dims["R"] = R.dim
    check(1, "R inside V", J.contains(rd.coeffs))
    params = _params(P, rng, 2, samples)
    lhs = A.mul_batch(R.coords(params[:, :1]), R.coords(params[:, 1:]))
    rhs = R.coords(F.add(params[:, :1], params[:, 1:]))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    check(1, "r1 r2 = 1 + (a+b) y(1-y)^3 x", bad.size == 0,
          f"{len(params) - bad.size}/{len(params)} pairs", params[bad[0]] if bad.size else None,
          kind="display")

    # -- Step 2: C_V(R) ---------------------------------------------------
    CR = centralizer_space([rd], J, A)
    rep.dims["C_V(R)"] = CR.dim
    CRf = P.family("C_V(R)", cvr_directions(P))
    check(2, "C_V(R) closed form equals the computed centralizer", CRf.space == CR)
    check(2, "C_V(R) closed", CRf.is_closed())
    I2 = P.span([(P.y - 1) ** 2 * A.g(g) for g in range(A.dim)])
    bad_rv = bad_inv = None
    dirs = v_directions(P)
    for t in range(samples):
        b = F.random(rng, 24)
        a = int(F.random(rng, None))
        v = V(b)
        r = 1 + rd.scale(a)
        vinv = AlgebraElement(A, P.inverse_batch(v.coeffs[None, :])[0])
        if bad_rv is None and not (vinv * r * v - r) == P.terms["step2.rv"](P, a, b):
            bad_rv = (a, b)
        v1 = P.zpoly([0])
        v2 = P.zpoly([0])
        for idx in range(12):
            v1 = v1 + dirs[idx].scale(int(b[idx]))
            v2 = v2 + dirs[idx].scale(int(b[idx + 12]))
        guess = 1 + v1.scale(P.i(4)) + (v2 * P.x).scale(P.i(4))
        if bad_inv is None and not I2.contains((vinv - guess).coeffs):
            bad_inv = b
    check(2, "r^v - r display", bad_rv is None, f"{samples} samples", bad_rv, kind="display")
    check(2, "v^-1 = 1 + 4v1 + 4v2 x mod (y-1)^2 FG", bad_inv is None, f"{samples} samples",
          bad_inv, kind="display")

    # -- Step 3: S, T, U, W -----------------------------------------------
    S = P.family("S", s_directions(P))
    T = P.family("T", t_directions(P))
    rep.dims["S"], rep.dims["T"] = S.dim, T.dim
    for fam in (S, T):
        check(3, f"{fam.name} closed", fam.is_closed())
        check(3, f"{fam.name} abelian", fam.is_abelian())
        check(3, f"{fam.name} inside C_V(R)", fam.space <= CR)
    Ud = S.space.intersect(T.space)
    rep.dims["U"] = Ud.dim
    check(3, "U = S ∩ T closed form", P.span(u_directions(P)) == Ud)
    bad_in = bad_disp = None
    for t in range(samples):
        pp = F.random(rng, 15)
        qq = F.random(rng, 12)
        s, tt = S(pp), T(qq)
        st = AlgebraElement(A, P.conj_batch(s.coeffs[None, :], tt.coeffs[None, :])[0])
        if bad_in is None and not S.contains(st):
            bad_in = (pp, qq)
        bs = [P.zpoly(pp[3 * j:3 * j + 3]) for j in range(5)]
        cs = [P.zpoly(qq[3 * j:3 * j + 3]) for j in range(4)]
        if bad_disp is None and not st == _st_display(P, bs, cs, P.terms):
            bad_disp = (pp, qq)
    check(3, f"s^t in S ({samples} samples)", bad_in is None, f"{samples} samples", bad_in)
    check(3, "s^t display with k1, k2, k3", bad_disp is None, f"{samples} samples", bad_disp,
          kind="display")
    ok, g = normalizes(P, group_generators(P, T, exp=True), S.space)
    check(3, "T normalizes S (group generators)", ok, witness=g)
    # complement: kernel of the projection onto U's pivot coordinates in T
    Tb = T.space.basis
    K = kernel(Tb[:, list(Ud.pivots)].T, F)
    Wd = Subspace.span(F.dot(K.basis, Tb), F, A.dim) if K.dim else Subspace.zero(F, A.dim)
    rep.dims["W"] = Wd.dim
    check(3, "T commutative with T_dir^5 = 0",
          T.is_abelian() and _nilpotent_power(P, T.space, F.p).dim == 0)
    check(3, "W_dir ∩ U_dir = 0 and dims add", Wd.intersect(Ud).dim == 0 and Wd.dim + Ud.dim == T.dim)
    wa = F.dot(F.random(rng, (samples, Wd.dim)), Wd.basis)
    wb = F.dot(F.random(rng, (samples, Wd.dim)), Wd.basis)
    ea, eb, eab = truncated_exp(P, wa), truncated_exp(P, wb), truncated_exp(P, F.add(wa, wb))
    hom = np.all(A.mul_batch(ea, eb) == eab)
    roundtrip = np.all(truncated_log(P, ea) == wa)
    inside = T.space.contains(F.sub(ea, A.unit[None, :]))
    check(3, "W = exp(W_dir) is a subgroup of T of order q^6", bool(hom and roundtrip and inside),
          f"{samples} samples")
    check(3, "W ∩ S = 1", Wd.intersect(S.space).dim == 0 and S.space.intersect(T.space) == Ud)
    check(3, "|S| |W| = |C_V(R)|", S.dim + Wd.dim == CR.dim)

    # -- Step 4: M --------------------------------------------------------
    M = P.family("M", m_directions(P))
    rep.dims["M"] = M.dim
    check(4, "M closed", M.is_closed())
    check(4, "M abelian", M.is_abelian())
    params = _params(P, rng, 6, samples)
    lhs = A.mul_batch(M.coords(params[:, :3]), M.coords(params[:, 3:]))
    rhs = M.coords(F.add(params[:, :3], params[:, 3:]))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    check(4, "m1 m2 = 1 + sum (r_j + s_j) ...", bad.size == 0,
          f"{len(params) - bad.size}/{len(params)} pairs", params[bad[0]] if bad.size else None,
          kind="display")

    # -- Step 5: V = C_V(R) M ---------------------------------------------
    bad_in = bad_disp = None
    for t in range(samples):
        cc = F.random(rng, 21)
        rr = F.random(rng, 3)
        n, m = CRf(cc), M(rr)
        nm = AlgebraElement(A, P.conj_batch(n.coeffs[None, :], m.coeffs[None, :])[0])
        if bad_in is None and not CRf.contains(nm):
            bad_in = (cc, rr)
        Rz = P.zpoly(rr)
        disp = n + P.terms["step5.k1"](P, cc, Rz) + P.terms["step5.k2"](P, cc, Rz) * P.x
        if bad_disp is None and not nm == disp:
            bad_disp = (cc, rr)
    check(5, f"n^m in C_V(R) ({samples} samples)", bad_in is None, f"{samples} samples", bad_in)
    check(5, "n^m display with k1, k2, d0..d4", bad_disp is None, f"{samples} samples", bad_disp,
          kind="display")
    ok, g = normalizes(P, group_generators(P, M, exp=False), CR)
    check(5, "M normalizes C_V(R) (group generators)", ok, witness=g)
    check(5, "C_V(R) ∩ M = 1", CR.intersect(M.space).dim == 0)
    check(5, "dim C_V(R) + dim M = dim J", CR.dim + M.dim == J.dim)

    # -- Z(V) and C_V(y) --------------------------------------------------
    Z = center_of_V(J, A)
    rep.dims["Z(V)"] = Z.dim
    check(6, "Z(V) closed form", P.span(zv_directions(P)) == Z)
    CY = centralizer_space([P.y], J, A)
    rep.dims["C_V(y)"] = CY.dim
    check(6, "C_V(y) has 15 parameters", CY.dim == 15, f"dim = {CY.dim}")
    check(6, "C_V(y) closed form", P.span(cy_directions(P)) == CY)
    # advisory: the displayed commutator is compared up to sign; a sign
    # slip does not affect the vanishing condition checked above
    mism = opposite = 0
    witness = None
    for t in range(min(samples, 50)):
        b = F.random(rng, 24)
        v = V(b)
        lhs = v * P.y - P.y * v
        rhs = P.zpoly([0])
        for i in range(1, 5):
            for j in range(3):
                term = P.y * (1 - P.y**i) * (P.y**3 - 1) * P.z**j * P.x
                rhs = rhs + term.scale(int(b[i - 1 + 4 * j + 12]))
        if not lhs == rhs:
            mism += 1
            opposite += int(lhs == -rhs)
            witness = witness if witness is not None else b
    detail = "matches" if not mism else (
        "display equals yv - vy" if opposite == mism else f"{mism} mismatches")
    check(6, "vy - yv display", mism == 0, detail, witness, kind="advisory")

    for name, want in EXPECTED_DIMS.items():
        got = rep.dims.get(name)
        step = {"R": 1, "C_V(R)": 2, "S": 3, "T": 3, "U": 3, "M": 4, "Z(V)": 6}[name]
        check(step, f"dim {name} = {want}", got == want, f"got {got}")

    if raise_on_failure and rep.failures:
        first = rep.failures[0]
        exc = StepFailed(first.step, first.name, first.witness)
        exc.report = rep
        raise exc
    return rep
