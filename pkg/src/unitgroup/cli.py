"""Command-line front end: ``analyze`` a (group, field) pair or ``verify`` a suite.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 internal
certification error.  JSON output is canonical (fixed key order, no
timings) unless ``--with-meta`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .algebra import GroupAlgebra, quotient_algebra
from .errors import CertificationFailure, ReferenceMismatch, StepFailed, TooLarge, UnitGroupError, UsageError
from .field import make_field
from .groups import build_group
from .radical import jacobson_radical
from .p5 import verify_p5_structure
from .units import BRUTE_FORCE_CAP, brute_force_units, structure_report, unit_group_order
from .wedderburn import central_decomposition, ferraz_decomposition, predicted_C3xD10

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CERT = 0, 1, 2, 3

THEOREM_CASES = [
    (2, 1), (2, 2), (2, 3), (2, 4), (5, 1), (5, 2), (7, 1), (7, 2),
    (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1),
]
ORACLE_GROUPS = ["C2", "C3", "C5", "C6", "C2xC2", "D10"]
ORACLE_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1)]
P5_DEGREES = [1, 2]


@dataclass
class SuiteResult:
    suite: str
    seed: int
    cases: list[dict] = dc_field(default_factory=list)
    timings: list[float] = dc_field(default_factory=list)
    certification_error: bool = False

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cases)

    def to_dict(self, with_meta: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "cases": self.cases,
        }
        if with_meta:
            out["meta"] = {"version": __version__, "timings_s": [round(t, 4) for t in self.timings]}
        return out


def canonical_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------
def theorem_case(p: int, k: int, seed: int = 0) -> dict:
    """Both decompositions of GF(p^k)[C3 x D10] against the reference row."""
    G = build_group("C3xD10")
    F = make_field(p, k)
    pred = predicted_C3xD10(p, k)
    A = GroupAlgebra(G, F)
    J = jacobson_radical(A, seed=seed)
    semisimple = quotient_algebra(A, J)[0] if J.dim else A
    central = central_decomposition(semisimple, seed=seed)
    counted, data = ferraz_decomposition(G, F, radical_dim=J.dim)
    ok = central == pred.decomposition and counted == pred.decomposition and J.dim == pred.radical_dim
    return {
        "p": p, "k": k, "q": F.q,
        "case_label": pred.case_label,
        "expected": str(pred.decomposition),
        "central": str(central),
        "ferraz": str(counted),
        "radical_dim": J.dim,
        "unit_group_order": str(unit_group_order(central, J.dim, F.q)),
        "passed": bool(ok),
    }


def run_theorem(seed: int = 0) -> SuiteResult:
    res = SuiteResult("theorem", seed)
    for p, k in THEOREM_CASES:
        t0 = time.perf_counter()
        try:
            case = theorem_case(p, k, seed)
        except CertificationFailure as exc:
            res.certification_error = True
            case = {"p": p, "k": k, "q": p**k, "passed": False, "error": str(exc)}
        except UnitGroupError as exc:
            case = {"p": p, "k": k, "q": p**k, "passed": False, "error": str(exc)}
        res.timings.append(time.perf_counter() - t0)
        res.cases.append(case)
    return res


def run_p5(seed: int = 0) -> SuiteResult:
    res = SuiteResult("p5", seed)
    for k in P5_DEGREES:
        t0 = time.perf_counter()
        report = verify_p5_structure(make_field(5, k), seed=seed, raise_on_failure=False)
        res.timings.append(time.perf_counter() - t0)
        res.cases.append({
            "k": k,
            "dims": report.dims,
            "steps": {str(s): ok for s, ok in sorted(report.steps().items())},
            "failures": [f"step {c.step}: {c.name} ({c.detail})" for c in report.failures],
            "flags": [f"step {c.step}: {c.name} ({c.detail})" for c in report.flags],
            "passed": report.passed,
        })
    return res


def oracle_pairs() -> list[tuple[str, int, int]]:
    """Grid pairs small enough for exhaustive counting, in fixed order."""
    out = []
    for spec in ORACLE_GROUPS:
        n = build_group(spec).order
        for p, k in ORACLE_FIELDS:
            if (p**k) ** n <= BRUTE_FORCE_CAP:
                out.append((spec, p, k))
    return out


def oracle_case(spec: str, p: int, k: int, seed: int = 0) -> dict:
    G, F = build_group(spec), make_field(p, k)
    report = structure_report(G, F, seed=seed)
    counted = brute_force_units(G, F)
    return {
        "group": spec, "p": p, "k": k,
        "predicted": str(report.unit_order),
        "brute_force": str(counted),
        "passed": counted == report.unit_order,
    }


def run_oracle(seed: int = 0) -> SuiteResult:
    res = SuiteResult("oracle", seed)
    for spec, p, k in oracle_pairs():
        t0 = time.perf_counter()
        try:
            case = oracle_case(spec, p, k, seed)
        except CertificationFailure as exc:
            res.certification_error = True
            case = {"group": spec, "p": p, "k": k, "passed": False, "error": str(exc)}
        except (ReferenceMismatch, TooLarge) as exc:
            case = {"group": spec, "p": p, "k": k, "passed": False, "error": str(exc)}
        res.timings.append(time.perf_counter() - t0)
        res.cases.append(case)
    return res


SUITES = {"theorem": run_theorem, "p5": run_p5, "oracle": run_oracle}


# ----------------------------------------------------------------------
# text rendering
# ----------------------------------------------------------------------
def render_report(report) -> str:
    d = report.to_dict()
    f, g = d["field"], d["group"]
    orbits = ", ".join(map(str, d["ferraz"]["orbit_sizes"]))
    comps = str(report.decomposition)
    lines = [
        f"group             {g['spec']} (order {g['order']})",
        f"field             GF({f['q']}) = GF({f['p']}^{f['k']}), modulus {f['modulus']}",
        f"radical           dim {d['radical_dim']}, nilpotency index {d['nilpotency_index']}",
        f"FG/J              {comps}",
        f"|U(FG)|           {d['unit_group_order']}",
        f"structure         {d['structure']}",
        f"case              {d['case_label']}",
        f"ferraz            m = {d['ferraz']['m']}, orbit sizes ({orbits})",
    ]
    return "\n".join(lines) + "\n"


def render_suite(res: SuiteResult) -> str:
    lines = []
    for c in res.cases:
        mark = "PASS" if c["passed"] else "FAIL"
        if res.suite == "theorem":
            what = f"q={c['q']:<6} (p={c['p']}, k={c['k']})"
            info = c.get("error") or f"{c['expected']}  [{c['case_label']}]"
        elif res.suite == "p5":
            what = f"GF(5^{c['k']})"
            info = "; ".join(f"{k}={v}" for k, v in c["dims"].items())
            if c["failures"]:
                info += "\n      " + "\n      ".join(c["failures"])
            if c["flags"]:
                info += "\n      flagged: " + "; ".join(c["flags"])
        else:
            what = f"{c['group']:<6} GF({c['p']}^{c['k']})"
            info = c.get("error") or f"{c['brute_force']} units (predicted {c['predicted']})"
        lines.append(f"{mark}  {what}  {info}")
    n_ok = sum(c["passed"] for c in res.cases)
    lines.append(f"{res.suite}: {n_ok}/{len(res.cases)} cases pass (seed {res.seed})")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    G = build_group(args.group)
    F = make_field(args.p, args.k)
    report = structure_report(G, F, seed=args.seed)
    record = report.to_dict()
    if args.format == "json":
        if args.with_meta:
            record["meta"] = {"version": __version__, "seed": args.seed,
                              "timing_s": round(time.perf_counter() - t0, 4)}
        sys.stdout.write(canonical_json(record))
    else:
        sys.stdout.write(render_report(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    res = SUITES[args.suite](seed=args.seed)
    if args.format == "json":
        sys.stdout.write(canonical_json(res.to_dict(with_meta=args.with_meta)))
    else:
        sys.stdout.write(render_suite(res))
    if res.certification_error:
        return EXIT_CERT
    return EXIT_OK if res.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unitgroup", description="Unit groups of modular group algebras FG.")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="structure report for one (group, field) pair")
    an.add_argument("--group", required=True, help="group spec, e.g. C3xD10")
    an.add_argument("--p", type=int, required=True, help="characteristic")
    an.add_argument("--k", type=int, default=1, help="degree of GF(p^k) over GF(p)")
    an.add_argument("--format", choices=("json", "text"), default="text")
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--with-meta", action="store_true", help="append version and timing to JSON")
    an.set_defaults(func=cmd_analyze)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("--suite", choices=sorted(SUITES), required=True)
    ve.add_argument("--format", choices=("json", "text"), default="text")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--with-meta", action="store_true", help="append version and timings to JSON")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReferenceMismatch, StepFailed) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CertificationFailure as exc:
        print(f"certification error: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
