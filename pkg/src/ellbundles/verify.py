"""Acceptance checks.  Each check computes an observed value; the manifest
(manifests/paper.json) holds the expected value and where it comes from."""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import oracles, wpl
from .exactalg import FGAbGroup

MANIFEST_VERSION = 1


@dataclass
class CheckResult:
    name: str
    criterion: int
    passed: bool
    observed: object
    expected: object
    seconds: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "criterion": self.criterion, "passed": self.passed,
                "observed": self.observed, "expected": self.expected,
                "seconds": round(self.seconds, 3), "detail": self.detail}


@dataclass
class VerifyReport:
    suite: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def by_criterion(self) -> dict:
        out: dict = {}
        for r in self.results:
            out.setdefault(r.criterion, []).append(r)
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        # timings are excluded so that reports are reproducible byte for byte
        return {"suite": self.suite, "passed": self.passed,
                "checks": [{k: v for k, v in r.to_dict().items() if k != "seconds"}
                           for r in self.results]}

    def to_ascii(self) -> str:
        lines = []
        for c, rs in self.by_criterion().items():
            ok = all(r.passed for r in rs)
            lines.append(f"criterion {c}: {'PASS' if ok else 'FAIL'}")
            for r in rs:
                lines.append(f"  [{'ok' if r.passed else 'FAIL'}] {r.name}"
                             + (f"  ({r.detail})" if r.detail else ""))
        return "\n".join(lines) + "\n"


def load_manifest(suite: str = "paper") -> dict:
    text = resources.files("ellbundles").joinpath("manifests", f"{suite}.json").read_text()
    data = json.loads(text)
    names = [c["name"] for c in data["checks"]]
    if len(names) != len(set(names)):
        raise ValueError("duplicate check names in manifest")
    for c in data["checks"]:
        if "source" not in c:
            raise ValueError(f"check {c['name']} has no source annotation")
    return data


# -- shared computations ---------------------------------------------------------------


@lru_cache(maxsize=None)
def p3_chart():
    """Short model at p = 3, s <= 3, n <= 37; s <= 3, n <= 20 computed up front,
    the rest on demand for Δ-stabilization."""
    from .hopfext import ext_chart
    chart = ext_chart(3, 37, 3, eager=False)
    for s in range(4):
        for n in range(21):
            chart.data(s, n)
    return chart


def _stable_group(s: int, n: int) -> FGAbGroup | None:
    from .hopfext import delta_stabilize
    st = delta_stabilize(p3_chart(), s, n)
    return st.group if st.stabilized else None


# -- criterion 1, 2 ----------------------------------------------------------------------


def wpl_h0_ranks():
    w = wpl.WeightedLine(4, 6)
    ranks = wpl.chart(w, 0, 12).h0_ranks
    brute = [len(oracles.lattice_points_brute(4, 6, m, 0)) for m in range(0, 13)]
    return ranks if ranks == brute else {"chart": ranks, "oracle": brute}


def wpl_h1_ranks():
    w = wpl.WeightedLine(4, 6)
    ranks = wpl.chart(w, -22, -10).h1_ranks
    brute = [len(oracles.lattice_points_brute(4, 6, m, 1)) for m in range(-22, -9)]
    return ranks if ranks == brute else {"chart": ranks, "oracle": brute}


def serre_duality():
    failures = []
    for k in range(1, 9):
        for l in range(1, 9):
            w = wpl.WeightedLine(k, l)
            for m in range(-60, 61):
                try:
                    wpl.serre_pairing(w, m)
                except AssertionError:
                    failures.append([k, l, m])
    return failures


# -- criterion 3 ---------------------------------------------------------------------------


def hopf_axioms():
    from .hopfext import weierstrass
    return weierstrass().check_axioms(3)


def dd_zero(seed: int = 0, samples: int = 3):
    """Explicit d∘d matrices where the basis fits the cap; elsewhere d∘d on a
    seeded sample of basis elements (the generator-level cosimplicial
    identities already cover every bidegree)."""
    from .hopfext import cobar
    from .hopfext.cobar import default_cap
    C = cobar(5, 20)
    cap = default_cap()
    rng = random.Random(seed)
    bad, explicit, sampled = [], 0, 0
    for s in range(4):
        for n in range(21):
            if max(C.basis_size(s + k, n) for k in range(3)) <= cap:
                explicit += 1
                if not C.check_dd(s, n):
                    bad.append([s, n])
            else:
                sampled += 1
                for mono in _sample_basis(C, s, n, rng, samples):
                    if C.apply_d(s + 1, C.apply_d(s, {mono: 1})):
                        bad.append([s, n])
                        break
    return {"failures": bad, "bidegrees": explicit + sampled}


def _sample_basis(C, s, n, rng, k):
    """Random normalized cobar monomials of bidegree (s, n), drawn slot by slot."""
    out = []
    for _ in range(k):
        mono = C.random_basis_element(s, n, rng)
        if mono is not None:
            out.append(mono)
    return out


# -- criterion 4, 5, 9 ----------------------------------------------------------------------


def ext_p3_named():
    out = {}
    for s, n in ((1, 2), (2, 6)):
        g = _stable_group(s, n)
        out[f"{s},{n}"] = str(g) if g is not None else "not stabilized"
    return out


def ext_p3_zero_row():
    """n in 1..13 except 2 where the stable Ext^{1,n} is nonzero or unstable."""
    bad = []
    for n in range(1, 14):
        if n == 2:
            continue
        g = _stable_group(1, n)
        if g is None or not g.is_trivial():
            bad.append([n, str(g) if g is not None else "not stabilized"])
    return bad


def ext_p3_products():
    from .hopfext import yoneda_product
    chart = p3_chart()
    a, b = chart.classes["α"], chart.classes["β"]
    return {"alpha_squared_zero": chart.is_zero(yoneda_product(chart, a, a)),
            "beta_alpha_nonzero": not chart.is_zero(yoneda_product(chart, b, a)),
            "alpha_beta_nonzero": not chart.is_zero(yoneda_product(chart, a, b))}


def ext_p3_flags():
    """Δ-torsion before localization, over the fixed range s <= 3, n <= 20."""
    from .hopfext import delta_torsion_flags, ext_chart
    chart = ext_chart(3, 20, 3)
    return [list(x) for x in delta_torsion_flags(chart)]


def ext0_ranks():
    chart = p3_chart()
    ranks = [chart.group(0, n).free for n in range(25)]
    oracle = [oracles.modular_form_count(n) for n in range(25)]
    return ranks if ranks == oracle else {"chart": ranks, "oracle": oracle}


def cross_module():
    from .moduli3 import Line, cohomology_dim
    mismatches = []
    for s, ns in ((1, range(0, 14)), (2, range(0, 12))):
        for n in ns:
            g = _stable_group(s, n)
            table = cohomology_dim(Line(0), s, n)
            if g is None:
                seen = None
            elif g.free == 0 and all(t == 3 for t in g.torsion):
                seen = len(g.torsion)
            else:
                seen = -1
            if seen != table:
                mismatches.append([s, n, table, str(g)])
    return mismatches


# -- criterion 6 ---------------------------------------------------------------------------


def mbar_end_mod_rad():
    from .reps import end_algebra, mbar
    return [end_algebra(mbar(n)).quotient_dim for n in range(5)]


def res_ind_q8():
    from .reps import build_group, decompose, has_summand, induce, mbar, pullback_q8, restrict
    G, Q = build_group("GL2F3"), build_group("Q8")
    out = {}
    for n in range(3):
        x = pullback_q8(mbar(n))
        z = restrict(induce(x, G), Q)
        rep = decompose(z, seed=0)
        out[str(n)] = {"rank": z.rank, "contains_mbar": has_summand(rep, x)}
    return out


def _ind_mbar1(seed: int):
    from .reps import build_group, decompose, induce, mbar, pullback_q8
    return decompose(induce(pullback_q8(mbar(1)), build_group("GL2F3")), seed=seed)


def ind_mbar1_large_summand():
    rep = _ind_mbar1(0)
    return {"max_summand_rank_at_least_3": max(rep.ranks()) >= 3,
            "all_certified": all(s.certified for s in rep.summands)}


def krs_seed_stability():
    multisets = [_ind_mbar1(seed).krs_multiset() for seed in range(5)]
    return all(m == multisets[0] for m in multisets)


# -- criterion 7 ----------------------------------------------------------------------------


def bundle_identities():
    from .moduli3 import Ealpha, FPush, Line, bundle, dual, tensor
    E, F = bundle(Ealpha(0)), bundle(FPush(0))
    return {
        "ealpha_tensor_ealpha": tensor(E, E) == bundle(FPush(0), Line(-2)),
        "ealpha_tensor_fpush": tensor(E, F) == bundle(FPush(0), FPush(-2)),
        "dual_ealpha": dual(E) == bundle(Ealpha(2)),
        "fpush_self_dual": dual(F) == F,
    }


def i_functor_dictionary():
    from .moduli3 import i_functor
    from .reps import s3_lattices
    L = s3_lattices()
    return {name: i_functor(getattr(L, name)).label()
            for name in ("Z", "P", "Zzeta", "IdealZeta")}


def i_functor_sequences():
    from .moduli3 import mapped_rep_sequences
    return [s.to_dict() for s in mapped_rep_sequences()]


# -- criterion 8 ----------------------------------------------------------------------------


def theorem_b_properties(count: int = 200, seed: int = 0, max_rank: int = 8):
    from .moduli3 import (EnumerateAll, IteratedExtension, ExtClassVector, KINDS, Line,
                          StandardBundle, normalize, random_extensions,
                          rank_h1_corollary_check, split_extension)
    tally = {"extensions": 0, "branches": 0, "non_standard": 0, "rank_violations": 0,
             "idempotence_failures": 0, "corollary_failures": 0}
    for e in random_extensions(count, seed, max_rank):
        tally["extensions"] += 1
        for b in normalize(e, EnumerateAll()).forms:
            tally["branches"] += 1
            if not isinstance(b, StandardBundle) or any(s.kind not in KINDS for s in b):
                tally["non_standard"] += 1
            if b.rank != e.rank:
                tally["rank_violations"] += 1
            if not rank_h1_corollary_check(b):
                tally["corollary_failures"] += 1
            again = split_extension(b)
            ok = again is None or normalize(again).forms == {b}
            top = IteratedExtension((ExtClassVector.zero(0, b),))
            ok &= normalize(top).forms == {b + Line(0)}
            if not ok:
                tally["idempotence_failures"] += 1
    return tally


CHECKS = {
    "wpl_h0_4_6": (1, wpl_h0_ranks),
    "wpl_h1_4_6": (1, wpl_h1_ranks),
    "serre_duality": (2, serre_duality),
    "hopf_axioms": (3, hopf_axioms),
    "dd_zero": (3, dd_zero),
    "ext_p3_named": (4, ext_p3_named),
    "ext_p3_zero_row": (4, ext_p3_zero_row),
    "ext_p3_products": (4, ext_p3_products),
    "ext_p3_delta_torsion": (4, ext_p3_flags),
    "ext0_ranks": (5, ext0_ranks),
    "mbar_end_mod_rad": (6, mbar_end_mod_rad),
    "res_ind_q8": (6, res_ind_q8),
    "ind_mbar1_large_summand": (6, ind_mbar1_large_summand),
    "krs_seed_stability": (6, krs_seed_stability),
    "bundle_identities": (7, bundle_identities),
    "i_functor_dictionary": (7, i_functor_dictionary),
    "i_functor_sequences": (7, i_functor_sequences),
    "theorem_b_properties": (8, theorem_b_properties),
    "cross_module": (9, cross_module),
}


def _compare(observed, expected, check: dict) -> tuple:
    """Exact comparison; checks marked informational always pass but are
    reported."""
    if check.get("informational"):
        return True, "informational"
    return observed == expected, ""


def run_check(check: dict) -> CheckResult:
    criterion, fn = CHECKS[check["name"]]
    if criterion != check["criterion"]:
        raise ValueError(f"manifest criterion mismatch for {check['name']}")
    t = time.perf_counter()
    observed = json.loads(json.dumps(fn()))
    elapsed = time.perf_counter() - t
    ok, detail = _compare(observed, check["expected"], check)
    return CheckResult(check["name"], criterion, ok, observed, check["expected"], elapsed, detail)


def run_suite(suite: str = "paper", criteria=None, names=None) -> VerifyReport:
    manifest = load_manifest(suite)
    report = VerifyReport(suite)
    for check in manifest["checks"]:
        if criteria and check["criterion"] not in criteria:
            continue
        if names and check["name"] not in names:
            continue
        report.results.append(run_check(check))
    return report
