"""Named verification suites producing deterministic reports.

Each suite runs a fixed family of exact checks and returns a Report whose
canonical JSON serialization is byte-stable for a given (suite, params,
seed) triple.  Wall-clock timing never enters the canonical bytes; the
markdown rendering may carry it as a courtesy.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .exactla import InputError, det, rat, rat_str
from .liecore import (
    UniPoly,
    builtin_algebra,
    check_table_antisymmetry,
    check_table_jacobi,
    crt_idempotents,
    index_report,
    make_difference_bracket,
    make_direct_power,
    make_quotient,
    parse_poly,
    pencil_combination,
    rational_roots,
)
from .psring import (
    CurrentBracket,
    MPoly,
    poisson_bracket,
    psi_p,
    span_dim,
    tau_apply,
)
from .invariantlab import (
    attach_poly,
    basic_invariants,
    binom_identity_check,
    casimir,
    centralizer_in_span,
    copies_to_quotient,
    example_split_family,
    ff_bracket_decomposition,
    gaudin_hamiltonians,
    graded_H_sum,
    h_span,
    lemma_x_element,
    matrix_A,
    matrix_A_kd,
    predicted_centralizer_basis,
    quad_H,
    quad_X,
    quad_h,
    quad_h_bilinear,
    script_f,
    takiff_generators,
    univ_sum,
    xi_t,
    y_xi,
)
from .pencilz import (
    Pencil,
    build_Z,
    check_ft_gzu,
    check_sovp,
    tau_ladder_span,
    trdeg_estimate,
    trdeg_of_Z,
    verify_Z_commutes,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: object = None


@dataclass
class Report:
    suite: str
    seed: int
    params: dict
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def counts(self) -> dict:
        passed = sum(1 for c in self.checks if c.ok)
        return {
            "total": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "params": _jsonify(self.params),
            "version": __version__,
            "ok": self.ok,
            "counts": self.counts(),
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": _jsonify(c.detail)}
                for c in self.checks
            ],
        }


def _jsonify(value):
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    return str(value)


def canonical_json(report: Report) -> str:
    """Byte-stable serialization: sorted keys, tight separators, no timing."""
    return json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"))


def report_markdown(report: Report, elapsed: float | None = None) -> str:
    d = report.to_dict()
    lines = [f"# suite {d['suite']}", ""]
    lines.append(f"- seed: {d['seed']}")
    lines.append(f"- version: {d['version']}")
    if d["params"]:
        lines.append(f"- params: `{json.dumps(d['params'], sort_keys=True)}`")
    c = d["counts"]
    lines.append(f"- result: {'PASS' if d['ok'] else 'FAIL'} "
                 f"({c['passed']}/{c['total']} checks)")
    if elapsed is not None:
        lines.append(f"- elapsed: {elapsed:.2f}s (not part of the canonical report)")
    lines.append("")
    lines.append("| check | ok | detail |")
    lines.append("|---|---|---|")
    for ch in d["checks"]:
        det_txt = "" if ch["detail"] is None else json.dumps(ch["detail"], sort_keys=True)
        lines.append(f"| {ch['name']} | {'pass' if ch['ok'] else 'FAIL'} | {det_txt} |")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# suite bodies


def _suite_jacobi(params, seed):
    checks = []
    for qa in params["algebras"]:
        q = builtin_algebra(qa)
        for ptxt in params["moduli"]:
            T = make_quotient(q, parse_poly(ptxt))
            anti = check_table_antisymmetry(T)
            bad = check_table_jacobi(T)
            detail = None if bad is None else {"witness": bad}
            checks.append(CheckResult(f"antisymmetry[{qa}, {ptxt}]", anti))
            checks.append(CheckResult(f"jacobi[{qa}, {ptxt}]", bad is None, detail))
    return checks


def _suite_pencil_closure(params, seed):
    q = builtin_algebra(params["algebra"])
    p1 = parse_poly(params["p1"])
    p2 = parse_poly(params["p2"])
    pen = Pencil(q, p1, p2)
    t1, t2 = pen.end_tables
    rng = random.Random(seed)
    pts = []
    while len(pts) < params["count"] - 4:
        a, b = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))
        if (a, b) != (0, 0):
            pts.append((a, b))
    while len(pts) < params["count"]:
        a = Fraction(rng.randint(-9, 9))
        pts.append((a, 1 - a))
    checks = []
    for a, b in pts:
        T = pencil_combination(t1, t2, a, b)
        anti = check_table_antisymmetry(T)
        bad = check_table_jacobi(T)
        ok = anti and bad is None
        detail = {"a": a, "b": b}
        if a + b == 1:
            fresh = make_quotient(q, p1.scale(a) + p2.scale(b))
            same = T == fresh
            detail["matches_fresh_quotient"] = same
            ok = ok and same
        checks.append(CheckResult(f"member[a={rat_str(a)}, b={rat_str(b)}]", ok, detail))
    return checks


def _suite_index_laws(params, seed):
    checks = []
    for qa, ptxt in params["split_cases"]:
        q = builtin_algebra(qa)
        p = parse_poly(ptxt)
        ind_q = index_report(q, seed=seed).index
        rep = index_report(make_quotient(q, p), seed=seed)
        want = p.degree * ind_q
        checks.append(CheckResult(
            f"split-index[{qa}, {ptxt}]", rep.index == want,
            {"index": rep.index, "expected": want, "bound": rep.bound,
             "rounds": rep.rounds},
        ))
    for qa, p1txt, p2txt in params["difference_cases"]:
        q = builtin_algebra(qa)
        p1, p2 = parse_poly(p1txt), parse_poly(p2txt)
        ind_q = index_report(q, seed=seed).index
        T = make_difference_bracket(q, p1, p2)
        rep = index_report(T, seed=seed)
        want = q.dim + (p1.degree - 1) * ind_q
        checks.append(CheckResult(
            f"difference-index[{qa}, {p1txt} vs {p2txt}]", rep.index == want,
            {"index": rep.index, "expected": want, "bound": rep.bound,
             "rounds": rep.rounds},
        ))
    return checks


def _suite_crt(params, seed):
    q = builtin_algebra(params["algebra"])
    checks = []
    for ptxt in params["moduli"]:
        p = parse_poly(ptxt)
        rd = rational_roots(p)
        roots = tuple(r for r, _ in rd)
        idems = crt_idempotents(p, roots)
        ok_idem = all((r * r - r).mod(p).is_zero() for r in idems)
        ok_orth = all(
            (idems[i] * idems[j]).mod(p).is_zero()
            for i in range(len(idems)) for j in range(len(idems)) if i != j
        )
        total = UniPoly.zero()
        for r in idems:
            total = total + r
        ok_sum = (total - UniPoly.one()).mod(p).is_zero()
        checks.append(CheckResult(
            f"idempotents[{ptxt}]", ok_idem and ok_orth and ok_sum,
            {"square": ok_idem, "orthogonal": ok_orth, "sum_to_one": ok_sum},
        ))
        T = make_quotient(q, p)
        ok_iso = True
        for x in range(q.dim):
            for y in range(q.dim):
                ent = q.bracket(x, y)
                bxy = MPoly.from_entries(((m, 0), c) for m, c in ent)
                for i in range(len(idems)):
                    for j in range(len(idems)):
                        lhs = poisson_bracket(
                            attach_poly(MPoly.variable((x, 0)), idems[i]),
                            attach_poly(MPoly.variable((y, 0)), idems[j]),
                            T,
                        )
                        if i == j and not bxy.is_zero():
                            rhs = attach_poly(bxy, idems[i], p)
                        else:
                            rhs = MPoly.zero()
                        if lhs != rhs:
                            ok_iso = False
        checks.append(CheckResult(f"component-iso[{ptxt}]", ok_iso))
    return checks


def _suite_takiff(params, seed):
    checks = []
    for qa, n in params["cases"]:
        q = builtin_algebra(qa)
        fs = basic_invariants(q)
        gens = takiff_generators(q, fs, n)
        p = UniPoly.monomial(n)
        T = make_quotient(q, p)
        vs = T.var_list()
        central = all(
            poisson_bracket(g, MPoly.variable(v), T).is_zero()
            for g in gens.polys()
            for v in vs
        )
        want = n * len(fs)
        rep = trdeg_estimate(gens.polys(), vs, seed=seed)
        checks.append(CheckResult(
            f"takiff[{qa}, n={n}]",
            central and len(gens) == want and rep.rank == want,
            {"count": len(gens), "central": central, "jacobian_rank": rep.rank,
             "expected": want},
        ))
    return checks


def _suite_z_assembly(params, seed):
    checks = []
    for qa, p1txt, p2txt, counts, trdeg in params["cases"]:
        q = builtin_algebra(qa)
        pen = Pencil(q, parse_poly(p1txt), parse_poly(p2txt))
        Z = build_Z(pen, seed=seed)
        got_counts = Z.counts()
        want_counts = {int(k): v for k, v in counts.items()} if isinstance(counts, dict) else dict(enumerate(counts))
        commutes = verify_Z_commutes(Z)
        rep = trdeg_of_Z(Z, seed=seed)
        ok = got_counts == want_counts and commutes and rep.rank == trdeg
        checks.append(CheckResult(
            f"z[{qa}, {p1txt} / {p2txt}]", ok,
            {"counts": {str(k): v for k, v in got_counts.items()},
             "expected_counts": {str(k): v for k, v in want_counts.items()},
             "commutes": commutes, "trdeg": rep.rank, "expected_trdeg": trdeg},
        ))
    # a non-member pair must fail to commute, so the commuting checks bite
    q = builtin_algebra("sl2")
    pen = Pencil(q, parse_poly("t^2"), parse_poly("t^2+t"))
    t1, _ = pen.end_tables
    nc = poisson_bracket(MPoly.variable((0, 0)), MPoly.variable((2, 1)), t1)
    checks.append(CheckResult("negative-control[e.1 vs f.t]", not nc.is_zero()))
    return checks


def _suite_gaudin(params, seed):
    checks = []
    for qa, zs in params["cases"]:
        q = builtin_algebra(qa)
        z = [rat(v) for v in zs]
        H = gaudin_hamiltonians(q, z)
        T = make_direct_power(q, len(z))
        commute = all(
            poisson_bracket(H[i], H[j], T).is_zero()
            for i in range(len(H))
            for j in range(i + 1, len(H))
        )
        total = MPoly.zero()
        for Hk in H:
            total = total + Hk
        checks.append(CheckResult(
            f"gaudin[{qa}, z=({', '.join(rat_str(v) for v in z)})]",
            commute and total.is_zero(),
            {"commute": commute, "sum_zero": total.is_zero()},
        ))
    # quadratic element against weighted transported Hamiltonians
    q = builtin_algebra("sl2")
    roots = tuple(rat(r) for r in params["bridge_roots"])
    p = UniPoly.from_roots(roots)
    idems = crt_idempotents(p, roots)
    h = quad_h(q, 1, 1, p)
    z = [1 / a for a in roots]
    H = gaudin_hamiltonians(q, z)
    acc = MPoly.zero()
    for k, a in enumerate(roots):
        acc = acc + copies_to_quotient(H[k], p, roots).scale(-2 * a)
        acc = acc + quad_h_bilinear(q, idems[k], idems[k], p).scale(a * a)
    checks.append(CheckResult(
        "quadratic-vs-gaudin[(t-1)(t-2)(t-3)]", acc == h,
    ))
    return checks


def _suite_quad_family(params, seed):
    checks = []
    q = builtin_algebra("sl2")
    cb = CurrentBracket(q)
    top = params["range"]
    bad = 0
    total = 0
    for a, b, c, d in itertools.product(range(top), repeat=4):
        lhs = poisson_bracket(quad_H(q, a, b), quad_H(q, c, d), cb)
        rhs = (
            quad_X(q, b, d, a + c)
            + quad_X(q, b, c, a + d)
            + quad_X(q, a, d, b + c)
            + quad_X(q, a, c, b + d)
        )
        total += 1
        if lhs != rhs:
            bad += 1
    checks.append(CheckResult(
        "bracket-of-quadratics", bad == 0, {"checked": total, "failed": bad},
    ))
    bad = 0
    total = 0
    for k in range(q.dim):
        xi = [Fraction(1 if i == k else 0) for i in range(q.dim)]
        for a, b in itertools.product(range(top), repeat=2):
            lhs = poisson_bracket(quad_H(q, a, b), xi_t(q, xi), cb)
            rhs = y_xi(q, xi, a + 1, b) + y_xi(q, xi, b + 1, a)
            total += 1
            if lhs != rhs:
                bad += 1
    checks.append(CheckResult(
        "bracket-against-linear", bad == 0, {"checked": total, "failed": bad},
    ))
    for n in params["centralizer_ns"]:
        for ptxt in (f"t^{n}", f"t^{n}-1", f"t^{n}+t+1"):
            p = parse_poly(ptxt)
            T = make_quotient(q, p)
            span = [s for _, s in h_span(q, p)]
            h = quad_h(q, 1, 1, p)
            dim = len(centralizer_in_span(h, span, T))
            ok = dim == 2 * n - 1
            detail = {"dim": dim, "expected": 2 * n - 1}
            if p == UniPoly.monomial(n):
                basis = predicted_centralizer_basis(q, p)
                commutes = all(
                    poisson_bracket(h, g, T).is_zero() for g in basis
                )
                spn = span_dim(basis)
                ok = ok and commutes and spn == 2 * n - 1
                detail["predicted_basis_commutes"] = commutes
                detail["predicted_basis_span"] = spn
            checks.append(CheckResult(f"centralizer[{ptxt}]", ok, detail))
        p = UniPoly.monomial(n)
        T = make_quotient(q, p)
        h01 = quad_h(q, 0, 1, p)
        dim = len(centralizer_in_span(h01, [s for _, s in h_span(q, p)], T))
        checks.append(CheckResult(
            f"centralizer-of-h01[t^{n}]", dim == 2 * n - 1,
            {"dim": dim, "expected": 2 * n - 1},
        ))
    for ptxt in params["x_moduli"]:
        p = parse_poly(ptxt)
        xe = lemma_x_element(q, p)
        T = make_quotient(q, p)
        vs = T.var_list()
        central = all(
            poisson_bracket(xe.x, MPoly.variable(v), T).is_zero() for v in vs
        )
        Tt = make_quotient(q, p + UniPoly.t())
        shifted = xe.x - quad_h(q, 1, 1, p).scale(Fraction(1, 2))
        central_t = all(
            poisson_bracket(shifted, MPoly.variable(v), Tt).is_zero() for v in vs
        )
        checks.append(CheckResult(
            f"corrected-element[{ptxt}]", central and central_t,
            {"central": central, "shifted_central_in_p_plus_t": central_t},
        ))
    return checks


def _suite_psi_tau(params, seed):
    checks = []
    q = builtin_algebra("sl2")
    C2 = casimir(q)
    for ptxt, want in params["ladder_cases"]:
        lad = tau_ladder_span(q, C2, parse_poly(ptxt))
        checks.append(CheckResult(
            f"ladder-span[{ptxt}]", lad["dim"] == want,
            {"dim": lad["dim"], "expected": want},
        ))
    ok_el = True
    for n in (3, 4, 5):
        p = UniPoly.monomial(n)
        for k in range(3, n + 1):
            img = tau_apply(quad_H(q, 1, 1), k - 2)
            lhs = psi_p(img, p)
            rhs_unred = graded_H_sum(q, k).scale(math.factorial(k - 2))
            rhs = psi_p(rhs_unred, p)
            if lhs != rhs:
                ok_el = False
    checks.append(CheckResult("raised-quadratic-is-graded-sum", ok_el))
    for qa, p1txt, p2txt in params["bound_cases"]:
        qq = builtin_algebra(qa)
        pen = Pencil(qq, parse_poly(p1txt), parse_poly(p2txt))
        Z = build_Z(pen, seed=seed)
        n = pen.n
        want = {i: F.total_degree() * (n - 1) + 1 for i, F in enumerate(Z.invariants)}
        got = Z.counts()
        checks.append(CheckResult(
            f"generator-count-bound[{qa}, {p1txt} / {p2txt}]", got == want,
            {"counts": {str(k): v for k, v in got.items()},
             "expected": {str(k): v for k, v in want.items()}},
        ))
    return checks


def _suite_sovp(params, seed):
    checks = []
    for qa, ptxt in params["cases"]:
        q = builtin_algebra(qa)
        chk = check_sovp(q, parse_poly(ptxt))
        checks.append(CheckResult(
            f"shift-pencil-spans[{qa}, {ptxt}]", chk.ok, {"detail": chk.detail},
        ))
    for qa, ptxt in params["cases"]:
        q = builtin_algebra(qa)
        chk = check_ft_gzu(q, parse_poly(ptxt))
        checks.append(CheckResult(
            f"constant-pencil-spans[{qa}, {ptxt}]", chk.ok, {"detail": chk.detail},
        ))
    return checks


def _suite_det_a(params, seed):
    checks = []
    ok = True
    vals = {}
    for j in range(params["j_min"], params["j_max"] + 1):
        d = det(matrix_A(j))
        vals[str(j)] = rat_str(d)
        ok = ok and d == 1
    checks.append(CheckResult("unimodular-square-family", ok, {"dets": vals}))
    ok = True
    bad = []
    for k in range(1, params["kd_max"] + 1):
        for dd in range(1, params["kd_max"] + 1):
            v = det(matrix_A_kd(k, dd))
            if v != 1:
                ok = False
                bad.append([k, dd, rat_str(v)])
    checks.append(CheckResult(
        "unimodular-rectangular-family", ok,
        {"range": params["kd_max"], "failures": bad},
    ))
    ok = all(
        binom_identity_check(u, b)
        for u in range(2, params["binom_max"] + 1)
        for b in range(1, u)
    )
    checks.append(CheckResult("halved-binomial-identity", ok))
    return checks


def _suite_forms(params, seed):
    checks = []
    q = builtin_algebra("sl2")
    C2 = casimir(q)
    total = 0
    bad = 0
    for L in (2, 3, 4):
        for alpha in itertools.product(range(4), repeat=L):
            if sum(alpha) != C2.total_degree() + 1:
                continue
            for i in range(L):
                total += 1
                if not univ_sum(q, C2, alpha, i).is_zero():
                    bad += 1
    checks.append(CheckResult(
        "slot-sum-vanishes", bad == 0, {"checked": total, "failed": bad},
    ))
    anti_ok = True
    for alpha in ((1, 1, 1), (0, 2, 1), (1, 2)):
        for i in range(len(alpha)):
            for j in range(len(alpha)):
                if i == j:
                    continue
                if script_f(q, C2, alpha, i, j) != -script_f(q, C2, alpha, j, i):
                    anti_ok = False
    checks.append(CheckResult("slot-antisymmetry", anti_ok))
    for kvec in params["kvecs"]:
        dec = ff_bracket_decomposition(q, C2, tuple(kvec))
        checks.append(CheckResult(
            f"bracket-decomposition[kvec={tuple(kvec)}]", dec.matches,
            {"pieces": len(dec.terms)},
        ))
    polys = [script_f(q, C2, (1, 1, 1), 0, j) for j in (1, 2)]
    polys = [f for f in polys if not f.is_zero()]
    checks.append(CheckResult(
        "balanced-slot-line", span_dim(polys) == 1, {"dim": span_dim(polys)},
    ))
    for ctxt in params["split_cs"]:
        c = rat(ctxt)
        res = example_split_family(q, C2, c)
        ok = all(lhs == rhs for lhs, rhs in res.values())
        checks.append(CheckResult(
            f"split-family[c={rat_str(c)}]", ok,
            {k: bool(lhs == rhs) for k, (lhs, rhs) in res.items()},
        ))
    return checks


def _suite_determinism(params, seed):
    inner = params["inner"]
    inner_params = dict(DEFAULTS[inner])
    r1 = run_suite(inner, inner_params, seed=seed)
    r2 = run_suite(inner, inner_params, seed=seed)
    b1, b2 = canonical_json(r1), canonical_json(r2)
    checks = [
        CheckResult(
            f"repeat[{inner}, seed={seed}]", b1 == b2,
            {"bytes": len(b1), "inner_ok": r1.ok},
        )
    ]
    return checks


# ---------------------------------------------------------------------------
# registry


DEFAULTS = {
    "jacobi": {
        "algebras": ["sl2", "sl3", "abelian:3", "takiff:sl2:2"],
        "moduli": ["t^2", "t^2-1", "t^2-t", "t^3", "t^3-t", "t^3+t+1"],
    },
    "pencil-closure": {
        "algebra": "sl2", "p1": "t^3", "p2": "t^3+t", "count": 10,
    },
    "index-laws": {
        "split_cases": [["sl2", "t^2-t"], ["sl2", "t^3-t"], ["sl3", "t^2-t"]],
        "difference_cases": [["sl2", "t^2", "t^2+t"], ["sl2", "t^3", "t^3+t"]],
    },
    "crt": {
        "algebra": "sl2", "moduli": ["t^2-1", "t^2-t", "t^3-t"],
    },
    "takiff-generators": {
        "cases": [["sl2", 2], ["sl2", 3], ["sl3", 2]],
    },
    "z-assembly": {
        "cases": [
            ["sl2", "t^2", "t^2+t", {"0": 3}, 3],
            ["sl2", "t^2", "t^2+1", {"0": 3}, 3],
            ["sl2", "t^3", "t^3+t", {"0": 5}, 5],
            ["sl3", "t^2", "t^2+t", {"0": 3, "1": 4}, 7],
        ],
    },
    "gaudin-commute": {
        "cases": [["sl2", [1, 2, 5]], ["sl3", [1, 2]]],
        "bridge_roots": [1, 2, 3],
    },
    "quad-family": {
        "range": 3,
        "centralizer_ns": [2, 3, 4],
        "x_moduli": ["t^3", "t^3-1", "t^3+t+1"],
    },
    "psi-tau-spans": {
        "ladder_cases": [["t^2-1", 3], ["t^3-1", 5], ["t^3+t+1", 5]],
        "bound_cases": [
            ["sl2", "t^2", "t^2+t"], ["sl2", "t^3", "t^3+t"],
            ["sl3", "t^2", "t^2+t"],
        ],
    },
    "sovp": {
        "cases": [["sl2", "t^2-1"], ["sl2", "t^3+t+1"], ["sl3", "t^2-1"]],
    },
    "det-A": {
        "j_min": 4, "j_max": 12, "kd_max": 8, "binom_max": 20,
    },
    "forms": {
        "kvecs": [[0, 1], [1, 1], [1, 2]],
        "split_cs": ["1", "4", "9/4"],
    },
    "determinism": {"inner": "index-laws"},
}

_BODIES = {
    "jacobi": _suite_jacobi,
    "pencil-closure": _suite_pencil_closure,
    "index-laws": _suite_index_laws,
    "crt": _suite_crt,
    "takiff-generators": _suite_takiff,
    "z-assembly": _suite_z_assembly,
    "gaudin-commute": _suite_gaudin,
    "quad-family": _suite_quad_family,
    "psi-tau-spans": _suite_psi_tau,
    "sovp": _suite_sovp,
    "det-A": _suite_det_a,
    "forms": _suite_forms,
    "determinism": _suite_determinism,
}

SUITE_NAMES = tuple(_BODIES)


def run_suite(name: str, params: dict | None = None, seed: int = 0) -> Report:
    """Run one named suite; unknown names and bad params raise InputError."""
    if name not in _BODIES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    merged = dict(DEFAULTS[name])
    if params:
        for k, v in params.items():
            if k not in merged:
                raise InputError(f"suite {name!r} takes no parameter {k!r}")
            merged[k] = v
    checks = _BODIES[name](merged, seed)
    return Report(suite=name, seed=seed, params=merged, checks=checks)


def run_all(seed: int = 0) -> list:
    return [run_suite(name, seed=seed) for name in SUITE_NAMES]
