"""Pencils of quotient brackets and the subalgebra their centers generate.

A pencil is spanned by the brackets of two monic moduli of the same degree
whose difference has degree at most one.  Members along the line a + b = 1
are again quotient brackets; their Poisson centers, pulled from either the
split-modulus generators or an exact annihilation solve on polarization
spaces, accumulate into one commutative subalgebra.  The remaining tools
measure that subalgebra: transcendence degree by sampled Jacobian ranks,
agreement with the raising-derivation ladders, lowest-component extraction
after the unipotent substitution, and the evaluation picture in degree two.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactla import InputError, QMatrix, RowSpace, nullspace, rat, rat_str
from .liecore import (
    BracketTable,
    LieAlgebra,
    UniPoly,
    index_report,
    make_quotient,
    pencil_combination,
    rational_roots,
    sampled_max_rank,
)
from .psring import (
    MPoly,
    coeff_rows,
    directional_derivative,
    independent_subset,
    jacobian_rank_at,
    lowest_t_component,
    mono_sort_key,
    poisson_bracket,
    psi_p,
    shift_t_down,
    span_contains,
    span_equal,
    substitute_t,
    substitute_vars,
    tau_apply,
)
from .invariantlab import (
    GenEntry,
    GeneratorSet,
    basic_invariants,
    crt_generators,
    graded_H_sum,
    padded_H_sum,
    polarize,
    weakly_increasing,
)


@dataclass(frozen=True)
class Pencil:
    """Line of brackets spanned by two compatible quotient moduli."""

    base: LieAlgebra
    p1: UniPoly
    p2: UniPoly

    def __post_init__(self):
        for p in (self.p1, self.p2):
            if p.is_zero() or not p.is_monic() or p.degree < 1:
                raise InputError("pencil moduli must be monic of degree >= 1")
        if self.p1.degree != self.p2.degree:
            raise InputError("pencil moduli must share a degree")
        diff = self.p1 - self.p2
        if diff.is_zero():
            raise InputError("pencil moduli must differ")
        if diff.degree > 1:
            raise InputError("pencil needs deg(p1 - p2) <= 1")

    @property
    def n(self) -> int:
        return self.p1.degree

    @cached_property
    def end_tables(self) -> tuple:
        return make_quotient(self.base, self.p1), make_quotient(self.base, self.p2)

    def member_poly(self, a) -> UniPoly:
        """a * p1 + (1 - a) * p2, the modulus of the line member at a."""
        a = rat(a)
        return self.p1.scale(a) + self.p2.scale(1 - a)

    def member(self, a, b) -> BracketTable:
        t1, t2 = self.end_tables
        return pencil_combination(t1, t2, a, b)

    def normalization(self) -> dict:
        """How t -> t + c turns the difference into a pure form.

        A degree-one difference l becomes a multiple of t after shifting by
        the root of l; a constant difference is already normalized.
        """
        l = self.p1 - self.p2
        if l.degree == 0:
            return {"l": "1", "shift": Fraction(0), "scale": l.coeff(0)}
        c = -l.coeff(0) / l.coeff(1)
        return {"l": "t", "shift": c, "scale": l.coeff(1)}


@dataclass(frozen=True)
class PencilPoint:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if self.a == 0 and self.b == 0:
            raise InputError("the zero point does not select a bracket")


def pencil_member(P: Pencil, pt: PencilPoint) -> BracketTable:
    return P.member(pt.a, pt.b)


def generic_member_rank(P: Pencil, seed: int = 0) -> int:
    """Rank every line member of full rank attains: n (dim q - ind q)."""
    ind_q = index_report(P.base, seed=seed).index
    return P.n * (P.base.dim - ind_q)


def is_regular_point(P: Pencil, pt: PencilPoint, seed: int = 0) -> bool:
    """Whether the member at pt has the full generic rank."""
    rep = index_report(pencil_member(P, pt), seed=seed)
    return rep.rank == generic_member_rank(P, seed=seed)


# ---------------------------------------------------------------------------
# assembling the joint center


@dataclass
class ZAlgebra:
    """Generators of the joint-center subalgebra of a pencil.

    gens holds every raw generator with its recipe; basis holds one
    canonical echelon basis per source invariant, which is what counting
    and verification use.
    """

    pencil: Pencil
    invariants: list
    gens: GeneratorSet
    basis: dict
    samples: list
    attrs: dict = field(default_factory=dict)

    def counts(self) -> dict:
        return {i: len(b) for i, b in self.basis.items()}

    def total_count(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def all_basis(self) -> list:
        out = []
        for i in sorted(self.basis):
            out.extend(self.basis[i])
        return out

    def expected_counts(self) -> dict:
        n = self.pencil.n
        return {
            i: F.total_degree() * (n - 1) + 1
            for i, F in enumerate(self.invariants)
        }


def _sample_sequence(count: int) -> list:
    out = []
    k = 1
    while len(out) < count:
        out.append(Fraction(k))
        if len(out) < count:
            out.append(Fraction(1 - k))
        k += 1
    return out[:count]


def _annihilator_combos(pols: Sequence, T: BracketTable) -> list:
    """Coefficient vectors c with {sum c_k pols_k, x_v} = 0 for every v."""
    vs = T.var_list()
    images = []
    for pol in pols:
        images.append([poisson_bracket(pol, MPoly.variable(v), T) for v in vs])
    blocks = []
    for vi in range(len(vs)):
        col_polys = [images[k][vi] for k in range(len(pols))]
        if all(F.is_zero() for F in col_polys):
            continue
        _, rows = coeff_rows(col_polys)
        width = len(rows[0])
        for c in range(width):
            blocks.append([rows[k][c] for k in range(len(pols))])
    if not blocks:
        return [
            tuple(Fraction(1) if i == k else Fraction(0) for k in range(len(pols)))
            for i in range(len(pols))
        ]
    return nullspace(QMatrix.from_rows(blocks))


def build_Z(P: Pencil, f_list: Sequence | None = None,
            sample_count: int | None = None, seed: int = 0) -> ZAlgebra:
    """Accumulate central elements of line members into one generator set.

    Members whose modulus splits over Q contribute the transported
    split-modulus generators; any other member contributes the exact
    solution space of bracket annihilation inside each polarization space.
    The a values walk 1, 0, 2, -1, 3, -2, ... so both ends always
    participate.  Deterministic for fixed inputs.
    """
    q = P.base
    n = P.n
    if f_list is None:
        f_list = basic_invariants(q)
    f_list = list(f_list)
    if not f_list:
        raise InputError("need at least one invariant to polarize")
    degs = [F.total_degree() for F in f_list]
    if sample_count is None:
        sample_count = max(degs) * n + 3
    if sample_count < 1:
        raise InputError("sample count must be positive")
    pol_spaces = {}
    for i, F in enumerate(f_list):
        pol_spaces[i] = [polarize(F, kv) for kv in weakly_increasing(degs[i], n - 1)]
    entries = []
    collected = {i: [] for i in range(len(f_list))}
    samples = _sample_sequence(sample_count)
    for a in samples:
        ptilde = P.member_poly(a)
        rd = rational_roots(ptilde)
        if rd is not None:
            gs = crt_generators(q, f_list, ptilde, rd)
            for e in gs.entries:
                entry = GenEntry(
                    e.poly, e.source, ("MEMBER", rat_str(a)) + e.recipe
                )
                entries.append(entry)
                collected[e.source].append(e.poly)
        else:
            T = P.member(a, 1 - a)
            for i in range(len(f_list)):
                combos = _annihilator_combos(pol_spaces[i], T)
                for row, vec in enumerate(combos):
                    poly = MPoly.zero()
                    for c, pol in zip(vec, pol_spaces[i]):
                        if c:
                            poly = poly + pol.scale(c)
                    if poly.is_zero():
                        continue
                    entry = GenEntry(
                        poly, i, ("MEMBER", rat_str(a), "ANNIH", i, row)
                    )
                    entries.append(entry)
                    collected[i].append(poly)
    basis = {}
    for i, polys in collected.items():
        if not polys:
            basis[i] = []
            continue
        monos, rows = coeff_rows(polys)
        rs = RowSpace(len(monos))
        for r in rows:
            rs.add(r)
        out = []
        for vec in rs.basis():
            F = MPoly.zero()
            for c, m in zip(vec, monos):
                if c:
                    F = F + MPoly({m: c})
            out.append(F)
        basis[i] = out
    return ZAlgebra(
        pencil=P,
        invariants=f_list,
        gens=GeneratorSet(entries),
        basis=basis,
        samples=samples,
        attrs={"normalization": P.normalization(), "seed": seed},
    )


def verify_Z_commutes(Z: ZAlgebra) -> bool:
    """All basis pairs Poisson-commute under both end brackets.

    Every line member is a combination of the ends, so vanishing there
    settles the whole pencil.
    """
    polys = Z.all_basis()
    t1, t2 = Z.pencil.end_tables
    for T in (t1, t2):
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                if not poisson_bracket(polys[i], polys[j], T).is_zero():
                    return False
    return True


@dataclass(frozen=True)
class TrdegReport:
    rank: int
    bound: int
    rounds: int
    seed: int
    witness: tuple


def trdeg_estimate(polys: Sequence, var_list: Sequence, seed: int = 0,
                   samples: int = 4, bound: int = 1000) -> TrdegReport:
    """Sampled Jacobian rank of the family, with the doubling retry rule."""
    polys = [F for F in polys if not F.is_zero()]
    var_list = list(var_list)

    def matrix_rank(flat_point):
        point = dict(zip(var_list, flat_point))
        return jacobian_rank_at(polys, point, var_list)

    r, witness, used_bound, rounds = sampled_max_rank(
        matrix_rank, len(var_list), seed=seed, samples=samples, bound=bound
    )
    return TrdegReport(rank=r, bound=used_bound, rounds=rounds, seed=seed,
                       witness=witness)


def trdeg_of_Z(Z: ZAlgebra, seed: int = 0) -> TrdegReport:
    t1, _ = Z.pencil.end_tables
    return trdeg_estimate(Z.all_basis(), t1.var_list(), seed=seed)


def expected_trdeg(q: LieAlgebra, n: int, seed: int = 0) -> int:
    """(n - 1)(dim + ind)/2 + ind, from the measured index of q."""
    ind = index_report(q, seed=seed).index
    return (n - 1) * (q.dim + ind) // 2 + ind


# ---------------------------------------------------------------------------
# derivation ladders


def _attached_to_t(F: MPoly) -> MPoly:
    d = F.total_degree()
    return polarize(F, (1,) * d)


def tau_ladder_span(q: LieAlgebra, F: MPoly, p: UniPoly,
                    kmax: int | None = None) -> dict:
    """Span of the reduced raising-derivation ladder of F attached to t.

    Returns the dimension, a canonical independent subfamily, and whether
    the constant term of p is nonzero (the dimension reaches
    d(n - 1) + 1 exactly in that case).
    """
    d = F.total_degree()
    n = p.degree
    if kmax is None:
        kmax = d * (n - 1) + n + 1
    cur = _attached_to_t(F)
    ladder = []
    for _ in range(kmax + 1):
        ladder.append(psi_p(cur, p))
        cur = tau_apply(cur)
    fam = independent_subset(ladder)
    return {
        "dim": len(fam),
        "family": fam,
        "expected": d * (n - 1) + 1,
        "p0_nonzero": p.coeff(0) != 0,
    }


def gzu_ladder(q: LieAlgebra, F: MPoly, p: UniPoly,
               kmax: int | None = None) -> list:
    """Reduced images of the lowered ladder: drop every t degree by one
    after k raising steps, then reduce mod p."""
    d = F.total_degree()
    n = p.degree
    if kmax is None:
        kmax = d * (n - 1) + n + 1
    cur = _attached_to_t(F)
    out = []
    for _ in range(kmax + 1):
        out.append(psi_p(shift_t_down(cur), p))
        cur = tau_apply(cur)
    return out


@dataclass
class SpanCheck:
    ok: bool
    detail: list


def check_sovp(q: LieAlgebra, p: UniPoly, f_list: Sequence | None = None) -> SpanCheck:
    """Reduced tau ladders against the assembled center of the t pencil.

    Requires p(0) != 0.  For each invariant the two generator spaces must
    coincide; that settles equality of the generated algebras.
    """
    if p.coeff(0) == 0:
        raise InputError("the t pencil comparison needs p(0) != 0")
    if f_list is None:
        f_list = basic_invariants(q)
    f_list = list(f_list)
    P = Pencil(q, p, p + UniPoly.t())
    Z = build_Z(P, f_list)
    detail = []
    ok = True
    for i, F in enumerate(f_list):
        lad = tau_ladder_span(q, F, p)
        same = span_equal(lad["family"], Z.basis[i])
        detail.append({
            "invariant": i,
            "ladder_dim": lad["dim"],
            "z_dim": len(Z.basis[i]),
            "equal": same,
        })
        ok = ok and same
    return SpanCheck(ok=ok, detail=detail)


def check_ft_gzu(q: LieAlgebra, p: UniPoly, f_list: Sequence | None = None) -> SpanCheck:
    """Lowered ladders against the assembled center of the constant pencil."""
    if f_list is None:
        f_list = basic_invariants(q)
    f_list = list(f_list)
    P = Pencil(q, p, p + UniPoly.one())
    Z = build_Z(P, f_list)
    detail = []
    ok = True
    for i, F in enumerate(f_list):
        fam = independent_subset(gzu_ladder(q, F, p))
        same = span_equal(fam, Z.basis[i])
        detail.append({
            "invariant": i,
            "ladder_dim": len(fam),
            "z_dim": len(Z.basis[i]),
            "equal": same,
        })
        ok = ok and same
    return SpanCheck(ok=ok, detail=detail)


# ---------------------------------------------------------------------------
# lowest components after the unipotent substitution


@dataclass
class GzuLowest:
    j: int
    coeffs: dict
    lowest_weight: int
    component: MPoly
    padded_match: bool
    singular: bool


def gzu_lowest_span(q: LieAlgebra, j: int) -> GzuLowest:
    """Correct the graded quadratic sum so its unipotent image bottoms out.

    Solves for c_u (2 <= u < j) killing every component of weight below
    j - 2 in the t -> t + 1 image of H^[j] - sum c_u H^[u]; the surviving
    lowest component is then compared against the padded sum of weight
    j - 2.  A singular correction system is reported, not raised.
    """
    if j < 2:
        raise InputError("need j >= 2")
    shift = UniPoly.make([1, 1])
    imgs = {u: substitute_t(graded_H_sum(q, u), shift) for u in range(2, j + 1)}
    unknowns = list(range(2, j))
    if unknowns:
        from .psring import t_components

        target = t_components(imgs[j])
        cols = {u: t_components(imgs[u]) for u in unknowns}
        monos = set()
        for w in range(j - 2):
            if w in target:
                monos |= set(target[w].terms)
            for u in unknowns:
                if w in cols[u]:
                    monos |= set(cols[u][w].terms)
        mono_list = sorted(monos, key=mono_sort_key)
        rows = []
        rhs = []
        for w in range(j - 2):
            for m in mono_list:
                if sum(v[1] * e for v, e in m) != w:
                    continue
                rows.append([
                    cols[u][w].terms.get(m, Fraction(0)) if w in cols[u] else Fraction(0)
                    for u in unknowns
                ])
                rhs.append(target[w].terms.get(m, Fraction(0)) if w in target else Fraction(0))
        from .exactla import solve as _solve

        sol = _solve(QMatrix.from_rows(rows), rhs) if rows else tuple()
        if sol is None:
            return GzuLowest(j=j, coeffs={}, lowest_weight=-1,
                             component=MPoly.zero(), padded_match=False,
                             singular=True)
        coeffs = dict(zip(unknowns, sol))
    else:
        coeffs = {}
    G = imgs[j]
    for u, c in coeffs.items():
        G = G - imgs[u].scale(c)
    if G.is_zero():
        return GzuLowest(j=j, coeffs=coeffs, lowest_weight=-1,
                         component=MPoly.zero(), padded_match=False,
                         singular=False)
    w0, comp = lowest_t_component(G)
    padded = padded_H_sum(q, j - 2)
    match = False
    if not padded.is_zero() and not comp.is_zero():
        m0 = min(comp.terms, key=mono_sort_key)
        if m0 in padded.terms:
            ratio = comp.terms[m0] / padded.terms[m0]
            match = comp == padded.scale(ratio)
    return GzuLowest(j=j, coeffs=coeffs, lowest_weight=w0, component=comp,
                     padded_match=match, singular=False)


# ---------------------------------------------------------------------------
# degree-two evaluation picture


@dataclass
class MFReport:
    degenerate: bool
    detail: list

    @property
    def contained(self) -> bool:
        return all(d["contained"] for d in self.detail)


def rho_gamma(F: MPoly, gamma: Sequence) -> MPoly:
    """Evaluate the t coordinate: x_i t^0 stays, x_i t^1 -> gamma_i."""
    gamma = [rat(c) for c in gamma]
    mapping = {}
    for v in F.vars():
        i, a = v
        if a == 0:
            continue
        if a == 1:
            mapping[v] = MPoly.const(gamma[i])
        else:
            raise InputError("evaluation defined only for t degrees 0 and 1")
    return substitute_vars(F, mapping)


def mf_image(Z: ZAlgebra, gamma: Sequence) -> MFReport:
    """Directional-derivative chains against the evaluated center.

    Works for degree-two pencils: each invariant's chain of derivatives in
    the direction gamma must lie in the span of the evaluated basis.  The
    zero direction collapses the evaluation and is flagged degenerate.
    """
    if Z.pencil.n != 2:
        raise InputError("the evaluation picture needs a degree-two pencil")
    gamma = [rat(c) for c in gamma]
    if len(gamma) != Z.pencil.base.dim:
        raise InputError("gamma needs one coordinate per basis element")
    degenerate = all(c == 0 for c in gamma)
    gdict = {(i, 0): c for i, c in enumerate(gamma)}
    detail = []
    for i, F in enumerate(Z.invariants):
        images = [rho_gamma(b, gamma) for b in Z.basis[i]]
        chain = []
        cur = F
        for _ in range(F.total_degree() + 1):
            chain.append(cur)
            cur = directional_derivative(cur, gdict)
        contained = all(span_contains(images, c) for c in chain if not c.is_zero())
        detail.append({"invariant": i, "contained": contained,
                       "chain_len": len([c for c in chain if not c.is_zero()])})
    return MFReport(degenerate=degenerate, detail=detail)
