"""Sparse multivariate polynomials over Q in variables x_i * t^a.

A variable is a pair (i, a): base index i, t degree a.  Monomials are
tuples of (variable, exponent) pairs sorted by variable; polynomials map
monomials to Fraction coefficients.  On top of the arithmetic sit the
Poisson bracket against a bracket table, substitutions in t, the raising
derivation tau, reductions mod p, and exact span/rank utilities.

Products guard against term blowup: when an operation would exceed the
term budget (GLAB_BUDGET_TERMS, default 2 * 10^6) it raises BudgetError
rather than grinding on.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactla import InputError, QMatrix, RowSpace, rank, rat, rat_str
from .liecore import LieAlgebra, UniPoly

Var = tuple
Mono = tuple

DEFAULT_BUDGET = 2_000_000


class BudgetError(RuntimeError):
    """An operation would exceed the configured term budget."""


def term_budget() -> int:
    raw = os.environ.get("GLAB_BUDGET_TERMS")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        val = int(raw)
    except ValueError as exc:
        raise InputError(f"GLAB_BUDGET_TERMS must be an integer: {raw!r}") from exc
    if val <= 0:
        raise InputError("GLAB_BUDGET_TERMS must be positive")
    return val


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_t_degree(m: Mono) -> int:
    return sum(v[1] * e for v, e in m)


def mono_sort_key(m: Mono):
    # graded, then lexicographic on the sorted (variable, exponent) pairs
    return (mono_degree(m), m)


class MPoly:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c
        self.terms = t

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MPoly":
        c = rat(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, v: Var, exp: int = 1, coef=1) -> "MPoly":
        if exp < 0:
            raise InputError("negative exponent")
        if exp == 0:
            return cls.const(coef)
        return cls({((tuple(v), exp),): rat(coef)})

    @classmethod
    def from_entries(cls, entries: Iterable) -> "MPoly":
        """Linear polynomial sum of coef * x_v over (v, coef) pairs."""
        acc = {}
        for v, c in entries:
            m = ((tuple(v), 1),)
            acc[m] = acc.get(m, Fraction(0)) + rat(c)
        return cls(acc)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def vars(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def coeff(self, m: Mono) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=mono_sort_key):
            c = self.terms[m]
            factors = "".join(
                f"(x{v[0]}.t{v[1]})" + (f"^{e}" if e > 1 else "") for v, e in m
            )
            bits.append(f"{rat_str(c)}*{factors}" if factors else rat_str(c))
        return " + ".join(bits)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, Fraction(0)) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        out = MPoly.__new__(MPoly)
        out.terms = acc
        return out

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        out = MPoly.__new__(MPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def scale(self, c) -> "MPoly":
        c = rat(c)
        if c == 0:
            return MPoly.zero()
        out = MPoly.__new__(MPoly)
        out.terms = {m: c * v for m, v in self.terms.items()}
        return out

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return MPoly.zero()
        budget = term_budget()
        if len(self.terms) * len(other.terms) > budget:
            raise BudgetError(
                f"product of {len(self.terms)} x {len(other.terms)} terms "
                f"exceeds budget {budget}"
            )
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        acc = {}
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = mono_mul(m1, m2)
                s = acc.get(m, Fraction(0)) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        out = MPoly.__new__(MPoly)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise InputError("negative power")
        out = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return out

    # -- calculus ------------------------------------------------------

    def diff(self, v: Var) -> "MPoly":
        v = tuple(v)
        acc = {}
        for m, c in self.terms.items():
            for idx, (w, e) in enumerate(m):
                if w == v:
                    rest = list(m)
                    if e == 1:
                        del rest[idx]
                    else:
                        rest[idx] = (w, e - 1)
                    mm = tuple(rest)
                    s = acc.get(mm, Fraction(0)) + c * e
                    if s:
                        acc[mm] = s
                    else:
                        acc.pop(mm, None)
                    break
        out = MPoly.__new__(MPoly)
        out.terms = acc
        return out

    def eval_at(self, point: dict) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                pv = point.get(v)
                if pv is None:
                    raise InputError(f"point misses variable {v}")
                val *= pv ** e
                if val == 0:
                    break
            total += val
        return total


def apply_derivation(F: MPoly, image: Callable) -> MPoly:
    """Extend the variable map x_v -> image(v) as a derivation (Leibniz)."""
    acc = MPoly.zero()
    img_cache = {}
    for m, c in F.terms.items():
        for idx, (v, e) in enumerate(m):
            if v not in img_cache:
                img_cache[v] = image(v)
            img = img_cache[v]
            if img.is_zero():
                continue
            rest = list(m)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (v, e - 1)
            base = MPoly.__new__(MPoly)
            base.terms = {tuple(rest): c * e}
            acc = acc + base * img
    return acc


def substitute_vars(F: MPoly, mapping: dict) -> MPoly:
    """Algebra homomorphism determined by x_v -> mapping[v].

    Variables absent from mapping are kept as themselves.
    """
    pow_cache = {}

    def var_pow(v, e):
        key = (v, e)
        if key not in pow_cache:
            img = mapping.get(v)
            if img is None:
                pow_cache[key] = MPoly.variable(v, e)
            else:
                pow_cache[key] = img ** e
        return pow_cache[key]

    acc = MPoly.zero()
    for m, c in F.terms.items():
        cur = MPoly.const(c)
        for v, e in m:
            cur = cur * var_pow(v, e)
            if cur.is_zero():
                break
        acc = acc + cur
    return acc


def substitute_t(F: MPoly, r: UniPoly, cutoff: int | None = None) -> MPoly:
    """Substitute t -> r(t), so x_i t^a becomes x_i * r(t)^a expanded.

    With a cutoff, any output t degree above it raises InputError.
    """
    powers = {0: UniPoly.one()}

    def rpow(a):
        if a not in powers:
            powers[a] = rpow(a - 1) * r
        return powers[a]

    mapping = {}
    for v in F.vars():
        i, a = v
        ra = rpow(a)
        if cutoff is not None and ra.degree > cutoff:
            raise InputError(
                f"substitution pushes t degree to {ra.degree}, over cutoff {cutoff}"
            )
        mapping[v] = MPoly.from_entries(
            ((i, k), c) for k, c in enumerate(ra.coeffs) if c
        )
    return substitute_vars(F, mapping)


def psi_p(F: MPoly, p: UniPoly) -> MPoly:
    """Reduce every t power mod p; an algebra homomorphism."""
    if p.is_zero() or not p.is_monic() or p.degree < 1:
        raise InputError("modulus must be monic of degree >= 1")
    n = p.degree
    rems = {}

    def rem(a):
        if a not in rems:
            rems[a] = UniPoly.monomial(a).mod(p)
        return rems[a]

    mapping = {}
    for v in F.vars():
        i, a = v
        if a < n:
            continue
        ra = rem(a)
        mapping[v] = MPoly.from_entries(
            ((i, k), c) for k, c in enumerate(ra.coeffs) if c
        )
    if not mapping:
        return F
    return substitute_vars(F, mapping)


def tau_apply(F: MPoly, times: int = 1) -> MPoly:
    """Apply the raising derivation x_i t^a -> a * x_i t^(a+1)."""

    def image(v):
        i, a = v
        if a == 0:
            return MPoly.zero()
        return MPoly.variable((i, a + 1), coef=a)

    out = F
    for _ in range(times):
        out = apply_derivation(out, image)
    return out


def shift_t_down(F: MPoly) -> MPoly:
    """Algebra map x_i t^a -> x_i t^(a-1); requires every a >= 1."""
    mapping = {}
    for v in F.vars():
        i, a = v
        if a < 1:
            raise InputError("shift_t_down needs all t degrees >= 1")
        mapping[v] = MPoly.variable((i, a - 1))
    return substitute_vars(F, mapping)


def t_components(F: MPoly) -> dict:
    out = {}
    for m, c in F.terms.items():
        d = mono_t_degree(m)
        out.setdefault(d, {})[m] = c
    return {d: MPoly(t) for d, t in sorted(out.items())}


def lowest_t_component(F: MPoly) -> tuple:
    """(weight, component) of the minimal t degree; F must be nonzero."""
    if F.is_zero():
        raise InputError("zero polynomial has no lowest component")
    comps = t_components(F)
    d = min(comps)
    return d, comps[d]


def bullet_component(F: MPoly) -> tuple:
    """(weight, component) of the maximal t degree; F must be nonzero."""
    if F.is_zero():
        raise InputError("zero polynomial has no top component")
    comps = t_components(F)
    d = max(comps)
    return d, comps[d]


def phi_s_scale(F: MPoly, s) -> MPoly:
    """Rescale x_i t^a -> s^a x_i t^a."""
    s = rat(s)
    acc = {}
    for m, c in F.terms.items():
        acc[m] = c * s ** mono_t_degree(m)
    return MPoly(acc)


def directional_derivative(F: MPoly, gamma: dict) -> MPoly:
    """Derivative of F in the constant direction gamma (variable -> value)."""
    acc = MPoly.zero()
    for v, g in gamma.items():
        g = rat(g)
        if g == 0:
            continue
        acc = acc + F.diff(v).scale(g)
    return acc


# ---------------------------------------------------------------------------
# Poisson bracket


class CurrentBracket:
    """Bracket [x_i t^a, x_j t^b] = [x_i, x_j] t^(a+b), optionally capped.

    Stands in for a bracket table on the full polynomial current algebra;
    pairs are generated lazily from the variables actually present.
    """

    def __init__(self, base: LieAlgebra, cutoff: int | None = None):
        self.base = base
        self.n = None
        self.cutoff = cutoff

    def flat(self, u: Var) -> int:
        i, a = u
        return a * self.base.dim + i

    def iter_pairs(self, vars_f: set, vars_g: set):
        pool = sorted(vars_f | vars_g, key=self.flat)
        for ui in range(len(pool)):
            for vi in range(ui + 1, len(pool)):
                u, v = pool[ui], pool[vi]
                ent = self.base.bracket(u[0], v[0])
                if not ent:
                    continue
                ab = u[1] + v[1]
                if self.cutoff is not None and ab > self.cutoff:
                    raise InputError(
                        f"bracket t degree {ab} exceeds cutoff {self.cutoff}"
                    )
                yield (u, v), tuple(((k, ab), c) for k, c in ent)

    def pair_bracket(self, u: Var, v: Var) -> tuple:
        if u == v:
            return ()
        if self.flat(u) > self.flat(v):
            return tuple((w, -c) for w, c in self.pair_bracket(v, u))
        ent = self.base.bracket(u[0], v[0])
        ab = u[1] + v[1]
        if ent and self.cutoff is not None and ab > self.cutoff:
            raise InputError(f"bracket t degree {ab} exceeds cutoff {self.cutoff}")
        return tuple(((k, ab), c) for k, c in ent)


def _table_pairs(T, vars_f, vars_g):
    if hasattr(T, "table"):
        return T.table.items()
    return T.iter_pairs(vars_f, vars_g)


def poisson_bracket(F: MPoly, G: MPoly, T) -> MPoly:
    """{F, G} extending the bracket table by the Leibniz rule."""
    if F.is_zero() or G.is_zero():
        return MPoly.zero()
    vars_f, vars_g = F.vars(), G.vars()
    dF: dict = {}
    dG: dict = {}

    def d(poly, cache, v):
        if v not in cache:
            cache[v] = poly.diff(v)
        return cache[v]

    acc = MPoly.zero()
    for (u, v), ent in _table_pairs(T, vars_f, vars_g):
        fu = d(F, dF, u) if u in vars_f else MPoly.zero()
        gv = d(G, dG, v) if v in vars_g else MPoly.zero()
        fv = d(F, dF, v) if v in vars_f else MPoly.zero()
        gu = d(G, dG, u) if u in vars_g else MPoly.zero()
        first = MPoly.zero() if fu.is_zero() or gv.is_zero() else fu * gv
        second = MPoly.zero() if fv.is_zero() or gu.is_zero() else fv * gu
        diff = first - second
        if diff.is_zero():
            continue
        acc = acc + diff * MPoly.from_entries(ent)
    return acc


def poisson_commutes(F: MPoly, G: MPoly, T) -> bool:
    return poisson_bracket(F, G, T).is_zero()


def differential_at(F: MPoly, point: dict, vars_order: Sequence) -> list:
    return [F.diff(v).eval_at(point) for v in vars_order]


def jacobian_at(polys: Sequence, point: dict, vars_order: Sequence) -> QMatrix:
    return QMatrix.from_rows(
        [differential_at(F, point, vars_order) for F in polys]
    )


def jacobian_rank_at(polys: Sequence, point: dict, vars_order: Sequence) -> int:
    return rank(jacobian_at(polys, point, vars_order))


# ---------------------------------------------------------------------------
# spans


def coeff_rows(polys: Sequence) -> tuple:
    """Common monomial index and coefficient rows for a family of polys."""
    monos = sorted({m for F in polys for m in F.terms}, key=mono_sort_key)
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for F in polys:
        row = [Fraction(0)] * len(monos)
        for m, c in F.terms.items():
            row[index[m]] = c
        rows.append(row)
    return monos, rows


def span_dim(polys: Sequence) -> int:
    polys = [F for F in polys if not F.is_zero()]
    if not polys:
        return 0
    _, rows = coeff_rows(polys)
    rs = RowSpace(len(rows[0]))
    for r in rows:
        rs.add(r)
    return rs.dim


def independent_subset(polys: Sequence) -> list:
    """Greedy subfamily spanning the same space, in input order."""
    polys = list(polys)
    nz = [F for F in polys if not F.is_zero()]
    if not nz:
        return []
    monos, _ = coeff_rows(nz)
    index = {m: k for k, m in enumerate(monos)}
    rs = RowSpace(len(monos))
    picked = []
    for F in polys:
        if F.is_zero():
            continue
        row = [Fraction(0)] * len(monos)
        for m, c in F.terms.items():
            row[index[m]] = c
        if rs.add(row):
            picked.append(F)
    return picked


def span_equal(polys_a: Sequence, polys_b: Sequence) -> bool:
    da = span_dim(polys_a)
    db = span_dim(polys_b)
    if da != db:
        return False
    return span_dim(list(polys_a) + list(polys_b)) == da


def span_contains(polys: Sequence, F: MPoly) -> bool:
    if F.is_zero():
        return True
    d = span_dim(polys)
    return span_dim(list(polys) + [F]) == d


# ---------------------------------------------------------------------------
# serialization


def mpoly_to_json(F: MPoly, labels: Sequence | None = None) -> list:
    """Stable list of {"coeff", "monomial"} dicts, canonically ordered."""

    def name(i):
        return labels[i] if labels is not None else f"x{i}"

    out = []
    for m in sorted(F.terms, key=mono_sort_key):
        out.append(
            {
                "coeff": rat_str(F.terms[m]),
                "monomial": [[name(v[0]), v[1], e] for v, e in m],
            }
        )
    return out


def mpoly_from_json(data: Sequence, labels: Sequence) -> MPoly:
    lookup = {lab: i for i, lab in enumerate(labels)}
    acc = MPoly.zero()
    for term in data:
        c = rat(term["coeff"])
        mono = {}
        for lab, a, e in term["monomial"]:
            if lab not in lookup:
                raise InputError(f"unknown variable label {lab!r}")
            v = (lookup[lab], int(a))
            mono[v] = mono.get(v, 0) + int(e)
        m = tuple(sorted(mono.items()))
        acc = acc + MPoly({m: c})
    return acc
