"""Symmetric invariants and the generator families built from them.

Covers: exact computation of adjoint invariants in a fixed degree,
characteristic-polynomial invariants for the matrix algebras, degree
polarizations and their graded sums, generator families for truncated and
split quotients, the quadratic family attached to an invariant bilinear
form, Gaudin Hamiltonians, the form-pairing decomposition of bracket
images, and two families of unimodular integer matrices that control the
triangular eliminations used throughout.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

from .exactla import InputError, QMatrix, RowSpace, kron, nullspace, rat, solve
from .liecore import (
    LieAlgebra,
    PrimaryComponent,
    UniPoly,
    crt_primary,
    rational_roots,
    wrap_algebra,
)
from .psring import (
    CurrentBracket,
    MPoly,
    coeff_rows,
    mono_sort_key,
    poisson_bracket,
    psi_p,
    substitute_vars,
)


# ---------------------------------------------------------------------------
# invariants of S(q)


def monomials_of_degree(nvars: int, d: int) -> list:
    """Degree-d monomials in variables (0,0) .. (nvars-1,0)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        counts = {}
        for i in combo:
            counts[(i, 0)] = counts.get((i, 0), 0) + 1
        out.append(tuple(sorted(counts.items())))
    return out


def invariants_degree(q: LieAlgebra, d: int) -> list:
    """Basis of the degree-d adjoint invariants of S(q).

    Solved exactly: a polynomial is invariant iff it Poisson-commutes with
    every basis variable under the linear bracket.  The returned basis is
    in reduced echelon form over the monomial coordinates, so it is
    canonical.
    """
    if d < 0:
        raise InputError("degree must be nonnegative")
    if d == 0:
        return [MPoly.const(1)]
    T = wrap_algebra(q)
    monos = monomials_of_degree(q.dim, d)
    basis = [MPoly({m: Fraction(1)}) for m in monos]
    for j in range(q.dim):
        if not basis:
            break
        xj = MPoly.variable((j, 0))
        images = [poisson_bracket(F, xj, T) for F in basis]
        if all(img.is_zero() for img in images):
            continue
        _, rows = coeff_rows([img for img in images])
        kern = nullspace(QMatrix.from_rows(rows).transpose())
        # rows of the kernel give the surviving combinations
        new_basis = []
        for vec in kern:
            F = MPoly.zero()
            for c, B in zip(vec, basis):
                if c:
                    F = F + B.scale(c)
            new_basis.append(F)
        basis = new_basis
    if not basis:
        return []
    monos_all, rows = coeff_rows(basis)
    rs = RowSpace(len(monos_all))
    for r in rows:
        rs.add(r)
    out = []
    for vec in rs.basis():
        F = MPoly.zero()
        for c, m in zip(vec, monos_all):
            if c:
                F = F + MPoly({m: c})
        out.append(F)
    return out


def _normalize_primitive(F: MPoly) -> MPoly:
    """Scale to integer coefficients with gcd 1 and positive leading term."""
    if F.is_zero():
        return F
    den = 1
    for c in F.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    nums = [int(c * den) for c in F.terms.values()]
    g = 0
    for v in nums:
        g = math.gcd(g, abs(v))
    first = min(F.terms, key=mono_sort_key)
    sign = 1 if F.terms[first] > 0 else -1
    return F.scale(Fraction(sign * den, g))


@lru_cache(maxsize=None)
def _char_invariants(q: LieAlgebra) -> tuple:
    """Coefficients of the characteristic polynomial of the generic element.

    The generic element is X = sum_k x_k * D_k with D_k the basis dual to
    the stored form, so the coefficients are adjoint invariants.
    """
    import re as _re

    m = _re.fullmatch(r"(sl|gl)(\d+)", q.name)
    if not m:
        raise InputError(f"no characteristic invariants for {q.name}")
    kind, n = m.group(1), int(m.group(2))
    # rebuild the defining matrices in the same order as make_sl / make_gl
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    lower = [(j, i) for (i, j) in upper]
    if kind == "sl":
        mats = []
        for (i, j) in upper:
            mats.append({(i, j): Fraction(1)})
        for a in range(n - 1):
            mats.append({(a, a): Fraction(1), (a + 1, a + 1): Fraction(-1)})
        for (i, j) in lower:
            mats.append({(i, j): Fraction(1)})
    else:
        mats = []
        for (i, j) in upper + [(i, i) for i in range(n)] + lower:
            mats.append({(i, j): Fraction(1)})
    ginv = q.form_inverse
    # entries of the generic matrix as linear polynomials
    X = [[MPoly.zero() for _ in range(n)] for _ in range(n)]
    for k in range(q.dim):
        xk = MPoly.variable((k, 0))
        for l in range(q.dim):
            c = ginv.at(k, l)
            if c == 0:
                continue
            for (i, j), val in mats[l].items():
                X[i][j] = X[i][j] + xk.scale(c * val)
    # det(lambda * I - X) expanded over permutations, tracking lambda degree
    bylam = {}
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        fixed = [i for i in range(n) if perm[i] == i]
        moving = [i for i in range(n) if perm[i] != i]
        base = MPoly.const(sign)
        for i in moving:
            base = base * (-X[i][perm[i]])
        if base.is_zero():
            continue
        for take in range(len(fixed) + 1):
            for subset in itertools.combinations(fixed, take):
                part = base
                for i in fixed:
                    if i not in subset:
                        part = part * (-X[i][i])
                lam = take
                bylam[lam] = bylam.get(lam, MPoly.zero()) + part
    out = []
    for k in range(2 if kind == "sl" else 1, n + 1):
        F = bylam.get(n - k, MPoly.zero())
        out.append(_normalize_primitive(F))
    return tuple(out)


def _perm_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def basic_invariants(q: LieAlgebra) -> list:
    """Free generators of the invariant ring for the supported families.

    sl_n and gl_n get characteristic polynomial coefficients; an abelian
    algebra gets its variables.  Anything else must supply its own family.
    """
    if q.name.startswith("abelian:"):
        return [MPoly.variable((i, 0)) for i in range(q.dim)]
    return list(_char_invariants(q))


def casimir(q: LieAlgebra) -> MPoly:
    """The quadratic invariant of a matrix algebra, integer-normalized."""
    for F in basic_invariants(q):
        if F.total_degree() == 2:
            return F
    raise InputError(f"{q.name} has no quadratic basic invariant")


# ---------------------------------------------------------------------------
# polarizations


def _expand_mono(m) -> list:
    out = []
    for v, e in m:
        out.extend([v] * e)
    return out


def _distinct_perms(items: tuple):
    """Distinct permutations of a multiset, in sorted order."""
    items = sorted(items)
    n = len(items)

    def rec(rest):
        if not rest:
            yield ()
            return
        prev = object()
        for idx in range(len(rest)):
            if rest[idx] == prev:
                continue
            prev = rest[idx]
            for tail in rec(rest[:idx] + rest[idx + 1 :]):
                yield (rest[idx],) + tail

    return rec(list(items))


def polarize(F: MPoly, kvec: Sequence) -> MPoly:
    """Distribute t degrees kvec over the factors of each monomial of F.

    F must be homogeneous of degree len(kvec) in t-degree-zero variables.
    Each monomial contributes one summand per distinct arrangement of
    kvec, so repeated degrees are not overcounted.
    """
    kvec = tuple(int(k) for k in kvec)
    d = len(kvec)
    acc = {}
    for m, c in F.terms.items():
        if any(v[1] != 0 for v, _ in m):
            raise InputError("polarization input must have t degree zero")
        factors = _expand_mono(m)
        if len(factors) != d:
            raise InputError(
                f"monomial degree {len(factors)} does not match arrangement of {d}"
            )
        for perm in _distinct_perms(kvec):
            counts = {}
            for (i, _), a in zip(factors, perm):
                v = (i, a)
                counts[v] = counts.get(v, 0) + 1
            mono = tuple(sorted(counts.items()))
            s = acc.get(mono, Fraction(0)) + c
            if s:
                acc[mono] = s
            else:
                acc.pop(mono, None)
    return MPoly(acc)


def polarize_t(F: MPoly, kvec: Sequence) -> MPoly:
    """Full symmetric-group version: every permutation of kvec counts.

    Equals polarize(F, kvec) times the product of multiplicity factorials
    of kvec.
    """
    kvec = tuple(int(k) for k in kvec)
    mult = Fraction(1)
    for k in set(kvec):
        mult *= math.factorial(kvec.count(k))
    return polarize(F, kvec).scale(mult)


def weakly_increasing(d: int, top: int) -> list:
    """All weakly increasing tuples of length d with entries in 0..top."""
    return list(itertools.combinations_with_replacement(range(top + 1), d))


def pol_space(F: MPoly, n: int) -> list:
    """(kvec, polarization) for every arrangement with degrees below n."""
    d = F.total_degree()
    return [(kv, polarize(F, kv)) for kv in weakly_increasing(d, n - 1)]


def f_bracket_j(F: MPoly, j: int, n: int) -> MPoly:
    """Sum of all polarizations of F with total t degree j, degrees < n."""
    d = F.total_degree()
    acc = MPoly.zero()
    for kv in weakly_increasing(d, n - 1):
        if sum(kv) == j:
            acc = acc + polarize(F, kv)
    return acc


# ---------------------------------------------------------------------------
# transported generator families


def attach_poly(F: MPoly, r: UniPoly, p: UniPoly | None = None) -> MPoly:
    """Substitute x_i -> x_i (x) r(t) into a t-degree-zero polynomial."""
    entries = [(k, c) for k, c in enumerate(r.coeffs) if c]
    mapping = {}
    for v in F.vars():
        i, a = v
        if a != 0:
            raise InputError("attach_poly input must have t degree zero")
        mapping[v] = MPoly.from_entries(((i, k), c) for k, c in entries)
    out = substitute_vars(F, mapping)
    if p is not None:
        out = psi_p(out, p)
    return out


def phi_transport(F: MPoly, p: UniPoly, comp: PrimaryComponent) -> MPoly:
    """Carry a truncated-quotient polynomial into the p-quotient.

    The variable x_i t^u (0 <= u < mult) goes to x_i times the class of
    (t - root)^u * r0, matching the isomorphism onto the primary block.
    """
    shifted = {}
    base = UniPoly.make([-comp.root, 1])
    cur = comp.r0
    for u in range(comp.mult):
        shifted[u] = cur
        cur = (cur * base).mod(p)
    mapping = {}
    for v in F.vars():
        i, u = v
        if u >= comp.mult:
            raise InputError("variable t degree exceeds component multiplicity")
        r = shifted[u]
        mapping[v] = MPoly.from_entries(
            ((i, k), c) for k, c in enumerate(r.coeffs) if c
        )
    return substitute_vars(F, mapping)


@dataclass(frozen=True)
class GenEntry:
    """One generator with the recipe that reproduces it."""

    poly: MPoly
    source: int
    recipe: tuple


@dataclass
class GeneratorSet:
    entries: list

    def polys(self) -> list:
        return [e.poly for e in self.entries]

    def by_source(self) -> dict:
        out = {}
        for e in self.entries:
            out.setdefault(e.source, []).append(e)
        return out

    def __len__(self) -> int:
        return len(self.entries)


def takiff_generators(q: LieAlgebra, f_list: Sequence, n: int) -> GeneratorSet:
    """Central generators of the nilpotent truncation at order n.

    For each generator F of degree d, the graded polarization sums F^[j]
    with (n-1)d - n < j <= (n-1)d are central in S(q[t]/(t^n)).
    """
    if n < 1:
        raise InputError("truncation order must be positive")
    entries = []
    for idx, F in enumerate(f_list):
        d = F.total_degree()
        lo = (n - 1) * d - n
        for j in range(max(lo + 1, 0), (n - 1) * d + 1):
            entries.append(
                GenEntry(f_bracket_j(F, j, n), idx, ("TAKIFF", idx, j))
            )
    return GeneratorSet(entries)


def crt_generators(q: LieAlgebra, f_list: Sequence, p: UniPoly,
                   root_data=None) -> GeneratorSet:
    """Central generators of S(q[t]/(p)) for a fully split modulus.

    Simple roots contribute the invariant evaluated on the idempotent;
    a root of multiplicity k contributes the k truncated generators
    carried through the primary-block isomorphism.
    """
    if root_data is None:
        root_data = rational_roots(p)
    if root_data is None:
        raise InputError("modulus does not split over the rationals")
    comps = crt_primary(p, root_data)
    entries = []
    for idx, F in enumerate(f_list):
        d = F.total_degree()
        for comp in comps:
            if comp.mult == 1:
                entries.append(
                    GenEntry(
                        attach_poly(F, comp.r0, p),
                        idx,
                        ("CRT", idx, str(comp.root)),
                    )
                )
            else:
                k = comp.mult
                lo = (k - 1) * d - k
                for j in range(max(lo + 1, 0), (k - 1) * d + 1):
                    local = f_bracket_j(F, j, k)
                    entries.append(
                        GenEntry(
                            phi_transport(local, p, comp),
                            idx,
                            ("CRT", idx, str(comp.root), j),
                        )
                    )
    return GeneratorSet(entries)


# ---------------------------------------------------------------------------
# the quadratic family of a bilinear form


@lru_cache(maxsize=None)
def _raised_bracket_tensor(q: LieAlgebra) -> tuple:
    """T^{ijk} built from structure constants lowered by the form and
    raised on all three slots; fully antisymmetric for an invariant form."""
    g = q.form
    ginv = q.form_inverse
    dim = q.dim
    lowered = {}
    for i in range(dim):
        for j in range(dim):
            ent = q.bracket(i, j)
            if not ent:
                continue
            for k in range(dim):
                val = sum((c * g.at(m, k) for m, c in ent), Fraction(0))
                if val:
                    lowered[(i, j, k)] = val
    raised = {}
    for (i, j, k), val in lowered.items():
        for ii in range(dim):
            a = ginv.at(i, ii)
            if a == 0:
                continue
            for jj in range(dim):
                b = ginv.at(j, jj)
                if b == 0:
                    continue
                for kk in range(dim):
                    c = ginv.at(k, kk)
                    if c == 0:
                        continue
                    key = (ii, jj, kk)
                    raised[key] = raised.get(key, Fraction(0)) + val * a * b * c
    return tuple(sorted((k, v) for k, v in raised.items() if v))


def quad_H(q: LieAlgebra, a: int, b: int) -> MPoly:
    """H[a, b]: the form-inverse pairing of the level-a and level-b copies."""
    if q.form is None:
        raise InputError(f"{q.name} carries no bilinear form")
    if a < 0 or b < 0:
        raise InputError("t degrees must be nonnegative")
    ginv = q.form_inverse
    acc = MPoly.zero()
    for i in range(q.dim):
        for j in range(q.dim):
            c = ginv.at(i, j)
            if c:
                acc = acc + MPoly.variable((i, a)) * MPoly.variable((j, b)) * c
    return acc


def quad_h(q: LieAlgebra, a: int, b: int, p: UniPoly) -> MPoly:
    """Class of H[a, b] in the quotient by p."""
    return psi_p(quad_H(q, a, b), p)


def quad_h_bilinear(q: LieAlgebra, f: UniPoly, g: UniPoly, p: UniPoly) -> MPoly:
    """h[f, g] = sum of f_a g_b h[a, b]; bilinear in the two polynomials."""
    f, g = f.mod(p), g.mod(p)
    acc = MPoly.zero()
    for a, fa in enumerate(f.coeffs):
        if fa == 0:
            continue
        for b, gb in enumerate(g.coeffs):
            if gb == 0:
                continue
            acc = acc + quad_h(q, a, b, p).scale(fa * gb)
    return acc


def quad_X(q: LieAlgebra, a: int, b: int, c: int) -> MPoly:
    """X[a, b, c]: the raised bracket tensor spread over three t levels."""
    acc = {}
    for (i, j, k), val in _raised_bracket_tensor(q):
        counts = {}
        for v in ((i, a), (j, b), (k, c)):
            counts[v] = counts.get(v, 0) + 1
        mono = tuple(sorted(counts.items()))
        s = acc.get(mono, Fraction(0)) + val
        if s:
            acc[mono] = s
        else:
            acc.pop(mono, None)
    return MPoly(acc)


def y_xi(q: LieAlgebra, xi: Sequence, a: int, b: int) -> MPoly:
    """Y_xi[a, b]: the bracket-with-xi pairing over levels a and b.

    Antisymmetric under swapping the levels; zero when a == b.
    """
    if q.form is None:
        raise InputError(f"{q.name} carries no bilinear form")
    xi = [rat(c) for c in xi]
    if len(xi) != q.dim:
        raise InputError("xi must have one coordinate per basis element")
    g = q.form
    ginv = q.form_inverse
    dim = q.dim
    lowered = {}
    for jp in range(dim):
        for ip in range(dim):
            ent = q.bracket(jp, ip)
            if not ent:
                continue
            val = Fraction(0)
            for m, c in ent:
                val += c * sum(
                    (xi[s] * g.at(s, m) for s in range(dim)), Fraction(0)
                )
            if val:
                lowered[(jp, ip)] = val
    acc = MPoly.zero()
    for (jp, ip), val in lowered.items():
        for j in range(dim):
            cj = ginv.at(jp, j)
            if cj == 0:
                continue
            for i in range(dim):
                ci = ginv.at(ip, i)
                if ci == 0:
                    continue
                acc = acc + MPoly.variable((j, a)) * MPoly.variable((i, b)) * (
                    val * cj * ci
                )
    return acc


def xi_t(q: LieAlgebra, xi: Sequence, a: int = 1) -> MPoly:
    """The linear element xi (x) t^a."""
    return MPoly.from_entries(((i, a), c) for i, c in enumerate(xi) if rat(c))


# ---------------------------------------------------------------------------
# the distinguished central element of the quadratic family


@dataclass
class XElement:
    """The corrected quadratic element and its building blocks."""

    x: MPoly
    h: MPoly
    chain: dict
    p: UniPoly


def _chain_x_k(q: LieAlgebra, k: int, p: UniPoly) -> MPoly:
    """Sum of h[u, v] over u > v >= 2 with u + v = k + 1, half-weighted
    diagonal when k + 1 is even."""
    acc = MPoly.zero()
    for v in range(2, (k + 1) // 2 + 1):
        u = k + 1 - v
        if u <= v:
            break
        acc = acc + quad_h(q, u, v, p)
    if (k + 1) % 2 == 0:
        m = (k + 1) // 2
        if m >= 2:
            acc = acc + quad_h(q, m, m, p).scale(Fraction(1, 2))
    return acc


def lemma_x_element(q: LieAlgebra, p: UniPoly) -> XElement:
    """Central quadratic element for a monic modulus of degree >= 3.

    Writing p = t^n - (c_{n-1} t^{n-1} + ... + c_0), the element is
    c_0 h[1,0] + (1/2) c_1 h[1,1] - sum_{k=3}^{n-1} c_k X_k + X_n with the
    X_k triangular sums of h[u, v].  Degree 2 is excluded: there the
    correction pattern collapses and this construction does not apply.
    """
    if p.is_zero() or not p.is_monic():
        raise InputError("modulus must be monic")
    n = p.degree
    if n < 3:
        raise InputError("the corrected element needs degree >= 3")
    c = [-p.coeff(k) for k in range(n)]
    h = quad_h(q, 1, 1, p)
    chain = {k: _chain_x_k(q, k, p) for k in range(3, n + 1)}
    x = quad_h(q, 1, 0, p).scale(c[0]) + h.scale(Fraction(c[1], 2))
    for k in range(3, n):
        x = x - chain[k].scale(c[k])
    x = x + chain[n]
    return XElement(x=x, h=h, chain=chain, p=p)


# ---------------------------------------------------------------------------
# Gaudin Hamiltonians


def gaudin_hamiltonians(q: LieAlgebra, z: Sequence) -> list:
    """Quadratic Gaudin elements on n commuting copies of q.

    H_k sums the form pairing between copy k and copy j weighted by
    1/(z_k - z_j); the z's must be pairwise distinct.
    """
    if q.form is None:
        raise InputError(f"{q.name} carries no bilinear form")
    z = [rat(v) for v in z]
    if len(set(z)) != len(z):
        raise InputError("evaluation points must be distinct")
    n = len(z)
    ginv = q.form_inverse
    pair = {}
    for k in range(n):
        for j in range(n):
            if j == k:
                continue
            omega = MPoly.zero()
            for i1 in range(q.dim):
                for i2 in range(q.dim):
                    cc = ginv.at(i1, i2)
                    if cc:
                        omega = omega + MPoly.variable((i1, k)) * MPoly.variable(
                            (i2, j)
                        ) * cc
            pair[(k, j)] = omega
    out = []
    for k in range(n):
        acc = MPoly.zero()
        for j in range(n):
            if j != k:
                acc = acc + pair[(k, j)].scale(1 / (z[k] - z[j]))
        out.append(acc)
    return out


def copies_to_quotient(F: MPoly, p: UniPoly, roots: Sequence) -> MPoly:
    """Send copy a to the idempotent class r_a inside the quotient by p."""
    from .liecore import crt_idempotents

    idems = crt_idempotents(p, roots)
    mapping = {}
    for v in F.vars():
        i, a = v
        r = idems[a]
        mapping[v] = MPoly.from_entries(
            ((i, k), c) for k, c in enumerate(r.coeffs) if c
        )
    return substitute_vars(F, mapping)


# ---------------------------------------------------------------------------
# centralizer of the quadratic element inside its own span


def h_pairs(n: int) -> list:
    return [(a, b) for a in range(n) for b in range(a, n)]


def h_span(q: LieAlgebra, p: UniPoly) -> list:
    """((a, b), h[a, b]) for 0 <= a <= b < deg p."""
    n = p.degree
    return [((a, b), quad_h(q, a, b, p)) for (a, b) in h_pairs(n)]


def centralizer_in_span(target: MPoly, span: Sequence, T) -> list:
    """Combinations of the span that Poisson-commute with target.

    Returns coefficient vectors (canonical echelon basis) over the span.
    """
    images = [poisson_bracket(s, target, T) for s in span]
    if all(img.is_zero() for img in images):
        return [tuple(Fraction(1) if i == j else Fraction(0) for j in range(len(span)))
                for i in range(len(span))]
    _, rows = coeff_rows(images)
    return nullspace(QMatrix.from_rows(rows).transpose())


def predicted_centralizer_basis(q: LieAlgebra, p: UniPoly) -> list:
    """The 2n - 1 element family: h[0,0], h[0,n-1], h[1,1], and for each
    3 <= k <= 2n-2 the sum of h[a, b] over ordered pairs a, b >= 1 with
    a + b = k (so off-diagonal pairs count twice)."""
    n = p.degree
    out = [quad_h(q, 0, 0, p), quad_h(q, 0, n - 1, p), quad_h(q, 1, 1, p)]
    for k in range(3, 2 * n - 1):
        acc = MPoly.zero()
        for a in range(1, k):
            b = k - a
            if a < n and b < n:
                acc = acc + quad_h(q, a, b, p)
        out.append(acc)
    return out


def graded_h_sum(q: LieAlgebra, j: int, p: UniPoly) -> MPoly:
    """Sum of h[a, b] over ordered pairs a, b >= 1 with a + b = j."""
    acc = MPoly.zero()
    for a in range(1, j):
        b = j - a
        acc = acc + quad_h(q, a, b, p)
    return acc


def padded_h_sum(q: LieAlgebra, j: int, p: UniPoly) -> MPoly:
    """Sum of h[a, b] over ordered pairs a, b >= 0 with a + b = j."""
    acc = MPoly.zero()
    for a in range(0, j + 1):
        b = j - a
        acc = acc + quad_h(q, a, b, p)
    return acc


def graded_H_sum(q: LieAlgebra, j: int) -> MPoly:
    """Unreduced sum of H[a, b] over ordered pairs a, b >= 1, a + b = j."""
    acc = MPoly.zero()
    for a in range(1, j):
        acc = acc + quad_H(q, a, j - a)
    return acc


def padded_H_sum(q: LieAlgebra, j: int) -> MPoly:
    """Unreduced sum of H[a, b] over ordered pairs a, b >= 0, a + b = j."""
    acc = MPoly.zero()
    for a in range(0, j + 1):
        acc = acc + quad_H(q, a, j - a)
    return acc


# ---------------------------------------------------------------------------
# form pairing and the universal decomposition


@lru_cache(maxsize=None)
def _perm_pairing(q: LieAlgebra, ta: tuple, tb: tuple) -> Fraction:
    """Permanent pairing of two factor tuples under the stored form."""
    if len(ta) != len(tb):
        return Fraction(0)
    k = len(ta)
    g = q.form
    total = Fraction(0)
    for perm in itertools.permutations(range(k)):
        prod = Fraction(1)
        for i in range(k):
            prod *= g.at(ta[i], tb[perm[i]])
            if prod == 0:
                break
        total += prod
    return total


def sym_pairing(q: LieAlgebra, F: MPoly, G: MPoly) -> Fraction:
    """Extend the permanent pairing bilinearly to polynomials over q.

    Both arguments must live in t degree zero; monomials of different
    degrees pair to zero.
    """
    total = Fraction(0)
    for m1, c1 in F.terms.items():
        t1 = tuple(v[0] for v in _expand_mono(m1))
        for m2, c2 in G.terms.items():
            t2 = tuple(v[0] for v in _expand_mono(m2))
            if len(t1) != len(t2):
                continue
            val = _perm_pairing(q, t1, t2)
            if val:
                total += c1 * c2 * val
    return total


@lru_cache(maxsize=None)
def _slot_basis(dim: int, k: int) -> tuple:
    return tuple(itertools.combinations_with_replacement(range(dim), k))


@lru_cache(maxsize=None)
def _slot_gram(q: LieAlgebra, k: int) -> QMatrix:
    basis = _slot_basis(q.dim, k)
    return QMatrix.from_rows(
        [[_perm_pairing(q, a, b) for b in basis] for a in basis]
    )


def script_f(q: LieAlgebra, F: MPoly, alpha: Sequence, i: int, j: int) -> MPoly:
    """The component of F's bracket image supported on the slot shape alpha.

    alpha lists how many factors sit at each t degree; the result is the
    unique element of that shape whose pairing against any basis product W
    equals the pairing of F with the bracket contraction of W's slot-i and
    slot-j factors (t degrees stripped).  Zero when either slot is empty;
    antisymmetric in (i, j).
    """
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise InputError("slot sizes must be nonnegative")
    if not (0 <= i < len(alpha) and 0 <= j < len(alpha)) or i == j:
        raise InputError("slot indices must be distinct and in range")
    d = F.total_degree()
    if sum(alpha) != d + 1:
        raise InputError("slot sizes must total deg F + 1")
    if alpha[i] == 0 or alpha[j] == 0:
        return MPoly.zero()
    if q.form is None:
        raise InputError(f"{q.name} carries no bilinear form")
    dim = q.dim
    slot_bases = [_slot_basis(dim, a) for a in alpha]
    grams = [_slot_gram(q, a) for a in alpha]
    full_gram = reduce(kron, grams)
    rhs = []
    vees = list(itertools.product(*slot_bases))
    for v in vees:
        # bracket contraction between slot i and slot j, degrees stripped
        total_counts = {}
        for slot in v:
            for idx in slot:
                total_counts[idx] = total_counts.get(idx, 0) + 1
        bt = MPoly.zero()
        ci = {}
        for idx in v[i]:
            ci[idx] = ci.get(idx, 0) + 1
        cj = {}
        for idx in v[j]:
            cj[idx] = cj.get(idx, 0) + 1
        for xi_idx, mu in ci.items():
            for yj_idx, nu in cj.items():
                ent = q.bracket(xi_idx, yj_idx)
                if not ent:
                    continue
                rem = dict(total_counts)
                rem[xi_idx] -= 1
                if rem[xi_idx] == 0:
                    del rem[xi_idx]
                rem[yj_idx] = rem.get(yj_idx, 0) - 1
                if rem[yj_idx] == 0:
                    del rem[yj_idx]
                elif rem[yj_idx] < 0:
                    continue
                for m, c in ent:
                    counts = dict(rem)
                    counts[m] = counts.get(m, 0) + 1
                    mono = tuple(
                        sorted(((idx, 0), e) for idx, e in counts.items())
                    )
                    bt = bt + MPoly({mono: Fraction(mu * nu) * c})
        rhs.append(sym_pairing(q, F, bt))
    coeffs = solve(full_gram, rhs)
    if coeffs is None:
        raise InputError("pairing matrix is singular")
    acc = MPoly.zero()
    for cv, v in zip(coeffs, vees):
        if cv == 0:
            continue
        counts = {}
        for u, slot in enumerate(v):
            for idx in slot:
                key = (idx, u)
                counts[key] = counts.get(key, 0) + 1
        mono = tuple(sorted(counts.items()))
        acc = acc + MPoly({mono: cv})
    return acc


def univ_sum(q: LieAlgebra, F: MPoly, alpha: Sequence, i: int) -> MPoly:
    """Sum of the slot decomposition over all partners of slot i."""
    acc = MPoly.zero()
    for j in range(len(alpha)):
        if j != i:
            acc = acc + script_f(q, F, alpha, i, j)
    return acc


@dataclass
class FFDecomposition:
    lhs: MPoly
    terms: list
    rhs: MPoly

    @property
    def matches(self) -> bool:
        return self.lhs == self.rhs


def ff_bracket_decomposition(q: LieAlgebra, Y: MPoly, kvec: Sequence) -> FFDecomposition:
    """Half the bracket of the full polarization against the quadratic
    element, written as a sum of slot-shape components.

    The multiset {1, k_1, ..., k_d} drives the shapes: for each j >= 2
    with j - 1 present, one shape arises by promoting a j - 1 to j.
    """
    kvec = tuple(int(k) for k in kvec)
    H = quad_H(q, 1, 1)
    lhs = poisson_bracket(polarize_t(Y, kvec), H, CurrentBracket(q)).scale(
        Fraction(1, 2)
    )
    bag = sorted((1,) + kvec)
    terms = []
    rhs = MPoly.zero()
    top = max(bag) + 1
    for j in range(2, top + 1):
        if (j - 1) not in bag:
            continue
        promoted = list(bag)
        promoted.remove(j - 1)
        promoted.append(j)
        width = max(promoted) + 1
        alpha = tuple(promoted.count(u) for u in range(width))
        piece = script_f(q, Y, alpha, 1, j)
        terms.append((alpha, j, piece))
        rhs = rhs + piece
    return FFDecomposition(lhs=lhs, terms=terms, rhs=rhs)


# ---------------------------------------------------------------------------
# unimodular elimination matrices


def matrix_A(j: int) -> QMatrix:
    """Square matrix of size j - 1 with binomial entries C(u, b + 1) and a
    final column of u - 1; rows run u = j..2, columns b = j-2..1, then 0."""
    if j < 2:
        raise InputError("need j >= 2")
    rows = []
    for u in range(j, 1, -1):
        row = []
        for b in range(j - 2, 0, -1):
            row.append(Fraction(math.comb(u, b + 1)))
        row.append(Fraction(u - 1))
        rows.append(row)
    return QMatrix.from_rows(rows)


def matrix_A_kd(k: int, d: int) -> QMatrix:
    """Square matrix of size k + 1, rows u = k..0; columns b = k..1 carry
    C(u + d, b + d - 1) and the final column carries C(u + d - 1, d - 1)."""
    if k < 0 or d < 1:
        raise InputError("need k >= 0 and d >= 1")
    rows = []
    for u in range(k, -1, -1):
        row = []
        for b in range(k, 0, -1):
            row.append(Fraction(math.comb(u + d, b + d - 1)))
        row.append(Fraction(math.comb(u + d - 1, d - 1)))
        rows.append(row)
    return QMatrix.from_rows(rows)


def binom_identity_check(u: int, b: int) -> bool:
    """2 * sum_{i=1}^{u-b} C(u - i, b) == 2 * C(u, b + 1) for u > b > 0."""
    if not (u > b > 0):
        raise InputError("identity needs u > b > 0")
    lhs = 2 * sum(math.comb(u - i, b) for i in range(1, u - b + 1))
    return lhs == 2 * math.comb(u, b + 1)


# ---------------------------------------------------------------------------
# the split family t^n - c t in the lowest open case


def example_split_family(q: LieAlgebra, F: MPoly, c) -> dict:
    """Exact identities for the modulus t^3 - c t when c is a square.

    Only the cubic case is covered: beyond it the nonzero roots involve
    roots of unity that leave the rationals.  Returns the idempotent
    substitutions of F next to their predicted polarization expansions.
    """
    c = rat(c)
    if c == 0:
        raise InputError("c must be nonzero")
    alpha = _rat_sqrt(c)
    if alpha is None:
        raise InputError("c must be a rational square")
    n = 3
    p = UniPoly.make([0, -c, 0, 1])
    d = F.total_degree()
    # component at the zero root
    r1 = UniPoly.make([c, 0, -1]).scale(Fraction(1, 1) / (-c))
    lhs1 = attach_poly(F, r1, p).scale((-c) ** d)
    rhs1 = polarize(F, (n - 1,) * d)
    for k in range(1, d + 1):
        kv = (0,) * k + (n - 1,) * (d - k)
        rhs1 = rhs1 + polarize(F, kv).scale((-c) ** k)
    checks = {"zero_root": (lhs1, rhs1)}
    # the two nonzero roots alpha * zeta^i with zeta = -1
    for i in (2, 3):
        root = alpha * Fraction(-1) ** i
        num = UniPoly.t() * UniPoly.make([root, 1])
        ri = num.scale(Fraction(1, 1) / (c * (n - 1)))
        lhs = attach_poly(F, ri, p).scale((c * (n - 1)) ** d)
        rhs = MPoly.zero()
        for jdeg in range(d, d * (n - 1) + 1):
            inner = MPoly.zero()
            for kv in weakly_increasing(d, n - 1):
                if sum(kv) == jdeg and kv[0] >= 1:
                    inner = inner + polarize(F, kv)
            rhs = rhs + inner.scale(root ** (d * (n - 1) - jdeg))
        checks[f"root_{i}"] = (lhs, rhs)
    return checks


def _rat_sqrt(c: Fraction):
    if c < 0:
        return None
    num = math.isqrt(c.numerator)
    den = math.isqrt(c.denominator)
    if num * num == c.numerator and den * den == c.denominator:
        return Fraction(num, den)
    return None
