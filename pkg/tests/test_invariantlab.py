"""Invariants, polarizations, central generators, quadratic family."""
import itertools
from fractions import Fraction

import pytest

from glab.exactla import InputError, det
from glab.liecore import (
    UniPoly,
    builtin_algebra,
    make_direct_power,
    make_quotient,
    parse_poly,
)
from glab.psring import (
    CurrentBracket,
    MPoly,
    poisson_bracket,
    span_dim,
    substitute_vars,
)
from glab.invariantlab import (
    attach_poly,
    basic_invariants,
    binom_identity_check,
    casimir,
    centralizer_in_span,
    copies_to_quotient,
    crt_generators,
    example_split_family,
    f_bracket_j,
    ff_bracket_decomposition,
    gaudin_hamiltonians,
    graded_H_sum,
    graded_h_sum,
    h_span,
    invariants_degree,
    lemma_x_element,
    matrix_A,
    matrix_A_kd,
    padded_H_sum,
    phi_transport,
    pol_space,
    polarize,
    polarize_t,
    predicted_centralizer_basis,
    quad_H,
    quad_X,
    quad_h,
    quad_h_bilinear,
    script_f,
    takiff_generators,
    univ_sum,
    weakly_increasing,
    xi_t,
    y_xi,
)

E, H, F = (MPoly.variable((i, 0)) for i in range(3))


# ---------------------------------------------------------------------------
# invariants


def test_casimir_sl2(sl2):
    assert casimir(sl2) == (E * F).scale(4) + H * H


def test_invariants_degree_kernel(sl2):
    fam = invariants_degree(sl2, 2)
    assert len(fam) == 1
    assert span_dim([fam[0], casimir(sl2)]) == 1


def test_basic_invariants_sl3(sl3):
    fs = basic_invariants(sl3)
    assert [f.total_degree() for f in fs] == [2, 3]
    assert fs[0].n_terms == 6
    assert fs[1].n_terms == 12
    T = make_quotient(sl3, parse_poly("t"))
    for f in fs:
        for i in range(sl3.dim):
            assert poisson_bracket(f, MPoly.variable((i, 0)), T).is_zero()


def test_basic_invariants_abelian():
    ab = builtin_algebra("abelian:3")
    fs = basic_invariants(ab)
    assert fs == [MPoly.variable((i, 0)) for i in range(3)]


# ---------------------------------------------------------------------------
# polarization


def test_polarize_oracles(sl2):
    ef = E * F
    pol = polarize(ef, (0, 1))
    e0, e1 = MPoly.variable((0, 0)), MPoly.variable((0, 1))
    f0, f1 = MPoly.variable((2, 0)), MPoly.variable((2, 1))
    assert pol == e0 * f1 + e1 * f0
    ee = E * E
    assert polarize(ee, (1, 2)) == (e1 * MPoly.variable((0, 2))).scale(2)
    # sum over all shapes of one degree recovers nothing simpler, but the
    # degree-0 shape is the original polynomial
    assert polarize(ef, (0, 0)) == ef


def test_polarize_t_multiplicity_factor(sl2):
    ee = E * E
    assert polarize_t(ee, (1, 1)) == polarize(ee, (1, 1)).scale(2)
    assert polarize_t(ee, (1, 2)) == polarize(ee, (1, 2))


def test_polarize_validation(sl2):
    with pytest.raises(InputError):
        polarize(E * F, (0, 1, 2))
    with pytest.raises(InputError):
        polarize(MPoly.variable((0, 1)), (0,))


def test_weakly_increasing_counts():
    assert weakly_increasing(2, 1) == [(0, 0), (0, 1), (1, 1)]
    assert len(weakly_increasing(3, 2)) == 10


def test_pol_space_and_graded_pieces(sl2):
    C = casimir(sl2)
    space = pol_space(C, 2)
    assert len(space) == 3
    total = MPoly.zero()
    for j in range(3):
        total = total + f_bracket_j(C, j, 2)
    # graded pieces tile the full polarization sum
    assert total == sum((poly for _, poly in space), MPoly.zero())


def test_attach_poly(sl2):
    C = casimir(sl2)
    r = parse_poly("1+t")
    A = attach_poly(C, r)
    # substituting x t -> x recovers C scaled by r(1)^deg
    folded = substitute_vars(
        A, {(i, 1): MPoly.variable((i, 0)) for i in range(3)}
    )
    assert folded == C.scale(4)
    # reduction mod t^2 keeps only degrees below 2
    assert attach_poly(C, r, parse_poly("t^2")) == A


# ---------------------------------------------------------------------------
# central generator families


def test_takiff_generators_sl2(sl2):
    fs = basic_invariants(sl2)
    gens = takiff_generators(sl2, fs, 2)
    assert len(gens) == 2
    T = make_quotient(sl2, parse_poly("t^2"))
    for g in gens.polys():
        for v in T.var_list():
            assert poisson_bracket(g, MPoly.variable(v), T).is_zero()
    recipes = [e.recipe for e in gens.entries]
    assert all(r[0] == "TAKIFF" for r in recipes)


def test_crt_generators_split_modulus(sl2):
    p = parse_poly("t^2-1")
    gens = crt_generators(sl2, basic_invariants(sl2), p)
    assert len(gens) == 2
    T = make_quotient(sl2, p)
    for g in gens.polys():
        for v in T.var_list():
            assert poisson_bracket(g, MPoly.variable(v), T).is_zero()
    # the root -1 generator written out by hand
    e0, e1 = MPoly.variable((0, 0)), MPoly.variable((0, 1))
    h0, h1 = MPoly.variable((1, 0)), MPoly.variable((1, 1))
    f0, f1 = MPoly.variable((2, 0)), MPoly.variable((2, 1))
    expected = ((e0 - e1) * (f0 - f1)).scale(4) + (h0 - h1) * (h0 - h1)
    by_root = {e.recipe[2]: e.poly for e in gens.entries}
    assert by_root["-1"] == expected.scale(Fraction(1, 4))


def test_crt_generators_repeated_root(sl2):
    p = UniPoly.from_roots([1, 1, -2])
    gens = crt_generators(sl2, basic_invariants(sl2), p)
    assert len(gens) == 3
    T = make_quotient(sl2, p)
    for g in gens.polys():
        for v in T.var_list():
            assert poisson_bracket(g, MPoly.variable(v), T).is_zero()


def test_phi_transport_inputs(sl2):
    from glab.liecore import crt_primary

    p = UniPoly.from_roots([1, 1, -2])
    comps = crt_primary(p, ((Fraction(1), 2), (Fraction(-2), 1)))
    local = takiff_generators(sl2, [casimir(sl2)], 2)
    moved = phi_transport(local.polys()[0], p, comps[0])
    T = make_quotient(sl2, p)
    for v in T.var_list():
        assert poisson_bracket(moved, MPoly.variable(v), T).is_zero()


# ---------------------------------------------------------------------------
# the quadratic family


def test_quad_H_symmetry(sl2):
    assert quad_H(sl2, 1, 2) == quad_H(sl2, 2, 1)
    assert quad_h(sl2, 0, 3, parse_poly("t^2-1")) == quad_h(
        sl2, 0, 1, parse_poly("t^2-1")
    )


def test_quad_h_bilinear_matches_monomials(sl2):
    p = parse_poly("t^3-t")
    f = parse_poly("t^2+1")
    g = parse_poly("t")
    expanded = (
        quad_h(sl2, 2, 1, p) + quad_h(sl2, 0, 1, p)
    )
    assert quad_h_bilinear(sl2, f, g, p) == expanded


def test_quad_X_symmetries(sl2):
    for a, b, c in itertools.product(range(3), repeat=3):
        X = quad_X(sl2, a, b, c)
        assert X == -quad_X(sl2, b, a, c)
        assert X == quad_X(sl2, b, c, a)
    assert quad_X(sl2, 1, 1, 2).is_zero()


def test_y_xi_diagonal_vanishes(sl2):
    xi = [Fraction(1), Fraction(-2), Fraction(3)]
    for a in range(3):
        assert y_xi(sl2, xi, a, a).is_zero()


def test_bracket_of_quadratics_subset(sl2):
    cb = CurrentBracket(sl2)
    for a, b, c, d in ((0, 0, 1, 1), (1, 2, 0, 1), (2, 2, 2, 2)):
        lhs = poisson_bracket(quad_H(sl2, a, b), quad_H(sl2, c, d), cb)
        rhs = (
            quad_X(sl2, b, d, a + c)
            + quad_X(sl2, b, c, a + d)
            + quad_X(sl2, a, d, b + c)
            + quad_X(sl2, a, c, b + d)
        )
        assert lhs == rhs


def test_bracket_against_linear_subset(sl2):
    cb = CurrentBracket(sl2)
    xi = [Fraction(1), Fraction(0), Fraction(0)]
    for a, b in ((0, 0), (1, 2), (2, 1)):
        lhs = poisson_bracket(quad_H(sl2, a, b), xi_t(sl2, xi), cb)
        assert lhs == y_xi(sl2, xi, a + 1, b) + y_xi(sl2, xi, b + 1, a)


def test_graded_sums(sl2):
    p = parse_poly("t^4")
    assert graded_h_sum(sl2, 4, p) == (
        quad_h(sl2, 1, 3, p) + quad_h(sl2, 2, 2, p) + quad_h(sl2, 3, 1, p)
    )
    assert padded_H_sum(sl2, 2) == (
        quad_H(sl2, 0, 2) + quad_H(sl2, 1, 1) + quad_H(sl2, 2, 0)
    )
    assert graded_H_sum(sl2, 2) == quad_H(sl2, 1, 1)


def test_corrected_element_central(sl2):
    for ptxt in ("t^3", "t^4-t^2+2"):
        p = parse_poly(ptxt)
        xe = lemma_x_element(sl2, p)
        T = make_quotient(sl2, p)
        for v in T.var_list():
            assert poisson_bracket(xe.x, MPoly.variable(v), T).is_zero()
    with pytest.raises(InputError):
        lemma_x_element(sl2, parse_poly("t^2"))


def test_corrected_element_shift(sl2):
    p = parse_poly("t^3-1")
    xe = lemma_x_element(sl2, p)
    shifted = xe.x - quad_h(sl2, 1, 1, p).scale(Fraction(1, 2))
    T = make_quotient(sl2, p + UniPoly.t())
    for v in T.var_list():
        assert poisson_bracket(shifted, MPoly.variable(v), T).is_zero()


# ---------------------------------------------------------------------------
# commuting families from evaluation points


def test_gaudin_oracle(sl2):
    H3 = gaudin_hamiltonians(sl2, [1, 2, 5])
    T = make_direct_power(sl2, 3)
    for i in range(3):
        for j in range(i + 1, 3):
            assert poisson_bracket(H3[i], H3[j], T).is_zero()
    assert sum(H3, MPoly.zero()).is_zero()
    with pytest.raises(InputError):
        gaudin_hamiltonians(sl2, [1, 1])


def test_gaudin_bridges_to_quadratic(sl2):
    from glab.liecore import crt_idempotents

    roots = (Fraction(1), Fraction(2), Fraction(3))
    p = UniPoly.from_roots(roots)
    idems = crt_idempotents(p, roots)
    Hs = gaudin_hamiltonians(sl2, [1 / a for a in roots])
    acc = MPoly.zero()
    for k, a in enumerate(roots):
        acc = acc + copies_to_quotient(Hs[k], p, roots).scale(-2 * a)
        acc = acc + quad_h_bilinear(sl2, idems[k], idems[k], p).scale(a * a)
    assert acc == quad_h(sl2, 1, 1, p)


def test_copies_to_quotient_substitution(sl2):
    roots = (Fraction(0), Fraction(1))
    p = UniPoly.from_roots(roots)
    F = MPoly.variable((0, 0)) * MPoly.variable((2, 1))
    img = copies_to_quotient(F, p, roots)
    # copy 0 -> 1 - t, copy 1 -> t
    e0, e1 = MPoly.variable((0, 0)), MPoly.variable((0, 1))
    f1 = MPoly.variable((2, 1))
    assert img == (e0 - e1) * f1


# ---------------------------------------------------------------------------
# centralizer of the quadratic element


def test_centralizer_dims(sl2):
    for n in (2, 3):
        for ptxt in (f"t^{n}", f"t^{n}-1"):
            p = parse_poly(ptxt)
            T = make_quotient(sl2, p)
            span = [s for _, s in h_span(sl2, p)]
            combos = centralizer_in_span(quad_h(sl2, 1, 1, p), span, T)
            assert len(combos) == 2 * n - 1


def test_predicted_basis_power_modulus(sl2):
    p = parse_poly("t^3")
    T = make_quotient(sl2, p)
    basis = predicted_centralizer_basis(sl2, p)
    assert len(basis) == 5
    assert span_dim(basis) == 5
    h = quad_h(sl2, 1, 1, p)
    for g in basis:
        assert poisson_bracket(h, g, T).is_zero()


def test_predicted_basis_other_modulus_spans_but_does_not_commute(sl2):
    p = parse_poly("t^3-1")
    T = make_quotient(sl2, p)
    basis = predicted_centralizer_basis(sl2, p)
    assert span_dim(basis) == 5
    h = quad_h(sl2, 1, 1, p)
    assert any(
        not poisson_bracket(h, g, T).is_zero() for g in basis
    )


# ---------------------------------------------------------------------------
# slot decompositions


def test_script_f_validation(sl2):
    C = casimir(sl2)
    with pytest.raises(InputError):
        script_f(sl2, C, (1, 1), 0, 1)
    with pytest.raises(InputError):
        script_f(sl2, C, (1, 1, 1), 0, 0)
    assert script_f(sl2, C, (0, 2, 1), 0, 1).is_zero()


def test_script_f_antisymmetry(sl2):
    C = casimir(sl2)
    for alpha in ((1, 1, 1), (0, 2, 1)):
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert script_f(sl2, C, alpha, i, j) == -script_f(
                        sl2, C, alpha, j, i
                    )


def test_univ_sum_vanishes_sample(sl2):
    C = casimir(sl2)
    for alpha in ((1, 2), (3, 0), (1, 1, 1), (2, 0, 1)):
        for i in range(len(alpha)):
            assert univ_sum(sl2, C, alpha, i).is_zero()


def test_ff_bracket_decomposition(sl2):
    C = casimir(sl2)
    dec = ff_bracket_decomposition(sl2, C, (0, 1))
    assert dec.matches
    dec2 = ff_bracket_decomposition(sl2, C, (1, 2))
    assert dec2.matches
    assert len(dec2.terms) >= 2


def test_balanced_slot_line(sl2):
    C = casimir(sl2)
    polys = [script_f(sl2, C, (1, 1, 1), 0, j) for j in (1, 2)]
    polys = [f for f in polys if not f.is_zero()]
    assert polys and span_dim(polys) == 1


# ---------------------------------------------------------------------------
# combinatorial matrices


def test_matrix_A_unimodular():
    for j in (4, 7, 10):
        assert det(matrix_A(j)) == 1
    assert matrix_A(4).rows == 3


def test_matrix_A_kd_unimodular():
    for k, d in ((1, 1), (2, 3), (4, 2)):
        assert det(matrix_A_kd(k, d)) == 1


def test_binom_identity():
    assert all(
        binom_identity_check(u, b) for u in range(2, 12) for b in range(1, u)
    )


# ---------------------------------------------------------------------------
# the split cubic family


def test_split_family_identities(sl2):
    C = casimir(sl2)
    res = example_split_family(sl2, C, Fraction(1))
    assert set(res) == {"zero_root", "root_2", "root_3"}
    for lhs, rhs in res.values():
        assert lhs == rhs
    res2 = example_split_family(sl2, C, Fraction(9, 4))
    for lhs, rhs in res2.values():
        assert lhs == rhs
    with pytest.raises(InputError):
        example_split_family(sl2, C, Fraction(2))
