"""Pencils, joint-center assembly, ladders, and the evaluation picture."""
from fractions import Fraction

import pytest

from glab.exactla import InputError
from glab.liecore import UniPoly, parse_poly
from glab.psring import MPoly, poisson_bracket, span_equal
from glab.invariantlab import casimir, quad_H
from glab.pencilz import (
    Pencil,
    PencilPoint,
    build_Z,
    check_ft_gzu,
    check_sovp,
    expected_trdeg,
    generic_member_rank,
    gzu_ladder,
    gzu_lowest_span,
    is_regular_point,
    mf_image,
    pencil_member,
    rho_gamma,
    tau_ladder_span,
    trdeg_of_Z,
    verify_Z_commutes,
)


@pytest.fixture(scope="module")
def pen_t(sl2):
    return Pencil(sl2, parse_poly("t^2"), parse_poly("t^2+t"))


@pytest.fixture(scope="module")
def pen_1(sl2):
    return Pencil(sl2, parse_poly("t^2"), parse_poly("t^2+1"))


def test_pencil_validation(sl2):
    with pytest.raises(InputError):
        Pencil(sl2, parse_poly("t^2"), parse_poly("t^2"))
    with pytest.raises(InputError):
        Pencil(sl2, parse_poly("t^3"), parse_poly("t^2"))
    with pytest.raises(InputError):
        Pencil(sl2, parse_poly("t^3"), parse_poly("t^3+t^2"))
    with pytest.raises(InputError):
        Pencil(sl2, UniPoly.make([1, 2]), parse_poly("t+1"))


def test_member_poly(pen_t):
    assert pen_t.member_poly(1) == parse_poly("t^2")
    assert pen_t.member_poly(0) == parse_poly("t^2+t")
    assert pen_t.member_poly(-1) == parse_poly("t^2+2t")


def test_normalization(sl2, pen_t, pen_1):
    n1 = pen_t.normalization()
    assert n1["l"] == "t" and n1["shift"] == 0
    n2 = pen_1.normalization()
    assert n2["l"] == "1"
    shifted = Pencil(sl2, parse_poly("t^2"), parse_poly("t^2+t+1"))
    n3 = shifted.normalization()
    assert n3["l"] == "t"
    l = parse_poly("t^2") - parse_poly("t^2+t+1")
    assert l.eval(n3["shift"]) == 0


def test_pencil_point():
    pt = PencilPoint(Fraction(1, 2), 3)
    assert pt.a == Fraction(1, 2)
    with pytest.raises(InputError):
        PencilPoint(0, 0)


def test_regular_points(pen_t):
    assert generic_member_rank(pen_t) == 4
    assert is_regular_point(pen_t, PencilPoint(1, 0))
    assert is_regular_point(pen_t, PencilPoint(3, -2))
    assert not is_regular_point(pen_t, PencilPoint(1, -1))
    T = pencil_member(pen_t, PencilPoint(1, -1))
    assert T.p is None


def test_build_Z_counts_and_recipes(pen_t):
    Z = build_Z(pen_t)
    assert Z.counts() == {0: 3}
    assert Z.expected_counts() == {0: 3}
    assert len(Z.samples) == 2 * 2 + 3
    sources = {e.recipe[0] for e in Z.gens.entries}
    assert sources == {"MEMBER"}
    assert verify_Z_commutes(Z)


def test_build_Z_annihilation_route(pen_1):
    # members t^2 + (1 - a) include irreducible moduli, so the exact
    # annihilation solve must participate
    Z = build_Z(pen_1)
    kinds = {e.recipe[2] for e in Z.gens.entries}
    assert "ANNIH" in kinds
    assert Z.counts() == {0: 3}
    assert verify_Z_commutes(Z)


def test_build_Z_monotone_in_samples(pen_t, pen_1):
    for pen in (pen_t, pen_1):
        dims = []
        for count in (1, 2, 4, 7):
            Z = build_Z(pen, sample_count=count)
            dims.append(sum(Z.counts().values()))
        assert dims == sorted(dims)
        assert dims[-1] == 3


def test_build_Z_input_checks(pen_t):
    with pytest.raises(InputError):
        build_Z(pen_t, sample_count=0)
    with pytest.raises(InputError):
        build_Z(pen_t, f_list=[])


def test_trdeg(pen_t, sl2):
    Z = build_Z(pen_t)
    rep = trdeg_of_Z(Z)
    assert rep.rank == 3
    assert expected_trdeg(sl2, 2) == 3
    assert expected_trdeg(sl2, 3) == 5


def test_negative_control(pen_t):
    t1, _ = pen_t.end_tables
    nc = poisson_bracket(
        MPoly.variable((0, 0)), MPoly.variable((2, 1)), t1
    )
    assert not nc.is_zero()


def test_cubic_pencil(sl2):
    pen = Pencil(sl2, parse_poly("t^3"), parse_poly("t^3+t"))
    Z = build_Z(pen)
    assert Z.counts() == {0: 5}
    assert verify_Z_commutes(Z)
    assert trdeg_of_Z(Z).rank == 5


def test_sl3_pencil(sl3):
    pen = Pencil(sl3, parse_poly("t^2"), parse_poly("t^2+t"))
    Z = build_Z(pen)
    assert Z.counts() == {0: 3, 1: 4}
    assert trdeg_of_Z(Z).rank == 7


def test_z_independent_of_second_modulus(sl2, pen_t, pen_1):
    pen_b = Pencil(sl2, parse_poly("t^2"), parse_poly("t^2+t+1"))
    Z1 = build_Z(pen_t)
    Z2 = build_Z(pen_1)
    Z3 = build_Z(pen_b)
    assert span_equal(Z1.basis[0], Z2.basis[0])
    assert span_equal(Z1.basis[0], Z3.basis[0])


# ---------------------------------------------------------------------------
# ladders


def test_tau_ladder_span_dims(sl2):
    C = casimir(sl2)
    for ptxt, want in (("t^2-1", 3), ("t^3-1", 5), ("t^3+t+1", 5)):
        lad = tau_ladder_span(sl2, C, parse_poly(ptxt))
        assert lad["dim"] == want == lad["expected"]
        assert lad["p0_nonzero"]
    degenerate = tau_ladder_span(sl2, C, parse_poly("t^2"))
    assert not degenerate["p0_nonzero"]
    assert degenerate["dim"] < degenerate["expected"]


def test_gzu_ladder_members_reduce(sl2):
    C = casimir(sl2)
    p = parse_poly("t^2-1")
    fam = gzu_ladder(sl2, C, p)
    assert all(f.vars() <= {(i, a) for i in range(3) for a in range(2)}
               for f in fam if not f.is_zero())


def test_check_sovp(sl2):
    chk = check_sovp(sl2, parse_poly("t^2-1"))
    assert chk.ok
    assert all(d["equal"] for d in chk.detail)
    with pytest.raises(InputError):
        check_sovp(sl2, parse_poly("t^2-t"))


def test_check_ft_gzu(sl2):
    chk = check_ft_gzu(sl2, parse_poly("t^2-1"))
    assert chk.ok


# ---------------------------------------------------------------------------
# lowest components


def test_gzu_lowest_pinned(sl2):
    rep = gzu_lowest_span(sl2, 3)
    assert not rep.singular
    assert rep.coeffs == {2: Fraction(2)}
    assert rep.lowest_weight == 1
    assert rep.component == quad_H(sl2, 0, 1).scale(2)
    assert rep.padded_match


def test_gzu_lowest_range(sl2):
    for j in (2, 4, 5):
        rep = gzu_lowest_span(sl2, j)
        assert not rep.singular
        assert rep.lowest_weight == j - 2
        assert rep.padded_match
    with pytest.raises(InputError):
        gzu_lowest_span(sl2, 1)


def test_gzu_lowest_sl3(sl3):
    rep = gzu_lowest_span(sl3, 4)
    assert rep.lowest_weight == 2 and rep.padded_match


# ---------------------------------------------------------------------------
# degree-two evaluation


def test_rho_gamma(sl2):
    F = MPoly.variable((0, 0)) * MPoly.variable((2, 1))
    img = rho_gamma(F, [1, 2, -1])
    assert img == MPoly.variable((0, 0)).scale(-1)
    with pytest.raises(InputError):
        rho_gamma(MPoly.variable((0, 2)), [1, 2, 3])


def test_mf_image_contained(sl2, pen_t, pen_1):
    for pen in (pen_t, pen_1):
        Z = build_Z(pen)
        rep = mf_image(Z, [1, 1, 1])
        assert rep.contained and not rep.degenerate
        # the full derivative chain of the degree-2 invariant shows up
        assert rep.detail[0]["chain_len"] == 3
        # an isotropic direction shortens the chain but stays contained
        rep2 = mf_image(Z, [1, 2, -1])
        assert rep2.contained


def test_mf_image_degenerate_and_errors(sl2, sl3, pen_t):
    Z = build_Z(pen_t)
    assert mf_image(Z, [0, 0, 0]).degenerate
    with pytest.raises(InputError):
        mf_image(Z, [1, 2])
    pen3 = Pencil(sl2, parse_poly("t^3"), parse_poly("t^3+t"))
    with pytest.raises(InputError):
        mf_image(build_Z(pen3), [1, 1, 1])
