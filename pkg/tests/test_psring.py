"""Sparse polynomials on current-algebra variables and Poisson brackets."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from glab.exactla import InputError
from glab.liecore import builtin_algebra, make_quotient, parse_poly
from glab.psring import (
    BudgetError,
    CurrentBracket,
    MPoly,
    apply_derivation,
    bullet_component,
    coeff_rows,
    directional_derivative,
    independent_subset,
    jacobian_rank_at,
    lowest_t_component,
    mono_sort_key,
    mpoly_from_json,
    mpoly_to_json,
    poisson_bracket,
    poisson_commutes,
    psi_p,
    shift_t_down,
    span_contains,
    span_dim,
    span_equal,
    substitute_t,
    substitute_vars,
    t_components,
    tau_apply,
    term_budget,
)

VARS = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]


def mpolys():
    mono = st.lists(
        st.tuples(st.sampled_from(VARS), st.integers(1, 2)),
        min_size=0, max_size=3,
    ).map(lambda pairs: tuple(sorted(dict(pairs).items())))
    term = st.tuples(mono, st.fractions(min_value=-6, max_value=6, max_denominator=3))
    return st.lists(term, min_size=0, max_size=4).map(
        lambda ts: sum((MPoly({m: c}) for m, c in ts if c), MPoly.zero())
    )


def test_mpoly_basics():
    x = MPoly.variable((0, 0))
    y = MPoly.variable((1, 1), exp=2, coef=3)
    assert x.total_degree() == 1
    assert y.total_degree() == 2
    assert (x + x).coeff((((0, 0), 1),)) == 2
    assert (x - x).is_zero()
    assert x.scale(0).is_zero()
    assert (x * x) == MPoly.variable((0, 0), exp=2)
    assert x.eval_at({(0, 0): Fraction(5)}) == 5
    with pytest.raises(InputError):
        x.eval_at({})


@given(mpolys(), mpolys(), mpolys())
@settings(max_examples=50, deadline=None)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c


@given(mpolys(), mpolys())
@settings(max_examples=50, deadline=None)
def test_diff_leibniz(a, b):
    v = (0, 0)
    lhs = (a * b).diff(v)
    rhs = a.diff(v) * b + a * b.diff(v)
    assert lhs == rhs


@given(mpolys())
@settings(max_examples=40, deadline=None)
def test_pow_matches_repeated_mul(a):
    assert a ** 0 == MPoly.const(1)
    assert a ** 1 == a
    assert a ** 3 == a * a * a


def test_substitutions():
    x0 = MPoly.variable((0, 0))
    x1 = MPoly.variable((0, 1))
    F = x0 * x1
    # x_0 stays, x_0 t -> x_0 t + x_0 under t -> t + 1
    G = substitute_t(F, parse_poly("t+1"))
    assert G == x0 * x1 + x0 * x0
    # killing t entirely
    H = substitute_vars(F, {(0, 1): MPoly.const(2)})
    assert H == x0.scale(2)


def test_psi_reduces_degrees():
    F = MPoly.variable((0, 2)) * MPoly.variable((1, 1))
    p = parse_poly("t^2-1")
    # t^2 == 1 mod p, so (0,2) -> (0,0)
    assert psi_p(F, p) == MPoly.variable((0, 0)) * MPoly.variable((1, 1))
    assert psi_p(F, parse_poly("t^3")) == F


def test_tau_and_shift():
    x0 = MPoly.variable((0, 0))
    x1 = MPoly.variable((0, 1))
    # raising: x t^a -> a x t^(a+1), factor by factor
    assert tau_apply(x0).is_zero()
    assert tau_apply(x1) == MPoly.variable((0, 2))
    F = x1 * x1
    assert tau_apply(F) == (MPoly.variable((0, 2)) * x1).scale(2)
    assert shift_t_down(x1) == x0
    with pytest.raises(InputError):
        shift_t_down(x0)
    # tau then shift on a pure level-one factor is the identity
    assert shift_t_down(tau_apply(x1)) == x1


def test_t_components():
    x0 = MPoly.variable((0, 0))
    x1 = MPoly.variable((0, 1))
    F = x0 * x0 + x0 * x1 + x1 * x1
    comps = t_components(F)
    assert sorted(comps) == [0, 1, 2]
    assert comps[1] == x0 * x1
    w, low = lowest_t_component(F)
    assert w == 0 and low == x0 * x0
    w2, top = bullet_component(F)
    assert w2 == 2 and top == x1 * x1


def test_apply_derivation_is_leibniz():
    x0 = MPoly.variable((0, 0))
    x1 = MPoly.variable((1, 0))
    image = {(0, 0): x1, (1, 0): MPoly.zero()}.__getitem__
    F = x0 * x0 * x1
    assert apply_derivation(F, image) == x1 * x1 * x0.scale(2)


def test_directional_derivative():
    x0 = MPoly.variable((0, 0))
    x1 = MPoly.variable((1, 0))
    F = x0 * x0 + x0 * x1
    D = directional_derivative(F, {(0, 0): Fraction(2), (1, 0): Fraction(-1)})
    assert D == x0.scale(4) + x1.scale(2) - x0


# ---------------------------------------------------------------------------
# Poisson brackets


def test_bracket_oracle_sl2():
    sl2 = builtin_algebra("sl2")
    T = make_quotient(sl2, parse_poly("t"))
    e = MPoly.variable((0, 0))
    h = MPoly.variable((1, 0))
    f = MPoly.variable((2, 0))
    assert poisson_bracket(e, f, T) == h
    assert poisson_bracket(h, e, T) == e.scale(2)
    casimir = (e * f).scale(4) + h * h
    for v in (e, h, f):
        assert poisson_bracket(casimir, v, T).is_zero()
    assert poisson_commutes(casimir, casimir * casimir, T)


@given(mpolys(), mpolys())
@settings(max_examples=40, deadline=None)
def test_bracket_antisymmetry(a, b):
    sl2 = builtin_algebra("sl2")
    T = make_quotient(sl2, parse_poly("t^2"))
    assert poisson_bracket(a, b, T) == -poisson_bracket(b, a, T)


@given(mpolys(), mpolys(), mpolys())
@settings(max_examples=30, deadline=None)
def test_bracket_leibniz(a, b, c):
    sl2 = builtin_algebra("sl2")
    T = make_quotient(sl2, parse_poly("t^2"))
    lhs = poisson_bracket(a, b * c, T)
    rhs = poisson_bracket(a, b, T) * c + b * poisson_bracket(a, c, T)
    assert lhs == rhs


def test_current_bracket_agrees_with_big_quotient():
    sl2 = builtin_algebra("sl2")
    cb = CurrentBracket(sl2)
    T = make_quotient(sl2, parse_poly("t^6"))
    a = MPoly.variable((0, 1)) * MPoly.variable((1, 2))
    b = MPoly.variable((2, 0)) * MPoly.variable((1, 1))
    assert poisson_bracket(a, b, cb) == poisson_bracket(a, b, T)


def test_current_bracket_cutoff():
    sl2 = builtin_algebra("sl2")
    cb = CurrentBracket(sl2, cutoff=3)
    big = MPoly.variable((0, 5))
    with pytest.raises(InputError):
        poisson_bracket(big, MPoly.variable((2, 0)), cb)


# ---------------------------------------------------------------------------
# spans, jacobians, serialization


def test_span_utilities():
    x = MPoly.variable((0, 0))
    y = MPoly.variable((1, 0))
    fam = [x, y, x + y]
    assert span_dim(fam) == 2
    sub = independent_subset(fam)
    assert sub == [x, y]
    assert span_contains([x, y], x.scale(3) - y)
    assert not span_contains([x], y)
    assert span_equal([x, y], [x + y, x - y])
    assert not span_equal([x], [x, y])


def test_coeff_rows_alignment():
    x = MPoly.variable((0, 0))
    y = MPoly.variable((1, 0))
    monos, rows = coeff_rows([x + y.scale(2), y])
    assert len(monos) == 2
    assert len(rows) == 2
    idx = {m: k for k, m in enumerate(monos)}
    xm = (((0, 0), 1),)
    ym = (((1, 0), 1),)
    assert rows[0][idx[xm]] == 1
    assert rows[0][idx[ym]] == 2
    assert rows[1][idx[xm]] == 0


def test_jacobian_rank():
    x = MPoly.variable((0, 0))
    y = MPoly.variable((1, 0))
    polys = [x * x, x * y, y]
    pt = {(0, 0): Fraction(2), (1, 0): Fraction(3)}
    assert jacobian_rank_at(polys, pt, [(0, 0), (1, 0)]) == 2


def test_mono_sort_key_grades_by_degree():
    lo = (((0, 0), 1),)
    hi = (((0, 0), 2),)
    assert mono_sort_key(lo) < mono_sort_key(hi)


def test_json_round_trip():
    sl2 = builtin_algebra("sl2")
    F = MPoly.variable((0, 1), exp=2).scale(Fraction(3, 2)) + MPoly.variable((1, 0))
    data = mpoly_to_json(F, sl2.labels)
    assert mpoly_from_json(data, sl2.labels) == F
    with pytest.raises(InputError):
        mpoly_from_json([{"coeff": "1", "monomial": [["q", 0, 1]]}], sl2.labels)


def test_budget(monkeypatch):
    monkeypatch.setenv("GLAB_BUDGET_TERMS", "4")
    assert term_budget() == 4
    xs = sum((MPoly.variable((i, 0)) for i in range(3)), MPoly.zero())
    with pytest.raises(BudgetError):
        xs * xs
    monkeypatch.setenv("GLAB_BUDGET_TERMS", "nope")
    with pytest.raises(InputError):
        term_budget()
