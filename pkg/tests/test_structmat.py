import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monopos.algebra import MultiPoly, poly_eval
from monopos.series import series_pow
from monopos.structmat import (
    Fn_from_fn,
    build_xn,
    charpoly_from_musum,
    charpoly_hessenberg,
    charpoly_rational,
    det_bareiss,
    det_cofactor,
    derivative_identity_check,
    fn_direct_oracle,
    fn_recursive,
    gamma_via_determinant,
    gamma_via_series,
    matrix_powers,
    specialize_series,
    t_matrix,
    trace_table,
    trace_vector_check,
    xn2_checks,
)

from strategies import small_polys, small_rationals


def test_build_xn_small(x):
    assert build_xn(1).rows == ((x[1],),)
    X2 = build_xn(2).rows
    assert X2 == ((x[1], MultiPoly.constant(1)), (x[2], x[1]))
    X32 = build_xn(3, [0, 1, 0]).rows
    assert X32 == ((0, 1, 0), (1, 0, 2), (0, 1, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_build_xn_pattern(n):
    X = build_xn(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = X.entry(i, j)
            if j == i + 1:
                assert e == i
            elif j > i + 1:
                assert e.is_zero()
            else:
                assert e == MultiPoly.var(i - j + 1)
    if n > 1:
        assert X.leading(n - 1).rows == build_xn(n - 1).rows


def test_build_xn_rejects_zero():
    with pytest.raises(ValueError):
        build_xn(0)


def test_fn_small(x):
    one = MultiPoly.constant(1)
    assert list(fn_recursive(1).coeffs) == [one, -x[1]]
    assert list(fn_recursive(2).coeffs) == [one, -2 * x[1], x[1] * x[1] - x[2]]
    assert fn_recursive(0).coeffs == (one,)


@pytest.mark.parametrize("n", range(1, 7))
def test_fn_recursion_matches_cofactor_oracle(n):
    assert fn_recursive(n) == fn_direct_oracle(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_fn_weight_grading(n, x):
    f = fn_recursive(n)
    assert f[1] == x[1].scale(-n)
    for j, c in enumerate(f.coeffs):
        assert c.is_homogeneous(j)


def test_fn_padding_and_truncation():
    f = fn_recursive(3, 8)
    assert f.order == 8 and f.exact and all(c.is_zero() for c in f.coeffs[4:])
    g = fn_recursive(3, 2)
    assert g.order == 2 and not g.exact


def test_Fn_is_reversal(x):
    one = MultiPoly.constant(1)
    assert Fn_from_fn(1) == [-x[1], one]
    assert Fn_from_fn(2) == [x[1] * x[1] - x[2], -2 * x[1], one]
    assert Fn_from_fn(3) == list(reversed(fn_recursive(3).coeffs))


@pytest.mark.parametrize("n", range(1, 9))
def test_derivative_identity(n):
    assert derivative_identity_check(n).holds


def test_matrix_power_weights():
    n, K = 4, 6
    for k, P in enumerate(matrix_powers(n, K), start=1):
        for i in range(n):
            for j in range(n):
                w = k + i - j
                if w <= K:
                    assert P[i][j].is_homogeneous(w)
                else:
                    assert P[i][j].is_zero()


def test_trace_table_examples(x):
    assert trace_table(2, 2).s[1] == 2 * x[1] * x[1] + 2 * x[2]
    for n in range(1, 5):
        assert trace_table(n, 1).s[0] == x[1].scale(n)
    assert trace_table(2, 2).t[1] - trace_table(1, 2).t[1] == x[2]


@pytest.mark.parametrize("n", range(1, 6))
def test_trace_routes_agree(n):
    # trace_table raises InconsistentTraces if the two routes differ
    table = trace_table(n, 10)
    assert all(t == s.scale(Fraction(1, n)) for s, t in zip(table.s, table.t))


def test_trace_vector_small(x):
    assert trace_vector_check(1, 5).holds
    P = matrix_powers(2, 2)
    assert P[1][1][1] == x[1] * x[1] + x[2] == trace_table(2, 2).t[1]


@pytest.mark.parametrize("n", range(1, 6))
def test_trace_vector(n):
    assert trace_vector_check(n, 8).holds


# --- determinants ---------------------------------------------------------

def test_gamma_small(x):
    for n in range(1, 5):
        assert gamma_via_determinant(n, 1) == x[1]
    assert gamma_via_determinant(2, 2) == x[2].scale(Fraction(1, 2))


@pytest.mark.parametrize("n", range(1, 5))
def test_gamma_bareiss_vs_cofactor(n):
    for m in range(1, 6):
        assert gamma_via_determinant(n, m) == gamma_via_determinant(n, m, method="cofactor")


@pytest.mark.parametrize("n", range(1, 5))
def test_gamma_determinant_vs_series(n):
    for m in range(1, 9):
        assert gamma_via_determinant(n, m) == gamma_via_series(n, m)


def test_t_matrix_shape():
    T = t_matrix(trace_table(3, 4), 4)
    assert T[0][1] == 1 and T[2][3] == 3 and T[0][2].is_zero()
    assert T[3][0] == trace_table(3, 4).t[3]


@given(st.lists(st.lists(small_polys(nvars=2, max_terms=2), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_bareiss_matches_cofactor(rows):
    assert det_bareiss(rows) == det_cofactor(rows, MultiPoly(), MultiPoly.constant(1))


# --- rational specializations -------------------------------------------

def test_charpoly_hand_cases():
    r = charpoly_from_musum([-1])
    assert r.holds and r.x == (1,) and r.charpoly == (1, -1)
    r = charpoly_from_musum([-2, 1])
    assert r.holds and r.x == (2, 2) and r.charpoly == (1, -4, 2)
    r = charpoly_from_musum([-1, 0])
    assert r.holds and r.x == (1, 1) and r.charpoly == (1, -2, 0)


@given(st.lists(small_rationals(), min_size=1, max_size=5))
def test_charpoly_identity_random(q):
    assert charpoly_from_musum(q).holds


@given(st.lists(small_rationals(), min_size=1, max_size=5))
@settings(max_examples=40)
def test_hessenberg_vs_interpolation(pt):
    rows = build_xn(len(pt), pt).rows
    assert charpoly_hessenberg(rows) == list(reversed(charpoly_rational(rows)))


@given(st.lists(small_rationals(), min_size=4, max_size=4))
@settings(max_examples=30)
def test_specialized_fn_is_rational_charpoly(pt):
    f = specialize_series(fn_recursive(4), pt)
    assert list(f.coeffs) == charpoly_hessenberg(build_xn(4, pt).rows)


def test_xn2_small():
    r2 = xn2_checks(2, 10)
    assert list(r2.f_coeffs) == [1, 0, -1]
    assert r2.holds and r2.root_exponent == 1
    assert list(xn2_checks(3, 10).f_coeffs) == [1, 0, -3, 0]


@pytest.mark.parametrize("n", range(2, 7))
def test_xn2_all_checks(n):
    r = xn2_checks(n, 30)
    assert r.odd_vanish and r.symmetric
    assert r.positivity.ok and r.positivity.certified_order == 30
