import time
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from simplexpoly.core import MONOMIAL, Poly, compositions, indices_up_to
from simplexpoly.distributions import NegBinProduct
from simplexpoly.laguerre import cstar_oracle
from simplexpoly.meixner import (
    meixner_connection_check,
    meixner_mixture_eval,
    meixner_norm,
    meixner_system_norm,
    meixner_tilde_univariate,
    meixner_univariate,
    mv_meixner,
    poisson_kernel_expand,
)
from simplexpoly.oracle import gram_matrix, inner_product
from simplexpoly.special import rising_factorial

k = Poly.var(0, 1)


def test_univariate_examples():
    a, p = F(3, 2), F(1, 3)
    assert meixner_univariate(a, p, 0) == Poly.const(1)
    assert meixner_univariate(a, p, 1) == 1 + k.scale((p - 1) / (a * p))
    M1 = meixner_univariate(1, F(1, 2), 1, MONOMIAL)
    assert inner_product(M1, M1, NegBinProduct((1,), F(1, 2))) == 2 == meixner_norm(1, F(1, 2), 1)


@pytest.mark.parametrize("a,p", [(1, F(1, 2)), (F(5, 2), F(1, 3))])
def test_univariate_orthogonality(a, p):
    w = NegBinProduct((a,), p)
    for n in range(4):
        Mn = meixner_univariate(a, p, n, MONOMIAL)
        assert inner_product(Mn, Mn, w) == meixner_norm(a, p, n)
        for m in range(n):
            assert inner_product(Mn, meixner_univariate(a, p, m, MONOMIAL), w) == 0


def test_mixture_matches_scaled_meixner():
    a, p = 1, F(1, 2)
    assert meixner_mixture_eval(a, p, (0,), (0,)) == 1
    for n in range(4):
        scale = p**n * rising_factorial(a, n) / rising_factorial(1, n)
        M = meixner_univariate(a, p, n)
        for kk in range(3):
            assert meixner_mixture_eval(a, p, (n,), (kk,)) == scale * M.evaluate([kk])
            assert meixner_tilde_univariate(a, p, n).evaluate([kk]) == scale * M.evaluate([kk])


def test_star_routes_agree():
    al, p = (1, 1), F(1, 2)
    assert meixner_mixture_eval(al, p, (1, 0), (0, 0), star=True) == mv_meixner(al, p, (1, 0), "star").evaluate([0, 0])
    closed = mv_meixner(al, p, (1, 0), "star")
    for r in [(i, j) for i in range(3) for j in range(3)]:
        assert closed.evaluate(r) == meixner_mixture_eval(al, p, (1, 0), r, star=True)


def test_product_and_star_special_cases():
    al, p = (F(3, 2), 2), F(2, 5)
    assert mv_meixner(al, p, (1, 0)) == meixner_tilde_univariate(al[0], p, 1).embed(2)
    lhs = mv_meixner(al, p, (0, 2), "star")
    rhs = meixner_tilde_univariate(sum(al), p, 2).substitute([Poly.var(0, 2) + Poly.var(1, 2)])
    assert lhs == rhs


def test_connection_examples():
    al, p = (2, 1), F(1, 3)
    assert meixner_connection_check(al, p, (0, 1), (2, 0)) == 0
    assert meixner_connection_check(al, p, (0, 0), (0, 0)) == 1
    # the Meixner inner product carries p^{|n|}: 1/3 * 2
    assert cstar_oracle(al, (0, 1), (1, 0)) == 2
    assert meixner_connection_check(al, p, (0, 1), (1, 0)) == F(2, 3)


@pytest.mark.parametrize("system", ["product", "star"])
def test_orthogonality(system):
    al, p = (F(3, 2), 1), F(1, 4)
    rep = gram_matrix(lambda n: mv_meixner(al, p, n, system), indices_up_to(2, 2), NegBinProduct(al, p), lambda n: meixner_system_norm(al, p, n, system))
    assert rep.is_diagonal() and not rep.discrepancies


def test_poisson_kernel_examples():
    res = poisson_kernel_expand((1,), F(1, 2), (0,), (1,))
    assert abs(res.lhs - 1) <= res.tail_bound < 1e-10
    res = poisson_kernel_expand((1,), F(1, 2), (1,), (1,))
    assert res.error_corrected < 1e-8
    res = poisson_kernel_expand((1, 1), F(1, 2), (1, 0), (1, 2))
    assert res.error_corrected < 1e-8
    assert res.tail_bound < 1e-10


def test_poisson_kernel_stated_factor_off_for_star_system():
    res = poisson_kernel_expand((2, 3), F(1, 3), (1, 1), (1, F(1, 2)), "star")
    assert res.error_corrected < 1e-8
    assert res.error > 1e-3


def test_poisson_kernel_budget_guard():
    with pytest.raises(ArithmeticError):
        poisson_kernel_expand((1,), F(1, 2), (2,), (40,), budget=20)


@settings(max_examples=15, deadline=None)
@given(
    st.fractions(min_value=F(1, 3), max_value=3, max_denominator=4),
    st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=10),
    st.integers(0, 3),
)
def test_mixture_closed_form_property(a, p, n):
    closed = meixner_tilde_univariate(a, p, n)
    for kk in range(4):
        assert closed.evaluate([kk]) == meixner_mixture_eval(a, p, (n,), (kk,))
