from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from simplexpoly.core import Poly, indices_up_to
from simplexpoly.distributions import Dirichlet, GEMTruncated, SizeBiasedDirichlet
from simplexpoly.jacobi import (
    gem_jacobi,
    gem_jacobi_norm,
    generator_eigencheck,
    jacobi_constants,
    jacobi_univariate,
    jacobi_value_at_one,
    mv_jacobi,
    mv_jacobi_constant,
    mv_jacobi_norm,
    vertex_values,
)
from simplexpoly.oracle import expectation, gram_matrix, inner_product

x = Poly.var(0, 1)
x1, x2 = Poly.var(0, 2), Poly.var(1, 2)


def test_univariate_examples():
    assert jacobi_univariate(F(2, 3), F(5, 4), 0) == Poly.const(1)
    a, b = F(2, 3), F(5, 4)
    assert jacobi_univariate(a, b, 1, "P") == x - a / (a + b)
    assert jacobi_univariate(1, 1, 1, "R") == 2 * x - 1


def test_constant_examples():
    assert jacobi_constants(1, 1, 0, "zeta") == 1
    assert jacobi_constants(1, 1, 1, "zeta") == F(1, 3)
    assert jacobi_constants(1, 1, 1, "value_at_one") == F(1, 2)
    assert inner_product(2 * x - 1, 2 * x - 1, Dirichlet((1, 1))) == F(1, 3)


@pytest.mark.parametrize("a,b", [(1, 1), (F(1, 2), F(5, 2)), (3, F(2, 3))])
def test_R_form_is_one_at_one(a, b):
    for n in range(9):
        assert jacobi_univariate(a, b, n).evaluate([1]) == 1
        assert jacobi_univariate(a, b, n, "P").evaluate([1]) == jacobi_value_at_one(a, b, n)


@pytest.mark.parametrize("a,b", [(1, 2), (F(1, 2), F(3, 2)), (F(7, 3), F(1, 4))])
def test_symmetry_relation(a, b):
    for n in range(6):
        lhs = jacobi_univariate(a, b, n)
        other = jacobi_univariate(b, a, n)
        at0 = other.evaluate([0])
        assert at0 != 0
        assert lhs == other.substitute([1 - x]).scale(1 / at0)


def test_multivariate_examples():
    al = (1, 1, 1)
    assert mv_jacobi(al, (0, 0)) == Poly.const(1, 2)
    r = mv_jacobi(al, (1, 0))
    assert r == (3 * x1 - 1).scale(F(1, 2))
    assert expectation(r, Dirichlet(al)) == 0


def test_norm_example_value():
    # E[((3X1 - 1)/2)^2] with E[X1] = 1/3, E[X1^2] = 1/6
    al = (1, 1, 1)
    r = mv_jacobi(al, (1, 0))
    assert inner_product(r, r, Dirichlet(al)) == F(1, 8)
    assert mv_jacobi_norm(al, (1, 0)) == F(1, 8)
    assert mv_jacobi_constant(al, (1, 0)) == F(1, 8)


def test_published_constant_mismatches_are_detected():
    al = (1, 1, 1)
    rep = gram_matrix(lambda n: mv_jacobi(al, n), indices_up_to(3, 2), Dirichlet(al), lambda n: mv_jacobi_constant(al, n))
    assert rep.is_diagonal()
    bad = {d.index for d in rep.discrepancies}
    assert bad == {(1, 1), (1, 2), (2, 1)}
    assert next(d for d in rep.discrepancies if d.index == (1, 1)).oracle == F(1, 144)


@pytest.mark.parametrize("alpha", [(1, 2), (F(1, 2), 1, F(3, 2)), (2, F(1, 3), 1, F(5, 2))])
def test_derived_norm_matches_oracle(alpha):
    rep = gram_matrix(lambda n: mv_jacobi(alpha, n), indices_up_to(3, len(alpha) - 1), Dirichlet(alpha), lambda n: mv_jacobi_norm(alpha, n))
    assert rep.is_diagonal() and not rep.discrepancies


def test_vertex_values_are_not_all_one():
    assert vertex_values((1, 1, 1), (1, 1)) == [0, F(-1, 4), F(1, 4)]
    assert vertex_values((1, 1, 1), (0, 0)) == [1, 1, 1]


def test_gem_examples():
    assert gem_jacobi(1, 3, (0,)) == Poly.const(1, 2)
    assert gem_jacobi(1, 2, (1,)) == 2 * x - 1
    assert expectation(gem_jacobi(1, 3, (1,)), GEMTruncated(1, 3)) == 0
    with pytest.raises(ValueError):
        gem_jacobi(1, 2, (1, 1))


def test_finite_symmetric_gem_system():
    w = SizeBiasedDirichlet(2, 3)
    build = lambda n: gem_jacobi(2, 3, n, "finite_symmetric")
    rep = gram_matrix(build, indices_up_to(3, 2), w, lambda n: gem_jacobi_norm(2, 3, n, "finite_symmetric"))
    assert rep.is_diagonal() and not rep.discrepancies


def test_generator_n0_trivial():
    assert generator_eigencheck(1, 1, 0).is_zero


@pytest.mark.parametrize("a,b", [(1, 1), (F(1, 2), 3), (F(5, 2), F(2, 3))])
def test_generator_half_eigenvalue(a, b):
    # with the 1/2 factors in the generator the eigenvalue is -n(n+theta-1)/2
    theta = F(a) + F(b)
    for n in range(6):
        chk = generator_eigencheck(a, b, n, eigenvalue=-F(n) * (n + theta - 1) / 2)
        assert chk.is_zero, chk.residual
        assert chk.observed_eigenvalue == -F(n) * (n + theta - 1) / 2


def test_generator_stated_eigenvalue_misses_factor_two():
    chk = generator_eigencheck(1, 1, 1)
    assert not chk.is_zero
    assert chk.eigenvalue == -2 and chk.observed_eigenvalue == -1


rationals = st.fractions(min_value=F(1, 5), max_value=5, max_denominator=6)


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, st.integers(0, 5))
def test_univariate_norm_property(a, b, n):
    R = jacobi_univariate(a, b, n)
    P = jacobi_univariate(a, b, n, "P")
    w = Dirichlet((a, b))
    assert inner_product(R, R, w) == jacobi_constants(a, b, n, "zeta")
    assert inner_product(P, P, w) == jacobi_constants(a, b, n, "eta")
    for m in range(n):
        assert inner_product(R, jacobi_univariate(a, b, m), w) == 0


@settings(max_examples=15, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_mv_orthogonal_to_lower_degree_monomials(alpha, n1, n2, k):
    R = mv_jacobi(alpha, (n1, n2))
    w = Dirichlet(tuple(alpha))
    for i in range(k + 1):
        if i + (k - i) < n1 + n2:
            assert expectation(R * Poly(2, {(i, k - i): 1}), w) == 0
