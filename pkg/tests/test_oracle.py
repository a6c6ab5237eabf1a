import json
from fractions import Fraction as F

import pytest

from simplexpoly.core import Poly, indices_up_to
from simplexpoly.distributions import Dirichlet, DirichletMultinomial, Hypergeometric
from simplexpoly.hahn import mv_hahn
from simplexpoly.jacobi import jacobi_univariate, mv_jacobi
from simplexpoly.oracle import OracleError, fourier_expand, gram_matrix, inner_product

x = Poly.var(0, 1)


def test_inner_product_examples():
    assert inner_product(Poly.const(1, 2), Poly.const(1, 2), Dirichlet((1, 2, 3))) == 1
    assert inner_product(Poly.var(0, 2), Poly.var(1, 2), Dirichlet((1, 1, 1))) == F(1, 12)
    assert inner_product(2 * x - 1, 2 * x - 1, Dirichlet((1, 1))) == F(1, 3)


def test_dimension_checks():
    with pytest.raises(OracleError):
        inner_product(x, Poly.var(0, 2), Dirichlet((1, 1)))
    with pytest.raises(OracleError):
        inner_product(x, x, Dirichlet((1, 1, 1)))


def test_gram_examples():
    rep = gram_matrix(lambda n: jacobi_univariate(1, 1, n[0]), [(0,), (1,), (2,)], Dirichlet((1, 1)))
    assert rep.diagonal == [1, F(1, 3), F(1, 5)]
    assert rep.is_diagonal()
    rep = gram_matrix(lambda n: mv_jacobi((1, 1), n), [(0,)], Dirichlet((1, 1)))
    assert rep.matrix == [[1]]
    rep = gram_matrix(lambda n: mv_hahn((1, 1), n, 2), [(0,), (1,), (2,)], DirichletMultinomial((1, 1), 2))
    assert rep.diagonal[:2] == [1, F(1, 6)] and rep.is_diagonal()


def test_support_summation_agrees_with_moments():
    w = Hypergeometric((2, 3, 1), 3)
    a = Poly(2, {(1, 1): 1, (2, 0): F(-1, 2), (0, 0): 3})
    b = Poly(2, {(0, 1): 2, (1, 0): 1})
    assert inner_product(a, b, w, "support") == inner_product(a, b, w)


def test_threads_do_not_change_output():
    al = (1, 2, F(1, 2))
    one = gram_matrix(lambda n: mv_jacobi(al, n), indices_up_to(2, 2), Dirichlet(al))
    many = gram_matrix(lambda n: mv_jacobi(al, n), indices_up_to(2, 2), Dirichlet(al), threads=4)
    assert one.dumps() == many.dumps()


def test_report_serialization():
    al = (1, 1, 1)
    from simplexpoly.jacobi import mv_jacobi_constant

    rep = gram_matrix(lambda n: mv_jacobi(al, n), indices_up_to(2, 2), Dirichlet(al), lambda n: mv_jacobi_constant(al, n))
    obj = json.loads(rep.dumps())
    assert obj["discrepancies"] == [{"index": [1, 1], "oracle": "1/144", "printed": "1/72"}]
    assert rep.to_csv().splitlines()[0] == "index,(0 0),(0 1),(1 0),(0 2),(1 1),(2 0)"


def test_fourier_examples():
    w = Dirichlet((1, 1))
    build = lambda n: jacobi_univariate(1, 1, n[0])
    e = fourier_expand(x, build, [(0,), (1,)], w)
    assert e.coefficients[(1,)] == F(1, 6)
    assert e.coefficients[(1,)] / e.norms[(1,)] == F(1, 2)
    assert e.residual.is_zero()
    assert fourier_expand(x**2, build, [(0,), (1,), (2,)], w).residual.is_zero()
    g2 = build((2,))
    e = fourier_expand(g2, build, [(0,), (1,), (2,)], w)
    assert [e.coefficients[(i,)] for i in range(3)] == [0, 0, e.norms[(2,)]]
    with pytest.raises(OracleError):
        fourier_expand(x**3, build, [(0,), (1,)], w)


def test_fourier_multivariate_residual_zero():
    al = (F(1, 2), 2, 1)
    f = Poly(2, {(2, 1): F(3, 7), (0, 1): -1, (0, 0): 5})
    e = fourier_expand(f, lambda n: mv_jacobi(al, n), indices_up_to(3, 2), Dirichlet(al))
    assert e.residual.is_zero()
