"""Shifted Jacobi polynomials on [0, 1] and their stick-breaking extensions.

Univariate polynomials are normalized at 1 (``R`` form) or carry the
``(beta)_n / (n + theta - 1)_n`` prefactor (``P`` form).  Multivariate
systems on the simplex are products of univariate factors in the stick
variables ``B_j = x_j / (1 - s_{j-1})``:

    R_n(x) = prod_j R_{n_j}^{(a_j, b_j + 2 N_j)}(B_j) (1 - B_j)^{N_j}
           = prod_j (1 - s_{j-1})^{n_j} R_{n_j}^{(a_j, b_j + 2 N_j)}(B_j)

where ``N_j = n_{j+1} + ... + n_{d-1}`` and ``(a_j, b_j)`` are the Beta
parameters of the ``j``-th stick.  The second line is a genuine polynomial;
each factor is expanded with :func:`compose_ratio_clear`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import MONOMIAL, Poly, check_index, compose_ratio_clear, tail_sums, to_exact
from .special import hyp_coefficients, pochhammer, rising_factorial


@dataclass(frozen=True)
class JacobiParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_exact(self.alpha))
        object.__setattr__(self, "beta", to_exact(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("Jacobi parameters must be positive")

    @property
    def theta(self) -> Fraction:
        return self.alpha + self.beta


def _params(alpha, beta) -> JacobiParams:
    return JacobiParams(alpha, beta)


def jacobi_univariate(alpha, beta, n: int, form: str = "R") -> Poly:
    """``R_n^{alpha,beta}`` (``R(1) = 1``) or ``P_n^{alpha,beta}`` in monomials of ``x``."""
    p = _params(alpha, beta)
    if n < 0:
        raise ValueError("n must be non-negative")
    t = hyp_coefficients([-n, n + p.theta - 1], [p.beta])
    # sum_j t_j (1 - x)^j
    one_minus_x = Poly.univariate([1, -1])
    out = Poly.zero(1)
    power = Poly.const(1)
    for j, c in enumerate(t):
        out = out + power.scale(c)
        power = power * one_minus_x
    if form == "R":
        return out
    if form == "P":
        return out.scale(jacobi_value_at_one(p.alpha, p.beta, n))
    raise ValueError(f"unknown form {form!r}")


def jacobi_value_at_one(alpha, beta, n: int) -> Fraction:
    """``P_n(1) = (beta)_n / (n + theta - 1)_n``."""
    p = _params(alpha, beta)
    return rising_factorial(p.beta, n) / rising_factorial(n + p.theta - 1, n)


def jacobi_norm_P(alpha, beta, n: int) -> Fraction:
    """``1/eta_n = E[P_n^2]`` under Beta(alpha, beta)."""
    p = _params(alpha, beta)
    a, b, t = p.alpha, p.beta, p.theta
    return (
        math.factorial(n)
        * rising_factorial(a, n)
        * rising_factorial(b, n)
        / (rising_factorial(t, 2 * n) * rising_factorial(t + n - 1, n))
    )


def jacobi_norm_R(alpha, beta, n: int) -> Fraction:
    """``1/zeta_n = E[R_n^2]`` under Beta(alpha, beta)."""
    p = _params(alpha, beta)
    if n == 0:
        return Fraction(1)
    a, b, t = p.alpha, p.beta, p.theta
    return (
        math.factorial(n)
        / ((t + 2 * n - 1) * pochhammer(t, n - 1))
        * rising_factorial(a, n)
        / rising_factorial(b, n)
    )


def jacobi_constants(alpha, beta, n: int, which: str) -> Fraction:
    """Closed-form constants: ``eta`` and ``zeta`` return the squared norms ``1/eta_n``, ``1/zeta_n``."""
    if which == "eta":
        return jacobi_norm_P(alpha, beta, n)
    if which == "zeta":
        return jacobi_norm_R(alpha, beta, n)
    if which == "value_at_one":
        return jacobi_value_at_one(alpha, beta, n)
    raise ValueError(f"unknown constant {which!r}")


# ------------------------------------------------------------ stick products

def stick_product(a: Sequence, b: Sequence, n: Sequence[int]) -> Poly:
    """Right-neutral product polynomial for independent sticks ``B_j ~ Beta(a_j, b_j)``.

    Variables are ``x_1 .. x_S`` where ``S = len(a)``; ``n`` has length ``<= S``.
    """
    S = len(a)
    n = check_index(n)
    if len(n) > S:
        raise ValueError(f"index {n} has more entries than the {S} available sticks")
    n = n + (0,) * (S - len(n))
    N = tail_sums(n)
    out = Poly.const(1, S)
    s_prev = Poly.zero(S)
    for j in range(S):
        if n[j]:
            q = jacobi_univariate(a[j], to_exact(b[j]) + 2 * N[j + 1], n[j])
            out = out * compose_ratio_clear(q, n[j], Poly.var(j, S), 1 - s_prev)
        s_prev = s_prev + Poly.var(j, S)
    return out


def stick_product_norm(a: Sequence, b: Sequence, n: Sequence[int]) -> Fraction:
    """``E[R_n^2]`` for :func:`stick_product` under its own stick law."""
    S = len(a)
    n = tuple(n) + (0,) * (S - len(n))
    N = tail_sums(n)
    out = Fraction(1)
    for j in range(S):
        aj, bj = to_exact(a[j]), to_exact(b[j])
        out *= rising_factorial(bj, 2 * N[j + 1]) / rising_factorial(aj + bj, 2 * N[j + 1])
        out *= jacobi_norm_R(aj, bj + 2 * N[j + 1], n[j])
    return out


@dataclass(frozen=True)
class SimplexJacobiIndex:
    alpha: tuple
    n: tuple

    def __post_init__(self):
        alpha = tuple(to_exact(a) for a in self.alpha)
        if len(alpha) < 2 or any(a <= 0 for a in alpha):
            raise ValueError("need d >= 2 positive parameters")
        n = check_index(self.n)
        if len(n) > len(alpha) - 1:
            raise ValueError(f"index {n} is longer than d - 1 = {len(alpha) - 1}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", n + (0,) * (len(alpha) - 1 - len(n)))

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def N(self) -> list[int]:
        """``N[j]`` for ``j = 0..d-1`` (``N[0] = |n|``)."""
        return tail_sums(self.n)

    @property
    def A(self) -> list[Fraction]:
        """``A[j] = alpha_{j+1} + ... + alpha_d`` (``A[0] = |alpha|``)."""
        return tail_sums(self.alpha)

    def sticks(self) -> tuple[list, list]:
        return list(self.alpha[:-1]), self.A[1 : self.d]


def mv_jacobi(alpha: Sequence, n: Sequence[int]) -> Poly:
    """Multivariate Jacobi polynomial ``R_n^alpha`` in ``x_1 .. x_{d-1}``."""
    idx = SimplexJacobiIndex(tuple(alpha), tuple(n))
    a, b = idx.sticks()
    return stick_product(a, b, idx.n)


def mv_jacobi_norm(alpha: Sequence, n: Sequence[int]) -> Fraction:
    """Squared norm of ``R_n^alpha`` under ``Dirichlet(alpha)``, derived stick by stick."""
    idx = SimplexJacobiIndex(tuple(alpha), tuple(n))
    a, b = idx.sticks()
    return stick_product_norm(a, b, idx.n)


def mv_jacobi_constant(alpha: Sequence, n: Sequence[int]) -> Fraction:
    """The closed-form product constant for ``1/zeta_n^alpha`` as published.

    Each stick contributes ``n_j! (alpha_j)_{n_j} / ((A_{j-1})_{n_j - 1}
    (A_{j-1} + 2 N_{j-1} - 1) (A_j + 2 N_j)_{n_j})``.  Compare with
    :func:`mv_jacobi_norm`, which is exact.
    """
    idx = SimplexJacobiIndex(tuple(alpha), tuple(n))
    A, N = idx.A, idx.N
    out = Fraction(1)
    for j in range(1, idx.d):
        nj = idx.n[j - 1]
        a_prev, n_prev = A[j - 1], N[j - 1]
        if nj == 0:
            # (A)_{-1} = 1/(A - 1); the factor reduces to (A - 1)/(A + 2N - 1)
            num, den = a_prev - 1, a_prev + 2 * n_prev - 1
            out *= Fraction(1) if num == den else num / den
            continue
        out *= (
            math.factorial(nj)
            * rising_factorial(idx.alpha[j - 1], nj)
            / (
                pochhammer(a_prev, nj - 1)
                * (a_prev + 2 * n_prev - 1)
                * rising_factorial(A[j] + 2 * N[j], nj)
            )
        )
    return out


def mv_jacobi_constant_naive(alpha: Sequence, n: Sequence[int]) -> Fraction:
    """Plain product of univariate ``1/zeta`` values, without the ``(1-B)^{2N}`` tilt."""
    idx = SimplexJacobiIndex(tuple(alpha), tuple(n))
    A, N = idx.A, idx.N
    out = Fraction(1)
    for j in range(1, idx.d):
        out *= jacobi_norm_R(idx.alpha[j - 1], A[j] + 2 * N[j], idx.n[j - 1])
    return out


def vertex_values(alpha: Sequence, n: Sequence[int]) -> list[Fraction]:
    """``R_n^alpha`` at the vertices ``e_1 .. e_d`` of the simplex."""
    p = mv_jacobi(alpha, n)
    d = len(alpha)
    out = []
    for i in range(d):
        point = [Fraction(int(i == k)) for k in range(d - 1)]
        out.append(p.evaluate(point))
    return out


# ----------------------------------------------------------------- GEM systems

def gem_sticks(theta, d: int, variant: str) -> tuple[list, list]:
    theta = to_exact(theta)
    if variant == "limit":
        return [Fraction(1)] * (d - 1), [theta] * (d - 1)
    if variant == "finite_symmetric":
        return [theta / d + 1] * (d - 1), [Fraction(d - j, d) * theta for j in range(1, d)]
    raise ValueError(f"unknown GEM variant {variant!r}")


def gem_jacobi(theta, d: int, n: Sequence[int], variant: str = "limit") -> Poly:
    """Orthogonal polynomials for the size-biased Dirichlet or its GEM limit.

    ``d`` is the truncation depth: polynomials live in ``x_1 .. x_{d-1}`` and
    ``n`` may have at most ``d - 1`` entries.
    """
    if d < 2:
        raise ValueError("truncation depth must be at least 2")
    n = check_index(n)
    if len(n) > d - 1 and any(n[d - 1 :]):
        raise ValueError(f"index {n} exceeds the truncation depth {d}")
    a, b = gem_sticks(theta, d, variant)
    return stick_product(a, b, n[: d - 1])


def gem_jacobi_norm(theta, d: int, n: Sequence[int], variant: str = "limit") -> Fraction:
    a, b = gem_sticks(theta, d, variant)
    return stick_product_norm(a, b, tuple(n)[: d - 1])


# ------------------------------------------------------------- generator check

@dataclass(frozen=True)
class GeneratorCheck:
    is_zero: bool
    residual: Poly
    eigenvalue: Fraction
    observed_eigenvalue: Fraction


def wright_fisher_generator(alpha, beta, y: Poly) -> Poly:
    """``(1/2) x(1-x) y'' + (1/2)(alpha - theta x) y'`` for ``d = 2``."""
    p = _params(alpha, beta)
    x = Poly.var(0, 1)
    half = Fraction(1, 2)
    second = (x * (1 - x) * y.derivative(0, 2)).scale(half)
    first = ((p.alpha - x.scale(p.theta)) * y.derivative(0)).scale(half)
    return second + first


def generator_eigencheck(alpha, beta, n: int, eigenvalue=None) -> GeneratorCheck:
    """Residual ``L_2 P_n - lambda P_n``; ``lambda`` defaults to ``-n(n+theta-1)``."""
    p = _params(alpha, beta)
    lam = -n * (n + p.theta - 1) if eigenvalue is None else to_exact(eigenvalue)
    P = jacobi_univariate(p.alpha, p.beta, n, "P")
    LP = wright_fisher_generator(p.alpha, p.beta, P)
    residual = LP - P.scale(lam)
    lead = P.coeff((n,))
    observed = LP.coeff((n,)) / lead if lead else Fraction(0)
    return GeneratorCheck(residual.is_zero(), residual, Fraction(lam), observed)
