"""Meixner polynomials as Gamma mixtures of Laguerre polynomials.

``M_n(k) = 2F1(-n, -k; alpha; (p-1)/p)`` is orthogonal under
``NB(alpha, p)``.  The mixture-normalized ``M~_n(k) = E[L_n^alpha(lam (1-p)/p)]``
with ``lam ~ Gamma(alpha + k, p)`` equals ``p^n (alpha)_n / n! * M_n(k)``.
Multivariate systems follow the same recipe from the product and star
multiple-Laguerre systems.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .core import FALLING, MONOMIAL, Poly, check_index, compositions, to_exact, total_poly
from .distributions import NegBinProduct
from .hahn import mv_hahn_mixture
from .jacobi import mv_jacobi
from .laguerre import laguerre_univariate, multiple_laguerre, phi, star_norm
from .oracle import inner_product
from .special import rising_factorial


def _p(p) -> Fraction:
    p = to_exact(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly inside (0, 1)")
    return p


def meixner_univariate(alpha, p, n: int, basis: str = FALLING) -> Poly:
    """``M_n(k; alpha, p)`` as a polynomial in ``k``."""
    alpha, p = to_exact(alpha), _p(p)
    if n < 0 or alpha <= 0:
        raise ValueError("need n >= 0 and alpha > 0")
    odds = (1 - p) / p
    coeffs = {
        (j,): rising_factorial(-n, j) * odds**j / (rising_factorial(alpha, j) * math.factorial(j))
        for j in range(n + 1)
    }
    return Poly(1, coeffs, FALLING).to_basis(basis)


def meixner_norm(alpha, p, n: int) -> Fraction:
    """``E[M_n^2] = n! / ((alpha)_n p^n)`` under ``NB(alpha, p)``."""
    return math.factorial(n) / (rising_factorial(to_exact(alpha), n) * _p(p) ** n)


def _mixture_image(L: Poly, alpha: Sequence[Fraction], p: Fraction) -> Poly:
    """Replace ``y^m`` by ``(1-p)^{|m|} prod_i (alpha_i + r_i)_{m_i}`` (polynomial in ``r``)."""
    d = L.dim
    r = [Poly.var(i, d) for i in range(d)]
    cache: dict[tuple[int, int], Poly] = {}

    def rising_poly(i, k):
        if (i, k) not in cache:
            out = Poly.const(1, d)
            for s in range(k):
                out = out * (r[i] + alpha[i] + s)
            cache[(i, k)] = out
        return cache[(i, k)]

    out = Poly.zero(d)
    for m, c in L.to_basis(MONOMIAL).terms.items():
        term = Poly.const(c * (1 - p) ** sum(m), d)
        for i, mi in enumerate(m):
            if mi:
                term = term * rising_poly(i, mi)
        out = out + term
    return out


def meixner_tilde_univariate(alpha, p, n: int) -> Poly:
    """``M~_n(k)``, monomial basis in ``k``."""
    alpha, p = to_exact(alpha), _p(p)
    return _mixture_image(laguerre_univariate(alpha, n), (alpha,), p)


def meixner_mixture_eval(alpha, p, n: Sequence[int], r: Sequence[int], star: bool = False) -> Fraction:
    """Posterior-Gamma expectation of the (star or product) multiple Laguerre polynomial.

    ``E[L_n(lam (1-p)/p)]`` with ``lam_i ~ Gamma(alpha_i + r_i, p)`` independent.
    """
    if not isinstance(alpha, (list, tuple)):
        alpha = (alpha,)
    alpha = tuple(to_exact(a) for a in alpha)
    p = _p(p)
    n, r = check_index(n), check_index(r)
    L = multiple_laguerre(alpha, n, "star" if star else "product")
    total = Fraction(0)
    for m, c in L.terms.items():
        term = c * (1 - p) ** sum(m)
        for a, ri, mi in zip(alpha, r, m):
            term *= rising_factorial(a + ri, mi)
        total += term
    return total


def mv_meixner(alpha: Sequence, p, n: Sequence[int], system: str = "product", route: str = "closed") -> Poly:
    """Multivariate Meixner polynomial in ``r_1 .. r_d`` (monomial basis).

    ``route="closed"`` uses the factorized closed forms; ``route="mixture"``
    takes the Gamma-mixture image of the corresponding Laguerre polynomial.
    """
    alpha = tuple(to_exact(a) for a in alpha)
    p = _p(p)
    n = check_index(n)
    d = len(alpha)
    if len(n) != d:
        raise ValueError("n must have length d")
    if route == "mixture":
        return _mixture_image(multiple_laguerre(alpha, n, system), alpha, p)
    if route != "closed":
        raise ValueError(f"unknown route {route!r}")
    if system == "product":
        out = Poly.const(1, d)
        for i, (a, k) in enumerate(zip(alpha, n)):
            out = out * meixner_tilde_univariate(a, p, k).substitute([Poly.var(i, d)])
        return out
    if system != "star":
        raise ValueError(f"unknown system {system!r}")
    if d == 1:
        return meixner_tilde_univariate(alpha[0], p, n[0])
    n_prime = n[:-1]
    P = sum(n_prime)
    a = sum(alpha)
    s = total_poly(d)
    outer = meixner_tilde_univariate(a + 2 * P, p, n[-1]).substitute([s - P])
    return outer * _scaled_hahn(alpha, n_prime).scale((1 - p) ** P)


def _scaled_hahn(alpha: tuple, n_prime: tuple) -> Poly:
    """``(|alpha| + |r|)_{|n'|} q~_{n'}(r; |r|)`` with ``|r|`` a free variable.

    A term ``c_k x^k`` of ``R_{n'}`` becomes
    ``c_k prod_i (alpha_i + r_i)_{k_i} (|alpha| + |r| + |k|)_{|n'| - |k|}``.
    """
    d = len(alpha)
    P = sum(n_prime)
    r = [Poly.var(i, d) for i in range(d)]
    s = total_poly(d) + sum(alpha)
    out = Poly.zero(d)
    for k, c in mv_jacobi(alpha, n_prime).terms.items():
        term = Poly.const(c, d)
        for i, ki in enumerate(k):
            for j in range(ki):
                term = term * (r[i] + alpha[i] + j)
        for j in range(sum(k), P):
            term = term * (s + j)
        out = out + term
    return out


def meixner_connection_check(alpha: Sequence, p, n: Sequence[int], m: Sequence[int]) -> Fraction:
    """``E[*M~_n M~_m]`` under ``NB^d(alpha, p)``."""
    alpha = tuple(to_exact(a) for a in alpha)
    n, m = check_index(n), check_index(m)
    if sum(n) != sum(m):
        return Fraction(0)
    w = NegBinProduct(alpha, p)
    return inner_product(mv_meixner(alpha, p, n, "star"), mv_meixner(alpha, p, m, "product"), w)


def meixner_system_norm(alpha: Sequence, p, n: Sequence[int], system: str = "product") -> Fraction:
    """``E[M~_n^2] = p^{|n|} E[L_n^2]`` under ``NB^d(alpha, p)``."""
    alpha = tuple(to_exact(a) for a in alpha)
    p = _p(p)
    lag = 1 / phi(alpha, n) if system == "product" else star_norm(alpha, n)
    return p ** sum(n) * lag


# --------------------------------------------------------- Poisson kernel

@dataclass(frozen=True)
class PoissonKernelResult:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    rhs_corrected: mpmath.mpf
    tail_bound: float
    cutoff: int

    @property
    def error(self) -> float:
        return float(abs(self.lhs - self.rhs))

    @property
    def error_corrected(self) -> float:
        return float(abs(self.lhs - self.rhs_corrected))


def _poisson_tail_bound(lam_total: Fraction, K: int, D: int) -> float:
    """Bound on ``sum_{s > K} (1+s)^D Po_lam(s)``, valid once the term ratio is below 1."""
    lam = mpmath.mpf(lam_total.numerator) / lam_total.denominator
    s = K + 1
    ratio = ((s + 2) / mpmath.mpf(s + 1)) ** D * lam / (s + 1)
    if ratio >= 1:
        return math.inf
    first = (1 + s) ** D * mpmath.exp(-lam) * lam**s / mpmath.factorial(s)
    return float(first / (1 - ratio))


def poisson_kernel_expand(
    alpha: Sequence,
    p,
    r: Sequence[int],
    lam: Sequence,
    system: str = "product",
    tolerance: float = 1e-10,
    budget: int = 400,
) -> PoissonKernelResult:
    """``sum_m M~_r(m) Po_lam^d(m)`` against ``rho_r^{-1} L_r(lam (1-p)/p)``.

    The sum is truncated at the smallest ``|m| <= K`` whose proven tail bound
    falls below ``tolerance``.  ``rhs`` is the stated right-hand side
    ``E[M~_r^2] L_r``; ``rhs_corrected`` is ``p^{|r|} L_r``.
    """
    alpha = tuple(to_exact(a) for a in alpha)
    p = _p(p)
    lam = tuple(to_exact(v) for v in lam)
    r = check_index(r)
    if any(v <= 0 for v in lam):
        raise ValueError("lambda must be positive")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    d = len(alpha)
    M = mv_meixner(alpha, p, r, system)
    D = M.degree
    C = float(sum(abs(c) for c in M.terms.values()))
    lam_total = sum(lam)
    K = None
    for k in range(D, budget + 1):
        bound = C * _poisson_tail_bound(lam_total, k, max(D, 0))
        if bound < tolerance:
            K = k
            break
    if K is None:
        raise ArithmeticError(f"tail bound did not reach {tolerance} within {budget} terms")
    partial = Fraction(0)
    fact = [math.factorial(i) for i in range(K + 1)]
    for tot in range(K + 1):
        for m in compositions(tot, d):
            w = Fraction(1)
            for li, mi in zip(lam, m):
                w *= li**mi / fact[mi]
            partial += M.evaluate(m) * w
    L = multiple_laguerre(alpha, r, system)
    L_val = L.evaluate([li * (1 - p) / p for li in lam])
    rho_inv = meixner_system_norm(alpha, p, r, system)
    with mpmath.workdps(40):
        lt = mpmath.mpf(lam_total.numerator) / lam_total.denominator
        lhs = mpmath.exp(-lt) * mpmath.mpf(partial.numerator) / partial.denominator
        rhs_val = rho_inv * L_val
        corr_val = p ** sum(r) * L_val
        rhs = mpmath.mpf(rhs_val.numerator) / rhs_val.denominator
        corr = mpmath.mpf(corr_val.numerator) / corr_val.denominator
    return PoissonKernelResult(lhs, rhs, corr, bound, K)
