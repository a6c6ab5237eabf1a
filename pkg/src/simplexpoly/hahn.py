"""Hahn polynomials on ``{0..N}`` and multivariate Hahn polynomials on the
discrete simplex, built as posterior mixtures of Jacobi polynomials.

Univariate conventions::

    h_n(r; N)  = 3F2(-n, n+theta-1, -r; alpha, -N; 1)
    q_n(r; N)  = h_n(r; N) / h_n(N; N)
    q~_n(r; N) = E[R_n(X)],  X ~ Beta(alpha + r, beta + N - r)
               = N_[n] / (theta+N)_n * q_n(r; N)

Multivariate polynomials use the free counts ``r_1 .. r_{d-1}`` with
``r_d = |r| - (r_1 + ... + r_{d-1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import (
    FALLING,
    MONOMIAL,
    Poly,
    check_index,
    compositions,
    lattice_box,
    tail_sums,
    to_exact,
    total_poly,
)
from .distributions import DirichletMultinomial, Hypergeometric
from .jacobi import jacobi_norm_R, jacobi_univariate, mv_jacobi, mv_jacobi_constant, mv_jacobi_norm
from .special import binomial, falling_factorial, multinomial, rising_factorial


@dataclass(frozen=True)
class HahnParams:
    alpha: Fraction
    beta: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_exact(self.alpha))
        object.__setattr__(self, "beta", to_exact(self.beta))
        object.__setattr__(self, "N", int(self.N))
        if self.N < 0:
            raise ValueError("N must be non-negative")

    @property
    def theta(self) -> Fraction:
        return self.alpha + self.beta


# ------------------------------------------------------------------ univariate

def hahn_univariate(alpha, beta, N: int, n: int, form: str = "q", basis: str = FALLING) -> Poly:
    """``h_n`` or ``q_n`` as a polynomial in ``r``."""
    p = HahnParams(alpha, beta, N)
    if not 0 <= n <= p.N:
        raise ValueError(f"need 0 <= n <= N, got n={n}, N={N}")
    a, t = p.alpha, p.theta
    coeffs = {}
    for j in range(n + 1):
        num = rising_factorial(-n, j) * rising_factorial(n + t - 1, j) * (-1) ** j
        den = rising_factorial(a, j) * rising_factorial(-p.N, j) * math.factorial(j)
        if num == 0:
            continue
        if den == 0:
            raise ZeroDivisionError(f"Hahn coefficient {j} has a vanishing denominator")
        coeffs[(j,)] = num / den
    h = Poly(1, coeffs, FALLING)
    if form == "q":
        h = h.scale(1 / hahn_value_at_N(a, p.beta, n))
    elif form != "h":
        raise ValueError(f"unknown form {form!r}")
    return h.to_basis(basis)


def hahn_value_at_N(alpha, beta, n: int) -> Fraction:
    """``h_n(N; N) = (-1)^n (beta)_n / (alpha)_n``."""
    return (-1) ** n * rising_factorial(beta, n) / rising_factorial(alpha, n)


def hahn_tilde_univariate(alpha, beta, N: int, n: int) -> Poly:
    """Posterior mixture ``E[R_n^{alpha,beta}(X)]`` over ``X ~ Beta(alpha+r, beta+N-r)``."""
    p = HahnParams(alpha, beta, N)
    R = jacobi_univariate(p.alpha, p.beta, n).univariate_coeffs()
    r = Poly.var(0, 1)
    out = Poly.zero(1)
    rising = Poly.const(1)
    for k, c in enumerate(R):
        if c:
            out = out + rising.scale(c / rising_factorial(p.theta + p.N, k))
        rising = rising * (r + p.alpha + k)
    return out


def hahn_tilde_ratio(alpha, beta, N: int, n: int) -> Fraction:
    """Observed constant ``q~_n / q_n`` (a polynomial identity, checked)."""
    qt = hahn_tilde_univariate(alpha, beta, N, n)
    q = hahn_univariate(alpha, beta, N, n, "q", MONOMIAL)
    c = qt.coeff((n,)) / q.coeff((n,))
    if qt != q.scale(c):
        raise ArithmeticError("q~ is not a constant multiple of q")
    return c


def tilde_factor(alpha, beta, N: int, n: int) -> Fraction:
    """``N_[n] / (theta+N)_n``: the factor relating ``q~`` to ``q``."""
    t = to_exact(alpha) + to_exact(beta)
    return falling_factorial(N, n) / rising_factorial(t + N, n)


def tilde_factor_printed(alpha, beta, N: int, n: int) -> Fraction:
    """The published factor ``(theta+N)_n / N_[n]``."""
    return 1 / tilde_factor(alpha, beta, N, n)


def hahn_constants(alpha, beta, N: int, n: int) -> dict[str, Fraction]:
    """Squared norms of ``h``, ``q`` and ``q~`` under ``DM(alpha, beta; N)``."""
    a, b = to_exact(alpha), to_exact(beta)
    t = a + b
    zinv = jacobi_norm_R(a, b, n)
    if n == 0:
        u = Fraction(1)
    else:
        u = (
            rising_factorial(t + N, n)
            / (binomial(N, n) * rising_factorial(t, n - 1) * (t + 2 * n - 1))
            * rising_factorial(b, n)
            / rising_factorial(a, n)
        )
    return {
        "h": u,
        "q": rising_factorial(t + N, n) / falling_factorial(N, n) * zinv,
        "q_tilde": falling_factorial(N, n) / rising_factorial(t + N, n) * zinv,
    }


def hahn_symmetry_sides(alpha, beta, N: int, n: int) -> tuple[Poly, Poly]:
    """``q_n^{a,b}(r) q_n^{b,a}(0)`` and ``q_n^{b,a}(N - r)`` as monomial polynomials."""
    lhs = hahn_univariate(alpha, beta, N, n, "q", MONOMIAL)
    q_ba = hahn_univariate(beta, alpha, N, n, "q", MONOMIAL)
    lhs = lhs.scale(q_ba.evaluate([0]))
    rhs = q_ba.substitute([Poly.const(N, 1) - Poly.var(0, 1)])
    return lhs, rhs


# ---------------------------------------------------------------- multivariate

@dataclass(frozen=True)
class MVHahnIndex:
    alpha: tuple
    n: tuple
    total: int

    def __post_init__(self):
        alpha = tuple(to_exact(a) for a in self.alpha)
        if len(alpha) < 2:
            raise ValueError("need d >= 2")
        n = check_index(self.n)
        if len(n) > len(alpha) - 1:
            raise ValueError("index longer than d - 1")
        n = n + (0,) * (len(alpha) - 1 - len(n))
        if sum(n) > int(self.total):
            raise ValueError(f"|n| = {sum(n)} exceeds |r| = {self.total}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "total", int(self.total))

    @property
    def d(self) -> int:
        return len(self.alpha)


def _posterior_moment(alpha, r, k) -> Fraction:
    """``E[x^k]`` under ``Dirichlet(alpha + r)``; ``k`` covers the first ``d-1`` coordinates."""
    num = Fraction(1)
    for a, ri, ki in zip(alpha, r, k):
        num *= rising_factorial(a + ri, ki)
    den = rising_factorial(sum(alpha) + sum(r), sum(k))
    if den == 0:
        raise ZeroDivisionError("posterior normalizer vanishes")
    return num / den


def mv_hahn_eval_mixture(alpha: Sequence, n: Sequence[int], r: Sequence[int]) -> Fraction:
    """``E[R_n^alpha(X)]`` for ``X ~ Dirichlet(alpha + r)``, ``r`` a full ``d``-vector."""
    alpha = tuple(to_exact(a) for a in alpha)
    R = mv_jacobi(alpha, n)
    return sum((c * _posterior_moment(alpha, r, k) for k, c in R.terms.items()), Fraction(0))


def mv_hahn_mixture(alpha: Sequence, n: Sequence[int], total: int) -> Poly:
    """Mixture-route Hahn polynomial in ``r_1 .. r_{d-1}`` (monomial basis)."""
    idx = MVHahnIndex(tuple(alpha), tuple(n), total)
    d, al = idx.d, idx.alpha
    dim = d - 1
    r = [Poly.var(i, dim) for i in range(dim)]
    cache: dict[tuple[int, int], Poly] = {}

    def rising_poly(i: int, k: int) -> Poly:
        if (i, k) not in cache:
            out = Poly.const(1, dim)
            for s in range(k):
                out = out * (r[i] + al[i] + s)
            cache[(i, k)] = out
        return cache[(i, k)]

    a_plus_r = sum(al) + idx.total
    out = Poly.zero(dim)
    for k, c in mv_jacobi(al, idx.n).terms.items():
        term = Poly.const(c / rising_factorial(a_plus_r, sum(k)), dim)
        for i, ki in enumerate(k):
            if ki:
                term = term * rising_poly(i, ki)
        out = out + term
    return out


def _tilde_literal(a, b, N, n, r) -> Fraction:
    """``q~_n^{a,b}(r; N) = sum_k c_k (a+r)_k / (a+b+N)_k`` evaluated at integers."""
    R = jacobi_univariate(a, b, n).univariate_coeffs()
    return sum(
        (c * rising_factorial(a + r, k) / rising_factorial(a + b + N, k) for k, c in enumerate(R) if c),
        Fraction(0),
    )


def _full(r: Sequence[int], d: int, total: int) -> tuple[int, ...]:
    r = tuple(int(v) for v in r)
    if len(r) == d - 1:
        r = r + (total - sum(r),)
    return r


def mv_hahn_eval_product(alpha: Sequence, n: Sequence[int], r: Sequence[int]) -> Fraction:
    """Factorized (product-route) representation, including its published prefactor.

    ``r`` is a full ``d``-vector.  Factor ``j`` is
    ``q~^{alpha_j, A_j + 2 N_j}_{n_j}(r_j; R_{j-1} - N_j)``.
    """
    alpha = tuple(to_exact(a) for a in alpha)
    d = len(alpha)
    n = tuple(n) + (0,) * (d - len(n))  # n_d = 0
    r = tuple(int(v) for v in r)
    A, N, R = tail_sums(alpha), tail_sums(n), tail_sums(r)
    pref = Fraction(1)
    for j in range(1, d):
        pref *= rising_factorial(A[j] + R[j] + N[j + 1], n[j])
    pref /= rising_factorial(sum(alpha) + sum(r), N[1])
    out = pref
    for j in range(1, d + 1):
        nj = n[j - 1]
        if nj == 0:
            continue
        out *= _tilde_literal(alpha[j - 1], A[j] + 2 * N[j], R[j - 1] - N[j], nj, r[j - 1])
    return out


def _T(a, b, N, n: int) -> Poly:
    """Division-free numerator of ``q~_n^{a,b}(r; N)`` as a falling-basis polynomial in ``r``."""
    t = a + b
    coeffs = {}
    for i in range(n + 1):
        c = (
            rising_factorial(-n, i)
            * rising_factorial(n + t - 1, i)
            * falling_factorial(N - i, n - i)
            * rising_factorial(a + i, n - i)
            / math.factorial(i)
        )
        if c:
            coeffs[(i,)] = c
    return Poly(1, coeffs, FALLING)


def mv_hahn_eval_product_cleared(alpha: Sequence, n: Sequence[int], r: Sequence[int]) -> Fraction:
    """``prod_j T_j``: the product route with every ``r``-independent constant removed.

    Unlike :func:`mv_hahn_eval_product` it never divides, so it stays
    defined for negative-integer parameters (``alpha = -eps``).
    """
    alpha = tuple(to_exact(a) for a in alpha)
    d = len(alpha)
    n = tuple(n) + (0,) * (d - len(n))
    r = tuple(int(v) for v in r)
    A, N, R = tail_sums(alpha), tail_sums(n), tail_sums(r)
    out = Fraction(1)
    for j in range(1, d + 1):
        nj = n[j - 1]
        if nj:
            out *= _T(alpha[j - 1], A[j] + 2 * N[j], R[j - 1] - N[j], nj).evaluate([r[j - 1]])
    return out


def interpolate_lattice(f: Callable[[tuple], Fraction], dim: int, total: int, degree: int) -> Poly:
    """Polynomial of degree ``<= degree`` in ``r_1..r_dim`` through ``f`` on ``{|r'| <= total}``.

    Newton forward differences on ``{|l| <= degree}`` give the falling-basis
    coefficients; every other lattice point is then checked.
    """
    if degree > total:
        raise ValueError("degree exceeds the lattice size")
    values = {}

    def val(p):
        if p not in values:
            values[p] = f(p)
        return values[p]

    coeffs = {}
    for deg in range(degree + 1):
        for l in compositions(deg, dim):
            delta = Fraction(0)
            for j in lattice_box(l):
                sign = (-1) ** (sum(l) - sum(j))
                w = 1
                for li, ji in zip(l, j):
                    w *= math.comb(li, ji)
                delta += sign * w * val(tuple(j))
            if delta:
                fact = 1
                for li in l:
                    fact *= math.factorial(li)
                coeffs[l] = delta / fact
    poly = Poly(dim, coeffs, FALLING)
    for deg in range(total + 1):
        for p in compositions(deg, dim):
            if poly.evaluate(p) != val(p):
                raise ArithmeticError(f"values are not a polynomial of degree {degree} (mismatch at {p})")
    return poly.to_basis(MONOMIAL)


def mv_hahn(alpha: Sequence, n: Sequence[int], total: int, route: str = "mixture") -> Poly:
    """Multivariate Hahn polynomial ``q~_n^alpha(r; |r|)`` in ``r_1 .. r_{d-1}``.

    ``route="product"`` interpolates the factorized form through the lattice;
    ``route="product_cleared"`` does the same for the division-free form.
    """
    idx = MVHahnIndex(tuple(alpha), tuple(n), total)
    if route == "mixture":
        return mv_hahn_mixture(idx.alpha, idx.n, idx.total)
    evaluators = {"product": mv_hahn_eval_product, "product_cleared": mv_hahn_eval_product_cleared}
    if route not in evaluators:
        raise ValueError(f"unknown route {route!r}")
    ev = evaluators[route]
    d = idx.d
    return interpolate_lattice(
        lambda p: ev(idx.alpha, idx.n, _full(p, d, idx.total)), d - 1, idx.total, sum(idx.n)
    )


def product_route_constant(alpha: Sequence, n: Sequence[int], total: int) -> Fraction:
    """``c`` with ``product route = c * mixture route`` (raises if not proportional)."""
    mix = mv_hahn(alpha, n, total, "mixture")
    prod = mv_hahn(alpha, n, total, "product")
    key = next(iter(sorted(mix.terms)))
    c = prod.coeff(key) / mix.coeff(key)
    if prod != mix.scale(c):
        raise ArithmeticError(f"product route is not proportional to the mixture route at n={tuple(n)}")
    return c


def mv_hahn_constant(alpha: Sequence, n: Sequence[int], total: int, zeta: str = "exact") -> Fraction:
    """``|r|_[|n|] / (|alpha|+|r|)_{|n|} / zeta_n^alpha``.

    ``zeta="exact"`` uses the true Jacobi norm; ``zeta="printed"`` the
    published closed form.
    """
    idx = MVHahnIndex(tuple(alpha), tuple(n), total)
    k = sum(idx.n)
    inv_zeta = mv_jacobi_norm(idx.alpha, idx.n) if zeta == "exact" else mv_jacobi_constant(idx.alpha, idx.n)
    return falling_factorial(idx.total, k) / rising_factorial(sum(idx.alpha) + idx.total, k) * inv_zeta


def dm_weight(alpha: Sequence, total: int):
    return DirichletMultinomial(tuple(alpha), total)


def hypergeometric_weight(eps: Sequence[int], total: int):
    return Hypergeometric(tuple(eps), total)


# --------------------------------------------------------- Bernstein-Bézier

def bernstein(m: Sequence[int], dim: int) -> Poly:
    """``B_x(m) = C(|m|; m) x^m`` with ``x_d = 1 - |x'|``, in ``x_1 .. x_dim``."""
    x = [Poly.var(i, dim) for i in range(dim)]
    x.append(1 - total_poly(dim))
    out = Poly.const(multinomial(m), dim)
    for xi, mi in zip(x, m):
        if mi:
            out = out * xi**mi
    return out


def bb_constant(alpha: Sequence, r: Sequence[int], constant: str = "corrected") -> Fraction:
    """Prefactor of the Bernstein sum.

    ``"printed"`` is ``omega_r`` (the inverse of :func:`mv_hahn_constant`);
    ``"corrected"`` is ``omega_r / zeta_r = (|alpha|+|r|)_{|r|} / |r|!``.
    """
    k = sum(r)
    if constant == "printed":
        return 1 / mv_hahn_constant(alpha, r, k)
    if constant == "corrected":
        return rising_factorial(sum(to_exact(a) for a in alpha) + k, k) / math.factorial(k)
    raise ValueError(f"unknown constant {constant!r}")


def bb_reconstruct_jacobi(alpha: Sequence, r: Sequence[int], constant: str = "corrected") -> Poly:
    """``c_r sum_{|m|=|r|} q~_r(m; |r|) B_x(m)`` with ``c_r`` from :func:`bb_constant`."""
    alpha = tuple(to_exact(a) for a in alpha)
    d = len(alpha)
    r = check_index(r)
    r = r + (0,) * (d - 1 - len(r))
    out = Poly.zero(d - 1)
    for m in compositions(sum(r), d):
        c = mv_hahn_eval_mixture(alpha, r, m)
        if c:
            out = out + bernstein(m, d - 1).scale(c)
    return out.scale(bb_constant(alpha, r, constant))


# ---------------------------------------------------------- Hahn -> Jacobi

@dataclass(frozen=True)
class LimitRow:
    N: int
    n: int
    sup_error: float
    constant_gap: float


def hahn_jacobi_limit_diag(alpha, beta, n: int, Ns: Sequence[int], zgrid: Sequence) -> list[LimitRow]:
    """``sup_z |q_n(round(N z); N) - R_n(z)|`` and ``|w_{N,n} - zeta_n|`` for each ``N``."""
    a, b = to_exact(alpha), to_exact(beta)
    R = jacobi_univariate(a, b, n)
    zeta = 1 / jacobi_norm_R(a, b, n)
    rows = []
    for N in Ns:
        q = hahn_univariate(a, b, N, n, "q", FALLING)
        err = Fraction(0)
        for z in zgrid:
            z = to_exact(z)
            k = round(N * z)
            err = max(err, abs(q.evaluate([k]) - R.evaluate([z])))
        w = 1 / hahn_constants(a, b, N, n)["q"]
        rows.append(LimitRow(int(N), n, float(err), float(abs(w - zeta))))
    return rows
