"""Laguerre polynomials, the product and star multiple-Laguerre systems,
Erdélyi's expansion and the connection coefficients between the two systems.

Conventions: ``L_n^a(y) = (a)_n/n! 1F1(-n; a; y)`` so that
``E[L_n^a(Y)^2] = (a)_n / n!`` for ``Y ~ Gamma(a, 1)``.  The star system is

    L*_n(y) = L_{n_d}^{|a| + 2|n'|}(|y|) |y|^{|n'|} R^a_{n'}(y / |y|)

with ``n' = (n_1, ..., n_{d-1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Poly, check_index, compositions, fmt_exact, homogenize, to_exact, total_poly
from .distributions import Dirichlet, GammaProduct, DirichletMultinomial
from .jacobi import gem_jacobi, gem_jacobi_norm, mv_jacobi, mv_jacobi_constant, mv_jacobi_norm
from .oracle import expectation, inner_product
from .special import (
    hyp_coefficients,
    lauricella_FA_poly,
    lauricella_FA_terminating,
    rising_factorial,
)


def _alpha(alpha) -> tuple[Fraction, ...]:
    out = tuple(to_exact(a) for a in alpha)
    if not out or any(a <= 0 for a in out):
        raise ValueError("alpha must be a non-empty vector of positive rationals")
    return out


def laguerre_univariate(alpha, n: int) -> Poly:
    alpha = to_exact(alpha)
    if n < 0 or alpha <= 0:
        raise ValueError("need n >= 0 and alpha > 0")
    pref = rising_factorial(alpha, n) / math.factorial(n)
    return Poly.univariate([c * pref for c in hyp_coefficients([-n], [alpha])])


def laguerre_norm(alpha, n: int) -> Fraction:
    return rising_factorial(to_exact(alpha), n) / math.factorial(n)


@dataclass(frozen=True)
class LaguerreIndex:
    alpha: tuple
    n: tuple
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _alpha(self.alpha))
        n = check_index(self.n)
        if len(n) != len(self.alpha):
            raise ValueError(f"index {n} must have length d = {len(self.alpha)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "scale", to_exact(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def n_prime(self) -> tuple[int, ...]:
        return self.n[:-1]


def _outer(q: Poly, image: Poly) -> Poly:
    return q.substitute([image])


def multiple_laguerre(alpha: Sequence, n: Sequence[int], system: str = "product", scale=1) -> Poly:
    """Product or star multiple-Laguerre polynomial in ``y_1 .. y_d``."""
    idx = LaguerreIndex(tuple(alpha), tuple(n), scale)
    d, b = idx.d, idx.scale
    if system == "product":
        out = Poly.const(1, d)
        for i, (a, k) in enumerate(zip(idx.alpha, idx.n)):
            out = out * _outer(laguerre_univariate(a, k), Poly.var(i, d).scale(1 / b))
        return out
    if system == "star":
        if d == 1:
            return _outer(laguerre_univariate(idx.alpha[0], idx.n[0]), Poly.var(0, 1).scale(1 / b))
        np_ = idx.n_prime
        deg = sum(np_)
        hom = homogenize(mv_jacobi(idx.alpha, np_), deg, d).scale(Fraction(1) / b**deg)
        outer = laguerre_univariate(sum(idx.alpha) + 2 * deg, idx.n[-1])
        return _outer(outer, total_poly(d).scale(1 / b)) * hom
    raise ValueError(f"unknown system {system!r}")


def phi(alpha: Sequence, m: Sequence[int]) -> Fraction:
    """``phi_m`` with ``1/phi_m = prod_i (alpha_i)_{m_i} / m_i!``."""
    out = Fraction(1)
    for a, k in zip(_alpha(alpha), m):
        out *= laguerre_norm(a, k)
    return 1 / out


def multiple_laguerre_constant(alpha: Sequence, n: Sequence[int], system: str = "product") -> Fraction:
    """Closed-form squared norm as published (``system="star"`` uses the printed formula)."""
    idx = LaguerreIndex(tuple(alpha), tuple(n))
    if system == "product":
        return 1 / phi(idx.alpha, idx.n)
    if system == "star":
        if idx.d == 1:
            return laguerre_norm(idx.alpha[0], idx.n[0])
        a, P, nd = sum(idx.alpha), sum(idx.n_prime), idx.n[-1]
        return rising_factorial(a, 2 * P) ** 2 / math.factorial(nd) * mv_jacobi_constant(idx.alpha, idx.n_prime)
    raise ValueError(f"unknown system {system!r}")


def star_norm(alpha: Sequence, n: Sequence[int]) -> Fraction:
    """Derived squared norm of ``L*_n``: ``(|a|)_{2P} (|a|+2P)_{n_d} / n_d! / zeta_{n'}``."""
    idx = LaguerreIndex(tuple(alpha), tuple(n))
    if idx.d == 1:
        return laguerre_norm(idx.alpha[0], idx.n[0])
    a, P, nd = sum(idx.alpha), sum(idx.n_prime), idx.n[-1]
    return (
        rising_factorial(a, 2 * P)
        * laguerre_norm(a + 2 * P, nd)
        * mv_jacobi_norm(idx.alpha, idx.n_prime)
    )


# ---------------------------------------------------------------- Erdélyi

def erdelyi_expand(a, alpha: Sequence, n: Sequence[int], k: Sequence) -> list[Fraction]:
    """``phi_s`` for ``prod_j L_{n_j}^{alpha_j}(k_j z) = sum_s phi_s L_s^a(z)``."""
    a = to_exact(a)
    alpha = _alpha(alpha)
    n = check_index(n)
    k = [to_exact(v) for v in k]
    if not len(alpha) == len(n) == len(k):
        raise ValueError("alpha, n and k must have equal length")
    pref = Fraction(1)
    for al, nj in zip(alpha, n):
        pref *= laguerre_norm(al, nj)
    out = []
    for s in range(sum(n) + 1):
        val = lauricella_FA_terminating(
            a, [-v for v in n] + [-s], list(alpha) + [a], list(k) + [Fraction(1)]
        )
        out.append(pref * val)
    return out


def erdelyi_sides(a, alpha: Sequence, n: Sequence[int], k: Sequence) -> tuple[Poly, Poly]:
    """Both sides of Erdélyi's identity as univariate polynomials in ``z``."""
    z = Poly.var(0, 1)
    lhs = Poly.const(1)
    for al, nj, kj in zip(_alpha(alpha), n, k):
        lhs = lhs * _outer(laguerre_univariate(al, nj), z.scale(to_exact(kj)))
    rhs = Poly.zero(1)
    for s, c in enumerate(erdelyi_expand(a, alpha, n, k)):
        rhs = rhs + laguerre_univariate(a, s).scale(c)
    return lhs, rhs


def addition_sides(a, b, n: int) -> tuple[Poly, Poly]:
    """``L_n^{a+b}(x+y)`` and ``sum_j L_j^a(x) L_{n-j}^b(y)`` in two variables."""
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    lhs = _outer(laguerre_univariate(to_exact(a) + to_exact(b), n), x + y)
    rhs = Poly.zero(2)
    for j in range(n + 1):
        rhs = rhs + _outer(laguerre_univariate(a, j), x) * _outer(laguerre_univariate(b, n - j), y)
    return lhs, rhs


# ------------------------------------------------------ connection coefficients

def _check_pair(alpha, n, m):
    alpha = _alpha(alpha)
    n, m = check_index(n), check_index(m)
    if len(n) != len(alpha) or len(m) != len(alpha):
        raise ValueError("n and m must have length d")
    if len(alpha) < 2:
        raise ValueError("connection coefficients need d >= 2")
    return alpha, n, m


def cstar_oracle(alpha: Sequence, n: Sequence[int], m: Sequence[int]) -> Fraction:
    """``E[L*_n L_m]`` under ``GammaProduct(alpha, 1)`` by exact moments."""
    alpha, n, m = _check_pair(alpha, n, m)
    if sum(n) != sum(m):
        return Fraction(0)
    w = GammaProduct(alpha)
    return inner_product(multiple_laguerre(alpha, n, "star"), multiple_laguerre(alpha, m, "product"), w)


def lau_d(alpha_total, n_prime_total: int, n_d: int, j: int, corrected: bool = False) -> Fraction:
    """Coefficient ``d_j`` of the published double-Lauricella formula.

    ``corrected=True`` replaces the middle ``c`` parameter ``|a| + 2i`` by
    ``|a| + 2|n'|``, which makes ``d_j`` the exact coefficient of
    ``L_j^{|a|}`` in ``L_{n_d}^{|a|+2|n'|}(z) z^{|n'|}``.
    """
    a, P = to_exact(alpha_total), n_prime_total
    out = Fraction(0)
    for i in range(P + 1):
        mid = a + 2 * (P if corrected else i)
        pref = (
            rising_factorial(-P, i)
            * rising_factorial(a, P)
            * rising_factorial(a + 2 * P, n_d)
            / (math.factorial(i) * math.factorial(n_d))
        )
        if pref:
            out += pref * lauricella_FA_terminating(a, [-i, -n_d, -j], [a, mid, a], [1, 1, 1])
    return out


def laguerre_expansion_coeffs(g: Poly, a) -> list[Fraction]:
    """Exact coefficients ``e_j`` with ``g(z) = sum_j e_j L_j^a(z)``."""
    a = to_exact(a)
    w = GammaProduct((a,))
    out = []
    for j in range(g.degree + 1):
        out.append(inner_product(g, laguerre_univariate(a, j), w) / laguerre_norm(a, j))
    return out


def radial_factor(alpha_total, n_prime_total: int, n_d: int) -> Poly:
    """``L_{n_d}^{|a|+2P}(z) z^P``."""
    a = to_exact(alpha_total)
    P = n_prime_total
    z = Poly.var(0, 1)
    return laguerre_univariate(a + 2 * P, n_d) * z**P


def _fa_dirichlet_integral(alpha, n_prime, m, j) -> Fraction:
    """``E_D[R_{n'}(T) F_A(|a|; -m, -j; alpha, |a|; T, 1)]`` under ``Dirichlet(alpha)``."""
    d = len(alpha)
    a = sum(alpha)
    t = [Poly.var(i, d - 1) for i in range(d - 1)]
    t.append(1 - total_poly(d - 1))
    t.append(Poly.const(1, d - 1))
    fa = lauricella_FA_poly(a, [-v for v in m] + [-j], list(alpha) + [a], t)
    return inner_product(mv_jacobi(alpha, n_prime), fa, Dirichlet(alpha))


@dataclass(frozen=True)
class LauricellaReading:
    """Choices left open by the published formula.

    * ``delta``: ``"degree"`` keeps all ``|m| = |n|``; ``"kronecker"`` keeps only ``m = n``.
    * ``j_range``: ``"n"`` sums ``j`` up to ``|n|``; ``"n_prime"`` up to ``|n'|``.
    * ``corrected_d``: use ``|a| + 2|n'|`` in ``d_j`` (see :func:`lau_d`).
    * ``gamma_weight``: multiply the ``j``-th term by ``(|a|)_j / j!``.
    """

    delta: str = "degree"
    j_range: str = "n"
    corrected_d: bool = False
    gamma_weight: bool = False

    def label(self) -> str:
        return f"delta={self.delta},j={self.j_range},d={'corr' if self.corrected_d else 'printed'},gw={int(self.gamma_weight)}"


PRINTED_READING = LauricellaReading()
CORRECTED_READING = LauricellaReading("degree", "n", True, True)


def cstar_lauricella(alpha, n, m, reading: LauricellaReading = PRINTED_READING) -> Fraction:
    alpha, n, m = _check_pair(alpha, n, m)
    if reading.delta == "kronecker" and m != n:
        return Fraction(0)
    if sum(m) != sum(n):
        return Fraction(0)
    a = sum(alpha)
    np_ = n[:-1]
    P, nd = sum(np_), n[-1]
    J = sum(n) if reading.j_range == "n" else P
    # (|a|)_{|n|}/|n|! * DM_alpha(m; |m|)
    weight = rising_factorial(a, sum(n)) / math.factorial(sum(n))
    weight *= DirichletMultinomial(alpha, sum(m)).pmf(m)
    total = Fraction(0)
    for j in range(J + 1):
        dj = lau_d(a, P, nd, j, reading.corrected_d)
        if not dj:
            continue
        term = dj * _fa_dirichlet_integral(alpha, np_, m, j)
        if reading.gamma_weight:
            term *= laguerre_norm(a, j)
        total += term
    return weight * total


def cstar_hahn(alpha, n, m) -> Fraction:
    """Published Hahn-polynomial representation of ``c*_m(n)`` evaluated literally."""
    from .hahn import mv_hahn_eval_mixture

    alpha, n, m = _check_pair(alpha, n, m)
    if m != n:
        return Fraction(0)
    d = len(alpha)
    a = sum(alpha)
    np_ = n[:-1]
    P, nd = sum(np_), n[-1]
    b = sum(
        (lau_d(a, P, nd, j) / (math.factorial(j) * rising_factorial(a, j)) for j in range(sum(n) + 1)),
        Fraction(0),
    )
    b *= rising_factorial(a, sum(n)) / math.factorial(sum(n))
    s = Fraction(0)
    for tot in range(sum(n) + 1):
        for r in compositions(tot, d):
            coef = Fraction(1)
            for mi, ri in zip(m, r):
                coef *= rising_factorial(-mi, ri) / math.factorial(ri)
            if coef:
                s += coef * mv_hahn_eval_mixture(alpha, np_, r)
    return b * DirichletMultinomial(alpha, sum(m)).pmf(m) * s


def connection_cstar(alpha, n, m, method: str = "oracle", reading: LauricellaReading = PRINTED_READING) -> Fraction:
    if method == "oracle":
        return cstar_oracle(alpha, n, m)
    if method == "lauricella":
        return cstar_lauricella(alpha, n, m, reading)
    if method == "hahn":
        return cstar_hahn(alpha, n, m)
    raise ValueError(f"unknown method {method!r}")


def lc1_sides(alpha, n, cstar=None) -> tuple[Poly, Poly]:
    """``L*_n`` and ``sum_{|m|=|n|} phi_m c*_m(n) L_m`` (coefficients from the oracle by default)."""
    alpha = _alpha(alpha)
    n = check_index(n)
    cstar = cstar or (lambda m: cstar_oracle(alpha, n, m))
    lhs = multiple_laguerre(alpha, n, "star")
    rhs = Poly.zero(len(alpha))
    for m in compositions(sum(n), len(alpha)):
        c = cstar(m)
        if c:
            rhs = rhs + multiple_laguerre(alpha, m, "product").scale(phi(alpha, m) * c)
    return lhs, rhs


@dataclass
class ConnectionTable:
    alpha: tuple
    n: tuple
    methods: list
    entries: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "alpha": [fmt_exact(a) for a in self.alpha],
            "n": list(self.n),
            "methods": self.methods,
            "entries": {
                ",".join(map(str, m)): {k: fmt_exact(v) for k, v in row.items()}
                for m, row in sorted(self.entries.items())
            },
            "discrepancies": self.discrepancies,
        }


def connection_table(alpha, n, methods=("oracle", "lauricella", "hahn"), reading=PRINTED_READING) -> ConnectionTable:
    alpha = _alpha(alpha)
    n = check_index(n)
    methods = list(methods)
    if "oracle" not in methods:
        methods.insert(0, "oracle")
    table = ConnectionTable(alpha, n, methods)
    for m in compositions(sum(n), len(alpha)):
        row = {meth: connection_cstar(alpha, n, m, meth, reading) for meth in methods}
        table.entries[m] = row
        for meth, v in row.items():
            if v != row["oracle"]:
                table.discrepancies.append(
                    {"m": list(m), "method": meth, "value": fmt_exact(v), "oracle": fmt_exact(row["oracle"])}
                )
    return table


# ---------------------------------------------------------------- GEM Laguerre

def gem_laguerre(theta, d: int, m_total: int, n_prime: Sequence[int]) -> Poly:
    """``L_{|m|}^{theta + 2|n'|}(|y|) |y|^{|n'|} R_{n'}(y/|y|)`` truncated at depth ``d``.

    Polynomials live in ``y_1 .. y_d``; ``y_d`` carries the residual mass.
    """
    theta = to_exact(theta)
    n_prime = check_index(n_prime)
    P = sum(n_prime)
    hom = homogenize(gem_jacobi(theta, d, n_prime, "limit"), P, d)
    outer = laguerre_univariate(theta + 2 * P, m_total)
    return _outer(outer, total_poly(d)) * hom


def gem_laguerre_norm(theta, d: int, m_total: int, n_prime: Sequence[int]) -> Fraction:
    theta = to_exact(theta)
    P = sum(n_prime)
    return (
        rising_factorial(theta, 2 * P)
        * laguerre_norm(theta + 2 * P, m_total)
        * gem_jacobi_norm(theta, d, n_prime, "limit")
    )
