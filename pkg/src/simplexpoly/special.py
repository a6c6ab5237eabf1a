"""Pochhammer symbols, terminating hypergeometric series, Lauricella F_A."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import Poly, to_exact


class SeriesError(ValueError):
    """Non-terminating series or a vanishing denominator inside the sum."""


def rising_factorial(a, n: int) -> Fraction:
    """``(a)_n = a (a+1) ... (a+n-1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = to_exact(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def falling_factorial(a, n: int) -> Fraction:
    """``a_[n] = a (a-1) ... (a-n+1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = to_exact(a)
    out = Fraction(1)
    for i in range(n):
        out *= a - i
    return out


def pochhammer(a, n: int) -> Fraction:
    """``Gamma(a+n)/Gamma(a)`` for any integer ``n``; negative ``n`` divides.

    Only the printed constant formulas need ``n = -1`` (e.g. ``(theta)_{n-1}``
    at ``n = 0``).
    """
    if n >= 0:
        return rising_factorial(a, n)
    den = rising_factorial(to_exact(a) + n, -n)
    if den == 0:
        raise ZeroDivisionError(f"({a})_({n}) has a pole")
    return 1 / den


def _neg_int(x: Fraction):
    """Return k if x == -k for an integer k >= 0, else None."""
    if x.denominator == 1 and x <= 0:
        return int(-x)
    return None


@dataclass(frozen=True)
class SeriesSpec:
    numerator: Sequence = field(default_factory=tuple)
    denominator: Sequence = field(default_factory=tuple)
    argument: object = 0

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(to_exact(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(to_exact(b) for b in self.denominator))
        object.__setattr__(self, "argument", to_exact(self.argument))

    def length(self) -> int:
        """Number of the last (possibly) non-zero term."""
        stops = [k for k in map(_neg_int, self.numerator) if k is not None]
        if not stops:
            raise SeriesError(f"no terminating numerator parameter in {self.numerator}")
        return min(stops)


def hyp_pFq_terminating(spec: SeriesSpec) -> Fraction:
    """Exact value of a terminating generalized hypergeometric series."""
    K = spec.length()
    total = Fraction(0)
    term = Fraction(1)
    for j in range(K + 1):
        total += term
        if j == K:
            break
        num = Fraction(1)
        for a in spec.numerator:
            num *= a + j
        den = Fraction(j + 1)
        for b in spec.denominator:
            den *= b + j
        if den == 0:
            if num == 0:
                break
            raise SeriesError(f"denominator vanishes at term {j + 1}")
        term = term * num * spec.argument / den
    return total


def hyp_coefficients(numerator: Sequence, denominator: Sequence) -> list[Fraction]:
    """Coefficients ``t_j`` with ``pFq(z) = sum_j t_j z^j`` (terminating)."""
    spec = SeriesSpec(numerator, denominator, 0)
    K = spec.length()
    out = []
    for j in range(K + 1):
        num = Fraction(1)
        for a in spec.numerator:
            num *= rising_factorial(a, j)
        den = Fraction(math.factorial(j))
        for b in spec.denominator:
            den *= rising_factorial(b, j)
        if den == 0:
            if num == 0:
                out.append(Fraction(0))
                continue
            raise SeriesError(f"denominator vanishes at term {j}")
        out.append(num / den)
    return out


def _fa_terms(a, b: Sequence, c: Sequence):
    a = to_exact(a)
    b = [to_exact(v) for v in b]
    c = [to_exact(v) for v in c]
    if len(b) != len(c):
        raise ValueError("b and c must have the same length")
    bounds = []
    for bi in b:
        k = _neg_int(bi)
        if k is None:
            raise SeriesError(f"F_A needs non-positive integer b parameters, got {bi}")
        bounds.append(k)
    for m in itertools.product(*(range(k + 1) for k in bounds)):
        num = rising_factorial(a, sum(m))
        den = Fraction(1)
        for mi, bi, ci in zip(m, b, c):
            num *= rising_factorial(bi, mi)
            den *= rising_factorial(ci, mi) * math.factorial(mi)
        if num == 0:
            continue
        if den == 0:
            raise SeriesError(f"F_A denominator vanishes at {m}")
        yield m, num / den


def lauricella_FA_terminating(a, b: Sequence, c: Sequence, z: Sequence) -> Fraction:
    """Lauricella ``F_A(a; b; c; z)`` by direct enumeration of the finite box."""
    z = [to_exact(v) for v in z]
    if len(z) != len(b):
        raise ValueError("z must match b in length")
    total = Fraction(0)
    for m, coef in _fa_terms(a, b, c):
        term = coef
        for zi, mi in zip(z, m):
            if mi:
                term *= zi**mi
        total += term
    return total


def lauricella_FA_poly(a, b: Sequence, c: Sequence, z: Sequence[Poly]) -> Poly:
    """``F_A`` with polynomial arguments, expanded to a polynomial."""
    if len(z) != len(b):
        raise ValueError("z must match b in length")
    dim = z[0].dim
    cache: dict[tuple[int, int], Poly] = {}
    out = Poly.zero(dim)
    for m, coef in _fa_terms(a, b, c):
        term = Poly.const(coef, dim)
        for i, mi in enumerate(m):
            if mi:
                if (i, mi) not in cache:
                    cache[(i, mi)] = z[i] ** mi
                term = term * cache[(i, mi)]
        out = out + term
    return out


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def stirling2(n: int, k: int) -> Fraction:
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"stirling2 needs 0 <= k <= n, got n={n}, k={k}")
    return Fraction(_stirling2(n, k))


def multinomial(n: Sequence[int]) -> Fraction:
    n = [int(v) for v in n]
    if any(v < 0 for v in n):
        raise ValueError("negative entry")
    out = math.factorial(sum(n))
    for v in n:
        out //= math.factorial(v)
    return Fraction(out)


def binomial(n, k: int) -> Fraction:
    """``C(n, k)`` for rational ``n`` and integer ``k >= 0``."""
    if k < 0:
        return Fraction(0)
    return falling_factorial(n, k) / math.factorial(k)
