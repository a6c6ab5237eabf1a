"""Weight measures, their probability functions and exact moment functionals.

Every inner product in the package is reduced to the closed-form moments
below.  Continuous weights use monomial moments, discrete weights use
factorial moments ``E[prod_i R_i_[l_i]]``.

Variable conventions:

* simplex weights (Dirichlet, size-biased Dirichlet, truncated GEM) act on
  polynomials in the first ``d - 1`` coordinates; the last coordinate is
  ``1 - (x_1 + ... + x_{d-1})``;
* fixed-total lattice weights (Dirichlet-Multinomial, Hypergeometric) act on
  polynomials in ``r_1 ... r_{d-1}``; ``r_d = total - (r_1 + ... + r_{d-1})``;
* product weights (Gamma, Negative Binomial, Gamma-GEM) use all ``d``
  coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath

from .core import FALLING, MONOMIAL, compositions, fmt_exact, tail_sums, to_exact
from .special import binomial, falling_factorial, multinomial, rising_factorial

FLOAT_DIGITS = 50


class WeightError(ValueError):
    pass


def _tuple(values) -> tuple[Fraction, ...]:
    return tuple(to_exact(v) for v in values)


def _pad(index: Sequence[int], length: int) -> tuple[int, ...]:
    index = tuple(int(v) for v in index)
    if len(index) > length:
        raise WeightError(f"index {index} longer than {length}")
    if any(v < 0 for v in index):
        raise WeightError(f"negative index {index}")
    return index + (0,) * (length - len(index))


def _exact_root(x: Fraction, q: int):
    """Exact ``x**(1/q)`` or None."""
    if x < 0:
        return None
    num = round(x.numerator ** (1 / q)) if x.numerator else 0
    den = round(x.denominator ** (1 / q))
    for a in (num - 1, num, num + 1):
        if a >= 0 and a**q == x.numerator:
            for b in (den - 1, den, den + 1):
                if b > 0 and b**q == x.denominator:
                    return Fraction(a, b)
    return None


def exact_power(x, e):
    """``x**e`` as a Fraction when it is rational, else None."""
    x, e = to_exact(x), to_exact(e)
    if e.denominator == 1:
        if x == 0 and e < 0:
            return None
        return x ** int(e)
    root = _exact_root(x, e.denominator)
    if root is None or (root == 0 and e < 0):
        return None
    return root**e.numerator


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def stick_moment(a: Sequence[Fraction], b: Sequence[Fraction], k: Sequence[int]) -> Fraction:
    """``E[x^k]`` for ``x_j = B_j prod_{i<j}(1 - B_i)``, ``B_j ~ Beta(a_j, b_j)`` independent.

    ``k`` may have one more entry than there are sticks: it is the exponent of
    the remainder ``prod_j (1 - B_j)``.
    """
    S = len(a)
    k = _pad(k, S + 1)
    tails = tail_sums(k)
    out = Fraction(1)
    for j in range(S):
        kj, Kj = k[j], tails[j + 1]
        out *= rising_factorial(a[j], kj) * rising_factorial(b[j], Kj)
        out /= rising_factorial(a[j] + b[j], kj + Kj)
    return out


# ----------------------------------------------------------------- weight specs

@dataclass(frozen=True)
class WeightSpec:
    family = "abstract"
    natural_basis = MONOMIAL

    @property
    def nvars(self) -> int:
        raise NotImplementedError

    def moment(self, index: Sequence[int]) -> Fraction:
        raise NotImplementedError

    def pmf(self, point, mode: str = "auto"):
        raise NotImplementedError

    def support(self) -> Iterator[tuple[int, ...]]:
        raise WeightError(f"{self.family} has no finite support")

    def free_coords(self, point: Sequence) -> tuple:
        return tuple(point)[: self.nvars]

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Dirichlet(WeightSpec):
    alpha: tuple
    family = "dirichlet"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _tuple(self.alpha))
        if len(self.alpha) < 2 or any(a <= 0 for a in self.alpha):
            raise WeightError("Dirichlet needs d >= 2 positive parameters")

    @property
    def nvars(self) -> int:
        return len(self.alpha) - 1

    def moment(self, index) -> Fraction:
        n = _pad(index, len(self.alpha))
        out = Fraction(1)
        for a, k in zip(self.alpha, n):
            out *= rising_factorial(a, k)
        return out / rising_factorial(sum(self.alpha), sum(n))

    def pmf(self, point, mode: str = "auto"):
        """Density w.r.t. Lebesgue measure on the first ``d-1`` coordinates."""
        d = len(self.alpha)
        x = [to_exact(v) for v in point][: d - 1]
        if len(x) != d - 1:
            raise WeightError("point must have d-1 (or d) coordinates")
        x.append(1 - sum(x))
        if any(v < 0 for v in x):
            raise WeightError("point outside the simplex")
        const = _gamma_ratio(sum(self.alpha), self.alpha)
        powers = [exact_power(xi, a - 1) for xi, a in zip(x, self.alpha)]
        if const is not None and all(p is not None for p in powers):
            out = const
            for p in powers:
                out *= p
            return out
        if mode == "exact":
            raise WeightError("density is not rational for these parameters")
        with mpmath.workdps(FLOAT_DIGITS):
            val = mpmath.gamma(_mp(sum(self.alpha)))
            for xi, a in zip(x, self.alpha):
                val *= mpmath.power(_mp(xi), _mp(a - 1)) / mpmath.gamma(_mp(a))
            return val

    def sample(self, rng, size: int):
        return rng.dirichlet([float(a) for a in self.alpha], size=size)

    def to_json(self) -> dict:
        return {"family": self.family, "alpha": [fmt_exact(a) for a in self.alpha]}


def _gamma_ratio(top: Fraction, bottom: Sequence[Fraction]):
    """``Gamma(top) / prod Gamma(b)`` when it reduces to a rational, else None."""

    def split(a: Fraction):
        frac = a - math.floor(a)
        if frac == 0:
            frac = Fraction(1)
        return frac, int(a - frac)

    f0, m0 = split(top)
    num_fracs = [f0] if f0 != 1 else []
    den_fracs = []
    value = rising_factorial(f0, m0)
    for b in bottom:
        f, m = split(b)
        if f != 1:
            den_fracs.append(f)
        value /= rising_factorial(f, m)
    if sorted(num_fracs) != sorted(den_fracs):
        return None
    return value


@dataclass(frozen=True)
class DirichletMultinomial(WeightSpec):
    alpha: tuple
    total: int
    family = "dirichlet_multinomial"
    natural_basis = FALLING

    def __post_init__(self):
        object.__setattr__(self, "alpha", _tuple(self.alpha))
        if len(self.alpha) < 2 or any(a <= 0 for a in self.alpha):
            raise WeightError("DM needs d >= 2 positive parameters")
        if int(self.total) < 0:
            raise WeightError("total must be non-negative")
        object.__setattr__(self, "total", int(self.total))

    @property
    def nvars(self) -> int:
        return len(self.alpha) - 1

    def moment(self, index) -> Fraction:
        return _dm_factorial_moment(self.alpha, self.total, index)

    def pmf(self, point, mode: str = "auto") -> Fraction:
        return _dm_pmf(self.alpha, self.total, point)

    def support(self):
        yield from compositions(self.total, len(self.alpha))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "alpha": [fmt_exact(a) for a in self.alpha],
            "total": self.total,
        }


def _full_lattice_point(point, d: int, total: int) -> tuple[int, ...]:
    r = [int(v) for v in point]
    if len(r) == d - 1:
        r.append(total - sum(r))
    if len(r) != d or sum(r) != total:
        raise WeightError(f"point {tuple(point)} is not on the lattice simplex of total {total}")
    return tuple(r)


def _dm_pmf(alpha, total, point) -> Fraction:
    r = _full_lattice_point(point, len(alpha), total)
    if any(v < 0 for v in r):
        raise WeightError("point outside support")
    out = multinomial(r)
    for a, k in zip(alpha, r):
        out *= rising_factorial(a, k)
    den = rising_factorial(sum(alpha), total)
    if den == 0:
        raise WeightError("normalizing Pochhammer vanishes")
    return out / den


def _dm_factorial_moment(alpha, total, index) -> Fraction:
    l = _pad(index, len(alpha))
    out = falling_factorial(total, sum(l))
    for a, k in zip(alpha, l):
        out *= rising_factorial(a, k)
    if out == 0:
        return out
    return out / rising_factorial(sum(alpha), sum(l))


@dataclass(frozen=True)
class Hypergeometric(WeightSpec):
    """Multivariate hypergeometric ``H_eps`` on ``{r : |r| = total, r <= eps}``."""

    eps: tuple
    total: int
    family = "hypergeometric"
    natural_basis = FALLING

    def __post_init__(self):
        eps = tuple(int(e) for e in self.eps)
        if len(eps) < 2 or any(e <= 0 for e in eps):
            raise WeightError("Hypergeometric needs d >= 2 positive integers")
        if not 0 <= int(self.total) <= sum(eps):
            raise WeightError("total must lie in [0, |eps|]")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "total", int(self.total))

    @property
    def alpha(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-e) for e in self.eps)

    @property
    def nvars(self) -> int:
        return len(self.eps) - 1

    def moment(self, index) -> Fraction:
        # same Pochhammer formula as DM with alpha = -eps
        return _dm_factorial_moment(self.alpha, self.total, index)

    def pmf(self, point, mode: str = "auto") -> Fraction:
        r = _full_lattice_point(point, len(self.eps), self.total)
        if any(v < 0 for v in r):
            raise WeightError("point outside support")
        out = Fraction(1)
        for e, k in zip(self.eps, r):
            out *= binomial(e, k)
        return out / binomial(sum(self.eps), self.total)

    def support(self):
        for r in compositions(self.total, len(self.eps)):
            if all(k <= e for k, e in zip(r, self.eps)):
                yield r

    def to_json(self) -> dict:
        return {"family": self.family, "eps": list(self.eps), "total": self.total}


@dataclass(frozen=True)
class GammaProduct(WeightSpec):
    alpha: tuple
    scale: Fraction = Fraction(1)
    family = "gamma_product"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _tuple(self.alpha))
        object.__setattr__(self, "scale", to_exact(self.scale))
        if not self.alpha or any(a <= 0 for a in self.alpha) or self.scale <= 0:
            raise WeightError("Gamma product needs positive parameters")

    @property
    def nvars(self) -> int:
        return len(self.alpha)

    def moment(self, index) -> Fraction:
        n = _pad(index, len(self.alpha))
        out = self.scale ** sum(n)
        for a, k in zip(self.alpha, n):
            out *= rising_factorial(a, k)
        return out

    def pmf(self, point, mode: str = "auto"):
        y = [to_exact(v) for v in point]
        if len(y) != len(self.alpha) or any(v <= 0 for v in y):
            raise WeightError("point outside support")
        if mode == "exact":
            raise WeightError("Gamma densities are never rational")
        with mpmath.workdps(FLOAT_DIGITS):
            b = _mp(self.scale)
            val = mpmath.mpf(1)
            for yi, a in zip(y, self.alpha):
                val *= mpmath.power(_mp(yi), _mp(a) - 1) * mpmath.exp(-_mp(yi) / b)
                val /= mpmath.gamma(_mp(a)) * mpmath.power(b, _mp(a))
            return val

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "alpha": [fmt_exact(a) for a in self.alpha],
            "scale": fmt_exact(self.scale),
        }


@dataclass(frozen=True)
class NegBinProduct(WeightSpec):
    alpha: tuple
    p: Fraction
    family = "negative_binomial_product"
    natural_basis = FALLING

    def __post_init__(self):
        object.__setattr__(self, "alpha", _tuple(self.alpha))
        object.__setattr__(self, "p", to_exact(self.p))
        if not self.alpha or any(a <= 0 for a in self.alpha):
            raise WeightError("alpha must be positive")
        if not 0 < self.p < 1:
            raise WeightError("p must lie strictly inside (0, 1)")

    @property
    def nvars(self) -> int:
        return len(self.alpha)

    @property
    def odds(self) -> Fraction:
        return self.p / (1 - self.p)

    def moment(self, index) -> Fraction:
        l = _pad(index, len(self.alpha))
        out = self.odds ** sum(l)
        for a, k in zip(self.alpha, l):
            out *= rising_factorial(a, k)
        return out

    def pmf(self, point, mode: str = "auto"):
        k = [int(v) for v in point]
        if len(k) != len(self.alpha) or any(v < 0 for v in k):
            raise WeightError("point outside support")
        out = Fraction(1)
        for a, kk in zip(self.alpha, k):
            out *= rising_factorial(a, kk) / math.factorial(kk) * self.p**kk
        tail = exact_power(1 - self.p, sum(self.alpha))
        if tail is not None:
            return out * tail
        if mode == "exact":
            raise WeightError("(1-p)^|alpha| is irrational")
        with mpmath.workdps(FLOAT_DIGITS):
            return _mp(out) * mpmath.power(_mp(1 - self.p), _mp(sum(self.alpha)))

    def tail_bound(self, K: int) -> float:
        """Upper bound on the univariate mass beyond ``K`` (``d = 1``)."""
        (a,) = self.alpha
        ratio = float((a + K) / (K + 1) * self.p)
        if ratio >= 1:
            return math.inf
        return float(self.pmf((K,))) * ratio / (1 - ratio)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "alpha": [fmt_exact(a) for a in self.alpha],
            "p": fmt_exact(self.p),
        }


@dataclass(frozen=True)
class GEMTruncated(WeightSpec):
    """First ``depth - 1`` GEM(theta) frequencies; coordinate ``depth`` is the remainder."""

    theta: Fraction
    depth: int
    family = "gem_truncated"

    def __post_init__(self):
        object.__setattr__(self, "theta", to_exact(self.theta))
        if self.theta <= 0 or int(self.depth) < 2:
            raise WeightError("need theta > 0 and depth >= 2")
        object.__setattr__(self, "depth", int(self.depth))

    @property
    def nvars(self) -> int:
        return self.depth - 1

    @property
    def sticks(self) -> tuple[list, list]:
        S = self.depth - 1
        return [Fraction(1)] * S, [self.theta] * S

    def moment(self, index) -> Fraction:
        a, b = self.sticks
        return stick_moment(a, b, index)

    def sample(self, rng, size: int):
        import numpy as np

        B = rng.beta(1.0, float(self.theta), size=(size, self.depth - 1))
        rem = np.cumprod(1 - B, axis=1)
        prev = np.hstack([np.ones((size, 1)), rem[:, :-1]])
        return B * prev

    def to_json(self) -> dict:
        return {"family": self.family, "theta": fmt_exact(self.theta), "depth": self.depth}


@dataclass(frozen=True)
class SizeBiasedDirichlet(WeightSpec):
    """Size-biased permutation of the symmetric Dirichlet(theta/d, ..., theta/d)."""

    theta: Fraction
    d: int
    family = "size_biased_dirichlet"

    def __post_init__(self):
        object.__setattr__(self, "theta", to_exact(self.theta))
        if self.theta <= 0 or int(self.d) < 2:
            raise WeightError("need theta > 0 and d >= 2")
        object.__setattr__(self, "d", int(self.d))

    @property
    def nvars(self) -> int:
        return self.d - 1

    @property
    def sticks(self) -> tuple[list, list]:
        d, t = self.d, self.theta
        return [t / d + 1] * (d - 1), [Fraction(d - j, d) * t for j in range(1, d)]

    def moment(self, index) -> Fraction:
        a, b = self.sticks
        return stick_moment(a, b, index)

    def to_json(self) -> dict:
        return {"family": self.family, "theta": fmt_exact(self.theta), "d": self.d}


@dataclass(frozen=True)
class GEMGamma(WeightSpec):
    """``Y = G * X`` with ``G ~ Gamma(theta)`` independent of truncated GEM ``X``.

    Coordinates ``y_1 .. y_depth``; ``y_depth`` is the mass beyond the first
    ``depth - 1`` size-biased jumps, so ``|y| = G``.
    """

    theta: Fraction
    depth: int
    family = "gem_gamma"

    def __post_init__(self):
        object.__setattr__(self, "theta", to_exact(self.theta))
        if self.theta <= 0 or int(self.depth) < 2:
            raise WeightError("need theta > 0 and depth >= 2")
        object.__setattr__(self, "depth", int(self.depth))

    @property
    def nvars(self) -> int:
        return self.depth

    def moment(self, index) -> Fraction:
        k = _pad(index, self.depth)
        S = self.depth - 1
        return rising_factorial(self.theta, sum(k)) * stick_moment(
            [Fraction(1)] * S, [self.theta] * S, k
        )

    def to_json(self) -> dict:
        return {"family": self.family, "theta": fmt_exact(self.theta), "depth": self.depth}


_FAMILIES = {
    cls.family: cls
    for cls in (
        Dirichlet,
        DirichletMultinomial,
        Hypergeometric,
        GammaProduct,
        NegBinProduct,
        GEMTruncated,
        SizeBiasedDirichlet,
        GEMGamma,
    )
}


def weight_from_json(obj: dict) -> WeightSpec:
    obj = dict(obj)
    family = obj.pop("family")
    try:
        cls = _FAMILIES[family]
    except KeyError:
        raise WeightError(f"unknown weight family {family!r}") from None
    if "alpha" in obj:
        obj["alpha"] = tuple(to_exact(a) for a in obj["alpha"])
    for key in ("scale", "p", "theta"):
        if key in obj:
            obj[key] = to_exact(obj[key])
    return cls(**obj)


def pmf_or_density(w: WeightSpec, point, mode: str = "auto"):
    """Probability mass (discrete) or density (continuous) of ``w`` at ``point``."""
    return w.pmf(point, mode)


def moment(w: WeightSpec, index: Sequence[int], basis: str | None = None) -> Fraction:
    """Exact expectation of ``x^index`` (or ``x_[index]`` for discrete weights)."""
    if basis is not None and basis != w.natural_basis:
        raise WeightError(f"{w.family} moments are in the {w.natural_basis} basis, not {basis}")
    return w.moment(index)


# ------------------------------------------------------------ helper likelihoods

def multinomial_pmf(x: Sequence, n: Sequence[int]) -> Fraction:
    """``B_x(n) = C(|n|; n) x^n`` with ``x`` a full probability vector."""
    x = [to_exact(v) for v in x]
    if len(x) != len(n):
        raise WeightError("x and n must have equal length")
    out = multinomial(n)
    for xi, k in zip(x, n):
        out *= xi**k
    return out


def poisson_pmf(lam, k: int):
    """``lam^k e^{-lam} / k!`` to ``FLOAT_DIGITS`` digits (the exponential is irrational)."""
    lam = to_exact(lam)
    with mpmath.workdps(FLOAT_DIGITS):
        return _mp(lam**k / math.factorial(k)) * mpmath.exp(-_mp(lam))


# ------------------------------------------------------------------- partitions

@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise WeightError(f"malformed partition {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def label(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if largest is None:
        largest = n

    def rec(m, cap):
        if m == 0:
            yield ()
            return
        for first in range(min(m, cap), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    for parts in rec(n, largest):
        yield Partition(parts)


def _multiplicity_correction(part: Partition) -> Fraction:
    out = 1
    for b in part.multiplicities.values():
        out *= math.factorial(b)
    return Fraction(1, out)


def esf_pmf(theta, part: Partition) -> Fraction:
    """Ewens sampling formula for a partition of the sample size."""
    theta = to_exact(theta)
    if theta <= 0:
        raise WeightError("theta must be positive")
    m = theta**part.k / rising_factorial(theta, part.size)
    for r in part.parts:
        m *= math.factorial(r - 1)
    return multinomial(part.parts) * _multiplicity_correction(part) * m


def esf_symmetric_pmf(alpha_total, d: int, part: Partition) -> Fraction:
    """Ranked Dirichlet-Multinomial law for ``alpha = (|alpha|/d, ..., |alpha|/d)``.

    Implemented as printed, reading the Pochhammer base ``|theta|/d + 1`` as
    ``|alpha|/d + 1``.
    """
    a = to_exact(alpha_total)
    k = part.k
    m = a**k / rising_factorial(a, part.size)
    for r in part.parts:
        m *= rising_factorial(a / d + 1, r - 1)
    prefactor = falling_factorial(d, k) / Fraction(d) ** k
    return prefactor * multinomial(part.parts) * _multiplicity_correction(part) * m


def ranked_dm_bruteforce(alpha_total, d: int, part: Partition) -> Fraction:
    """Sum of symmetric ``DM_alpha`` over all arrangements ranking to ``part``."""
    a = to_exact(alpha_total) / d
    if part.k > d:
        return Fraction(0)
    vec = part.parts + (0,) * (d - part.k)
    alpha = (a,) * d
    return sum(
        (_dm_pmf(alpha, part.size, perm) for perm in set(itertools.permutations(vec))),
        Fraction(0),
    )
