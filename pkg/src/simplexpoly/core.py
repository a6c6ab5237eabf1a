"""Exact rationals, multi-indices and sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction`.  A polynomial carries a basis
tag: ``"monomial"`` keys are exponents of ``x^k``, ``"falling"`` keys are
exponents of the falling-factorial products ``x_[k] = x(x-1)...(x-k+1)``.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Exact = Fraction
MultiIndex = tuple
Number = Union[int, Fraction]

MONOMIAL = "monomial"
FALLING = "falling"
_BASES = (MONOMIAL, FALLING)


class PolyError(ValueError):
    """Raised on incompatible polynomial operations."""


def to_exact(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact rational.

    Floats are rejected so that no rounding can leak into exact results.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt_exact(q: Fraction) -> str:
    """Always ``"p/q"``, including integers (``"3/1"``)."""
    q = to_exact(q)
    return f"{q.numerator}/{q.denominator}"


def parse_exact_list(text: str) -> list[Fraction]:
    return [to_exact(part) for part in text.split(",") if part.strip()]


# ---------------------------------------------------------------- multi-indices

def check_index(n: Iterable[int]) -> tuple[int, ...]:
    n = tuple(int(v) for v in n)
    if any(v < 0 for v in n):
        raise ValueError(f"multi-index entries must be non-negative: {n}")
    return n


def tail_sums(values: Sequence) -> list:
    """``out[j] = values[j] + values[j+1] + ...`` with ``out[len] = 0``.

    With 1-based indexing, ``N_j = tail_sums(n)[j]`` and
    ``A_j = tail_sums(alpha)[j]``.
    """
    out = [0] * (len(values) + 1)
    for j in range(len(values) - 1, -1, -1):
        out[j] = out[j + 1] + values[j]
    return out


def compositions(total: int, dim: int) -> Iterator[tuple[int, ...]]:
    """All ``n`` in N^dim with ``|n| = total``, lexicographic order."""
    if dim == 0:
        if total == 0:
            yield ()
        return
    if dim == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, dim - 1):
            yield (first,) + rest


def indices_up_to(max_degree: int, dim: int) -> list[tuple[int, ...]]:
    """All multi-indices of length ``dim`` with ``|n| <= max_degree``, graded."""
    out = []
    for deg in range(max_degree + 1):
        out.extend(sorted(compositions(deg, dim)))
    return out


def lattice_box(upper: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(u + 1) for u in upper))


# ------------------------------------------------------------------ polynomials

def _falling(x, k: int):
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _stirling1_row(n: int) -> list[int]:
    # signed Stirling numbers of the first kind: x_[n] = sum_k s(n,k) x^k
    row = [1]
    for m in range(n):
        new = [0] * (len(row) + 1)
        for k, c in enumerate(row):
            new[k + 1] += c
            new[k] -= m * c
        row = new
    return row


def _stirling2_row(n: int) -> list[int]:
    row = [1]
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for k in range(1, m + 1):
            below = row[k] if k < len(row) else 0
            new[k] = k * below + row[k - 1]
        row = new
    return row


class Poly:
    """Immutable sparse polynomial in ``dim`` variables over the rationals."""

    __slots__ = ("dim", "basis", "_terms")

    def __init__(self, dim: int, terms: Mapping | Iterable = (), basis: str = MONOMIAL):
        if dim < 1:
            raise PolyError("dim must be >= 1")
        if basis not in _BASES:
            raise PolyError(f"unknown basis {basis!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for key, coeff in items:
            key = tuple(key)
            if len(key) != dim:
                raise PolyError(f"key {key} does not have dim {dim}")
            if any(k < 0 for k in key):
                raise PolyError(f"negative exponent in {key}")
            acc[key] = acc.get(key, Fraction(0)) + to_exact(coeff)
        self.dim = dim
        self.basis = basis
        self._terms = MappingProxyType({k: v for k, v in acc.items() if v != 0})

    # -- constructors
    @classmethod
    def const(cls, value, dim: int = 1, basis: str = MONOMIAL) -> "Poly":
        return cls(dim, {(0,) * dim: value}, basis)

    @classmethod
    def var(cls, i: int, dim: int) -> "Poly":
        if not 0 <= i < dim:
            raise PolyError(f"variable {i} out of range for dim {dim}")
        key = [0] * dim
        key[i] = 1
        return cls(dim, {tuple(key): 1})

    @classmethod
    def univariate(cls, coeffs: Sequence, basis: str = MONOMIAL) -> "Poly":
        """From ascending coefficients ``c0 + c1 t + ...``."""
        return cls(1, {(k,): to_exact(c) for k, c in enumerate(coeffs)}, basis)

    @classmethod
    def zero(cls, dim: int, basis: str = MONOMIAL) -> "Poly":
        return cls(dim, {}, basis)

    # -- inspection
    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self._terms), default=-1)

    def coeff(self, key: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(k) == degree for k in self._terms)

    def univariate_coeffs(self) -> list[Fraction]:
        if self.dim != 1:
            raise PolyError("not univariate")
        out = [Fraction(0)] * (self.degree + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return f"Poly(dim={self.dim}, 0)"
        parts = []
        for key in sorted(self._terms, reverse=True):
            c = self._terms[key]
            names = []
            for i, k in enumerate(key):
                if k:
                    base = f"x{i + 1}" if self.dim > 1 else "x"
                    if self.basis == FALLING:
                        names.append(f"{base}_[{k}]")
                    else:
                        names.append(base if k == 1 else f"{base}^{k}")
            parts.append(f"{c}" + ("*" + "*".join(names) if names else ""))
        return f"Poly({' + '.join(parts)})"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.dim, self.basis)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if self.basis != other.basis:
            return self.to_basis(MONOMIAL)._terms == other.to_basis(MONOMIAL)._terms
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        p = self.to_basis(MONOMIAL)
        return hash((p.dim, frozenset(p._terms.items())))

    # -- arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise PolyError(f"dimension mismatch: {self.dim} vs {other.dim}")
            if other.basis != self.basis:
                raise PolyError(f"basis mismatch: {self.basis} vs {other.basis}")
            return other
        return Poly.const(to_exact(other), self.dim, self.basis)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return Poly(self.dim, acc, self.basis)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.dim, {k: -c for k, c in self._terms.items()}, self.basis)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = to_exact(c)
        return Poly(self.dim, {k: v * c for k, v in self._terms.items()}, self.basis)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if self.basis != MONOMIAL:
            raise PolyError("multiplication requires the monomial basis")
        acc: dict[tuple[int, ...], Fraction] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return Poly(self.dim, acc, self.basis)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __truediv__(self, c) -> "Poly":
        return self.scale(1 / to_exact(c))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise PolyError("negative power")
        out = Poly.const(1, self.dim)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- evaluation and calculus
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point: Sequence, mode: str = "exact"):
        """Evaluate at ``point``.

        ``mode="exact"`` requires rational coordinates and returns a Fraction.
        ``mode="float"`` converts coefficients and coordinates to IEEE doubles.
        """
        if len(point) != self.dim:
            raise PolyError(f"point has length {len(point)}, expected {self.dim}")
        if mode == "exact":
            xs = [to_exact(v) for v in point]
            zero = Fraction(0)
        elif mode == "float":
            xs = [float(v) for v in point]
            zero = 0.0
        else:
            raise ValueError(f"unknown mode {mode!r}")
        power = (lambda x, k: x**k) if self.basis == MONOMIAL else _falling
        total = zero
        for key, c in self._terms.items():
            term = c if mode == "exact" else float(c)
            for x, k in zip(xs, key):
                if k:
                    term *= power(x, k)
            total += term
        return total

    def derivative(self, var: int, order: int = 1) -> "Poly":
        if self.basis != MONOMIAL:
            raise PolyError("derivative requires the monomial basis")
        if not 0 <= var < self.dim:
            raise PolyError(f"variable {var} out of range")
        acc = {}
        for key, c in self._terms.items():
            k = key[var]
            if k < order:
                continue
            new = list(key)
            new[var] = k - order
            acc[tuple(new)] = c * _falling(k, order)
        return Poly(self.dim, acc)

    # -- bases
    def to_basis(self, target: str) -> "Poly":
        if target not in _BASES:
            raise PolyError(f"unknown basis {target!r}")
        if target == self.basis:
            return self
        row = _stirling2_row if target == FALLING else _stirling1_row
        cache: dict[int, list[int]] = {}
        acc: dict[tuple[int, ...], Fraction] = {}
        for key, c in self._terms.items():
            per_var = []
            for k in key:
                if k not in cache:
                    cache[k] = row(k)
                per_var.append([(j, s) for j, s in enumerate(cache[k]) if s])
            for combo in itertools.product(*per_var):
                new = tuple(j for j, _ in combo)
                w = c
                for _, s in combo:
                    w *= s
                acc[new] = acc.get(new, Fraction(0)) + w
        return Poly(self.dim, acc, target)

    # -- substitution
    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable ``i`` by the monomial-basis polynomial ``images[i]``."""
        if len(images) != self.dim:
            raise PolyError("need one image per variable")
        p = self.to_basis(MONOMIAL)
        out_dim = images[0].dim
        cache: dict[tuple[int, int], Poly] = {}

        def pw(i: int, k: int) -> Poly:
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        out = Poly.zero(out_dim)
        for key, c in p._terms.items():
            term = Poly.const(c, out_dim)
            for i, k in enumerate(key):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def linear_map(self, image: Callable[[tuple[int, ...]], "Poly"], out_dim: int) -> "Poly":
        """Apply the linear map sending each basis element ``key`` to ``image(key)``."""
        out = Poly.zero(out_dim)
        for key, c in self._terms.items():
            out = out + image(key).scale(c)
        return out

    def embed(self, dim: int) -> "Poly":
        """View as a polynomial in ``dim >= self.dim`` variables (new ones unused)."""
        pad = (0,) * (dim - self.dim)
        return Poly(dim, {k + pad: c for k, c in self._terms.items()}, self.basis)

    # -- serialization
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": self.basis,
            "terms": [
                {"index": list(k), "coeff": fmt_exact(self._terms[k])}
                for k in sorted(self._terms)
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            int(obj["dim"]),
            {tuple(t["index"]): to_exact(t["coeff"]) for t in obj["terms"]},
            obj.get("basis", MONOMIAL),
        )


def arithmetic(a: Poly, b: Poly, mode: str, scalar=None) -> Poly:
    """``a + b``, ``a - b`` or ``a * b``; ``scalar`` (if given) multiplies ``b`` first."""
    if a.dim != b.dim:
        raise PolyError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if scalar is not None:
        b = b.scale(scalar)
    if mode == "add":
        return a + b
    if mode == "sub":
        return a - b
    if mode == "mul":
        if a.basis != MONOMIAL or b.basis != MONOMIAL:
            raise PolyError("multiplication in the falling-factorial basis is not supported")
        return a * b
    raise ValueError(f"unknown mode {mode!r}")


def compose_ratio_clear(q: Poly, M: int, u: Poly, v: Poly) -> Poly:
    """``v^M * q(u / v)`` expanded as a polynomial.

    ``q`` is univariate with ``deg q <= M``; ``u`` and ``v`` are affine.
    """
    if q.dim != 1:
        raise PolyError("q must be univariate")
    if M < q.degree:
        raise PolyError(f"M={M} is smaller than deg(q)={q.degree}")
    if u.degree > 1 or v.degree > 1:
        raise PolyError("u and v must have degree <= 1")
    if u.dim != v.dim:
        raise PolyError("u and v must share a dimension")
    coeffs = q.to_basis(MONOMIAL).univariate_coeffs()
    out = Poly.zero(u.dim)
    u_pow = Poly.const(1, u.dim)
    for k in range(M + 1):
        c = coeffs[k] if k < len(coeffs) else 0
        if c:
            out = out + (u_pow * v ** (M - k)).scale(c)
        u_pow = u_pow * u
    return out


def total_poly(dim: int) -> Poly:
    """``x_1 + ... + x_dim``."""
    return Poly(dim, {tuple(1 if i == j else 0 for i in range(dim)): 1 for j in range(dim)})


def homogenize(p: Poly, degree: int, dim: int) -> Poly:
    """``|y|^degree * p(y_1/|y|, ..., y_{dim-1}/|y|)`` in ``dim`` variables.

    ``p`` has ``dim - 1`` variables and total degree at most ``degree``.
    """
    if p.dim != dim - 1:
        raise PolyError("p must have dim - 1 variables")
    if p.degree > degree:
        raise PolyError("degree too small to clear denominators")
    s = total_poly(dim)
    out = Poly.zero(dim)
    for key, c in p.to_basis(MONOMIAL).terms.items():
        mono = Poly(dim, {key + (0,): c})
        out = out + mono * s ** (degree - sum(key))
    return out


def eliminate_last(p: Poly, total=1) -> Poly:
    """Substitute ``x_d = total - (x_1 + ... + x_{d-1})`` and drop ``x_d``."""
    d = p.dim
    if d < 2:
        raise PolyError("need at least two variables")
    images = [Poly.var(i, d - 1) for i in range(d - 1)]
    images.append(Poly.const(total, d - 1) - total_poly(d - 1))
    return p.substitute(images)
