"""Exact inner products, Gram matrices and Fourier expansions.

Every expectation is reduced to the closed-form moments of
:mod:`simplexpoly.distributions`; discrete weights additionally support a
direct sum over their finite support as an independent second path.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .core import MONOMIAL, Poly, fmt_exact
from .distributions import WeightSpec


class OracleError(ValueError):
    pass


def expectation(p: Poly, w: WeightSpec) -> Fraction:
    if p.dim != w.nvars:
        raise OracleError(f"polynomial has {p.dim} variables, {w.family} expects {w.nvars}")
    q = p.to_basis(w.natural_basis)
    return sum((c * w.moment(k) for k, c in q.terms.items()), Fraction(0))


def inner_product(a: Poly, b: Poly, w: WeightSpec, method: str = "moments") -> Fraction:
    """``E_w[a b]`` exactly.

    ``method="moments"`` uses closed-form moments; ``method="support"`` sums
    over the finite support of a discrete weight.
    """
    if a.dim != b.dim:
        raise OracleError(f"dimension mismatch: {a.dim} vs {b.dim}")
    prod = a.to_basis(MONOMIAL) * b.to_basis(MONOMIAL)
    if method == "moments":
        return expectation(prod, w)
    if method == "support":
        total = Fraction(0)
        for point in w.support():
            total += w.pmf(point) * prod.evaluate(w.free_coords(point))
        return total
    raise OracleError(f"unknown method {method!r}")


@dataclass
class Discrepancy:
    index: tuple
    oracle: Fraction
    printed: Fraction

    def to_json(self) -> dict:
        return {"index": list(self.index), "oracle": fmt_exact(self.oracle), "printed": fmt_exact(self.printed)}


@dataclass
class GramReport:
    weight: WeightSpec
    indices: list
    matrix: list
    printed: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    @property
    def diagonal(self) -> list[Fraction]:
        return [self.matrix[i][i] for i in range(len(self.indices))]

    def off_diagonal_nonzero(self) -> list[tuple]:
        out = []
        for i, n in enumerate(self.indices):
            for j in range(i + 1, len(self.indices)):
                if self.matrix[i][j] != 0:
                    out.append((n, self.indices[j], self.matrix[i][j]))
        return out

    def is_diagonal(self) -> bool:
        return not self.off_diagonal_nonzero()

    def to_json(self) -> dict:
        return {
            "weight": self.weight.to_json(),
            "indices": [list(n) for n in self.indices],
            "matrix": [[fmt_exact(v) for v in row] for row in self.matrix],
            "diagonal": [fmt_exact(v) for v in self.diagonal],
            "printed_constants": [
                fmt_exact(self.printed[n]) if n in self.printed else None for n in self.indices
            ],
            "off_diagonal_nonzero": [
                {"n": list(a), "m": list(b), "value": fmt_exact(v)}
                for a, b, v in self.off_diagonal_nonzero()
            ],
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }

    def to_csv(self) -> str:
        labels = ["(" + " ".join(map(str, n)) + ")" for n in self.indices]
        lines = ["index," + ",".join(labels)]
        for lab, row in zip(labels, self.matrix):
            lines.append(lab + "," + ",".join(fmt_exact(v) for v in row))
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def gram_matrix(
    build: Callable[[tuple], Poly],
    indices: Sequence[tuple],
    w: WeightSpec,
    constant: Callable[[tuple], Fraction] | None = None,
    threads: int = 1,
) -> GramReport:
    """Exact Gram matrix of ``build(n)`` over ``indices`` under ``w``.

    When ``constant`` is given its values are compared with the diagonal and
    every mismatch becomes a :class:`Discrepancy`.
    """
    indices = [tuple(n) for n in indices]
    polys = [build(n).to_basis(MONOMIAL) for n in indices]
    size = len(indices)
    pairs = [(i, j) for i in range(size) for j in range(i, size)]

    def entry(ij):
        i, j = ij
        return inner_product(polys[i], polys[j], w)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(entry, pairs))
    else:
        values = [entry(ij) for ij in pairs]
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), v in zip(pairs, values):
        matrix[i][j] = matrix[j][i] = v
    report = GramReport(w, indices, matrix)
    if constant is not None:
        for i, n in enumerate(indices):
            printed = constant(n)
            report.printed[n] = printed
            if printed != matrix[i][i]:
                report.discrepancies.append(Discrepancy(n, matrix[i][i], printed))
    return report


@dataclass
class Expansion:
    coefficients: dict
    norms: dict
    residual: Poly

    def to_json(self) -> dict:
        return {
            "coefficients": {
                ",".join(map(str, n)): fmt_exact(a) for n, a in sorted(self.coefficients.items())
            },
            "norms": {",".join(map(str, n)): fmt_exact(v) for n, v in sorted(self.norms.items())},
            "residual_zero": self.residual.is_zero(),
        }


def fourier_expand(
    f: Poly, build: Callable[[tuple], Poly], indices: Sequence[tuple], w: WeightSpec
) -> Expansion:
    """``a_n = E[f G_n]`` and the residual ``f - sum_n a_n G_n / E[G_n^2]``.

    ``indices`` must span every degree up to that of ``f``.
    """
    max_deg = max((sum(n) for n in indices), default=-1)
    if f.degree > max_deg:
        raise OracleError(f"f has degree {f.degree} > {max_deg}")
    f = f.to_basis(MONOMIAL)
    coeffs, norms = {}, {}
    recon = Poly.zero(f.dim)
    for n in indices:
        n = tuple(n)
        G = build(n).to_basis(MONOMIAL)
        a = inner_product(f, G, w)
        c = inner_product(G, G, w)
        coeffs[n], norms[n] = a, c
        if a:
            recon = recon + G.scale(a / c)
    return Expansion(coeffs, norms, f - recon)
