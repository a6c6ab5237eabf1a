"""Registry of polynomial families used by the command-line front end.

Each family knows how to validate its parameters, build a polynomial for
an index, enumerate indices up to a total degree, pick its weight and
supply closed-form constants (``derived`` or ``printed``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import indices_up_to
from .distributions import (
    Dirichlet,
    DirichletMultinomial,
    GammaProduct,
    GEMGamma,
    GEMTruncated,
    Hypergeometric,
    NegBinProduct,
    WeightSpec,
)
from .hahn import mv_hahn, mv_hahn_constant
from .jacobi import gem_jacobi, gem_jacobi_norm, mv_jacobi, mv_jacobi_constant, mv_jacobi_norm
from .laguerre import (
    gem_laguerre,
    gem_laguerre_norm,
    multiple_laguerre,
    multiple_laguerre_constant,
    star_norm,
)
from .meixner import mv_meixner, meixner_system_norm


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    alpha: tuple = ()
    eps: tuple = ()
    total: int | None = None
    p: Fraction | None = None
    theta: Fraction | None = None
    depth: int | None = None


@dataclass(frozen=True)
class Family:
    name: str
    requires: tuple
    index_length: Callable[[Params], int]
    build: Callable[[Params, tuple], object]
    weight: Callable[[Params], WeightSpec]
    derived: Callable[[Params, tuple], Fraction] | None = None
    printed: Callable[[Params, tuple], Fraction] | None = None
    index_cap: Callable[[Params], int] | None = None

    def validate(self, params: Params) -> None:
        for field in self.requires:
            value = getattr(params, field)
            if value in (None, ()):
                raise FamilyError(f"family {self.name} needs --{field}")
        if self.index_length(params) < 1:
            raise FamilyError(f"family {self.name}: parameters leave no free variables")

    def indices(self, params: Params, max_degree: int) -> list[tuple]:
        if self.index_cap is not None:
            max_degree = min(max_degree, self.index_cap(params))
        return indices_up_to(max_degree, self.index_length(params))

    def constant(self, params: Params, which: str):
        if which == "none":
            return None
        fn = self.derived if which == "derived" else self.printed
        if fn is None:
            return None
        return lambda n: fn(params, n)


def _gem_laguerre_indices(params: Params) -> int:
    return params.depth


def _gem_laguerre_build(params: Params, k: tuple):
    return gem_laguerre(params.theta, params.depth, k[0], k[1:])


def _gem_laguerre_norm(params: Params, k: tuple):
    return gem_laguerre_norm(params.theta, params.depth, k[0], k[1:])


FAMILIES: dict[str, Family] = {
    "jacobi": Family(
        "jacobi",
        ("alpha",),
        lambda P: len(P.alpha) - 1,
        lambda P, n: mv_jacobi(P.alpha, n),
        lambda P: Dirichlet(P.alpha),
        lambda P, n: mv_jacobi_norm(P.alpha, n),
        lambda P, n: mv_jacobi_constant(P.alpha, n),
    ),
    "hahn": Family(
        "hahn",
        ("alpha", "total"),
        lambda P: len(P.alpha) - 1,
        lambda P, n: mv_hahn(P.alpha, n, P.total),
        lambda P: DirichletMultinomial(P.alpha, P.total),
        lambda P, n: mv_hahn_constant(P.alpha, n, P.total, "exact"),
        lambda P, n: mv_hahn_constant(P.alpha, n, P.total, "printed"),
        lambda P: P.total,
    ),
    "hahn-hypergeometric": Family(
        "hahn-hypergeometric",
        ("eps", "total"),
        lambda P: len(P.eps) - 1,
        lambda P, n: mv_hahn(tuple(-e for e in P.eps), n, P.total, "product_cleared"),
        lambda P: Hypergeometric(P.eps, P.total),
        index_cap=lambda P: P.total,
    ),
    "laguerre": Family(
        "laguerre",
        ("alpha",),
        lambda P: len(P.alpha),
        lambda P, n: multiple_laguerre(P.alpha, n, "product"),
        lambda P: GammaProduct(P.alpha),
        lambda P, n: multiple_laguerre_constant(P.alpha, n, "product"),
        lambda P, n: multiple_laguerre_constant(P.alpha, n, "product"),
    ),
    "laguerre-star": Family(
        "laguerre-star",
        ("alpha",),
        lambda P: len(P.alpha),
        lambda P, n: multiple_laguerre(P.alpha, n, "star"),
        lambda P: GammaProduct(P.alpha),
        lambda P, n: star_norm(P.alpha, n),
        lambda P, n: multiple_laguerre_constant(P.alpha, n, "star"),
    ),
    "meixner": Family(
        "meixner",
        ("alpha", "p"),
        lambda P: len(P.alpha),
        lambda P, n: mv_meixner(P.alpha, P.p, n, "product"),
        lambda P: NegBinProduct(P.alpha, P.p),
        lambda P, n: meixner_system_norm(P.alpha, P.p, n, "product"),
    ),
    "meixner-star": Family(
        "meixner-star",
        ("alpha", "p"),
        lambda P: len(P.alpha),
        lambda P, n: mv_meixner(P.alpha, P.p, n, "star"),
        lambda P: NegBinProduct(P.alpha, P.p),
        lambda P, n: meixner_system_norm(P.alpha, P.p, n, "star"),
    ),
    "gem-jacobi": Family(
        "gem-jacobi",
        ("theta", "depth"),
        lambda P: P.depth - 1,
        lambda P, n: gem_jacobi(P.theta, P.depth, n),
        lambda P: GEMTruncated(P.theta, P.depth),
        lambda P, n: gem_jacobi_norm(P.theta, P.depth, n),
    ),
    "gem-laguerre": Family(
        "gem-laguerre",
        ("theta", "depth"),
        _gem_laguerre_indices,
        _gem_laguerre_build,
        lambda P: GEMGamma(P.theta, P.depth),
        _gem_laguerre_norm,
    ),
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise FamilyError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}") from None

