"""Exact multivariate orthogonal polynomials on the simplex and related weights."""

from .core import Poly, fmt_exact, to_exact
from .distributions import (
    Dirichlet,
    DirichletMultinomial,
    GammaProduct,
    GEMGamma,
    GEMTruncated,
    Hypergeometric,
    NegBinProduct,
    SizeBiasedDirichlet,
)
from .hahn import mv_hahn
from .jacobi import jacobi_univariate, mv_jacobi
from .laguerre import multiple_laguerre
from .meixner import mv_meixner
from .oracle import fourier_expand, gram_matrix, inner_product

__version__ = "0.1.0"

__all__ = [
    "Dirichlet",
    "DirichletMultinomial",
    "GEMGamma",
    "GEMTruncated",
    "GammaProduct",
    "Hypergeometric",
    "NegBinProduct",
    "Poly",
    "SizeBiasedDirichlet",
    "fmt_exact",
    "fourier_expand",
    "gram_matrix",
    "inner_product",
    "jacobi_univariate",
    "multiple_laguerre",
    "mv_hahn",
    "mv_jacobi",
    "mv_meixner",
    "to_exact",
]
