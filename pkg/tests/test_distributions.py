from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplexpoly.core import compositions, lattice_box
from simplexpoly.distributions import (
    Dirichlet,
    DirichletMultinomial,
    GammaProduct,
    GEMGamma,
    GEMTruncated,
    Hypergeometric,
    NegBinProduct,
    Partition,
    SizeBiasedDirichlet,
    WeightError,
    esf_pmf,
    esf_symmetric_pmf,
    moment,
    multinomial_pmf,
    partitions_of,
    pmf_or_density,
    poisson_pmf,
    ranked_dm_bruteforce,
    weight_from_json,
)


def test_pmf_examples():
    assert pmf_or_density(DirichletMultinomial((1, 1), 2), (1, 1)) == F(1, 3)
    assert pmf_or_density(NegBinProduct((1,), F(1, 2)), (0,)) == F(1, 2)
    assert pmf_or_density(Hypergeometric((1, 1), 1), (1, 0)) == F(1, 2)


def test_moment_examples():
    assert moment(Dirichlet((1, 1, 1)), (1, 1, 0), "monomial") == F(1, 12)
    assert moment(NegBinProduct((1,), F(1, 2)), (1,), "falling") == 1
    for w in (Dirichlet((F(1, 2), 2)), GammaProduct((1, 3)), GEMTruncated(2, 3), DirichletMultinomial((1, 2), 4)):
        assert moment(w, (0,) * w.nvars) == 1


def test_moment_basis_mismatch_is_rejected():
    with pytest.raises(WeightError):
        moment(DirichletMultinomial((1, 1), 2), (1, 0), "monomial")


def test_negative_binomial_second_factorial_moment():
    # E[K(K-1)] = alpha (alpha+1) (p/(1-p))^2 = 2 at alpha = 1, p = 1/2
    assert moment(NegBinProduct((1,), F(1, 2)), (2,)) == 2


def test_esf_examples():
    assert esf_pmf(1, Partition((2,))) == F(1, 2)
    assert esf_pmf(1, Partition((1, 1))) == F(1, 2)
    assert esf_pmf(F(7, 3), Partition((1,))) == 1
    assert [p.label() for p in partitions_of(3)] == ["[3]", "[2,1]", "[1,1,1]"]


@pytest.mark.parametrize(
    "w",
    [
        DirichletMultinomial((F(1, 2), 2, F(3, 4)), 4),
        DirichletMultinomial((1, 1), 5),
        Hypergeometric((2, 3, 1), 4),
        Hypergeometric((3, 3), 6),
    ],
    ids=lambda w: w.family,
)
def test_finite_pmfs_sum_to_one(w):
    assert sum(w.pmf(p) for p in w.support()) == 1


@pytest.mark.parametrize(
    "w",
    [DirichletMultinomial((F(1, 2), 2, F(3, 4)), 4), Hypergeometric((2, 3, 1), 4)],
    ids=lambda w: w.family,
)
def test_factorial_moments_match_support_sums(w):
    from simplexpoly.core import Poly

    for k in lattice_box((2,) * w.nvars):
        direct = sum(w.pmf(r) * Poly(w.nvars, {k: 1}, "falling").evaluate(w.free_coords(r)) for r in w.support())
        assert w.moment(k) == direct


def test_multinomial_pmf_sums_to_one():
    x = (F(1, 6), F(1, 3), F(1, 2))
    assert sum(multinomial_pmf(x, n) for n in compositions(4, 3)) == 1


def test_negative_binomial_mass_and_tail():
    w = NegBinProduct((F(3, 2),), F(1, 3))
    partial = sum(w.pmf((k,), mode="auto") for k in range(60))
    assert abs(float(partial) - 1) <= w.tail_bound(59) + 1e-30


def test_poisson_pmf_mass():
    import mpmath

    with mpmath.workdps(50):
        assert abs(mpmath.fsum(poisson_pmf(F(5, 2), k) for k in range(120)) - 1) < 1e-40


def test_dirichlet_density_exact_and_fallback():
    assert Dirichlet((1, 1, 1)).pmf((F(1, 4), F(1, 4))) == 2
    assert Dirichlet((2, 1)).pmf((F(1, 3),)) == F(2, 3)
    with pytest.raises(WeightError):
        Dirichlet((F(1, 2), F(1, 2))).pmf((F(1, 3),), mode="exact")
    val = Dirichlet((F(1, 2), F(1, 2))).pmf((F(1, 2),))
    assert abs(float(val) - 2 / np.pi) < 1e-12


def test_size_biased_dirichlet_sticks():
    w = SizeBiasedDirichlet(2, 3)
    a, b = w.sticks
    assert a == [F(5, 3), F(5, 3)] and b == [F(4, 3), F(2, 3)]


def test_gem_gamma_total_mass_is_gamma():
    w = GEMGamma(F(3, 2), 3)
    # E[|Y|^2] = theta (theta + 1)
    second = sum(w.moment(k) * (2 if max(k) == 1 else 1) for k in compositions(2, 3))
    assert second == F(3, 2) * F(5, 2)


def test_json_round_trip():
    for w in (Dirichlet((1, F(2, 3))), NegBinProduct((1, 2), F(1, 4)), GEMTruncated(F(1, 2), 4), Hypergeometric((1, 2), 2)):
        assert weight_from_json(w.to_json()) == w


@pytest.mark.parametrize("theta", [F(1, 2), 1, 3])
def test_esf_mass(theta):
    for n in range(7):
        assert sum(esf_pmf(theta, p) for p in partitions_of(n)) == 1


def test_symmetric_esf_matches_bruteforce():
    for d in range(1, 5):
        for a in (F(1, 2), 2, F(7, 3)):
            for n in range(5):
                for part in partitions_of(n):
                    assert esf_symmetric_pmf(a, d, part) == ranked_dm_bruteforce(a, d, part)


def test_monte_carlo_gem_moments():
    rng = np.random.default_rng(20240611)
    w = GEMTruncated(2, 4)
    xs = w.sample(rng, 200_000)
    for k in [(1, 0, 0), (0, 1, 0), (2, 0, 0), (1, 1, 1)]:
        est = np.mean(np.prod(xs ** np.array(k), axis=1))
        assert abs(est - float(w.moment(k))) < 5e-3


def test_monte_carlo_dirichlet_moments():
    rng = np.random.default_rng(7)
    w = Dirichlet((F(1, 2), 2, 1))
    xs = w.sample(rng, 200_000)
    for k in [(1, 0, 0), (1, 1, 0), (0, 2, 1)]:
        est = np.mean(np.prod(xs ** np.array(k), axis=1))
        assert abs(est - float(w.moment(k))) < 5e-3


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5), min_size=2, max_size=3),
    st.integers(0, 4),
)
def test_dm_is_dirichlet_mixture_of_multinomials(alpha, total):
    # E[r_[k]] = |r|_[|k|] E_Dirichlet[x^k]
    from simplexpoly.special import falling_factorial

    dm, dr = DirichletMultinomial(tuple(alpha), total), Dirichlet(tuple(alpha))
    for k in lattice_box((2,) * (len(alpha) - 1)):
        assert dm.moment(k) == falling_factorial(total, sum(k)) * dr.moment(k)
