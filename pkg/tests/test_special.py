import math
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from simplexpoly.special import (
    SeriesSpec,
    binomial,
    falling_factorial,
    hyp_pFq_terminating,
    lauricella_FA_terminating,
    multinomial,
    pochhammer,
    rising_factorial,
    stirling2,
)


def test_factorials():
    assert rising_factorial(F(7, 3), 0) == 1
    assert rising_factorial(F(1, 2), 2) == F(3, 4)
    assert falling_factorial(3, 2) == 6
    assert pochhammer(F(3), -1) == F(1, 2)


def test_pfq_examples():
    b, c, z = F(2, 3), F(5, 2), F(1, 7)
    assert hyp_pFq_terminating(SeriesSpec((-1, b), (c,), z)) == 1 - b * z / c
    theta, r, alpha, N = F(3), 2, F(1, 2), 5
    assert hyp_pFq_terminating(SeriesSpec((-1, theta, -r), (alpha, -N), 1)) == 1 - theta * r / (alpha * N)
    assert hyp_pFq_terminating(SeriesSpec((0,), (F(3, 2),), F(9))) == 1


def test_pfq_chu_vandermonde():
    # 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    for n in range(6):
        b, c = F(2, 5), F(7, 3)
        val = hyp_pFq_terminating(SeriesSpec((-n, b), (c,), 1))
        assert val == rising_factorial(c - b, n) / rising_factorial(c, n)


def test_lauricella_examples():
    a = F(5, 2)
    assert lauricella_FA_terminating(a, [0, 0], [F(1), F(2)], [F(3), F(4)]) == 1
    k1, a1 = F(2, 3), F(3, 4)
    assert lauricella_FA_terminating(a, [-1, -1], [a1, a], [k1, 1]) == k1 / a1
    assert lauricella_FA_terminating(a, [-1], [a1], [0]) == 1


def test_lauricella_single_variable_is_2f1():
    a, c, z = F(3, 2), F(5, 3), F(2, 7)
    for n in range(5):
        assert lauricella_FA_terminating(a, [-n], [c], [z]) == hyp_pFq_terminating(SeriesSpec((a, -n), (c,), z))


def test_stirling_and_multinomial():
    assert stirling2(4, 4) == 1
    assert stirling2(2, 1) == 1
    assert stirling2(5, 2) == 15
    assert multinomial([1, 1]) == 2
    assert multinomial([2, 1, 1]) == 12
    assert binomial(5, 2) == 10


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=9), st.integers(0, 6), st.integers(0, 6))
def test_rising_factorial_splits(a, m, n):
    assert rising_factorial(a, m + n) == rising_factorial(a, m) * rising_factorial(a + m, n)
    assert falling_factorial(a, n) == (-1) ** n * rising_factorial(-a, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8))
def test_stirling_row_counts_set_partitions(n):
    bell = sum(stirling2(n, k) for k in range(n + 1))
    # Bell numbers via the binomial recurrence
    b = [1]
    for i in range(n):
        b.append(sum(math.comb(i, k) * b[k] for k in range(i + 1)))
    assert bell == b[n]
