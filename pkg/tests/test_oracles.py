from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricsheaves.closedforms import p2_rank2
from toricsheaves.oracles import (
    hurwitz,
    inverse_square_geometric,
    klyachko_series,
    yoshioka_series,
)


@pytest.mark.parametrize("D,value", [
    (3, Fraction(1, 3)), (4, Fraction(1, 2)), (7, 1), (8, 1), (11, 1),
    (12, Fraction(4, 3)), (15, 2), (16, Fraction(3, 2)), (23, 3),
])
def test_hurwitz_values(D, value):
    assert hurwitz(D).value == value


@pytest.mark.parametrize("D", [0, -3, 1, 2, 5, 6])
def test_hurwitz_rejects(D):
    with pytest.raises(ValueError):
        hurwitz(D)


def test_class_number_series_low_order():
    assert klyachko_series(4).integer_coefficients() == [0, 1, 9, 48, 203]
    assert klyachko_series(0).is_zero()


def test_inverse_square_geometric():
    assert inverse_square_geometric(3, 10) == {0: 1, 3: 2, 6: 3, 9: 4}


def test_triangle():
    n = 20
    ref = p2_rank2(1, n)
    assert klyachko_series(n) == ref
    assert yoshioka_series(n) == ref


@given(st.integers(1, 400).filter(lambda D: D % 4 in (0, 3)), st.integers(1, 5))
def test_hurwitz_search_bound_is_enough(D, slack):
    assert hurwitz(D, slack=slack) == hurwitz(D)


@given(st.integers(1, 100))
def test_class_number_relation(n):
    # sum over t^2 <= 4n of H(4n - t^2) = 2 sigma(n) - sum_{d | n} min(d, n/d)
    total = sum(hurwitz(4 * n - t * t).value for t in range(-2 * int(n ** 0.5) - 1, 2 * int(n ** 0.5) + 2)
                if 4 * n - t * t > 0)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    sigma = sum(divisors)
    lam = sum(min(d, n // d) for d in divisors)
    if int(n ** 0.5) ** 2 == n:
        # H(0) = -1/12 carries the t = +-2 sqrt(n) terms
        total += 2 * Fraction(-1, 12)
    assert total == 2 * sigma - lam
