"""Number-theoretic cross-checks for the rank 2 series on P^2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qseries import (
    LaurentSeries,
    assert_integer_coefficients,
    eta_inverse_power,
    series_inverse,
)


@dataclass(frozen=True)
class HurwitzValue:
    D: int
    value: Fraction


def hurwitz(D: int, *, slack: int = 0) -> HurwitzValue:
    """Hurwitz class number ``H(D)`` by enumerating reduced forms of discriminant ``-D``.

    ``slack`` widens the search range for ``a`` past ``sqrt(D/3)``; the result
    must not depend on it.
    """
    if D <= 0:
        raise ValueError("D must be positive")
    if D % 4 not in (0, 3):
        raise ValueError("no forms of this discriminant")
    total = Fraction(0)
    for a in range(1, math.isqrt(D // 3) + 1 + slack):
        for b in range(-a + 1, a + 1):
            num = b * b + D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
    return HurwitzValue(D, total)


def klyachko_series(order: int) -> LaurentSeries:
    inner = {}
    for m in range(1, order + 1):
        c = 3 * hurwitz(4 * m - 1).value
        if c.denominator != 1:
            raise ArithmeticError(f"3 H({4 * m - 1}) = {c} is not an integer")
        inner[m] = int(c)
    return assert_integer_coefficients(eta_inverse_power(6, order) * LaurentSeries(1, inner, order))


def inverse_square_geometric(step: int, order: int) -> dict[int, int]:
    """``1 / (1 - q^step)^2`` as ``{exponent: coefficient}``; the coefficient of ``q^(k step)`` is ``k + 1``."""
    return {k * step: k + 1 for k in range(order // step + 1)}


def yoshioka_series(order: int) -> LaurentSeries:
    """Theta-quotient form; intermediate coefficients are dyadic rationals."""
    theta = {0: 2}
    for m in range(1, math.isqrt(order) + 1):
        theta[m * m] = 4
    inv_theta = series_inverse(LaurentSeries(1, theta, order), order)
    acc: dict[int, int] = {}
    n = 0
    while (n + 1) ** 2 <= order:
        s = 2 * n + 1
        lead = (n + 1) ** 2
        for e in range(lead, order + 1, s):
            acc[e] = acc.get(e, 0) + (2 - 4 * n)
        for e, c in inverse_square_geometric(s, order).items():
            if lead + s + e <= order:
                acc[lead + s + e] = acc.get(lead + s + e, 0) + 8 * c
        n += 1
    out = eta_inverse_power(6, order) * inv_theta * LaurentSeries(1, acc, order)
    return assert_integer_coefficients(out)
