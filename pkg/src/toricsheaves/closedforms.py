"""Closed-form evaluators for specialised generating functions.

Each evaluator transcribes one printed lattice-sum formula. Every constraint
is checked literally inside the loop, including the strict ones; the loop
ranges only need to be supersets of the region where the exponent stays at or
below the requested order. Rational inequalities in ``lambda = alpha/beta`` are
compared after multiplying through by the positive denominator, which keeps
the arithmetic in exact integers.

Transcription table (``C = f3 f4 / 2 + a f4^2 / 4``, all ``<`` strict):

* ``fa_rank2`` six sums, exponents ``C + j(i - a j / 2)/2`` unless stated:
  A (sign -1) ``2|f3+i, 2|f4+j, 2|i+k, 2|j+l, lambda j = i, -j<l<j,
  -lambda j + a(j+l) < k < lambda j``.
  B1, B2 (weight 2 each) ``2|f3+i, 2|f4+j, 2|i+k, 2|j+l, k < lambda l < i, l<j``
  plus ``-i - a(j-l) < k, -lambda j < k`` (B1) or
  ``-i + a(j+l) < k, -lambda j + a(j+l) < k`` (B2);
  exponent ``C + (ij - jk + il + kl)/4 - a l^2 / 4``.
  C1 (weight 2) ``2|f3+i, 2|f4+j, 2|j+k, i < lambda j, a(j+k)/2 < i,
  -(i - a j)/(lambda - a) < k < i / lambda``.
  C2 ``2|f3+i, 2|f4+j, 2|i+k, lambda j < i, -lambda j < k < lambda j``.
  C3 ``2|f3+i, 2|f4+j, 2|i+k, lambda j < i, j > 0, -lambda j + 2 a j < k < lambda j``.
* ``fa_rank2_eleven`` terms T1..T11 in the widths ``d1..d4``; see
  :func:`_eleven_four_evaluator` and :func:`_eleven_three_evaluators`.
* ``p2_rank3`` sums S1..S6 in ``d1..d3, g1..g3``; see :func:`_rank3_terms`.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .qseries import LaurentSeries, assert_integer_exponents, eta_inverse_power
from .rank2 import AmpleError, shell_sum, with_eta_prefactor
from .toric import Fan


def rank1_series(fan: Fan, order: int) -> LaurentSeries:
    return eta_inverse_power(fan.n, order)


# ---------------------------------------------------------------------------
# P^2, rank 2


def p2_rank2(f: int, order: int) -> LaurentSeries:
    """Rank 2 on P^2 via the double sums with geometric denominators."""
    if f not in (0, 1):
        raise ValueError("f must be 0 or 1")
    acc: dict[int, int] = {}
    m = 1
    while (2 * m + 1 if f == 0 else m) <= order:
        n = 1
        while True:
            if f == 0:
                start, step = m * n + m + n, m + n
            else:
                start, step = m * n, m + n - 1
            if start > order:
                break
            for e in range(start, order + 1, step):
                acc[e] = acc.get(e, 0) + 1
            n += 1
        m += 1
    inner = LaurentSeries(1, acc, order)
    return eta_inverse_power(6, order) * inner


def p2_rank2_triple(f: int, order: int) -> LaurentSeries:
    """The same series from the triple sums before the geometric resummation."""
    if f not in (0, 1):
        raise ValueError("f must be 0 or 1")
    acc: dict[int, int] = {}
    k = 1
    # smallest exponent for a given k is 2k+1 (f=0) or k (f=1)
    while (2 * k + 1 if f == 0 else k) <= order:
        lo = k + 1 if f == 0 else k
        shift = k * k if f == 0 else k * (k - 1)
        m = lo
        while m * lo - shift <= order:
            n = lo
            while m * n - shift <= order:
                e = m * n - shift
                acc[e] = acc.get(e, 0) + 1
                n += 1
            m += 1
        k += 1
    return eta_inverse_power(6, order) * LaurentSeries(1, acc, order)


# ---------------------------------------------------------------------------
# Hirzebruch surfaces, rank 2


def _check_fa(a: int, alpha: int, beta: int) -> None:
    if a < 0:
        raise ValueError("a must be nonnegative")
    if not (beta > 0 and alpha - a * beta > 0):
        raise AmpleError(f"H = {alpha} D1 + {beta} D2 is not ample on F_{a}")


def _ceil_div(p: int | Fraction, q: int | Fraction) -> int:
    return math.ceil(Fraction(p) / Fraction(q))


def _floor_div(p: int | Fraction, q: int | Fraction) -> int:
    return math.floor(Fraction(p) / Fraction(q))


def _isqrt_frac(x: Fraction) -> int:
    """Largest integer ``t >= 0`` with ``t^2 <= x`` (0 for negative ``x``)."""
    if x < 0:
        return 0
    t = math.isqrt(math.floor(x))
    while (t + 1) ** 2 <= x:
        t += 1
    return t


class _Acc:
    """Accumulates ``weight * q^(num/scale)`` for numerators at a fixed scale."""

    def __init__(self, scale: int, order: Fraction | int):
        self.scale = scale
        self.bound = math.floor(Fraction(order) * scale)
        self.order = Fraction(order)
        self.coeffs: dict[int, int | Fraction] = {}

    def add(self, num: int, weight: int | Fraction) -> None:
        if num <= self.bound:
            self.coeffs[num] = self.coeffs.get(num, 0) + weight

    def series(self) -> LaurentSeries:
        return LaurentSeries(self.scale, self.coeffs, self.order)


def _fa_six_inner(a: int, alpha: int, beta: int, f3: int, f4: int, order: int) -> LaurentSeries:
    """The six sums, before dividing by the eta product; scale 4."""
    lam = Fraction(alpha, beta)
    C4 = 2 * f3 * f4 + a * f4 * f4          # 4 C
    M4 = 4 * order - C4                      # 4 (order - C)
    acc = _Acc(4, order)
    ev = lambda x: x % 2 == 0  # noqa: E731
    if M4 <= 0:
        return acc.series()

    # A: exponent j^2 (2 lambda - a) / 4 <= M4 / 4
    jmax = _isqrt_frac(Fraction(M4) / (2 * lam - a)) + 1
    for j in range(1, jmax + 1):
        if (alpha * j) % beta:
            continue
        i = alpha * j // beta
        num = C4 + j * (2 * i - a * j)
        if num > acc.bound:
            continue
        for l in range(-j + 1, j):
            lo = -alpha * j + a * beta * (j + l)          # beta * (-lambda j + a(j+l))
            for k in range(_floor_div(lo, beta), _ceil_div(alpha * j, beta) + 1):
                if not (ev(f3 + i) and ev(f4 + j) and ev(i + k) and ev(j + l)):
                    continue
                if not (beta * i == alpha * j and -j < l < j):
                    continue
                if not (lo < beta * k < alpha * j):
                    continue
                acc.add(num, -1)

    # B1, B2: 4 E' = (2 lambda - a) l^2 + x (j+l) + y (j-l) with x = i - lambda l, y = lambda l - k
    lmax = _isqrt_frac(Fraction(M4) / (2 * lam - a))
    for l in range(-lmax, lmax + 1):
        for j in range(abs(l) + 1, M4 + abs(l) + 1):
            i_lo = _floor_div(alpha * l, beta) + 1
            i_hi = _floor_div(lam * l + Fraction(M4, j + l), 1)
            k_lo = _ceil_div(lam * l - Fraction(M4, j - l), 1)
            k_hi = _ceil_div(alpha * l, beta) - 1
            if i_lo > i_hi or k_lo > k_hi:
                continue
            if not (ev(f4 + j) and ev(j + l)):
                continue
            for i in range(i_lo, i_hi + 1):
                if not ev(f3 + i):
                    continue
                for k in range(k_lo, k_hi + 1):
                    if not ev(i + k):
                        continue
                    if not (beta * k < alpha * l < beta * i and l < j):
                        continue
                    num = C4 + i * j - j * k + i * l + k * l - a * l * l
                    if num > acc.bound:
                        continue
                    if -i - a * (j - l) < k and -alpha * j < beta * k:
                        acc.add(num, 2)
                    if -i + a * (j + l) < k and -alpha * j + a * beta * (j + l) < beta * k:
                        acc.add(num, 2)

    # C1, C2, C3: exponent j (2i - a j) / 4 with 2i - a j >= 1, so j <= M4
    for j in range(1, M4 + 1):
        if not ev(f4 + j):
            continue
        i_hi = _floor_div(Fraction(M4, j) + a * j, 2)
        for i in range(1, i_hi + 1):
            if not ev(f3 + i):
                continue
            num = C4 + j * (2 * i - a * j)
            if num > acc.bound:
                continue
            # C1
            if beta * i < alpha * j:
                k_lo = _floor_div(-(i - a * j) * beta, alpha - a * beta)
                k_hi = _ceil_div(i * beta, alpha)
                for k in range(k_lo, k_hi + 1):
                    if not ev(j + k):
                        continue
                    if not (beta * i < alpha * j and a * (j + k) < 2 * i):
                        continue
                    if not (-(i * beta) + a * j * beta < k * (alpha - a * beta) and k * alpha < i * beta):
                        continue
                    acc.add(num, 2)
            if alpha * j < beta * i:
                k_abs = _ceil_div(alpha * j, beta)
                for k in range(-k_abs, k_abs + 1):
                    if not ev(i + k):
                        continue
                    # C2
                    if -alpha * j < beta * k < alpha * j:
                        acc.add(num, 1)
                    # C3
                    if j > 0 and -alpha * j + 2 * a * j * beta < beta * k < alpha * j:
                        acc.add(num, 1)
    return acc.series()


def fa_rank2(a: int, alpha: int, beta: int, f3: int, f4: int, order: int) -> LaurentSeries:
    """Rank 2 on F_a with H = alpha D1 + beta D2 and c1 = f3 D3 + f4 D4 (six-sum form)."""
    _check_fa(a, alpha, beta)
    inner = _fa_six_inner(a, alpha, beta, f3, f4, order)
    return assert_integer_exponents(with_eta_prefactor(inner, 8, order))


def _eleven_four_evaluator(a: int, alpha: int, beta: int, f3: int, f4: int):
    ap = alpha - a * beta
    C4 = 2 * f3 * f4 + a * f4 * f4

    def evaluate(X: np.ndarray):
        d1, d2, d3, d4 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
        par = ((-f3 + d1 - a * d2 + d3) % 2 == 0) & ((-f4 + d2 + d4) % 2 == 0)
        w1, w2, w3, w4 = beta * d1, ap * d2, beta * d3, alpha * d4
        h1 = w1 < w2 + w3 + w4
        h2 = w2 < w1 + w3 + w4
        h3 = w3 < w1 + w2 + w4
        h4 = w4 < w1 + w2 + w3
        plus = C4 + (d2 + d4) * (2 * d1 + a * d2 + 2 * d3 - a * d4)
        minus = C4 - (d2 + d4) * (2 * d1 - a * d2 + 2 * d3 + a * d4)
        terms = [
            (-1, par & h1 & h2 & h3 & h4, plus),
            (1, par & (w1 + w3 < w2 + w4) & h2 & h4, plus),
            (1, par & (w2 + w4 < w1 + w3) & h1 & h3, plus),
            (1, par & (w1 + w2 < w3 + w4) & h3 & h4, minus + 4 * (d2 * d3 + d3 * d4 + d4 * d1)),
            (1, par & (w1 + w4 < w2 + w3) & h2 & h3, minus + 4 * (d1 * d2 + d2 * d3 + d3 * d4)),
            (1, par & (w2 + w3 < w1 + w4) & h1 & h4, minus + 4 * (d1 * d2 + d3 * d4 + d4 * d1)),
            (1, par & (w3 + w4 < w1 + w2) & h1 & h2, minus + 4 * (d1 * d2 + d2 * d3 + d4 * d1)),
        ]
        for sign, mask, exps in terms:
            if mask.any():
                yield exps[mask], np.int64(sign)

    return evaluate


def _eleven_three_evaluators(a: int, alpha: int, beta: int, f3: int, f4: int):
    ap = alpha - a * beta
    C4 = 2 * f3 * f4 + a * f4 * f4

    def t8(X):  # no d1; columns d2, d3, d4
        d2, d3, d4 = X.T
        m = ((-f3 - a * d2 + d3) % 2 == 0) & ((-f4 + d2 + d4) % 2 == 0)
        m &= (ap * d2 < beta * d3 + alpha * d4) & (beta * d3 < ap * d2 + alpha * d4)
        m &= alpha * d4 < ap * d2 + beta * d3
        yield (C4 + (d2 + d4) * (a * d2 + 2 * d3 - a * d4))[m], np.int64(1)

    def t9(X):  # no d2; columns d1, d3, d4
        d1, d3, d4 = X.T
        m = ((-f3 + d1 + d3) % 2 == 0) & ((-f4 + d4) % 2 == 0)
        m &= (beta * d1 < beta * d3 + alpha * d4) & (beta * d3 < beta * d1 + alpha * d4)
        m &= alpha * d4 < beta * d1 + beta * d3
        yield (C4 + d4 * (2 * d1 + 2 * d3 - a * d4))[m], np.int64(1)

    def t10(X):  # no d3; columns d1, d2, d4
        d1, d2, d4 = X.T
        m = ((-f3 + d1 - a * d2) % 2 == 0) & ((-f4 + d2 + d4) % 2 == 0)
        m &= (beta * d1 < ap * d2 + alpha * d4) & (ap * d2 < beta * d1 + alpha * d4)
        m &= alpha * d4 < beta * d1 + ap * d2
        yield (C4 + (d2 + d4) * (2 * d1 + a * d2 - a * d4))[m], np.int64(1)

    def t11(X):  # no d4; columns d1, d2, d3
        d1, d2, d3 = X.T
        m = ((-f3 + d1 - a * d2 + d3) % 2 == 0) & ((-f4 + d2) % 2 == 0)
        m &= (beta * d1 < ap * d2 + beta * d3) & (ap * d2 < beta * d1 + beta * d3)
        m &= beta * d3 < beta * d1 + ap * d2
        yield (C4 + d2 * (2 * d1 + a * d2 + 2 * d3))[m], np.int64(1)

    return [t8, t9, t10, t11]


def fa_rank2_eleven(a: int, alpha: int, beta: int, f3: int, f4: int, order: int, *,
                    window: int = 8, verify: bool = True) -> LaurentSeries:
    """Rank 2 on F_a from the eleven incidence-space sums in the widths."""
    _check_fa(a, alpha, beta)
    inner = shell_sum(4, _eleven_four_evaluator(a, alpha, beta, f3, f4), order, 4,
                      window=window, verify=verify).series(order)
    for ev in _eleven_three_evaluators(a, alpha, beta, f3, f4):
        inner = inner + shell_sum(3, ev, order, 4, window=window, verify=verify).series(order)
    return assert_integer_exponents(with_eta_prefactor(inner, 8, order))


# ---------------------------------------------------------------------------
# P^1 x P^1, rank 2


def p1p1_rank2(alpha: int, beta: int, f3: int, f4: int, order: int) -> LaurentSeries:
    """Rank 2 on P^1 x P^1 from the four-sum specialisation."""
    if alpha <= 0 or beta <= 0:
        raise AmpleError("alpha and beta must be positive")
    lam = Fraction(alpha, beta)
    C4 = 2 * f3 * f4
    M4 = 4 * order - C4
    acc = _Acc(4, order)
    ev = lambda x: x % 2 == 0  # noqa: E731
    if M4 > 0:
        # -sum_{lambda j = i, -j<l<j, -lambda j<k<lambda j} q^{C + ij/2}
        jmax = _isqrt_frac(Fraction(M4) / (2 * lam)) + 1
        for j in range(1, jmax + 1):
            if (alpha * j) % beta:
                continue
            i = alpha * j // beta
            num = C4 + 2 * i * j
            kk = _ceil_div(alpha * j, beta)
            for l in range(-j + 1, j):
                for k in range(-kk, kk + 1):
                    if ev(f3 + i) and ev(f4 + j) and ev(i + k) and ev(j + l) \
                            and -alpha * j < beta * k < alpha * j:
                        acc.add(num, -1)
        # 4 sum_{k<lambda l<i, l<j, -i<k, -lambda j<k} q^{C + (ij - jk + il + kl)/4}
        lmax = _isqrt_frac(Fraction(M4) / (2 * lam))
        for l in range(-lmax, lmax + 1):
            for j in range(abs(l) + 1, M4 + abs(l) + 1):
                if not (ev(f4 + j) and ev(j + l)):
                    continue
                i_lo = _floor_div(alpha * l, beta) + 1
                i_hi = _floor_div(lam * l + Fraction(M4, j + l), 1)
                k_lo = _ceil_div(lam * l - Fraction(M4, j - l), 1)
                k_hi = _ceil_div(alpha * l, beta) - 1
                for i in range(i_lo, i_hi + 1):
                    if not ev(f3 + i):
                        continue
                    for k in range(k_lo, k_hi + 1):
                        if ev(i + k) and beta * k < alpha * l < beta * i and l < j \
                                and -i < k and -alpha * j < beta * k:
                            acc.add(C4 + i * j - j * k + i * l + k * l, 4)
        # 2 sum_{2|j+k, i<lambda j, -i/lambda<k<i/lambda} + 2 sum_{2|i+k, lambda j<i, -lambda j<k<lambda j}
        for j in range(1, M4 + 1):
            if not ev(f4 + j):
                continue
            for i in range(1, M4 // j + 1):
                if not ev(f3 + i):
                    continue
                num = C4 + 2 * i * j
                if beta * i < alpha * j:
                    kk = _ceil_div(i * beta, alpha)
                    for k in range(-kk, kk + 1):
                        if ev(j + k) and -i * beta < k * alpha < i * beta:
                            acc.add(num, 2)
                if alpha * j < beta * i:
                    kk = _ceil_div(alpha * j, beta)
                    for k in range(-kk, kk + 1):
                        if ev(i + k) and -alpha * j < beta * k < alpha * j:
                            acc.add(num, 2)
    return assert_integer_exponents(with_eta_prefactor(acc.series(), 8, order))


# ---------------------------------------------------------------------------
# P^2, rank 3


def _rank3_terms(f: int):
    """Evaluators for S1..S4 (six widths) and S5, S6 (five widths); scale 18."""

    def squares(D, G):
        return (-f - 2 * D - G) ** 2 + (-f + D - G) ** 2 + (-f + D + 2 * G) ** 2

    shift = 9 * f * f  # q^{f^2/2}

    def six(X):
        d1, d2, d3, g1, g2, g3 = X.T
        D, G = d1 + d2 + d3, g1 + g2 + g3
        div = (-f + D + 2 * G) % 3 == 0
        if not div.any():
            return
        # the six "x + 2y" conditions shared by S1..S3
        a1 = d1 + 2 * g1 < 2 * d2 + 2 * d3 + g2 + g3
        a2 = d2 + 2 * g2 < 2 * d1 + 2 * d3 + g1 + g3
        a3 = d3 + 2 * g3 < 2 * d1 + 2 * d2 + g1 + g2
        b1 = g1 + 2 * d1 < 2 * g2 + 2 * g3 + d2 + d3
        b2 = g2 + 2 * d2 < 2 * g1 + 2 * g3 + d1 + d3
        b3 = g3 + 2 * d3 < 2 * g1 + 2 * g2 + d1 + d2
        c12 = d1 + d2 < 2 * d3 + G
        c23 = d2 + d3 < 2 * d1 + G
        c13 = d1 + d3 < 2 * d2 + G
        e12 = g1 + g2 < 2 * g3 + D
        e23 = g2 + g3 < 2 * g1 + D
        e13 = g1 + g3 < 2 * g2 + D
        s1 = div & a1 & a2 & a3 & b1 & b2 & b3 & c12 & c23 & c13 & e12 & e23 & e13
        s2 = div & a1 & a2 & a3 & b1 & b2 & b3 & (D < G) & e12 & e13 & e23
        s3 = div & a1 & a2 & a3 & b1 & b2 & b3 & c12 & c23 & c13 & (G < D)
        s4 = (div & a1 & b3 & a2 & c12
              & (d1 + d3 + 2 * g3 < 2 * d2 + g1 + g2) & c23
              & (g1 + g3 + 2 * d1 < 2 * g2 + d2 + d3) & e12
              & b2 & e23)
        full = (g1 * g2 + g2 * g3 + g1 * g3 + d1 * g2 + d2 * g1 + d1 * d2
                + d2 * g3 + d3 * g2 + d2 * d3 + d1 * g3 + d3 * g1 + d1 * d3)
        base = shift - squares(D, G)
        e_full = base + 18 * full
        e_four = base + 18 * (full - d1 * g3)
        for mult, mask, exps in ((-1, s1, e_full), (1, s2, e_full), (1, s3, e_full), (6, s4, e_four)):
            if mask.any():
                yield exps[mask], np.int64(mult)

    def five_no_d1(X):
        d2, d3, g1, g2, g3 = X.T
        D, G = d2 + d3, g1 + g2 + g3
        m = (-f + D + 2 * G) % 3 == 0
        m &= 2 * g1 < 2 * d2 + 2 * d3 + g2 + g3
        m &= d2 + 2 * g2 < 2 * d3 + g1 + g3
        m &= d3 + 2 * g3 < 2 * d2 + g1 + g2
        m &= g2 + 2 * d2 < 2 * g1 + 2 * g3 + d3
        m &= g3 + 2 * d3 < 2 * g1 + 2 * g2 + d2
        m &= d2 + d3 < G
        m &= g1 + g2 < 2 * g3 + d2 + d3
        m &= g2 + g3 < 2 * g1 + d2 + d3
        m &= g1 + g3 < 2 * g2 + d2 + d3
        corner = g1 * g2 + g2 * g3 + g1 * g3 + d2 * g1 + d2 * g3 + d3 * g2 + d2 * d3 + d3 * g1
        yield (shift - squares(D, G) + 18 * corner)[m], np.int64(3)

    def five_no_g1(X):
        d1, d2, d3, g2, g3 = X.T
        D, G = d1 + d2 + d3, g2 + g3
        m = (-f + D + 2 * G) % 3 == 0
        m &= d2 + 2 * g2 < 2 * d1 + 2 * d3 + g3
        m &= d3 + 2 * g3 < 2 * d1 + 2 * d2 + g2
        m &= 2 * d1 < 2 * g2 + 2 * g3 + d2 + d3
        m &= g2 + 2 * d2 < 2 * g3 + d1 + d3
        m &= g3 + 2 * d3 < 2 * g2 + d1 + d2
        m &= d1 + d2 < 2 * d3 + g2 + g3
        m &= d2 + d3 < 2 * d1 + g2 + g3
        m &= d1 + d3 < 2 * d2 + g2 + g3
        m &= g2 + g3 < D
        corner = d1 * d2 + d2 * d3 + d1 * d3 + d1 * g2 + d3 * g2 + d2 * g3 + g2 * g3 + d1 * g3
        yield (shift - squares(D, G) + 18 * corner)[m], np.int64(3)

    return six, five_no_d1, five_no_g1


def p2_rank3(f: int, order: int, *, window: int = 8, verify: bool = True,
             jobs: int = 1) -> LaurentSeries:
    """Rank 3 on P^2 with c1 = f H. Any integer ``f`` is accepted."""
    opts = dict(window=window, verify=verify, jobs=jobs)
    inner = LaurentSeries.zero(order)
    for n_vars, ev in zip((6, 5, 5), _rank3_terms(f)):
        inner = inner + shell_sum(n_vars, ev, order, 18, **opts).series(order)
    return assert_integer_exponents(with_eta_prefactor(inner, 9, order))
