"""Walls in the ample cone of F_a and infinitesimal wall-crossing of rank 2 series.

An ample class ``H = alpha D1 + beta D2`` on ``F_a`` is recorded by the slope
``lambda = alpha / beta > a``. The difference of generating functions across a
slope ``lambda0`` is computed three ways: numerically as a two-sided limit of
the six-sum evaluator, by the eight-sum closed form on ``P^1 x P^1``, and by the
single sum obtained from motivic wall-crossing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .closedforms import fa_rank2
from .qseries import LaurentSeries, assert_integer_coefficients, assert_integer_exponents
from .rank2 import with_eta_prefactor


class WallCrossingError(RuntimeError):
    """The two-sided limit did not settle within the allowed refinement."""


@dataclass(frozen=True)
class WallContext:
    a: int
    lambda0: Fraction
    f3: int
    f4: int
    order: int

    def __post_init__(self):
        lam = Fraction(self.lambda0)
        object.__setattr__(self, "lambda0", lam)
        if self.a < 0:
            raise ValueError("a must be nonnegative")
        if not lam > self.a:
            raise ValueError(f"lambda0 = {lam} must exceed a = {self.a}")

    @property
    def alpha0(self) -> int:
        return self.lambda0.numerator

    @property
    def beta0(self) -> int:
        return self.lambda0.denominator


def is_wall(ctx: WallContext) -> bool:
    """True iff ``c1 . H`` is even, where ``H . D3 = beta0`` and ``H . D4 = alpha0``."""
    return (ctx.alpha0 * ctx.f4 + ctx.beta0 * ctx.f3) % 2 == 0


def wall_free_refinement(ctx: WallContext) -> int:
    """Smallest power of two ``K`` such that ``lambda0 +- 1/(K beta0)`` brackets no other wall.

    A wall of type ``(c1, c2)`` with ``c2 <= order`` sits at slope ``-x/y`` for a
    class ``xi = x D3 + y D4`` with ``(2 lambda - a) y^2 <= 4 order - c1^2``.
    Keeping ``eps <= (lambda0 - a)/2`` gives ``2 lambda - a >= lambda0``, so
    ``|y| <= Y`` and any such slope other than ``lambda0`` is at least
    ``1/(Y beta0)`` away.
    """
    a, al, be = ctx.a, ctx.alpha0, ctx.beta0
    room = 4 * ctx.order - (2 * ctx.f3 * ctx.f4 + a * ctx.f4 * ctx.f4)
    Y = math.isqrt(math.floor(Fraction(room) / ctx.lambda0)) if room > 0 else 0
    need = max(2, Y + 1, -(-2 // (al - a * be)))
    return 1 << (need - 1).bit_length()


def numeric_wallcross(ctx: WallContext, *, cap: int = 2 ** 16) -> LaurentSeries:
    """``F(lambda0 + eps) - F(lambda0 - eps)`` with ``eps = 1/(K beta0)``, refining ``K`` until stable.

    ``K`` starts at :func:`wall_free_refinement`; two successive agreeing
    differences are still required before a value is returned.
    """
    a, al, be = ctx.a, ctx.alpha0, ctx.beta0
    prev = None
    K = wall_free_refinement(ctx)
    while K <= cap:
        up = fa_rank2(a, K * al + 1, K * be, ctx.f3, ctx.f4, ctx.order)
        down = fa_rank2(a, K * al - 1, K * be, ctx.f3, ctx.f4, ctx.order)
        diff = up - down
        if prev is not None and diff == prev:
            return diff
        prev = diff
        K *= 2
    raise WallCrossingError(f"limit did not stabilize for K <= {cap}")


def _stable_range(lo: Fraction, hi: Fraction) -> range:
    """Integers strictly between ``lo`` and ``hi``."""
    return range(math.floor(lo) + 1, math.ceil(hi))


def p1p1_wallcross_closed(ctx: WallContext) -> LaurentSeries:
    """Eight-sum closed form of the wall-crossing difference on ``P^1 x P^1``.

    Exponents are kept as numerators over ``4 alpha0 beta0``. Every printed
    constraint is re-checked inside the loops.
    """
    if ctx.a != 0:
        raise ValueError("the eight-sum closed form is stated for a = 0 only")
    al, be, f3, f4, order = ctx.alpha0, ctx.beta0, ctx.f3, ctx.f4, ctx.order
    lam = ctx.lambda0
    S = 4 * al * be
    base = 2 * al * be * f3 * f4
    bound = order * S
    room = bound - base                    # S * (order - f3 f4 / 2)
    M4 = Fraction(room, al * be)           # 4 (order - f3 f4 / 2)
    acc: dict[int, int] = {}

    def ev(x: int) -> bool:
        return x % 2 == 0

    def add(num: int, w: int) -> None:
        if num <= bound:
            acc[num] = acc.get(num, 0) + w

    def three(i: int, j: int, k: int) -> int:
        # S (ij/4 - lambda jk/4 + ik/4 + lambda k^2/4)
        return base + al * be * (i * j + i * k) + al * al * (k * k - j * k)

    if room >= 0:
        # sum 1: i = lambda k + x, 4E' = 2 lambda k^2 + x (j+k)
        kmax = math.isqrt(math.floor(M4 / (2 * lam))) + 1
        for k in range(be, kmax + 1, be):
            lk = al * k // be
            for j in range(k + 1, math.floor(M4) + 1):
                for i in range(lk + 1, lk + math.floor(M4 / (j + k)) + 1):
                    if ev(f3 + i) and ev(f4 + j) and ev(i + lk) and ev(j + k) \
                            and 0 < lk < i and 0 < k < j:
                        add(three(i, j, k), 4)
        # sum 2: k < 0, 4E' = i (j - |k|) + lambda |k| (j + |k|)
        for k in range(-be, -kmax - 1, -be):
            lk = al * k // be
            jtop = math.floor(M4 / (lam * -k)) - k + 1
            for j in range(-k + 1, jtop + 1):
                for i in range(-lk + 1, math.floor(M4 / (j + k)) + 1):
                    if ev(f3 + i) and ev(f4 + j) and ev(i + lk) and ev(j + k) \
                            and -i < lk < 0 and -j < k < 0:
                        add(three(i, j, k), -4)
        # sum 3: k > 0, u = -(j+k) >= 1, 4E' = 2 lambda k^2 + u (lambda k - i)
        for k in range(be, kmax + 1, be):
            lk = al * k // be
            for u in range(1, math.floor(M4) + 1):
                j = -k - u
                for i in range(max(-lk + 1, lk - math.floor(M4 / u)), lk):
                    if ev(f3 + lk) and ev(f4 + j) and ev(i + lk) and ev(j + k) \
                            and -lk < i < lk and k < -j:
                        add(three(i, j, k), -4)
        # sum 4: 0 < lambda k < i, |j| < k, 4E' = i (j+k) + lambda k (k-j)
        for k in range(be, math.floor(M4 / lam) + 2, be):
            lk = al * k // be
            for j in range(-k + 1, k):
                for i in range(lk + 1, math.floor(M4 / (j + k)) + 1):
                    if ev(f3 + i) and ev(f4 + k) and ev(i + lk) and ev(j + k) \
                            and -k < j < k and lk < i:
                        add(three(i, j, k), 4)
        # sums 5-8: E' = lambda i^2/2, lambda ij/2, i^2/(2 lambda), ij/(2 lambda)
        top = math.floor(M4) + 1
        for i in range(1, top + 1):
            for j in range(-i + 1, i):
                if i % be == 0 and ev(f3 + al * i // be) and ev(f4 + i) and ev(i + j) and -i < j < i:
                    add(base + 2 * al * al * i * i, 2)
                if i % al == 0 and ev(f4 + be * i // al) and ev(f3 + i) and ev(i + j) and -i < j < i:
                    add(base + 2 * be * be * i * i, -2)
                if j <= 0:
                    continue
                if j % be == 0 and ev(f3 + al * j // be) and ev(f4 + i) and ev(i + j) and 0 < j < i:
                    add(base + 2 * al * al * i * j, -4)
                if j % al == 0 and ev(f4 + be * j // al) and ev(f3 + i) and ev(i + j) and 0 < j < i:
                    add(base + 2 * be * be * i * j, 4)
    inner = LaurentSeries(S, acc, order)
    return assert_integer_exponents(with_eta_prefactor(inner, 8, order))


def _goettsche_c1(a: int, epsilon: int) -> tuple[int, int]:
    # epsilon D1 + D2 = (epsilon - a) D3 + D4
    return epsilon - a, 1


def goettsche_series(a: int, lam, epsilon: int, order: int) -> LaurentSeries:
    """Rank 2 series for ``c1 = epsilon D1 + D2`` from the ``L(H)`` lattice sum."""
    lam = Fraction(lam)
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    f3, f4 = _goettsche_c1(a, epsilon)
    if is_wall(WallContext(a, lam, f3, f4, order)):
        raise ValueError("H on a wall; formula inapplicable")
    acc: dict[int, int] = {}
    m = 0
    # the exponent is at least m(m+1)a + (2m+1)^2 (lambda - a)/2 + epsilon/2, increasing in m
    while m * (m + 1) * a + (2 * m + 1) ** 2 * (lam - a) / 2 + Fraction(epsilon, 2) <= order:
        # a - lambda > (2n + epsilon)/(2m+1)  <=>  2n < (a - lambda)(2m+1) - epsilon
        n_hi = math.ceil(((a - lam) * (2 * m + 1) - epsilon) / 2) - 1
        n = n_hi
        while True:
            e = (m + 1) * m * a - (2 * m + 1) * n - m * epsilon
            if e > order:
                break
            if m >= 0 and a - lam > Fraction(2 * n + epsilon, 2 * m + 1):
                c = a + 2 * m * a - 2 * (2 * m + 2 * n + epsilon + 1)
                acc[e] = acc.get(e, 0) + c
            n -= 1
        m += 1
    return with_eta_prefactor(LaurentSeries(1, acc, order), 8, order)


def _joyce_inner(a: int, lam0: Fraction, f3: int, f4: int, order: int) -> LaurentSeries:
    acc: dict[Fraction, Fraction] = {}
    shift = -Fraction(a * f4 * f4, 4) + Fraction((f3 + a * f4) * f4, 2)
    m = f4 // 2 + 1  # smallest integer > f4/2
    while True:
        t = 2 * m - f4
        e = (lam0 - Fraction(a, 2)) * t * t / 2 + shift
        if e > order:
            break
        if ((lam0 - a) * t / 2 - Fraction(f3 + a * f4, 2)).denominator == 1:
            acc[e] = acc.get(e, 0) + 2 * (1 + Fraction(a, 2) - lam0) * t
        m += 1
    return LaurentSeries.from_terms(acc, order)


def joyce_wallcross(a: int, lambda0, f3: int, f4: int, order: int) -> LaurentSeries:
    """Wall-crossing difference from the single sum over ``m > f4/2``."""
    lam0 = Fraction(lambda0)
    if not lam0 > a:
        raise ValueError(f"lambda0 = {lam0} must exceed a = {a}")
    inner = _joyce_inner(a, lam0, f3, f4, order)
    out = with_eta_prefactor(inner, 8, order)
    return assert_integer_coefficients(assert_integer_exponents(out))


def goettsche_wallcross(a: int, lambda0, epsilon: int, order: int) -> LaurentSeries:
    """Wall-crossing difference for ``c1 = epsilon D1 + D2`` read off the ``L(H)`` sum."""
    lam0 = Fraction(lambda0)
    if not lam0 > a:
        raise ValueError(f"lambda0 = {lam0} must exceed a = {a}")
    acc: dict[Fraction, Fraction] = {}
    m = 1
    while True:
        e = (lam0 - Fraction(a, 2)) * (2 * m - 1) ** 2 / 2 - Fraction(a, 4) + Fraction(epsilon, 2)
        if e > order:
            break
        if ((lam0 - a) * (2 * m - 1) / 2 - Fraction(epsilon, 2)).denominator == 1:
            acc[e] = acc.get(e, 0) + 2 * (1 + Fraction(a, 2) - lam0) * (2 * m - 1)
        m += 1
    out = with_eta_prefactor(LaurentSeries.from_terms(acc, order), 8, order)
    return assert_integer_coefficients(assert_integer_exponents(out))
