"""Exact truncated Laurent series in one variable ``q``.

Exponents live in ``(1/L) Z`` for a single positive integer scale ``L`` per
series. Coefficients are Python integers (or ``Fraction`` where a division
forces it). ``order`` is an inclusive rational truncation bound: every
coefficient at an exponent ``<= order`` is exact, everything above it is
unknown and never stored.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]
Rational = Union[int, Fraction]


class SeriesError(ArithmeticError):
    """Raised for non-invertible input or an integrality violation."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _clean(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_e q^(e/L)`` known up to ``order``."""

    __slots__ = ("scale", "coeffs", "order")

    def __init__(self, scale: int, coeffs: Mapping[int, Coeff], order: Rational):
        if scale <= 0:
            raise ValueError("scale must be a positive integer")
        order = Fraction(order)
        bound = order * scale
        kept = {e: _clean(c) for e, c in coeffs.items() if c != 0 and e <= bound}
        # collapse the scale as far as the stored exponents allow
        g = scale
        for e in kept:
            g = gcd(g, e)
            if g == 1:
                break
        if g > 1:
            kept = {e // g: c for e, c in kept.items()}
            scale //= g
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "coeffs", dict(sorted(kept.items())))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentSeries is immutable")

    # -- construction -------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Mapping[Rational, Coeff] | Iterable[tuple[Rational, Coeff]],
                   order: Rational) -> "LaurentSeries":
        """Build from ``{exponent: coefficient}`` with rational exponents; repeated exponents add."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Coeff] = {}
        for e, c in items:
            e = Fraction(e)
            acc[e] = acc.get(e, 0) + c
        scale = 1
        for e in acc:
            scale = _lcm(scale, e.denominator)
        return cls(scale, {int(e * scale): c for e, c in acc.items()}, order)

    @classmethod
    def zero(cls, order: Rational) -> "LaurentSeries":
        return cls(1, {}, order)

    @classmethod
    def one(cls, order: Rational) -> "LaurentSeries":
        return cls(1, {0: 1}, order)

    @classmethod
    def monomial(cls, exponent: Rational, coeff: Coeff, order: Rational) -> "LaurentSeries":
        return cls.from_terms({exponent: coeff}, order)

    # -- inspection ---------------------------------------------------
    def terms(self) -> list[tuple[Fraction, Coeff]]:
        """Nonzero terms as ``(exponent, coefficient)`` sorted by exponent."""
        return [(Fraction(e, self.scale), c) for e, c in self.coeffs.items()]

    def coefficient(self, exponent: Rational) -> Coeff:
        exponent = Fraction(exponent)
        if exponent > self.order:
            raise ValueError(f"exponent {exponent} lies beyond the truncation order {self.order}")
        num = exponent * self.scale
        if num.denominator != 1:
            return 0
        return self.coeffs.get(int(num), 0)

    def min_exponent(self) -> Fraction:
        """Lowest exponent with a nonzero coefficient; the order itself for the zero series."""
        if not self.coeffs:
            return self.order
        return Fraction(next(iter(self.coeffs)), self.scale)

    def is_zero(self) -> bool:
        return not self.coeffs

    def integer_coefficients(self) -> list[int]:
        """Dense coefficient list ``[c_0, ..., c_order]`` of an integral power series."""
        s = assert_integer_exponents(self)
        if s.coeffs and min(s.coeffs) < 0:
            raise ValueError("series has negative exponents")
        top = int(s.order // 1)
        return [s.coeffs.get(k, 0) for k in range(top + 1)]

    def rescaled(self, scale: int) -> dict[int, Coeff]:
        """Coefficient map expressed at a multiple ``scale`` of the current scale."""
        if scale % self.scale:
            raise ValueError("target scale must be a multiple of the current scale")
        f = scale // self.scale
        return {e * f: c for e, c in self.coeffs.items()}

    def truncate(self, order: Rational) -> "LaurentSeries":
        order = Fraction(order)
        if order > self.order:
            raise ValueError("cannot extend a series beyond its truncation order")
        return LaurentSeries(self.scale, self.coeffs, order)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        return series_add(self, other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.scale, {e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return series_add(self, -other)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return LaurentSeries(self.scale, {e: c * other for e, c in self.coeffs.items()}, self.order)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, exponent: Rational) -> "LaurentSeries":
        """Multiply by ``q^exponent`` (the order moves with it)."""
        exponent = Fraction(exponent)
        scale = _lcm(self.scale, exponent.denominator)
        f = scale // self.scale
        d = int(exponent * scale)
        return LaurentSeries(scale, {e * f + d: c for e, c in self.coeffs.items()}, self.order + exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        bound = min(self.order, other.order)
        scale = _lcm(self.scale, other.scale)
        a = {e: c for e, c in self.rescaled(scale).items() if e <= bound * scale}
        b = {e: c for e, c in other.rescaled(scale).items() if e <= bound * scale}
        return a == b

    def __hash__(self):  # equality is truncation-aware, so hashing is deliberately coarse
        return hash(self.order)

    def __repr__(self) -> str:
        return f"LaurentSeries({format_series(self)})"


def format_series(s: LaurentSeries) -> str:
    parts = []
    for e, c in s.terms():
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "q"
        else:
            mono = f"q^{e}" if e.denominator == 1 else f"q^({e})"
        if mono and c == 1:
            body = mono
        elif mono and c == -1:
            body = "-" + mono
        elif mono:
            body = f"{c}*{mono}"
        else:
            body = str(c)
        parts.append(body)
    text = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return f"{text} + O(q^>{s.order})"


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    scale = _lcm(a.scale, b.scale)
    acc = a.rescaled(scale)
    for e, c in b.rescaled(scale).items():
        acc[e] = acc.get(e, 0) + c
    return LaurentSeries(scale, acc, min(a.order, b.order))


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    order = min(a.order + b.min_exponent(), b.order + a.min_exponent())
    scale = _lcm(a.scale, b.scale)
    bound = order * scale
    ta = sorted(a.rescaled(scale).items())
    tb = sorted(b.rescaled(scale).items())
    acc: dict[int, Coeff] = {}
    for ea, ca in ta:
        for eb, cb in tb:
            e = ea + eb
            if e > bound:
                break
            acc[e] = acc.get(e, 0) + ca * cb
    return LaurentSeries(scale, acc, order)


def series_inverse(a: LaurentSeries, order: Rational) -> LaurentSeries:
    """Multiplicative inverse of a power series with nonzero constant term, up to ``order``."""
    c0 = a.coeffs.get(0, 0)
    if c0 == 0 or (a.coeffs and min(a.coeffs) < 0):
        raise SeriesError("non-unit series")
    order = Fraction(order)
    if order > a.order:
        raise ValueError("requested order exceeds the reliable range of the input")
    L = a.scale
    top = int((order * L) // 1)
    unit = c0 in (1, -1)
    inv0: Coeff = c0 if unit else Fraction(1, c0)  # 1/c0 == c0 for units
    src = [(e, c) for e, c in a.coeffs.items() if e > 0]
    out: list[Coeff] = [0] * (top + 1)
    out[0] = inv0
    for n in range(1, top + 1):
        s: Coeff = 0
        for e, c in src:
            if e > n:
                break
            s += c * out[n - e]
        out[n] = -s * inv0
    return LaurentSeries(L, dict(enumerate(out)), order)


def eta_inverse_power(m: int, order: int) -> LaurentSeries:
    """Expansion of ``1 / prod_{k>=1} (1 - q^k)^m`` through ``q^order``.

    Uses the logarithmic-derivative recurrence ``n p_n = m sum_k sigma(k) p_{n-k}``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if m < 0:
        raise ValueError("m must be nonnegative")
    sigma = [0] * (order + 1)
    for d in range(1, order + 1):
        for k in range(d, order + 1, d):
            sigma[k] += d
    p = [0] * (order + 1)
    p[0] = 1
    for n in range(1, order + 1):
        s = 0
        for k in range(1, n + 1):
            s += sigma[k] * p[n - k]
        p[n] = m * s // n
    return LaurentSeries(1, dict(enumerate(p)), order)


def assert_integer_exponents(a: LaurentSeries) -> LaurentSeries:
    """Return ``a`` at scale 1, or raise if a nonzero term sits at a fractional exponent."""
    if a.scale == 1:
        return a
    bad = [e for e in a.coeffs if e % a.scale]
    if bad:
        raise SeriesError(
            f"integrality violated: fractional exponent {Fraction(bad[0], a.scale)} survives"
        )
    return LaurentSeries(1, {e // a.scale: c for e, c in a.coeffs.items()}, a.order)


def assert_integer_coefficients(a: LaurentSeries) -> LaurentSeries:
    """Raise unless every stored coefficient is an integer."""
    for e, c in a.coeffs.items():
        if not isinstance(c, int):
            raise SeriesError(f"integrality violated: coefficient {c} at q^{Fraction(e, a.scale)}")
    return a


def geometric(step: int, order: int, start: int = 0) -> LaurentSeries:
    """``q^start / (1 - q^step)`` expanded eagerly through ``order``."""
    if step <= 0:
        raise ValueError("step must be positive")
    return LaurentSeries(1, {e: 1 for e in range(start, order + 1, step)}, order)
