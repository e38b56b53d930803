"""Chern character of a torsion free equivariant sheaf from its characteristic data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .toric import DivisorClass, Fan, quadratic_form


@dataclass(frozen=True)
class EquivariantData:
    """Numerical data of an equivariant sheaf of rank ``r`` on a fan with ``N`` rays.

    ``A[i]`` is the location on ray ``i``, ``widths[i][j-1]`` is ``Delta_i(j)`` for
    ``j = 1..r-1`` and ``parts[i][j-1]`` is the size of the 2D partition ``pi_i(j)``
    for ``j = 1..r``.
    """

    rank: int
    A: tuple[int, ...]
    widths: tuple[tuple[int, ...], ...]
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r, n = self.rank, len(self.A)
        if r < 1:
            raise ValueError("rank must be positive")
        if len(self.widths) != n or any(len(w) != r - 1 for w in self.widths):
            raise ValueError(f"widths must be an {n} x {r - 1} array")
        if len(self.parts) != n or any(len(p) != r for p in self.parts):
            raise ValueError(f"partition sizes must be an {n} x {r} array")
        if any(x < 0 for w in self.widths for x in w) or any(x < 0 for p in self.parts for x in p):
            raise ValueError("widths and partition sizes must be nonnegative")

    @classmethod
    def build(cls, rank: int, A: Sequence[int], widths: Sequence[Sequence[int]] | None = None,
              parts: Sequence[Sequence[int]] | None = None) -> "EquivariantData":
        n = len(A)
        widths = widths if widths is not None else [[0] * (rank - 1) for _ in range(n)]
        parts = parts if parts is not None else [[0] * rank for _ in range(n)]
        return cls(rank, tuple(A), tuple(tuple(w) for w in widths), tuple(tuple(p) for p in parts))


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: DivisorClass
    ch2: Fraction

    @property
    def c2(self) -> Fraction:
        return Fraction(self.c1.square(), 2) - self.ch2


def chern_character(fan: Fan, data: EquivariantData) -> ChernData:
    n, r = fan.n, data.rank
    if len(data.A) != n:
        raise ValueError(f"data has {len(data.A)} rays, fan has {n}")
    A, W = data.A, data.widths
    c1 = [-(r * A[i] + sum((r - j) * W[i][j - 1] for j in range(1, r))) for i in range(n)]
    ch2 = Fraction(quadratic_form(fan, A), 2)
    partial = list(A)
    for j in range(1, r):
        partial = [partial[i] + W[i][j - 1] for i in range(n)]
        ch2 += Fraction(quadratic_form(fan, partial), 2)
    ch2 -= sum(sum(p) for p in data.parts)
    return ChernData(r, fan.divisor(c1), ch2)


def direct_sum(*items: ChernData) -> ChernData:
    """Chern character of a direct sum: ranks, c1 and ch2 all add."""
    c1 = items[0].c1
    for it in items[1:]:
        c1 = c1 + it.c1
    return ChernData(sum(it.rank for it in items), c1, sum((it.ch2 for it in items), Fraction(0)))
