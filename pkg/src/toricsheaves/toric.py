"""Fans of smooth complete toric surfaces and their intersection theory.

Rays are indexed from 0 in code; ray ``i`` carries the torus-invariant
divisor ``D_i``. The first two rays are always the standard basis vectors, so
``D_0`` and ``D_1`` can be eliminated with the two linear relations and every
class has a canonical coordinate vector on ``D_2, ..., D_{N-1}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence


class FanError(ValueError):
    """Invalid fan data."""


def _det(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Fan:
    rays: tuple[tuple[int, int], ...]
    a: tuple[int, ...] = field(init=False)
    xi: tuple[int, ...] = field(init=False)
    eta: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        rays = self.rays
        n = len(rays)
        a = []
        for i in range(n):
            prev, cur, nxt = rays[i - 1], rays[i], rays[(i + 1) % n]
            s = (prev[0] + nxt[0], prev[1] + nxt[1])
            # cur is primitive, so s = a_i * cur has an integral solution
            k = s[0] // cur[0] if cur[0] else s[1] // cur[1]
            a.append(k)
        object.__setattr__(self, "a", tuple(a))
        object.__setattr__(self, "xi", tuple(-v[0] for v in rays))
        object.__setattr__(self, "eta", tuple(-v[1] for v in rays))

    @property
    def n(self) -> int:
        return len(self.rays)

    def euler_characteristic(self) -> int:
        return len(self.rays)

    def divisor(self, raw: Sequence[int]) -> "DivisorClass":
        return DivisorClass(self, tuple(int(x) for x in raw))

    def from_canonical(self, coords: Sequence[int]) -> "DivisorClass":
        """Class ``sum_{i>=2} coords[i-2] D_i``."""
        if len(coords) != self.n - 2:
            raise ValueError(f"expected {self.n - 2} canonical coordinates, got {len(coords)}")
        return self.divisor((0, 0, *coords))

    def D(self, i: int) -> "DivisorClass":
        raw = [0] * self.n
        raw[i] = 1
        return self.divisor(raw)

    def pairing_matrix(self) -> list[list[int]]:
        n = self.n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = -self.a[i]
            j = (i + 1) % n
            m[i][j] = m[j][i] = 1
        return m


def fan_validate(rays: Sequence[Sequence[int]]) -> Fan:
    """Check smoothness, completeness and normalisation, and derive the a_i."""
    rays = tuple((int(v[0]), int(v[1])) for v in rays)
    n = len(rays)
    if n < 3:
        raise FanError("a complete fan needs at least 3 rays")
    if rays[0] != (1, 0) or rays[1] != (0, 1):
        raise FanError("the first two rays must be (1,0) and (0,1)")
    for v in rays:
        if math.gcd(*v) != 1:
            raise FanError(f"ray {v} is not primitive")
    for i in range(n):
        d = _det(rays[i], rays[(i + 1) % n])
        if d != 1:
            raise FanError(
                f"det(v_{i}, v_{(i + 1) % n}) = {d}; consecutive rays must satisfy det = +1"
            )
    # det = +1 everywhere only gives local counterclockwise order; require one full turn
    turn = 0.0
    for i in range(n):
        u, v = rays[i], rays[(i + 1) % n]
        turn += math.atan2(_det(u, v), u[0] * v[0] + u[1] * v[1])
    if abs(turn - 2 * math.pi) > 1e-6:
        raise FanError("rays wind around the origin more than once")
    return Fan(rays)


def p2() -> Fan:
    return fan_validate([(1, 0), (0, 1), (-1, -1)])


def hirzebruch(a: int) -> Fan:
    return fan_validate([(1, 0), (0, 1), (-1, a), (0, -1)])


def parse_fan(spec: str) -> Fan:
    """Accept ``P2``, ``P1xP1``, ``Fa:<a>`` or a path to ``{"rays": [[x, y], ...]}``."""
    key = spec.strip()
    if key.upper() == "P2":
        return p2()
    if key.upper() in ("P1XP1", "P1P1"):
        return hirzebruch(0)
    if key.startswith("Fa:") or key.startswith("F:"):
        try:
            a = int(key.split(":", 1)[1])
        except ValueError as exc:
            raise FanError(f"bad Hirzebruch parameter in {spec!r}") from exc
        return hirzebruch(a)
    path = Path(key)
    if not path.exists():
        raise FanError(f"unknown fan preset or missing file: {spec!r}")
    try:
        data = json.loads(path.read_text())
        rays = data["rays"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FanError(f"fan file {spec!r} must contain {{\"rays\": [[x, y], ...]}}") from exc
    return fan_validate(rays)


@dataclass(frozen=True)
class DivisorClass:
    fan: Fan
    raw: tuple[int, ...]

    def __post_init__(self):
        if len(self.raw) != self.fan.n:
            raise ValueError(f"expected {self.fan.n} coefficients, got {len(self.raw)}")

    @property
    def canonical(self) -> tuple[int, ...]:
        # D_0 = sum_{i>=2} xi_i D_i and D_1 = sum_{i>=2} eta_i D_i
        f = self.fan
        r = self.raw
        return tuple(r[i] + r[0] * f.xi[i] + r[1] * f.eta[i] for i in range(2, f.n))

    def canonicalize(self) -> "DivisorClass":
        return self.fan.from_canonical(self.canonical)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_fan(self, other)
        return DivisorClass(self.fan, tuple(x + y for x, y in zip(self.raw, other.raw)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.fan, tuple(k * x for x in self.raw))

    def __neg__(self) -> "DivisorClass":
        return (-1) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.fan.rays == other.fan.rays and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.fan.rays, self.canonical))

    def dot(self, other: "DivisorClass") -> int:
        return intersection(self.fan, self, other)

    def square(self) -> int:
        return intersection(self.fan, self, self)


def _same_fan(c: DivisorClass, d: DivisorClass) -> None:
    if c.fan.rays != d.fan.rays:
        raise ValueError("divisor classes live on different fans")


def intersection(fan: Fan, C: DivisorClass, D: DivisorClass) -> int:
    """Degree of ``C . D`` from ``D_i^2 = -a_i``, ``D_i . D_{i+1} = 1`` and zero otherwise."""
    n = fan.n
    x, y = C.raw, D.raw
    total = 0
    for i in range(n):
        j = (i + 1) % n
        total += -fan.a[i] * x[i] * y[i] + x[i] * y[j] + x[j] * y[i]
    return total


def quadratic_form(fan: Fan, coeffs: Sequence[int]) -> int:
    """``(sum_i coeffs[i] D_i)^2`` for a raw coefficient vector."""
    n = fan.n
    total = 0
    for i in range(n):
        total += -fan.a[i] * coeffs[i] * coeffs[i] + 2 * coeffs[i] * coeffs[(i + 1) % n]
    return total


def is_ample(fan: Fan, H: DivisorClass) -> bool:
    return all(intersection(fan, H, fan.D(i)) > 0 for i in range(fan.n))


def stellar_subdivide(fan: Fan, i: int) -> Fan:
    """Blow up the fixed point of the cone spanned by rays ``i`` and ``i+1`` (0-based, cyclic).

    If the new ray lands between the first two rays, the fan is moved by the
    unique SL(2, Z) map that restores ``v_0 = (1,0)``, ``v_1 = (0,1)``.
    """
    n = fan.n
    if not 0 <= i < n:
        raise IndexError(f"cone index {i} out of range for {n} rays")
    u, v = fan.rays[i], fan.rays[(i + 1) % n]
    new = (u[0] + v[0], u[1] + v[1])
    rays = list(fan.rays)
    rays.insert(i + 1, new)
    if i == 0:
        # rays now start (1,0), (1,1), (0,1), ...; send (1,1) to (0,1) fixing (1,0)
        rays = [(x - y, y) for x, y in rays]
    return fan_validate(rays)
