"""Rank-2 generating functions on an arbitrary smooth complete toric surface.

A torus-fixed stable sheaf of rank 2 is recorded by a width ``Delta_i >= 0``
on every ray and, for each ray in the support, a limit point on the
projective line. Rays whose limit points coincide form the blocks of a
``CoincidencePattern``. A stratum contributes the Euler characteristic of its
GIT quotient times ``q`` to the power ``base_exponent + corner_blocks``.

The infinite sum over widths is enumerated in shells of constant total width
by :func:`shell_sum`, which the closed-form evaluators reuse.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .qseries import LaurentSeries, assert_integer_exponents, eta_inverse_power
from .toric import DivisorClass, Fan, intersection, is_ample, quadratic_form

Pattern = tuple[tuple[int, ...], ...]


class EnumerationError(RuntimeError):
    """The shell enumeration did not stabilise."""


class AmpleError(ValueError):
    """The polarisation is not ample."""


# ---------------------------------------------------------------------------
# scalar operations on a single display


def divisibility_ok(fan: Fan, widths: Sequence[int], c1: DivisorClass) -> bool:
    f = c1.canonical
    return all(
        (-f[i - 2] + widths[0] * fan.xi[i] + widths[1] * fan.eta[i] + widths[i]) % 2 == 0
        for i in range(2, fan.n)
    )


def base_exponent(fan: Fan, widths: Sequence[int], c1: DivisorClass) -> Fraction:
    """``(c1^2 - (sum Delta_i D_i)^2) / 4``, the rank-2 exponent before corner terms."""
    return Fraction(c1.square() - quadratic_form(fan, widths), 4)


def block_count_euler(k: int) -> int:
    """Euler characteristic of ``k`` distinct labelled points on P^1 modulo PGL(2)."""
    if k < 3:
        return 0
    return (-1) ** (k - 3) * math.factorial(k - 3)


def stratum_euler(fan: Fan, H: DivisorClass, widths: Sequence[int], pattern: Pattern) -> int:
    hd = [intersection(fan, H, fan.D(i)) for i in range(fan.n)]
    w = [widths[i] * hd[i] for i in range(fan.n)]
    total = sum(w)
    for block in pattern:
        if 2 * sum(w[i] for i in block) >= total:
            return 0
    return block_count_euler(len(pattern))


def corner_blocks(widths: Sequence[int], pattern: Pattern) -> int:
    n = len(widths)
    group = {i: b for b, block in enumerate(pattern) for i in block}
    total = 0
    for i in range(n):
        j = (i + 1) % n
        if i in group and j in group and group[i] != group[j]:
            total += widths[i] * widths[j]
    return total


def set_partitions(items: Sequence[int]) -> Iterator[Pattern]:
    """All set partitions of ``items``, blocks sorted by their smallest element."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield ((first,),) + sub
        for b in range(len(sub)):
            yield sub[:b] + ((first,) + sub[b],) + sub[b + 1:]


def canonical_pattern(pattern: Iterable[Iterable[int]]) -> Pattern:
    return tuple(sorted(tuple(sorted(b)) for b in pattern))


def support(widths: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, d in enumerate(widths) if d > 0)


# ---------------------------------------------------------------------------
# shell enumeration


def compositions(total: int, parts: int, minimum: int = 1) -> np.ndarray:
    """All vectors of ``parts`` integers ``>= minimum`` summing to ``total``."""
    free = total - parts * minimum
    if free < 0:
        return np.zeros((0, parts), dtype=np.int64)
    return _weak_compositions(free, parts) + minimum


@lru_cache(maxsize=256)
def _weak_compositions_cached(total: int, parts: int) -> np.ndarray:
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for v in range(total + 1):
        sub = _weak_compositions_cached(total - v, parts - 1)
        blocks.append(np.hstack([np.full((len(sub), 1), v, dtype=np.int64), sub]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _weak_compositions(total: int, parts: int) -> np.ndarray:
    return _weak_compositions_cached(total, parts)


def iter_shell(total: int, parts: int, minimum: int, chunk_rows: int = 400_000) -> Iterator[np.ndarray]:
    """Chunks of :func:`compositions`, split on the leading entries to bound memory."""
    free = total - parts * minimum
    if free < 0:
        return
    if parts <= 3 or math.comb(free + parts - 1, parts - 1) <= chunk_rows:
        yield compositions(total, parts, minimum)
        return
    for v in range(minimum, total - (parts - 1) * minimum + 1):
        for sub in iter_shell(total - v, parts - 1, minimum, chunk_rows):
            yield np.hstack([np.full((len(sub), 1), v, dtype=np.int64), sub])


# evaluate(chunk) -> iterable of (exponent numerators, weights) for contributing rows
Evaluator = Callable[[np.ndarray], Iterable[tuple[np.ndarray, np.ndarray]]]


@dataclass
class ShellResult:
    coeffs: dict[int, int]
    scale: int
    stop_shell: int
    checked_to: int

    def series(self, order: Fraction | int) -> LaurentSeries:
        return LaurentSeries(self.scale, self.coeffs, order)


def _evaluate_shell(evaluate: Evaluator, s: int, n_vars: int, minimum: int,
                    bound: int) -> tuple[dict[int, int], int | None]:
    acc: dict[int, int] = {}
    lowest: int | None = None
    for chunk in iter_shell(s, n_vars, minimum):
        for exps, weights in evaluate(chunk):
            if len(exps) == 0:
                continue
            m = int(exps.min())
            lowest = m if lowest is None else min(lowest, m)
            keep = exps <= bound
            if not keep.any():
                continue
            e = exps[keep]
            w = np.broadcast_to(weights, exps.shape)[keep]
            uniq, inv = np.unique(e, return_inverse=True)
            sums = np.zeros(len(uniq), dtype=np.int64)
            np.add.at(sums, inv, w)
            for x, c in zip(uniq.tolist(), sums.tolist()):
                acc[x] = acc.get(x, 0) + c
    return acc, lowest


def shell_sum(n_vars: int, evaluate: Evaluator, order: Fraction | int, scale: int, *,
              minimum: int = 1, window: int = 8, verify: bool = True,
              max_shell: int = 4000, jobs: int = 1) -> ShellResult:
    """Sum contributions over integer vectors, shell by shell in the total ``s``.

    Exponents are handled as integer numerators at the fixed ``scale``. The loop
    stops once ``window`` consecutive shells contain no contribution at an
    exponent ``<= order``, counting from the first nonempty shell; a run of
    ``4 * window`` empty shells from the start also stops it. With ``verify``
    the enumeration then continues up to twice the stopping shell and any new
    low-order term is a hard error.
    """
    bound = math.floor(Fraction(order) * scale)
    acc: dict[int, int] = {}
    quiet = empty = 0
    seen = False
    s = n_vars * minimum
    jobs = max(1, int(jobs))
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None

    def run(shells: list[int]):
        if pool is None:
            return [_evaluate_shell(evaluate, t, n_vars, minimum, bound) for t in shells]
        return list(pool.map(lambda t: _evaluate_shell(evaluate, t, n_vars, minimum, bound), shells))

    try:
        stop = None
        while stop is None:
            if s > max_shell:
                raise EnumerationError(f"no stabilisation below shell {max_shell}")
            batch = list(range(s, s + jobs))
            for t, (part, lowest) in zip(batch, run(batch)):
                for e, c in part.items():
                    acc[e] = acc.get(e, 0) + c
                if stop is not None:
                    continue
                if lowest is None and not seen:
                    # strict constraints can empty the first shells; these do not count as quiet
                    empty += 1
                    if empty >= 4 * window:
                        stop = t
                    continue
                seen = True
                quiet = quiet + 1 if (lowest is None or lowest > bound) else 0
                if quiet >= window:
                    stop = t
            s = batch[-1] + 1
        checked = stop
        if verify:
            extra = list(range(s, 2 * stop + 1))
            for t, (part, _) in zip(extra, run(extra)):
                if part:
                    raise EnumerationError(
                        f"bound doubling changed the result: shell {t} contributes below the order"
                    )
            checked = max(2 * stop, s - 1)
    finally:
        if pool is not None:
            pool.shutdown()
    return ShellResult({e: c for e, c in acc.items() if c}, scale, stop, checked)


def with_eta_prefactor(inner: LaurentSeries, m: int, order: int) -> LaurentSeries:
    """``inner / prod (1-q^k)^m`` with enough prefactor terms to stay exact through ``order``."""
    low = min(Fraction(0), inner.min_exponent())
    top = max(0, math.ceil(order - low))
    return (eta_inverse_power(m, top) * inner).truncate(order)


# ---------------------------------------------------------------------------
# the engine


def _pattern_table(n: int) -> dict[tuple[int, ...], list[tuple[Pattern, int]]]:
    """For every support of size >= 3, the patterns with >= 3 blocks and their Euler numbers."""
    table = {}
    for mask in range(1 << n):
        supp = tuple(i for i in range(n) if mask >> i & 1)
        if len(supp) < 3:
            continue
        table[supp] = [(p, block_count_euler(len(p)))
                       for p in set_partitions(supp) if len(p) >= 3]
    return table


def _rank2_evaluator(fan: Fan, H: DivisorClass, c1: DivisorClass) -> Evaluator:
    n = fan.n
    hd = np.array([intersection(fan, H, fan.D(i)) for i in range(n)], dtype=np.int64)
    f = c1.canonical
    c1sq = c1.square()
    a = np.array(fan.a, dtype=np.int64)
    table = _pattern_table(n)
    bits = 1 << np.arange(n, dtype=np.int64)

    def evaluate(chunk: np.ndarray):
        ok = np.ones(len(chunk), dtype=bool)
        for i in range(2, n):
            ok &= (-f[i - 2] + chunk[:, 0] * fan.xi[i] + chunk[:, 1] * fan.eta[i] + chunk[:, i]) % 2 == 0
        X = chunk[ok]
        if len(X) == 0:
            return
        nxt = np.roll(X, -1, axis=1)
        dsq = (-a * X * X).sum(axis=1) + 2 * (X * nxt).sum(axis=1)
        base4 = c1sq - dsq
        w = X * hd
        total = w.sum(axis=1)
        codes = ((X > 0) * bits).sum(axis=1)
        for supp, patterns in table.items():
            code = sum(1 << i for i in supp)
            sel = codes == code
            if not sel.any():
                continue
            Xs, ws, ts, b4 = X[sel], w[sel], total[sel], base4[sel]
            for pattern, euler in patterns:
                stable = np.ones(len(Xs), dtype=bool)
                group = {}
                for b, block in enumerate(pattern):
                    stable &= 2 * ws[:, list(block)].sum(axis=1) < ts
                    for i in block:
                        group[i] = b
                if not stable.any():
                    continue
                corner = np.zeros(len(Xs), dtype=np.int64)
                for i in supp:
                    j = (i + 1) % n
                    if j in group and group[i] != group[j]:
                        corner += Xs[:, i] * Xs[:, j]
                yield (b4 + 4 * corner)[stable], np.int64(euler)

    return evaluate


def rank2_inner_sum(fan: Fan, H: DivisorClass, c1: DivisorClass, order: int, *,
                    window: int = 8, verify: bool = True, jobs: int = 1) -> LaurentSeries:
    """The signed stratum sum without the eta prefactor, as a series at scale 4."""
    if not is_ample(fan, H):
        raise AmpleError("H is not ample")
    res = shell_sum(fan.n, _rank2_evaluator(fan, H, c1), order, 4, minimum=0,
                    window=window, verify=verify, jobs=jobs)
    return res.series(order)


def generating_function_rank2(fan: Fan, H: DivisorClass, c1: DivisorClass, order: int, *,
                              window: int = 8, verify: bool = True, jobs: int = 1) -> LaurentSeries:
    """``sum_c2 e(M^H(2, c1, c2)) q^c2`` through ``q^order``."""
    inner = rank2_inner_sum(fan, H, c1, order, window=window, verify=verify, jobs=jobs)
    return assert_integer_exponents(with_eta_prefactor(inner, 2 * fan.n, order))
