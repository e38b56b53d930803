"""Independent reference computations shared by the unit and acceptance tests.

None of these call into the package's intersection code or the rank 2 corner
bookkeeping; they rebuild what they need from the rays.
"""

from fractions import Fraction
import random

import numpy as np

from toricsheaves.chern import EquivariantData, chern_character
from toricsheaves.rank2 import base_exponent, corner_blocks, set_partitions, support
from toricsheaves.toric import hirzebruch, p2, stellar_subdivide

PRESETS = {
    "P2": p2(),
    "P1xP1": hirzebruch(0),
    "F1": hirzebruch(1),
    "F2": hirzebruch(2),
    "blowup": stellar_subdivide(hirzebruch(1), 1),
}


def pairing_from_rays(rays):
    """Intersection matrix of the boundary divisors, solved from ``v_{i-1} + v_{i+1} = k_i v_i``."""
    n = len(rays)
    Q = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        v = np.array(rays[i], dtype=float)
        s = np.array(rays[i - 1], dtype=float) + np.array(rays[(i + 1) % n], dtype=float)
        k, *_ = np.linalg.lstsq(v[:, None], s, rcond=None)
        Q[i, i] = -int(round(k[0]))
        Q[i, (i + 1) % n] = Q[(i + 1) % n, i] = 1
    return Q


def rank1_closed_form(rays, A, parts):
    """``c1`` and ``ch2`` of ``(1 - sum p_i pt) exp(-sum A_i D_i)``."""
    Q = pairing_from_rays(rays)
    x = np.array(A, dtype=np.int64)
    return tuple(-x), Fraction(int(x @ Q @ x), 2) - sum(parts)


def _dim(*vectors):
    return 0 if not vectors else int(np.linalg.matrix_rank(np.array(vectors, dtype=float)))


def _filtration(A, width, point):
    """Spanning vectors of the two step filtration at ``lam``: 0, then the line, then C^2."""
    def at(lam):
        if lam < A:
            return []
        if lam < A + width:
            return [point]
        return [(1.0, 0.0), (0.0, 1.0)]
    return at


def _meet_dim(U, V):
    return len(U) + len(V) - _dim(*(U + V)) if U and V else 0


def hole_count(A, widths, pattern):
    """Lattice points, summed over corners, where the intersected filtrations fall
    short of the split sheaf with the same widths."""
    n = len(A)
    group = {i: b for b, block in enumerate(pattern) for i in block}
    point = {i: (1.0, float(group.get(i, -1))) for i in range(n)}
    total = 0
    for i in range(n):
        j = (i + 1) % n
        Ei = _filtration(A[i], widths[i], point[i])
        Ej = _filtration(A[j], widths[j], point[j])
        for l1 in range(A[i] - 1, A[i] + widths[i] + 1):
            for l2 in range(A[j] - 1, A[j] + widths[j] + 1):
                U, V = Ei(l1), Ej(l2)
                split = min(len(U), len(V))
                total += split - _meet_dim(U, V)
    return total


def random_display(rng: random.Random, n: int):
    A = [rng.randint(-3, 3) for _ in range(n)]
    widths = [rng.choice([0, 0, 1, 1, 2, 3]) for _ in range(n)]
    patterns = list(set_partitions(support(widths)))
    return A, widths, rng.choice(patterns)


def check_rank2_display(fan, A, widths, pattern):
    holes = hole_count(A, widths, pattern)
    data = EquivariantData.build(2, A, [[w] for w in widths], [[holes, 0]] + [[0, 0]] * (fan.n - 1))
    ch = chern_character(fan, data)
    expected = base_exponent(fan, widths, ch.c1) + corner_blocks(widths, pattern)
    return ch.c2 == expected, (ch.c2, expected)
