from fractions import Fraction
import itertools

import pytest

from toricsheaves.closedforms import fa_rank2
from toricsheaves.qseries import LaurentSeries
from toricsheaves.wallcross import (
    WallContext,
    WallCrossingError,
    goettsche_series,
    goettsche_wallcross,
    is_wall,
    joyce_wallcross,
    numeric_wallcross,
    p1p1_wallcross_closed,
    wall_free_refinement,
)

from _golden import WALL_HALF

HALF = Fraction(1, 2)
PARITIES = list(itertools.product((0, 1), repeat=2))


def test_is_wall():
    assert is_wall(WallContext(0, 1, 0, 0, 5))
    assert not is_wall(WallContext(0, 1, 1, 0, 5))
    assert is_wall(WallContext(0, HALF, 1, 0, 5))


def test_context_validation():
    with pytest.raises(ValueError):
        WallContext(2, 2, 0, 0, 5)
    assert WallContext(1, Fraction(6, 4), 0, 0, 5).alpha0 == 3


@pytest.mark.parametrize("c1", sorted(WALL_HALF))
def test_golden_at_half(c1):
    ctx = WallContext(0, HALF, *c1, 10)
    for s in (numeric_wallcross(ctx), p1p1_wallcross_closed(ctx)):
        assert s.integer_coefficients() == WALL_HALF[c1]


@pytest.mark.parametrize("lam", [HALF, 1, 2])
@pytest.mark.parametrize("c1", PARITIES)
def test_routes_agree(lam, c1):
    ctx = WallContext(0, lam, *c1, 8)
    closed = p1p1_wallcross_closed(ctx)
    assert numeric_wallcross(ctx) == closed
    assert joyce_wallcross(0, lam, *c1, 8) == closed
    if not is_wall(ctx):
        assert closed.is_zero()


@pytest.mark.parametrize("lam", [HALF, 2, Fraction(3, 2)])
@pytest.mark.parametrize("c1", PARITIES)
def test_fan_flip_negates(lam, c1):
    f3, f4 = c1
    here = p1p1_wallcross_closed(WallContext(0, lam, f3, f4, 8))
    there = p1p1_wallcross_closed(WallContext(0, 1 / lam, f4, f3, 8))
    assert here == -there


def test_nearby_wall_is_not_mistaken_for_the_limit():
    # coarse refinements of 2/3 also straddle a wall of type (c1, 8) for c1 = (1, 1)
    ctx = WallContext(0, Fraction(2, 3), 1, 1, 8)
    assert numeric_wallcross(ctx).is_zero()
    assert p1p1_wallcross_closed(ctx).is_zero()


@pytest.mark.parametrize("a,lam0,f3,f4,order", [
    (0, Fraction(2, 3), 1, 1, 8), (0, HALF, 0, 0, 12), (1, Fraction(7, 5), 1, 0, 9), (2, 3, 0, 1, 10),
])
def test_refinement_window_holds_no_other_wall(a, lam0, f3, f4, order):
    ctx = WallContext(a, lam0, f3, f4, order)
    K = wall_free_refinement(ctx)
    eps = Fraction(1, K * ctx.beta0)
    assert lam0 - eps > a
    c1sq = 2 * f3 * f4 + a * f4 * f4
    # brute force over classes x D3 + y D4 orthogonal to some H in the window
    for y in range(1, 200):
        for x in range(-int((lam0 + 1) * y) - 1, 1):
            lam = Fraction(-x, y)
            if lam == lam0 or not lam0 - eps <= lam <= lam0 + eps:
                continue
            assert (2 * lam - a) * y * y > 4 * order - c1sq, (x, y)


def test_closed_form_needs_a_zero():
    with pytest.raises(ValueError):
        p1p1_wallcross_closed(WallContext(1, 2, 0, 1, 5))


def test_numeric_reports_non_stabilization():
    with pytest.raises(WallCrossingError, match="did not stabilize"):
        numeric_wallcross(WallContext(0, HALF, 0, 0, 6), cap=2)


@pytest.mark.parametrize("a,lam0,f3,f4", [(2, 3, 0, 1), (1, 2, 1, 1), (1, Fraction(5, 2), 0, 0), (3, 4, 1, 0)])
def test_single_sum_matches_numeric_for_positive_a(a, lam0, f3, f4):
    ctx = WallContext(a, lam0, f3, f4, 7)
    assert joyce_wallcross(a, lam0, f3, f4, 7) == numeric_wallcross(ctx)


@pytest.mark.parametrize("a", [0, 1, 2, 3])
@pytest.mark.parametrize("eps", [0, 1])
def test_specialized_crossing_matches_single_sum(a, eps):
    for lam0 in (a + HALF, a + 1, a + 2, a + Fraction(4, 3)):
        assert goettsche_wallcross(a, lam0, eps, 8) == joyce_wallcross(a, lam0, eps - a, 1, 8)


@pytest.mark.parametrize("a,lam,eps", [(0, 1, 0), (1, 2, 0), (1, 3, 1), (2, 3, 0), (0, Fraction(3, 2), 1)])
def test_lattice_sum_matches_six_sum_off_wall(a, lam, eps):
    lam = Fraction(lam)
    assert not is_wall(WallContext(a, lam, eps - a, 1, 8))
    got = goettsche_series(a, lam, eps, 8)
    assert got == fa_rank2(a, lam.numerator, lam.denominator, eps - a, 1, 8)


def test_lattice_sum_refuses_walls():
    with pytest.raises(ValueError, match="on a wall"):
        goettsche_series(0, 1, 1, 5)
    # c1 . H = 2 for a = 1, lambda = 3, epsilon = 0
    with pytest.raises(ValueError, match="on a wall"):
        goettsche_series(1, 3, 0, 5)


def test_lattice_sum_jumps_by_the_crossing_term():
    # on either side of the wall at lambda = 3 the series differ by the crossing term
    a, eps, order = 1, 0, 8
    up = goettsche_series(a, Fraction(31, 10), eps, order)
    down = goettsche_series(a, Fraction(29, 10), eps, order)
    assert up - down == goettsche_wallcross(a, 3, eps, order)
    assert isinstance(up, LaurentSeries)
