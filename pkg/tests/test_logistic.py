import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import Polynomial

from discdyn.core import DomainError
from discdyn.logistic import (
    Stability,
    bifurcation_diagram,
    cascade_scan,
    clusters,
    find_periodic_orbits,
    fixed_points,
    forcing_spot_check,
    iterate_n,
    logistic_step,
)


def poly_iterate(a, n):
    """f^n as an explicit polynomial (independent of the scanning code)."""
    f = Polynomial([0.0, a, -a])
    p = Polynomial([0.0, 1.0])
    for _ in range(n):
        p = f(p)
    return p


def poly_cycle_points(a, n):
    """Real roots in [0, 1] of f^n(x) - x from the companion matrix."""
    # companion-matrix roots are only good to ~1e-7 at degree 16
    roots = (poly_iterate(a, n) - Polynomial([0.0, 1.0])).roots()
    real = roots[np.abs(roots.imag) < 1e-5].real
    return np.sort(real[(real >= -1e-12) & (real <= 1 + 1e-12)])


def mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def prime_cycles_full_map(n):
    return sum(mobius(n // d) * 2**d for d in range(1, n + 1) if n % d == 0) // n


# -- the map ----------------------------------------------------------------

def test_step_values():
    assert logistic_step(0.0, 3.7) == 0.0
    assert logistic_step(0.5, 4.0) == 1.0
    assert logistic_step(0.6, 2.5) == pytest.approx(0.6, abs=1e-15)


@given(st.floats(0, 1), st.floats(0.01, 4))
def test_unit_interval_invariant(x, a):
    y = x
    for _ in range(20):
        y = logistic_step(y, a)
        assert 0.0 <= y <= a / 4 + 1e-15 and y <= 1.0


# -- fixed points -------------------------------------------------------------

def test_fixed_points_below_one():
    (zero,) = fixed_points(0.5)
    assert zero.points == (0.0,) and zero.stability is Stability.ATTRACTING


def test_fixed_points_superstable():
    zero, p = fixed_points(2.0)
    assert zero.stability is Stability.REPELLING
    assert p.points == (0.5,) and p.multiplier == 0.0 and p.stability is Stability.ATTRACTING


def test_fixed_point_nonhyperbolic_at_three():
    _, p = fixed_points(3.0)
    assert p.points[0] == pytest.approx(2 / 3)
    assert p.multiplier == pytest.approx(-1.0)
    assert p.stability is Stability.NONHYPERBOLIC


@pytest.mark.parametrize("a", np.linspace(0.5, 4.0, 51)[1:])
def test_scan_agrees_with_closed_form_fixed_points(a):
    scanned = find_periodic_orbits(a, 1)
    closed = fixed_points(a)
    assert len(scanned) == len(closed)
    for s, c in zip(scanned, closed):
        assert s.points[0] == pytest.approx(c.points[0], abs=1e-10)
        assert s.multiplier == pytest.approx(c.multiplier, abs=1e-8)


# -- periodic orbits ----------------------------------------------------------

def test_period_two_at_3_2():
    (cyc,) = find_periodic_orbits(3.2, 2)
    a = 3.2
    s = math.sqrt((a + 1) * (a - 3))
    assert cyc.points == pytest.approx(((a + 1 - s) / (2 * a), (a + 1 + s) / (2 * a)), abs=1e-12)
    assert cyc.points == pytest.approx((0.5130445, 0.7994555), abs=1e-7)
    assert cyc.stability is Stability.ATTRACTING


def test_no_period_two_before_three():
    assert find_periodic_orbits(2.0, 2) == []
    assert len(poly_cycle_points(2.0, 2)) == 2  # only the fixed points


def test_period_three_at_3_83():
    cycles = find_periodic_orbits(3.83, 3)
    assert len(cycles) == 2
    attracting = [c for c in cycles if c.stability is Stability.ATTRACTING]
    assert len(attracting) == 1
    # oracle 1: the critical orbit settles on the attracting cycle
    tail = np.sort([iterate_n(0.5, 3.83, 3000 + k) for k in range(3)])
    np.testing.assert_allclose(attracting[0].points, tail, atol=1e-9)
    # oracle 2: polynomial roots of f^3(x) - x minus the fixed points
    roots = poly_cycle_points(3.83, 3)
    fixed = [0.0, 2.83 / 3.83]
    period3 = [r for r in roots if min(abs(r - f) for f in fixed) > 1e-6]
    ours = sorted(p for c in cycles for p in c.points)
    np.testing.assert_allclose(ours, period3, rtol=0, atol=1e-8)


def test_period_three_absent_before_window():
    assert find_periodic_orbits(3.82, 3) == []


@pytest.mark.parametrize("n", range(1, 9))
def test_full_map_cycle_counts(n):
    assert len(find_periodic_orbits(4.0, n)) == prime_cycles_full_map(n)


@pytest.mark.parametrize("a,n", [(3.2, 2), (3.5, 4), (3.75, 5), (3.83, 6), (3.9, 7), (4.0, 7)])
def test_cycle_invariants(a, n):
    cycles = find_periodic_orbits(a, n)
    assert cycles
    for c in cycles:
        assert c.period == n and len(c.points) == n
        assert list(c.points) == sorted(c.points)
        for x in c.points:
            assert abs(iterate_n(x, a, n) - x) < 1e-10
            for d in range(1, n):
                if n % d == 0:
                    assert abs(iterate_n(x, a, d) - x) > 1e-9
        # closed under f: images are a permutation of the points
        images = np.sort([logistic_step(x, a) for x in c.points])
        np.testing.assert_allclose(images, c.points, atol=1e-9)
        assert c.multiplier == pytest.approx(math.prod(a * (1 - 2 * x) for x in c.points), abs=1e-8)
        h = 1e-7
        x = c.points[0]
        fd = (iterate_n(x + h, a, n) - iterate_n(x - h, a, n)) / (2 * h)
        assert fd == pytest.approx(c.multiplier, abs=1e-5 * max(1.0, abs(c.multiplier)))


@pytest.mark.parametrize("a,n", [(3.3, 2), (3.5, 4), (3.9, 3), (4.0, 4)])
def test_cycle_points_match_polynomial_roots(a, n):
    ours = sorted(p for d in range(1, n + 1) if n % d == 0
                  for c in find_periodic_orbits(a, d) for p in c.points)
    np.testing.assert_allclose(ours, poly_cycle_points(a, n), rtol=0, atol=1e-6)


@pytest.mark.parametrize("n", [0, 13])
def test_period_cap(n):
    with pytest.raises(DomainError):
        find_periodic_orbits(3.5, n)


def test_parameter_range():
    with pytest.raises(DomainError):
        find_periodic_orbits(4.5, 2)


# -- cascade --------------------------------------------------------------------

@pytest.fixture(scope="module")
def cascade():
    return cascade_scan(2.5, 3.57, 6)


def test_cascade_first_flip(cascade):
    assert cascade.onsets[0][0] == 2
    assert abs(cascade.onsets[0][1] - 3.0) <= 1e-6


def test_cascade_second_flip(cascade):
    assert cascade.onsets[1][0] == 4
    assert abs(cascade.onsets[1][1] - 3.449489742783179) <= 1e-5
    assert abs(cascade.onsets[1][1] - (1 + math.sqrt(6))) <= 1e-7


def test_cascade_shape(cascade):
    assert cascade.complete
    assert cascade.periods == [2, 4, 8, 16, 32, 64]
    a = cascade.a_values
    assert all(x < y for x, y in zip(a, a[1:]))
    assert 3.56 < a[5] < 3.58
    assert a[-1] < 3.5700


def test_cascade_multiplier_crosses_minus_one(cascade):
    for period, onset in cascade.onsets[:3]:
        p = period // 2
        before = [c for c in find_periodic_orbits(onset - 1e-4, p) if c.stability is Stability.ATTRACTING]
        after = [c for c in find_periodic_orbits(onset + 1e-4, p) if c.multiplier < -1]
        assert before and after


def test_cascade_partial_record():
    rec = cascade_scan(2.5, 3.5, 6)
    assert not rec.complete
    assert rec.periods == [2, 4]


def test_cascade_bad_range():
    with pytest.raises(DomainError):
        cascade_scan(0.5, 3.0, 3)


# -- diagram --------------------------------------------------------------------

def test_diagram_fixed_point_band():
    for a, xs in bifurcation_diagram(2.9, 2.99, 10, 2000, 50, 0.3):
        assert np.all(np.abs(xs - (a - 1) / a) < 1e-4)


def test_diagram_shape_and_grid():
    cols = bifurcation_diagram(3.0, 4.0, 5, 10, 7)
    assert [a for a, _ in cols] == pytest.approx([3.0, 3.25, 3.5, 3.75, 4.0])
    assert all(len(xs) == 7 for _, xs in cols)


@pytest.mark.parametrize("a,count", [(3.2, 2), (3.83, 3)])
def test_diagram_cluster_counts(a, count):
    ((_, xs),) = [c for c in bifurcation_diagram(a, a, 2, 2000, 200)[:1]]
    assert len(clusters(xs)) == count


def test_clusters_match_cascade_periods(cascade):
    a = [2.5] + cascade.a_values
    periods = [1] + cascade.periods
    for k in range(5):
        mid = 0.5 * (a[k] + a[k + 1])
        ((_, xs),) = bifurcation_diagram(mid, mid, 2, 20_000, 256)[:1]
        assert len(clusters(xs)) == periods[k]


def test_diagram_validation():
    with pytest.raises(DomainError):
        bifurcation_diagram(3.0, 3.5, 1)
    with pytest.raises(DomainError):
        bifurcation_diagram(3.0, 3.5, 4, x0=1.0)
    with pytest.raises(DomainError):
        bifurcation_diagram(3.5, 4.5, 4)


# -- forcing --------------------------------------------------------------------

@pytest.mark.parametrize("a", [3.83, 4.0])
def test_forcing_all_periods(a):
    assert forcing_spot_check(a) == {n: True for n in range(1, 8)}


def test_forcing_refused_without_period_three():
    with pytest.raises(DomainError):
        forcing_spot_check(3.2)
