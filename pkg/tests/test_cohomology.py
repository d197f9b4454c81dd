from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from toricvanish.cohomology import (
    NonIntegralDivisorError,
    cohomology,
    enumeration_box,
    euler_characteristic,
    euler_via_resolution,
    h0_lattice_count,
)
from toricvanish.divisors import canonical, divisor, intersect, is_nef, zero
from toricvanish.fan import hirzebruch, is_smooth
from toricvanish.harness import random_fan, trial_rng


def p1(n):
    # (h0, h1) of O(n) on P^1
    return (n + 1 if n >= 0 else 0, -n - 1 if n <= -2 else 0)


def kunneth(a, b):
    (x0, x1), (y0, y1) = p1(a), p1(b)
    return (x0 * y0, x0 * y1 + x1 * y0, x1 * y1)


def p2(d):
    return (comb(d + 2, 2) if d >= 0 else 0, 0, comb(-d - 1, 2) if d <= -3 else 0)


def test_p1xp1_kunneth(P1P1):
    for cs in [(c0, c1, c2, c3) for c0 in range(-3, 3) for c1 in range(-3, 3) for c2 in (-1, 0, 2) for c3 in (0, -2)]:
        t = cohomology(P1P1, divisor(P1P1, cs))
        assert (t.h0, t.h1, t.h2) == kunneth(cs[0] + cs[2], cs[1] + cs[3]), cs


def test_p2_binomials(P2):
    for a in range(-6, 6):
        for b in range(-2, 3):
            t = cohomology(P2, divisor(P2, [a, b, 0]))
            assert (t.h0, t.h1, t.h2) == p2(a + b)


def test_hirzebruch_direct_image():
    # O(c * D_3) on F_a: sections = sum_{j<=c} h0(P^1, O(a*j)) ... on the fibre direction D_2 ~ D_0
    for a in range(4):
        X = hirzebruch(a)
        for c in range(0, 4):
            t = cohomology(X, divisor(X, [0, 0, 0, c]))
            assert t.h0 == sum(a * j + 1 for j in range(c + 1))
            assert t.h1 == t.h2 == 0


def test_known_tables(P1P1, P2):
    assert str(cohomology(P1P1, divisor(P1P1, [1, 1, 0, 0]))) == "h0=4 h1=0 h2=0 chi=4"
    assert str(cohomology(P1P1, divisor(P1P1, [-2, 1, 0, 0]))) == "h0=0 h1=2 h2=0 chi=-2"
    assert str(cohomology(P2, canonical(P2))) == "h0=0 h1=0 h2=1 chi=1"
    assert cohomology(P2, zero(P2)).h0 == 1


def test_non_integral_rejected(P2):
    with pytest.raises(NonIntegralDivisorError):
        cohomology(P2, divisor(P2, [Fraction(1, 2), 0, 0]))


fans = st.integers(0, 10**6).map(lambda t: random_fan(trial_rng(11, t), 9, 4))
ints = st.lists(st.integers(-3, 3), min_size=9, max_size=9)


@settings(max_examples=120, deadline=None)
@given(fans, ints)
def test_rows_equal_scan(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    assert cohomology(fan, D) == cohomology(fan, D, method="scan")


@settings(max_examples=120, deadline=None)
@given(fans, ints)
def test_box_padding_irrelevant(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    assert cohomology(fan, D, padding=1) == cohomology(fan, D, padding=6)


@settings(max_examples=150, deadline=None)
@given(fans, ints)
def test_h0_is_polytope_count(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    assert cohomology(fan, D).h0 == h0_lattice_count(fan, D)


@settings(max_examples=150, deadline=None)
@given(fans, ints)
def test_euler_characteristic(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    t = cohomology(fan, D)
    assert t.euler == euler_via_resolution(fan, D)
    if is_smooth(fan):
        assert t.euler == euler_characteristic(fan, D)


@settings(max_examples=150, deadline=None)
@given(fans, ints)
def test_serre_duality(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    t, s = cohomology(fan, D), cohomology(fan, canonical(fan) - D)
    assert (t.h0, t.h1, t.h2) == (s.h2, s.h1, s.h0)


@settings(max_examples=150, deadline=None)
@given(fans, ints, st.integers(-3, 3), st.integers(-3, 3))
def test_linear_equivalence_invariance(fan, cs, mx, my):
    D = divisor(fan, cs[: len(fan)])
    P = divisor(fan, [mx * u[0] + my * u[1] for u in fan.rays])
    assert cohomology(fan, D) == cohomology(fan, D + P)


@settings(max_examples=150, deadline=None)
@given(fans, ints)
def test_nef_integral_has_no_higher_cohomology(fan, cs):
    D = divisor(fan, cs[: len(fan)])
    if is_nef(D):
        t = cohomology(fan, D)
        assert t.h1 == t.h2 == 0


def test_intersection_from_euler_characteristics():
    # on a smooth surface D.E = chi(D+E) - chi(D) - chi(E) + chi(0), computed by counting weights only
    for t in range(40):
        fan = random_fan(trial_rng(3, t), 8, 4)
        if not is_smooth(fan):
            continue
        n = len(fan)
        chi = lambda D: cohomology(fan, D).euler
        for i in range(n):
            for j in range(n):
                Di = divisor(fan, [int(k == i) for k in range(n)])
                Dj = divisor(fan, [int(k == j) for k in range(n)])
                assert intersect(Di, Dj) == chi(Di + Dj) - chi(Di) - chi(Dj) + chi(zero(fan))


def test_box_covers_polytope(P2):
    D = divisor(P2, [3, 0, 0])
    xmin, xmax, ymin, ymax = enumeration_box(P2, D)
    assert xmin < -3 and xmax > 0 and ymin < 0 and ymax > 3
