import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mutau.errors import CheckFailure, NonPositiveS
from mutau.hfun import (BoundTable, H, H_prime, bound, fmax_check, fraction_str, integral_H,
                        integral_recurrence_holds, monte_carlo_H, peak_value)


def irwin_hall_cdf(s, d):
    # textbook formula written out separately from the package
    s = Fraction(s)
    if s <= 0:
        return Fraction(0)
    if s >= d:
        return Fraction(1)
    return sum((-1) ** k * math.comb(d, k) * (s - k) ** d for k in range(math.floor(s) + 1)) / math.factorial(d)


def lattice_volume(s, d, n):
    # (1/n^d) * #{a in [0,n)^d : sum(a + 1/2) <= s*n}, midpoint rule on the cube
    s = Fraction(s)
    cnt = sum(1 for a in product(range(n), repeat=d) if sum(Fraction(2 * x + 1, 2) for x in a) <= s * n)
    return Fraction(cnt, n ** d)


def test_spot_values():
    assert H(Fraction(1, 2), 2) == Fraction(1, 8)
    assert H(3, 3) == 1
    assert H(Fraction(3, 2), 2) == Fraction(7, 8)
    assert H(10, 3) == 1


def test_nonpositive_s():
    with pytest.raises(NonPositiveS):
        H(0, 2)
    with pytest.raises(NonPositiveS):
        H(Fraction(-1, 3), 2)


def test_derivative_examples():
    assert H_prime(Fraction(1, 2), 2) == Fraction(1, 2)
    assert H_prime(1, 2) == 1


def test_bounds():
    assert [bound(n) for n in (2, 3, 4, 5)] == [Fraction(4, 3), Fraction(3, 2), Fraction(192, 115), Fraction(20, 11)]
    for n in range(2, 13):
        assert bound(n) < n
        assert bound(n) * (H(Fraction(n + 1, 2), n) - H(Fraction(n - 1, 2), n)) == 1


def test_bound_table_csv():
    lines = BoundTable(4).to_csv().splitlines()
    assert lines[0] == "n,bound,preview"
    assert lines[3] == "4,192/115,1.669565"


def test_fmax():
    assert fmax_check(2)["max"] == Fraction(3, 4)
    assert fmax_check(3)["max"] == Fraction(2, 3)
    assert fmax_check(4, grid=40)["symmetric"]
    assert peak_value(2) == Fraction(3, 4)
    with pytest.raises(ValueError):
        fmax_check(3, grid=4)


def test_fmax_failure_is_reported(monkeypatch):
    import mutau.hfun as hf
    real = hf._H
    # bend H slightly so that the peak moves away from (n+1)/2
    monkeypatch.setattr(hf, "_H", lambda s, d: real(s, d) + (Fraction(s) ** 2 / 50 if d == 3 else 0))
    with pytest.raises(CheckFailure):
        fmax_check(3, grid=16)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_matches_independent_formula(d, t):
    s = t * d
    if s == 0:
        return
    assert H(s, d) == irwin_hall_cdf(s, d)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_complement_and_small_s(d, t):
    s = t * d
    if 0 < s < d:
        assert H(s, d) + H(d - s, d) == 1
    if 0 < s <= 1:
        assert H(s, d) == s ** d / math.factorial(d)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.fractions(min_value=0, max_value=1, max_denominator=40))
def test_derivative_symmetry(d, t):
    s = t * d
    if 0 < s < d:
        assert H_prime(s, d) == H_prime(d - s, d)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.fractions(min_value=0, max_value=1, max_denominator=40))
def test_integral_recurrence(d, t):
    s = t * (d + 1)
    if s > 0:
        assert integral_recurrence_holds(s, d)


def test_monotone_on_grid():
    for d in range(1, 7):
        vals = [H(Fraction(k, 16), d) for k in range(1, 16 * d + 1)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_integral_edges():
    assert integral_H(-3, -1, 2) == 0
    assert integral_H(5, 7, 2) == 2
    assert integral_H(1, 0, 1) == -Fraction(1, 2)


def test_lattice_oracle_trend():
    # a midpoint-rule lattice count converges to the same volume
    target = H(Fraction(3, 2), 2)
    gaps = [abs(lattice_volume(Fraction(3, 2), 2, n) - target) for n in (10, 40, 160)]
    assert gaps[-1] < Fraction(1, 100)


def test_monte_carlo():
    est = monte_carlo_H(1, 2, 10 ** 5, seed=4)
    assert est.contains(Fraction(1, 2))
    assert monte_carlo_H(3, 3, 2000, seed=1).estimate == 1.0
    a = monte_carlo_H(Fraction(3, 2), 3, 5000, seed=9)
    b = monte_carlo_H(Fraction(3, 2), 3, 5000, seed=9)
    assert a == b
    with pytest.raises(ValueError):
        monte_carlo_H(1, 2, 10)


def test_fraction_str():
    assert fraction_str(Fraction(6, 4)) == "3/2"
    assert fraction_str(Fraction(4, 1)) == "4"
