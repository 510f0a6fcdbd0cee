from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carpet_lab.coding import Coding, pi, random_coding
from carpet_lab.core import c0_bounds, ell
from carpet_lab.errors import DepthTooShallowError, EmptySquareError, NoAdmissibleCenterError, OutOfRangeError
from carpet_lab.measure import (
    approx_square,
    approx_square_table,
    ball_measure_bounds,
    big_u,
    c1_bounds,
    cylinder_ratio,
    cylinder_ratio_check,
    k0_of_rho,
    k_of_r,
    log_mu_interval,
    monte_carlo_ball_measure,
    mu_approx_square,
    sandwich_checks,
    square_of,
    xi,
    xi_bracket,
)

from .conftest import D, E, F, spec_and_coding, specs

WITNESS = Coding(((7, 1),), ((1, 0),))


def test_mu_examples():
    assert mu_approx_square(E, approx_square(E, 2, (0, 0), (0, 0, 0))) == Fraction(3, 2197)
    assert mu_approx_square(E, approx_square(E, 1, (0,), (0,))) == Fraction(1, 13)


def test_log_mu_encloses_exact_value():
    from mpmath import mp

    q = approx_square(E, 4, (7, 1, 1, 1), (1, 0, 0, 0, 0, 0))
    enc = log_mu_interval(E, q)
    with mp.workdps(80):
        mu = mu_approx_square(E, q)
        exact = mp.log(mp.mpf(mu.numerator) / mu.denominator)
        assert mp.mpf(enc.a) <= exact <= mp.mpf(enc.b)
        assert mp.mpf(enc.b) - mp.mpf(enc.a) < mp.mpf(10) ** -40


def test_approx_square_validation():
    with pytest.raises(EmptySquareError):
        approx_square(E, 1, (5,), (0,))
    with pytest.raises(EmptySquareError):
        approx_square(E, 2, (0, 0), (0, 0))
    vacant = F.__class__(5, 3, ((0, 0), (1, 2), (2, 2)))
    with pytest.raises(EmptySquareError):
        approx_square(vacant, 1, (0,), (0,))  # ell(1) = 1, fine
        approx_square(vacant, 2, (0, 0), (0, 0, 1))


def test_k_of_r_examples():
    assert k_of_r(E, Fraction(1, 100)) == 1
    assert k_of_r(E, Fraction(1, 64)) == 1
    assert k_of_r(E, Fraction(1, 65)) == 1
    assert k_of_r(E, Fraction(1, 512)) == 2
    with pytest.raises(OutOfRangeError):
        k_of_r(E, Fraction(1, 8))


@given(st.integers(1, 10**9), st.integers(9, 10**12))
@settings(max_examples=200, deadline=None)
def test_k_of_r_bracket(p, q):
    r = Fraction(p, q)
    if r >= Fraction(1, 8):
        return
    k = k_of_r(E, r)
    assert Fraction(1, 8 ** (k + 2)) < r <= Fraction(1, 8 ** (k + 1))


def test_k0_of_rho():
    assert k0_of_rho(E, Fraction(1, 600)) == 3
    assert k0_of_rho(E, Fraction(1, 512)) == 3
    assert k0_of_rho(E, Fraction(1, 2)) == 0


@pytest.mark.parametrize("spec", [E, F, D])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_partition_of_unity(spec, k):
    X, Y, num = approx_square_table(spec, k)
    assert sum(int(v) for v in num) == spec.N ** ell(spec, k)
    assert len(set(zip(X.tolist(), Y.tolist()))) == len(X)


@given(specs(max_n=6))
@settings(max_examples=20, deadline=None)
def test_partition_random_specs(spec):
    for k in range(1, 4):
        X, Y, num = approx_square_table(spec, k)
        assert sum(int(v) for v in num) == spec.N ** ell(spec, k)


def test_table_agrees_with_product_formula():
    X, Y, num = approx_square_table(E, 3)
    L = ell(E, 3)
    for idx in range(0, len(X), 997):
        xd = [int(X[idx]) // 8 ** (2 - t) % 8 for t in range(3)]
        yd = [int(Y[idx]) // 4 ** (L - 1 - t) % 4 for t in range(L)]
        q = approx_square(E, 3, xd, yd)
        assert mu_approx_square(E, q) == Fraction(int(num[idx]), 13**L)


def test_ball_covering_everything():
    iv = ball_measure_bounds(E, (Fraction(0), Fraction(0)), Fraction(2), 0)
    assert iv.lower == iv.upper == 1


def test_ball_depth_guard():
    with pytest.raises(DepthTooShallowError):
        ball_measure_bounds(E, (Fraction(0), Fraction(0)), Fraction(1, 600), 1)


def test_ball_bounds_nested_and_contain_monte_carlo():
    z, r = (Fraction(0), Fraction(0)), Fraction(1, 64)
    prev = None
    for K in range(1, 7):
        cur = ball_measure_bounds(E, z, r, K)
        if prev is not None:
            assert prev.lower <= cur.lower <= cur.upper <= prev.upper
        prev = cur
    est, se = monte_carlo_ball_measure(E, z, r, 10**6, seed=11)
    assert float(prev.lower) - 5 * se <= est <= float(prev.upper) + 5 * se


@given(spec_and_coding(), st.integers(0, 3), st.integers(1, 40))
@settings(max_examples=25, deadline=None)
def test_ball_bounds_random_nesting(pair, k, scale):
    spec, c = pair
    r = Fraction(1, spec.n ** (k + 1)) * Fraction(scale, 41)
    z = pi(spec, c)
    kr = k_of_r(spec, r)
    a = ball_measure_bounds(spec, z, r, kr + 1)
    b = ball_measure_bounds(spec, z, r, kr + 3)
    assert a.lower <= b.lower <= b.upper <= a.upper
    assert b.upper > 0  # z itself is in the ball


def test_xi_example_crosses_row_boundary():
    z = pi(E, WITNESS)
    for k in (1, 2, 3):
        r = Fraction(1, 8 ** (k + 1)) - Fraction(1, 10**12)
        squares = xi(E, z, r, depth=4)
        rows = {q.ydigits[0] for q in squares}
        assert rows == {0, 1}
        assert len(squares) <= 4


def test_xi_tiny_ball_single_square():
    c = Coding(((4, 2), (4, 2)), ((5, 2),))
    squares = xi(E, pi(E, c), Fraction(1, 8**8), depth=2)
    assert squares == [square_of(E, c, k_of_r(E, Fraction(1, 8**8)))]


def test_xi_cardinality_on_many_pairs():
    rng = np.random.default_rng(5)
    for spec in (E, F):
        for _ in range(5000):
            c = random_coding(spec, rng)
            k = int(rng.integers(0, 5))
            r = Fraction(1, spec.n ** (k + 1)) * Fraction(int(rng.integers(1, 1000)), 1000)
            br = xi_bracket(spec, c, r, depth=3)
            assert len(br.possible) <= 4
            assert set(br.certain) <= set(br.possible)
            assert square_of(spec, c, br.k) in br.certain
            rows = sorted({q.ydigits for q in br.possible})
            assert len(rows) <= 2


@given(spec_and_coding(), st.integers(1, 40))
@settings(max_examples=300, deadline=None)
def test_cylinder_ratio_lower_bound(pair, k):
    spec, c = pair
    ratio = cylinder_ratio(spec, c, k)
    lo, hi = c0_bounds(spec)
    assert ratio >= 1 / lo
    assert cylinder_ratio_check(spec, c, k)
    assert ratio == mu_approx_square(spec, square_of(spec, c, k + 1)) / mu_approx_square(spec, square_of(spec, c, k))


def test_c0_value():
    lo, hi = c0_bounds(E)
    assert float(lo) == pytest.approx(8 * 13**2.5)
    assert hi - lo < Fraction(1, 10**30)


def test_big_u_orders_bounds():
    r, rho = Fraction(1, 8**4) * Fraction(9, 10), Fraction(1, 600)
    u = big_u(E, WITNESS, r, rho)
    assert 1 <= u.lower <= u.upper
    assert u.depth == k_of_r(E, rho * r) + 6
    lo, _ = c1_bounds(E, rho)
    assert u.lower <= lo


def test_big_u_depth_guard():
    with pytest.raises(DepthTooShallowError):
        big_u(E, WITNESS, Fraction(1, 8**4), Fraction(1, 600), depth=3)


def test_big_u_without_admissible_centre():
    with pytest.raises(NoAdmissibleCenterError):
        big_u(E, (Fraction(1, 3), Fraction(1, 3)), Fraction(1, 8**4), Fraction(1, 600))


def test_sandwich_on_witness():
    rho = Fraction(1, 8**3) * Fraction(99, 100)
    for k in (3, 6):
        rep = sandwich_checks(E, WITNESS, Fraction(1, 8 ** (k + 1)) * Fraction(3, 4), rho)
        assert rep.square_ratio_ok and rep.run_length_ok
        assert rep.ratio_low <= rep.ratio_high


def test_doubling_quotient_bounded_for_doubling_carpet():
    z = Coding(((2, 1), (0, 0)), ((1, 1), (2, 0)))
    rho = Fraction(1, 54)
    c1_lo, _ = c1_bounds(D, rho)
    for e in (3, 6):
        assert big_u(D, z, Fraction(1, 3**e), rho).upper <= c1_lo
