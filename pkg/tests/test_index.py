import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from carpet_lab.coding import Coding, in_VE
from carpet_lab.core import delta_max_value, ell, flip, gamma_max_value
from carpet_lab.errors import BadGaugeError, BadTError, NotApplicableError
from carpet_lab.index import (
    Gauge,
    GaugeKind,
    checkpoint_betas,
    curve_coding,
    delta_lower,
    delta_upper,
    empirical_series,
    gamma_bounds,
    monte_carlo_delta,
)

from .conftest import D, E, F, codings, specs

WITNESS = Coding(((7, 1),), ((1, 0),))


def close(a, b, digits: int = 40) -> bool:
    with mp.workdps(digits + 10):
        return abs(mp.mpf(a) - mp.mpf(b)) <= mp.mpf(10) ** -digits * max(1, abs(mp.mpf(b)))
OMEGA0_F = Coding(((4, 1),), ((2, 0),))
NEITHER_E = Coding(((3, 1),), ((2, 2), (4, 1)))


def test_gauge_limits():
    assert float(Gauge.neglog().s_value(E)) == pytest.approx(1 / math.log(8))
    assert Gauge.loglog().s_value(E) == math.inf
    tab = Gauge.tabulated([2.0 * k for k in range(1, 50)], 0.5)
    assert tab.s_value(E) == 0.5
    assert tab.check_declared_s(E) is None
    assert Gauge.tabulated([2.0 * k for k in range(1, 50)], 3.0).check_declared_s(E) is not None
    assert Gauge.from_json(tab.to_json()) == tab


def test_bad_gauges():
    with pytest.raises(BadGaugeError):
        Gauge.tabulated([3.0, 2.0], 1.0)
    with pytest.raises(BadGaugeError):
        Gauge(GaugeKind.TABULATED)
    with pytest.raises(BadGaugeError):
        Gauge.tabulated([1.0, 2.0], 1.0).phi(E, np.array([5]))


def test_witness_closed_forms():
    up = delta_upper(E, WITNESS, Gauge.neglog())
    lo = delta_lower(E, WITNESS, Gauge.neglog())
    assert up.closed_form.exact.symbolic() == lo.closed_form.exact.symbolic() == "log(3/2)/log(64)"
    assert up.value == lo.value
    assert close(up.value, delta_max_value(E))
    assert float(up.value) == pytest.approx(0.0974937501, abs=1e-10)


def test_loglog_gives_infinity_on_double_coding():
    assert delta_lower(E, WITNESS, Gauge.loglog()).closed_form.is_inf
    assert delta_upper(E, WITNESS, Gauge.loglog()).closed_form.is_inf


def test_omega0_single_coded_point_is_zero():
    for report in (delta_upper(F, OMEGA0_F, Gauge.neglog()), delta_lower(F, OMEGA0_F, Gauge.neglog())):
        assert report.value == 0
        assert report.closed_form.exact == 0


def test_neither_class_is_zero_with_small_tail():
    rep = delta_upper(E, NEITHER_E, Gauge.neglog(), depth=2000)
    assert rep.value == 0
    assert rep.empirical.tail_sup <= float(rep.extra["tolerance"])


def test_s_zero_gauge_warns():
    g = Gauge.tabulated([float(k) ** 2 for k in range(1, 200)], 0.0)
    rep = delta_upper(E, WITNESS, g)
    assert rep.closed_form is None and rep.warnings
    assert delta_lower(E, WITNESS, g).value == 0


def test_doubling_carpet_returns_zero():
    c = Coding((), ((1, 1),))
    assert delta_upper(D, c, Gauge.neglog()).value == 0
    assert delta_lower(D, c, Gauge.neglog()).value == 0
    assert gamma_bounds(D, c).value == 1


def test_flipped_orientation_agrees():
    from carpet_lab.coding import flip_coding

    fl = flip(E)
    c = flip_coding(E, WITNESS)
    assert delta_upper(fl, c, Gauge.neglog()).value == delta_upper(E, WITNESS, Gauge.neglog()).value


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_lower_never_exceeds_upper(data):
    spec = data.draw(specs(non_doubling=True))
    c = data.draw(codings(spec))
    for g in (Gauge.neglog(), Gauge.loglog()):
        lo = delta_lower(spec, c, g).value
        up = delta_upper(spec, c, g, depth=200).value
        assert lo <= up
        if g.kind is GaugeKind.NEGLOG:
            dmax = delta_max_value(spec if spec.fibers[0] > spec.fibers[-1] else flip(spec))
            assert 0 <= up and (up <= dmax or close(up, dmax))
        if in_VE(spec, c):
            assert lo == up


def test_gauge_monotonicity_reverses_ratios():
    stream = curve_coding(E, Fraction(1, 4), 3000)
    g1 = Gauge.tabulated([3.0 * k for k in range(1, 3001)], 1 / 3)
    g2 = Gauge.tabulated([2.0 * k for k in range(1, 3001)], 1 / 2)
    r1 = empirical_series(E, stream, g1, 3000).ratio
    r2 = empirical_series(E, stream, g2, 3000).ratio
    assert np.all(r1 <= r2)


def test_curve_checkpoints_and_letters():
    stream = curve_coding(E, Fraction(1, 2), 30)
    assert stream.checkpoints[:6] == (3, 4, 6, 9, 13, 19)
    assert all(ones >= 0 and zeros >= 0 for ones, zeros in stream.blocks)
    (i0, y0), (i, j1) = stream.letters
    assert y0 == 0
    assert set(stream.y[stream.head :].tolist()) <= {0, j1}
    for p, got, want in checkpoint_betas(E, stream):
        assert got == want == math.floor(p / 2)


@pytest.mark.parametrize("t", [Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)])
def test_curve_beta_floor(t):
    stream = curve_coding(E, t, 5000)
    for p, got, want in checkpoint_betas(E, stream):
        assert got == want == math.floor(t * p)


def test_curve_t_zero_has_zero_index():
    rep = delta_upper(E, curve_coding(E, 0, 3000), Gauge.neglog(), 3000)
    assert rep.empirical.tail_sup == 0


def test_curve_range_guard():
    with pytest.raises(BadTError):
        curve_coding(E, Fraction(3, 5), 100)
    with pytest.raises(BadTError):
        curve_coding(E, Fraction(-1, 5), 100)
    with pytest.raises(NotApplicableError):
        curve_coding(D, 0, 100)


def test_empirical_bounded_by_closed_limsup():
    # the tail ratio never exceeds beta/phi * log(a0/aT) on the same truncation
    stream = curve_coding(E, Fraction(1, 2), 4000)
    rep = delta_upper(E, stream, Gauge.neglog(), 4000)
    assert rep.empirical.tail_sup <= float(delta_max_value(E)) * (1 + 1e-12)


def test_gamma_stays_in_range():
    for c in (WITNESS, NEITHER_E):
        rep = gamma_bounds(E, c, depth=500)
        assert 1 <= float(rep.extra["clamped"]) <= float(gamma_max_value(E))
    rep = gamma_bounds(E, NEITHER_E, depth=500)
    assert rep.extra["gammaLower"]["value"].startswith("1.0000")


def test_adjusted_stream_approaches_gamma_max():
    stream = curve_coding(E, Fraction(1, 2), 2000, adjusted=True)
    for p, got, want in checkpoint_betas(E, stream):
        assert got == want == ell(E, p) - p - 1
    rep = gamma_bounds(E, stream, depth=2000)
    assert float(rep.extra["estimate"]) <= float(gamma_max_value(E)) + 1e-9


def test_monte_carlo_is_deterministic_and_job_independent():
    a = monte_carlo_delta(E, 6, 2000, seed=3)
    b = monte_carlo_delta(E, 6, 2000, seed=3, jobs=2)
    assert a.to_json() == b.to_json()
    assert np.array_equal(a.beta_over_k, b.beta_over_k)
    c = monte_carlo_delta(E, 6, 2000, seed=4)
    assert not np.array_equal(a.beta_over_k, c.beta_over_k)
