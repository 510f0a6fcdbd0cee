"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed in the run summary."""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp

from carpet_lab import cli
from carpet_lab.classify import Outcome, compare
from carpet_lab.coding import Coding, OmegaClass, in_VE, omega_class, random_coding
from carpet_lab.core import carpet, ell, gamma_max_value
from carpet_lab.index import (
    Gauge,
    checkpoint_betas,
    curve_coding,
    delta_lower,
    delta_upper,
    empirical_series,
    gamma_bounds,
    gamma_sequences,
    monte_carlo_delta,
)
from carpet_lab.measure import approx_square_table, big_u, c1_bounds, cylinder_ratio_check, k_of_r, sandwich_checks

from .conftest import D, E, F, SAMPLES

CE = str(SAMPLES / "carpet_e.json")
CF = str(SAMPLES / "carpet_f.json")
WITNESS_E = Coding(((7, 1),), ((1, 0),))
OMEGA0_F = Coding(((4, 1),), ((2, 0),))


def _mp(expr: str):
    with mp.workdps(60):
        return eval(expr, {"log": mp.log, "mpf": mp.mpf})


def _agree(decimal: str, value, digits: int) -> bool:
    with mp.workdps(60):
        return abs(mp.mpf(decimal) - value) < mp.mpf(10) ** -digits


def _analyze(path, tmp_path):
    out = tmp_path / "profile.json"
    assert cli.main(["analyze", path, "-o", str(out)]) == 0
    return json.loads(out.read_text())["profile"]


def test_criterion_01_figure_invariants(tmp_path):
    t0 = time.perf_counter()
    pe = _analyze(CE, tmp_path)
    pf = _analyze(CF, tmp_path)
    elapsed = time.perf_counter() - t0
    assert pe["fibers"] == [3, 4, 4, 2] and pe["non_doubling"] is True
    assert _agree(pe["delta_max"], _mp("log(mpf(3)/2) / (2*log(8))"), 12)
    assert _agree(pe["Delta_aver"], _mp("log(mpf(3)/2) / log(mpf(13)/3)"), 12)
    assert pe["Delta_aver_exact"] == "log(3/2)/log(13/3)"
    assert _agree(pe["gamma_max"], _mp("(log(13) - log(2)/3) / (log(13) - log(3)/3)"), 12)
    assert pe["dim_VE_exact"] == "0" and pe["dim_VE_kind"] == "countable"
    assert pf["fibers"] == [4, 3, 4, 2]
    assert pf["delta_max_exact"] == "1/6"
    assert pf["dim_VE_exact"] == "1/3" and pf["dim_VE_kind"] == "formula"
    assert elapsed < 1.0


def test_criterion_02_headline_comparison():
    t0 = time.perf_counter()
    v = compare(E, F)
    elapsed = time.perf_counter() - t0
    assert v.outcome is Outcome.NOT_EQUIVALENT
    certs = {c.invariant: (c.value_e, c.value_f) for c in v.certificates}
    assert certs["dim_VE"] == ("0", "1/3")
    assert certs["a0"] == ("3", "4")
    assert elapsed < 1.0


def _random_valid_specs(count: int, seed: int):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        m = int(rng.integers(2, 4))
        n = int(rng.integers(m + 1, 7))
        cells = [(i, j) for j in range(m) for i in range(n)]
        size = int(rng.integers(2, 7))
        pick = rng.choice(len(cells), size=size, replace=False)
        out.append(carpet(n, m, [cells[i] for i in pick]))
    return out


def test_criterion_03_partition():
    t0 = time.perf_counter()
    for spec in [E, F] + _random_valid_specs(20, seed=3):
        for k in range(1, 6):
            X, Y, num = approx_square_table(spec, k)
            denom = spec.N ** ell(spec, k)
            assert denom < 2**62  # int64 reductions below are exact
            keys = X.astype(np.int64) * (int(Y.max()) + 1) + Y.astype(np.int64)
            assert np.unique(keys).size == keys.size
            assert int(num.astype(np.int64).sum()) == denom
    assert time.perf_counter() - t0 < 10.0


def test_criterion_04_cylinder_ratio():
    t0 = time.perf_counter()
    violations = 0
    for spec in (E, F):
        rng = np.random.default_rng(4)
        for _ in range(100_000):
            c = random_coding(spec, rng)
            k = int(rng.integers(1, 41))
            if not cylinder_ratio_check(spec, c, k):
                violations += 1
    assert violations == 0
    assert time.perf_counter() - t0 < 30.0


def test_criterion_05_sandwiches():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    n = E.n
    failures, lower_branch = [], 0
    for _ in range(100):
        c = random_coding(E, rng)
        k = int(rng.integers(6, 8))
        r = Fraction(int(rng.integers(126, 1001)), 1000 * n ** (k + 1))  # n^-(k+2) < r <= n^-(k+1)
        rho = Fraction(1, n**3) * Fraction(int(rng.integers(900, 1000)), 1000)
        assert k_of_r(E, r) == k
        rep = sandwich_checks(E, c, r, rho)
        assert rep.u.depth == k_of_r(E, rho * r) + 6
        if rep.run_length_lower is not None:
            lower_branch += 1
        if not (rep.square_ratio_ok and rep.run_length_ok and rep.square_ratio_lower is not None):
            failures.append((c, r, rho, rep))
    print(f"criterion 5: {100 - len(failures)}/100 triples consistent, lower run-length branch tested {lower_branch} times")
    assert not failures
    assert lower_branch > 0
    assert time.perf_counter() - t0 < 300.0


def test_criterion_06_branch_two():
    t0 = time.perf_counter()
    g = Gauge.neglog()
    up, lo = delta_upper(E, WITNESS_E, g), delta_lower(E, WITNESS_E, g)
    assert in_VE(E, WITNESS_E)
    assert up.closed_form.exact == lo.closed_form.exact
    assert up.closed_form.exact.symbolic() == "log(3/2)/log(64)"  # log(3/2) / (2 log 8)
    assert omega_class(F, OMEGA0_F) is OmegaClass.IN_OMEGA_0 and not in_VE(F, OMEGA0_F)
    up, lo = delta_upper(F, OMEGA0_F, g), delta_lower(F, OMEGA0_F, g)
    assert up.closed_form.exact == lo.closed_form.exact == 0
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.parametrize("t", ["0", "1/8", "1/4", "3/8", "1/2"])
def test_criterion_07_extremal_range(t):
    t0 = time.perf_counter()
    tp = Fraction(t)
    K = 10**5
    stream = curve_coding(E, tp, K)
    checks = checkpoint_betas(E, stream)
    assert checks and checks[-1][0] <= K
    assert all(b == math.floor(tp * p) for p, b, _ in checks)
    tail = delta_upper(E, stream, Gauge.neglog(), K).empirical.tail_sup
    target = float(tp) * math.log(1.5) / math.log(8)
    assert abs(tail - target) <= 0.05 * target
    assert time.perf_counter() - t0 < 12.0


def test_criterion_08_almost_everywhere():
    t0 = time.perf_counter()
    stats = monte_carlo_delta(E, 200, 10**6, seed=20240)
    s = stats.summary
    print(
        "criterion 8 medians: beta/k={:.5f} beta/runlog={:.4f} Delta={:.4f} (aver {:.4f})".format(
            s["betaOverK"].median, s["betaOverRunLog"].median, s["DeltaEstimate"].median, stats.Delta_aver
        )
    )
    assert s["betaOverK"].median < 0.01
    assert 0.6 <= s["betaOverRunLog"].median <= 1.4
    assert 0.5 * stats.Delta_aver <= s["DeltaEstimate"].median <= 1.5 * stats.Delta_aver
    assert time.perf_counter() - t0 < 600.0


def test_criterion_09_gamma_attainable():
    t0 = time.perf_counter()
    K = 10**4
    stream = curve_coding(E, Fraction(1, 2), K, adjusted=True)
    rep = gamma_bounds(E, stream, depth=K)
    gmax = float(gamma_max_value(E))
    assert float(rep.extra["estimate"]) >= 0.98 * gmax
    _, lower, _ = gamma_sequences(E, stream.y, K)
    assert float(lower.max()) <= gmax + 1e-9
    assert time.perf_counter() - t0 < 60.0


def test_criterion_10_doubling_control():
    t0 = time.perf_counter()
    rho = Fraction(1, 2 * D.n**3)
    c1_lo, _ = c1_bounds(D, rho)
    z = Coding(((2, 1), (0, 0)), ((1, 1), (2, 0)))
    for e in range(3, 11):
        u = big_u(D, z, Fraction(1, D.n**e), rho)
        assert u.upper <= c1_lo  # certified: log U <= log C1
    codings = [z, Coding((), ((0, 0),)), Coding(((1, 1),), ((2, 1),))]
    for c in codings:
        for g in (Gauge.neglog(), Gauge.loglog()):
            assert delta_upper(D, c, g).value == 0
            assert delta_lower(D, c, g).value == 0
            assert not np.any(empirical_series(D, c, g, 500).ratio)
    stats = monte_carlo_delta(D, 5, 2000, seed=1)
    assert not np.any(stats.Delta_estimate)
    assert time.perf_counter() - t0 < 60.0


DETERMINISM = [
    ["analyze", CE],
    ["index", CE, '{"prefix": [[7, 1]], "period": [[1, 0]]}', "--depth", "500"],
    ["index", CE, "--curve", "1/4", "--depth", "500", "--gauge", "loglog"],
    ["beta", CE, "--seed", "11", "--depth", "200"],
    ["oracle", CE, "25/28,1/4", "--r", "1/40000", "--rho", "1/600"],
    ["compare", CE, CF],
    ["compare", CE, CE, "--assume-t", "no", "--strict"],
    ["sample", CE, "--trials", "4", "--depth", "5000", "--seed", "2", "--jobs", "2"],
    ["curve", CE, "--t", "3/8", "--depth", "2000", "--adjusted"],
    ["render", CE, "--depth", "3", "--witness"],
]


def test_criterion_11_determinism(tmp_path):
    for idx, args in enumerate(DETERMINISM):
        outputs = []
        for rep in range(2):
            path = tmp_path / f"{idx}-{rep}.out"
            assert cli.main(args + ["-o", str(path)]) == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1] and outputs[0], args
