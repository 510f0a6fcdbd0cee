"""Point-wise doubling indices: closed forms, empirical estimates, extremal streams."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from mpmath import mp, mpf

from .coding import Coding, OmegaClass, flip_coding, in_VE, omega_class, random_indices
from .core import (
    CarpetSpec,
    delta_max_form,
    ell,
    ell_table,
    flip,
    gamma_max_value,
    is_non_doubling,
    is_normalized,
)
from .errors import BadGaugeError, BadTError, NotApplicableError
from .logforms import DEFAULT_PRECISION, LogRatio, decimal_str
from .runlength import beta_sequence, beta_values

INF = math.inf


# --------------------------------------------------------------------------
# gauges


class GaugeKind(str, enum.Enum):
    NEGLOG = "neglog"
    LOGLOG = "loglog"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class Gauge:
    """A gauge ``phi`` sampled at the radii ``n^-k``.

    ``table[k-1]`` holds ``phi(n^-k)`` for tabulated gauges; ``s`` is the
    declared limit of ``k / phi(n^-k)`` and may be ``inf``.
    """

    kind: GaugeKind
    table: tuple[float, ...] = ()
    s: float | None = None

    def __post_init__(self) -> None:
        if self.kind is GaugeKind.TABULATED:
            if not self.table or self.s is None:
                raise BadGaugeError("tabulated gauge needs values and a declared s")
            if self.s < 0:
                raise BadGaugeError("s must be non-negative")
            diffs = np.diff(np.asarray(self.table, dtype=float))
            if np.any(diffs <= 0) or self.table[0] <= 0:
                raise BadGaugeError("phi(n^-k) must be positive and strictly increasing in k")

    @classmethod
    def neglog(cls) -> "Gauge":
        return cls(GaugeKind.NEGLOG)

    @classmethod
    def loglog(cls) -> "Gauge":
        return cls(GaugeKind.LOGLOG)

    @classmethod
    def tabulated(cls, values: Sequence[float], s: float) -> "Gauge":
        return cls(GaugeKind.TABULATED, tuple(float(v) for v in values), float(s))

    @classmethod
    def from_json(cls, obj: dict) -> "Gauge":
        s = obj["s"]
        s = INF if str(s) == "inf" else float(s)
        return cls.tabulated(obj["values"], s)

    def s_value(self, spec: CarpetSpec, precision: int = DEFAULT_PRECISION):
        """``lim k / phi(n^-k)`` as an mpf, or ``inf``."""
        if self.kind is GaugeKind.NEGLOG:
            with mp.workdps(precision + 5):
                return 1 / mp.log(spec.n)
        if self.kind is GaugeKind.LOGLOG:
            return INF
        return INF if math.isinf(self.s) else mpf(self.s)

    def phi(self, spec: CarpetSpec, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.float64)
        if self.kind is GaugeKind.NEGLOG:
            return ks * math.log(spec.n)
        if self.kind is GaugeKind.LOGLOG:
            return np.log(ks * math.log(spec.n))
        idx = ks.astype(np.int64) - 1
        if idx.size and idx.max() >= len(self.table):
            raise BadGaugeError(f"table covers k <= {len(self.table)}")
        return np.asarray(self.table, dtype=np.float64)[idx]

    def check_declared_s(self, spec: CarpetSpec, rtol: float = 0.1) -> str | None:
        """Compare the declared ``s`` with ``k / phi`` at the end of the table."""
        if self.kind is not GaugeKind.TABULATED:
            return None
        K = len(self.table)
        observed = K / self.table[-1]
        if math.isinf(self.s):
            return None if observed > 10 * K / self.table[K // 2] / 2 else "declared s = inf but k/phi looks bounded"
        if abs(observed - self.s) > rtol * max(self.s, 1e-12):
            return f"declared s = {self.s} but k/phi = {observed:.6g} at k = {K}"
        return None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is GaugeKind.TABULATED:
            out["s"] = "inf" if math.isinf(self.s) else repr(self.s)
            out["values"] = [repr(v) for v in self.table]
        return out


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class IndexValue:
    """An index value: a high-precision real, ``inf``, and an exact form when known."""

    value: object  # mpf or math.inf
    exact: LogRatio | Fraction | None = None

    @property
    def is_inf(self) -> bool:
        return self.value == INF

    def to_json(self, precision: int = DEFAULT_PRECISION) -> dict:
        out = {"value": decimal_str(self.value, precision), "precision": precision}
        if isinstance(self.exact, LogRatio):
            out["exact"] = self.exact.symbolic()
            q = self.exact.as_fraction()
            if q is not None:
                out["fraction"] = f"{q.numerator}/{q.denominator}"
        elif isinstance(self.exact, Fraction):
            out["exact"] = out["fraction"] = f"{self.exact.numerator}/{self.exact.denominator}"
        return out


ZERO = IndexValue(mpf(0), Fraction(0))


@dataclass(frozen=True)
class EmpiricalSeries:
    ks: np.ndarray
    beta: np.ndarray
    ratio: np.ndarray
    running_sup: np.ndarray
    tail_start: int
    tail_sup: float

    def rows(self):
        for k, b, r, s in zip(self.ks.tolist(), self.beta.tolist(), self.ratio.tolist(), self.running_sup.tolist()):
            yield k, b, r, s


def _series(ks: np.ndarray, beta: np.ndarray, ratio: np.ndarray) -> EmpiricalSeries:
    K = int(ks[-1])
    start = max(1, K // 10)
    mask = ks >= start
    return EmpiricalSeries(ks, beta, ratio, np.maximum.accumulate(ratio), start, float(ratio[mask].max()))


@dataclass(frozen=True)
class IndexReport:
    index: str
    branch: str
    closed_form: IndexValue | None
    empirical: EmpiricalSeries | None = None
    warnings: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def value(self):
        if self.closed_form is not None:
            return self.closed_form.value
        return None if self.empirical is None else self.empirical.tail_sup

    def to_json(self, precision: int = DEFAULT_PRECISION) -> dict:
        out = {"index": self.index, "branch": self.branch, "warnings": list(self.warnings)}
        out["closedForm"] = None if self.closed_form is None else self.closed_form.to_json(precision)
        if self.empirical is not None:
            e = self.empirical
            out["empirical"] = {
                "depth": int(e.ks[-1]),
                "tailStart": e.tail_start,
                "tailSup": repr(e.tail_sup),
                "runningSup": repr(float(e.running_sup[-1])),
            }
        for k, v in sorted(self.extra.items()):
            out[k] = v
        return out


# --------------------------------------------------------------------------
# helpers


def _orient(spec: CarpetSpec, c: Coding | None) -> tuple[CarpetSpec, Coding | None]:
    if is_normalized(spec):
        return spec, c
    return flip(spec), (None if c is None else flip_coding(spec, c))


def _end_log_ratio(spec: CarpetSpec) -> float:
    """``log(a0/a_{m-1})`` for a normalized non-doubling carpet, 0 for doubling ones."""
    if not is_non_doubling(spec).non_doubling:
        return 0.0
    a = spec.fibers
    return abs(math.log(a[0] / a[-1]))


def _closed_ve(spec: CarpetSpec, g: Gauge, member: bool, precision: int) -> IndexValue:
    """``s (1/sigma - 1) log(a0/a_{m-1})`` times the membership indicator."""
    if not member:
        return ZERO
    s = g.s_value(spec, precision)
    if s == INF:
        return IndexValue(INF)
    if s == 0:
        return ZERO
    a = spec.fibers
    with mp.workdps(precision + 5):
        sig = mp.log(spec.m) / mp.log(spec.n)
        value = s * (1 / sig - 1) * mp.log(mp.mpf(a[0]) / a[-1])
    exact = delta_max_form(spec) if g.kind is GaugeKind.NEGLOG else None
    return IndexValue(value, exact)


def _y_digits(spec: CarpetSpec, c, K: int) -> np.ndarray:
    L = ell(spec, K)
    if isinstance(c, Coding):
        return c.y_digits(L)
    if isinstance(c, CurveStream):
        return c.y[:L]
    return np.asarray(c, dtype=np.int64)


def _empirical(spec: CarpetSpec, c, g: Gauge, K: int, L: float) -> EmpiricalSeries:
    y = _y_digits(spec, c, K)
    beta = beta_values(spec, y, K)[1:]
    ks = np.arange(1, K + 1, dtype=np.int64)
    phi = g.phi(spec, ks)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(phi > 0, beta * L / phi, 0.0)
    return _series(ks, beta, ratio)


def empirical_series(spec: CarpetSpec, c, g: Gauge, depth: int) -> EmpiricalSeries:
    """``beta(k) log(a0/a_{m-1}) / phi(n^-k)`` for ``k = 1..depth``, whatever the coding's class."""
    if isinstance(c, Coding):
        spec, c = _orient(spec, c)
    return _empirical(spec, c, g, depth, _end_log_ratio(spec))


# --------------------------------------------------------------------------
# delta indices


def delta_lower(spec: CarpetSpec, c: Coding, g: Gauge, precision: int = DEFAULT_PRECISION) -> IndexReport:
    """Lower index: the membership indicator of the double-coding set scaled by ``s (1/sigma-1) log(a0/a_{m-1})``."""
    if not is_non_doubling(spec).non_doubling:
        return IndexReport("deltaLower", "doubling-type", ZERO)
    spec, c = _orient(spec, c)
    member = in_VE(spec, c)
    return IndexReport("deltaLower", "double-coding" if member else "single-coding", _closed_ve(spec, g, member, precision))


def delta_upper(
    spec: CarpetSpec,
    c,
    g: Gauge,
    depth: int = 1000,
    precision: int = DEFAULT_PRECISION,
) -> IndexReport:
    """Upper index with the closed form when one applies and the empirical sequence to ``depth``.

    ``c`` is a :class:`Coding`, a :class:`CurveStream`, or a y-digit array
    covering ``ell(depth)`` positions.  Streams have no closed form.
    """
    if not is_non_doubling(spec).non_doubling:
        return IndexReport("deltaUpper", "doubling-type", ZERO)
    warns: list[str] = []
    note = g.check_declared_s(spec)
    if note:
        warns.append(note)
    if isinstance(c, Coding):
        spec, c = _orient(spec, c)
    elif not is_normalized(spec):
        raise NotApplicableError("streams must be generated on a normalized carpet")
    L = _end_log_ratio(spec)
    if not isinstance(c, Coding):
        return IndexReport("deltaUpper", "stream", None, _empirical(spec, c, g, depth, L), tuple(warns))
    cls = omega_class(spec, c)
    if cls is OmegaClass.NEITHER:
        # a non-constant periodic y-tail keeps beta below the period length
        emp = _empirical(spec, c, g, depth, L)
        phi_tail = float(g.phi(spec, np.array([emp.tail_start]))[0])
        tol = len(c.period) * L / phi_tail if phi_tail > 0 else INF
        return IndexReport("deltaUpper", "bounded-run", ZERO, emp, tuple(warns), {"tolerance": repr(tol)})
    # on a constant y-tail beta only bounds the quotient from above, so no empirical series
    if g.s_value(spec, precision) == 0:
        warns.append("s = 0: the upper index has no closed form; reporting the lower index only")
        return IndexReport("deltaUpper", "s-zero", None, None, tuple(warns), {"deltaLower": "0"})
    member = in_VE(spec, c)
    return IndexReport("deltaUpper", "omega-tail", _closed_ve(spec, g, member, precision), None, tuple(warns))


# --------------------------------------------------------------------------
# gamma index


def gamma_sequences(spec: CarpetSpec, y: np.ndarray, K: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lower and upper estimate sequences for ``gamma`` at ranks ``1..K`` (constants dropped)."""
    a, N = spec.fibers, spec.N
    L = _end_log_ratio(spec)
    beta = beta_values(spec, y, K)[1:].astype(np.float64)
    ks = np.arange(1, K + 1, dtype=np.float64)
    ells = ell_table(spec, K)[1:].astype(np.float64)
    la0 = math.log(a[0])
    lstar = math.log(max(a))
    lN = math.log(N)
    lower = 1 + beta * L / (ells * lN - beta * la0)
    upper = 1 + beta * L / (ells * lN - beta * la0 - (ells - ks - beta) * lstar)
    return beta, lower, upper


def gamma_bounds(spec: CarpetSpec, c, depth: int = 1000, precision: int = DEFAULT_PRECISION) -> IndexReport:
    """Empirical upper ``gamma`` estimate and the closed-form lower ``gamma``.

    The estimate is the tail supremum of the lower-form sequence; the report
    also carries the clamped value and the upper-form tail supremum.
    """
    if not is_non_doubling(spec).non_doubling:
        one = IndexValue(mpf(1), Fraction(1))
        return IndexReport("gamma", "doubling-type", one, extra={"gammaLower": one.to_json(precision)})
    if isinstance(c, Coding):
        spec, c = _orient(spec, c)
    gmax = gamma_max_value(spec, precision)
    y = _y_digits(spec, c, depth)
    beta, lower, upper = gamma_sequences(spec, y, depth)
    ks = np.arange(1, depth + 1, dtype=np.int64)
    emp = _series(ks, beta.astype(np.int64), lower)
    upper_tail = float(upper[ks >= emp.tail_start].max())
    gmax_f = float(gmax)
    clamped = min(max(emp.tail_sup, 1.0), gmax_f)
    if isinstance(c, Coding):
        member = in_VE(spec, c)
        g_low = IndexValue(gmax if member else mpf(1), None if member else Fraction(1))
    else:
        g_low = None
    extra = {
        "gammaMax": decimal_str(gmax, precision),
        "estimate": repr(emp.tail_sup),
        "clamped": repr(clamped),
        "upperFormTailSup": repr(upper_tail),
        "gammaLower": None if g_low is None else g_low.to_json(precision),
    }
    return IndexReport("gamma", "empirical", None, emp, (), extra)


# --------------------------------------------------------------------------
# extremal stream


@dataclass(frozen=True)
class CurveStream:
    """Finite prefix of the extremal coding together with its checkpoint ranks."""

    spec: CarpetSpec
    t_prime: Fraction
    depth: int
    letters: tuple[tuple[int, int], tuple[int, int]]  # (i0, 0) and (i, j+1)
    head: int
    checkpoints: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]  # (len of (i,j+1) run, len of (i0,0) run)
    adjusted: bool
    seeded_head: bool
    y: np.ndarray
    x: np.ndarray

    def word(self, length: int | None = None) -> list[tuple[int, int]]:
        length = len(self.y) if length is None else length
        return list(zip(self.x[:length].tolist(), self.y[:length].tolist()))

    def expected_beta(self, p: int) -> int:
        if self.adjusted:
            return ell(self.spec, p) - p - 1
        return math.floor(self.t_prime * p)


def _check_t(spec: CarpetSpec, t: Fraction) -> None:
    if t < 0:
        raise BadTError("t' must be non-negative")
    a, b = t.numerator, t.denominator
    # t' <= 1/sigma - 1  <=>  m^(a+b) <= n^b
    if spec.m ** (a + b) > spec.n**b:
        raise BadTError(f"t' = {t} exceeds 1/sigma - 1")


def curve_letters(spec: CarpetSpec) -> tuple[tuple[int, int], tuple[int, int]]:
    """``(i0, 0)`` and ``(i, j+1)`` with ``a_j > 0``; prefers ``j + 1 < m - 1``."""
    a, m = spec.fibers, spec.m
    if not spec.rows[0]:
        raise NotApplicableError("bottom row is vacant")
    choices = [j for j in range(m - 1) if a[j] > 0 and a[j + 1] > 0]
    if not choices:
        raise NotApplicableError("no pair of adjacent occupied rows")
    inner = [j for j in choices if j + 1 < m - 1]
    j = (inner or choices)[0]
    return (spec.rows[0][0], 0), (spec.rows[j + 1][0], j + 1)


def curve_coding(spec: CarpetSpec, t_prime, depth: int, adjusted: bool = False) -> CurveStream:
    """Extremal stream: blocks ``(i,j+1)^u (i0,0)^w`` ending at the ranks ``p_{k+1} = ell(p_k)``.

    Block ``k`` has ``w = floor(t' p_k)`` and ``u = ell(p_k) - p_k - w``.  With
    ``adjusted`` the ``(i,j+1)`` run has length ``max(u, 1)`` so that
    ``beta(p_k) = ell(p_k) - p_k - 1``.  When the first block would carry no
    ``(i,j+1)`` letter, the head starts with one so every zero run is
    preceded by an occupied neighbour row.  ``depth`` is a rank; letters are
    produced up to position ``ell(depth)``.
    """
    if not is_non_doubling(spec).non_doubling:
        raise NotApplicableError("carpet is of doubling type")
    if not is_normalized(spec):
        raise NotApplicableError("normalize orientation first")
    t = Fraction(t_prime)
    _check_t(spec, t)
    if depth < 1:
        raise ValueError("depth must be positive")
    (i0, _), (i, j1) = letters = curve_letters(spec)
    # smallest integer p1 > sigma/(1-sigma), i.e. n^p1 > m^(p1+1)
    p1 = 1
    while spec.n**p1 <= spec.m ** (p1 + 1):
        p1 += 1
    L = ell(spec, depth)
    ps = [p1]
    blocks = []
    while ps[-1] < L:
        p = ps[-1]
        q = ell(spec, p)
        zeros = math.floor(t * p)
        ones = q - p - zeros
        if adjusted:
            ones = max(ones, 1)
            zeros = q - p - ones
        blocks.append((ones, zeros))
        ps.append(q)
    seeded = bool(blocks) and blocks[0][0] == 0 and any(z > 0 for _, z in blocks)
    y = np.zeros(ps[-1], dtype=np.int64)
    x = np.full(ps[-1], i0, dtype=np.int64)
    if seeded:
        y[0], x[0] = j1, i
    pos = p1
    for ones, zeros in blocks:
        y[pos : pos + ones] = j1
        x[pos : pos + ones] = i
        pos += ones + zeros
    checkpoints = tuple(p for p in ps if p <= depth)
    return CurveStream(spec, t, depth, letters, p1, checkpoints, tuple(blocks), adjusted, seeded, y, x)


def checkpoint_betas(spec: CarpetSpec, stream: CurveStream) -> list[tuple[int, int, int]]:
    """``(p_k, beta(p_k), expected)`` for every checkpoint within the stream's depth."""
    b0, bT = beta_sequence(spec, stream.y, stream.depth)
    beta = np.maximum(b0, bT)
    return [(p, int(beta[p]), stream.expected_beta(p)) for p in stream.checkpoints]


# --------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class Quartiles:
    q1: float
    median: float
    q3: float

    @classmethod
    def of(cls, values: np.ndarray) -> "Quartiles":
        q1, med, q3 = np.percentile(values, [25, 50, 75])
        return cls(float(q1), float(med), float(q3))

    def to_json(self) -> dict:
        return {"q1": repr(self.q1), "median": repr(self.median), "q3": repr(self.q3)}


@dataclass(frozen=True)
class MonteCarloStats:
    trials: int
    depth: int
    seed: int
    tail_start: int
    beta_over_k: np.ndarray
    beta_over_runlog: np.ndarray
    Delta_estimate: np.ndarray
    Delta_aver: float

    @property
    def summary(self) -> dict[str, Quartiles]:
        return {
            "betaOverK": Quartiles.of(self.beta_over_k),
            "betaOverRunLog": Quartiles.of(self.beta_over_runlog),
            "DeltaEstimate": Quartiles.of(self.Delta_estimate),
        }

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "depth": self.depth,
            "seed": self.seed,
            "tailStart": self.tail_start,
            "DeltaAver": repr(self.Delta_aver),
            "statistics": {k: q.to_json() for k, q in self.summary.items()},
        }


def _trial(args) -> tuple[float, float, float]:
    spec, seed_seq, K = args
    rng = np.random.default_rng(seed_seq)
    L = ell(spec, K)
    ydig = np.array([d[1] for d in spec.digits], dtype=np.int64)
    y = ydig[random_indices(spec, rng, L)]
    beta = beta_values(spec, y, K).astype(np.float64)
    a, N = spec.fibers, spec.N
    start = max(2, K // 10)
    ks = np.arange(start, K + 1, dtype=np.float64)
    b = beta[start:]
    sig = math.log(spec.m) / math.log(spec.n)
    s1 = float((b / ks).max())
    s2 = float((b * math.log(N / a[0]) / np.log(ks / sig)).max())
    s3 = float((b / np.log(ks)).max() * _end_log_ratio(spec))
    return s1, s2, s3


def monte_carlo_delta(spec: CarpetSpec, trials: int, depth: int, seed: int, jobs: int = 1) -> MonteCarloStats:
    """Tail-window statistics of ``beta`` over i.i.d. uniform codings.

    Each trial draws ``ell(depth)`` digits from its own child of
    ``SeedSequence(seed)``; results are ordered by trial so ``jobs`` never
    changes the output.  Statistics are maxima over ``k`` in
    ``[depth/10, depth]``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if is_non_doubling(spec).non_doubling and not is_normalized(spec):
        spec = flip(spec)
    children = np.random.SeedSequence(seed).spawn(trials)
    tasks = [(spec, ch, depth) for ch in children]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_trial, tasks))
    else:
        rows = [_trial(t) for t in tasks]
    arr = np.array(rows, dtype=np.float64)
    a, N = spec.fibers, spec.N
    D = math.log(a[0] / a[-1]) / math.log(N / a[0]) if is_non_doubling(spec).non_doubling else 0.0
    return MonteCarloStats(trials, depth, seed, max(2, depth // 10), arr[:, 0], arr[:, 1], arr[:, 2], D)


__all__ = [
    "CurveStream",
    "EmpiricalSeries",
    "Gauge",
    "GaugeKind",
    "IndexReport",
    "IndexValue",
    "MonteCarloStats",
    "Quartiles",
    "checkpoint_betas",
    "curve_coding",
    "curve_letters",
    "delta_lower",
    "delta_upper",
    "empirical_series",
    "gamma_bounds",
    "gamma_sequences",
    "monte_carlo_delta",
]
