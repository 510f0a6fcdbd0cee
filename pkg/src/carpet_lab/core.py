"""Carpet definition and its structural invariants.

A carpet is fixed by integer bases ``n > m >= 2`` and a digit set
``D`` of cells ``(i, j)`` with ``0 <= i < n`` and ``0 <= j < m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np
from mpmath import iv, mp, mpf

from .errors import (
    BadBasesError,
    DigitRangeError,
    DuplicateDigitError,
    NotApplicableError,
    TooFewDigitsError,
)
from .logforms import DEFAULT_PRECISION, LogRatio, factorize, iv_bounds, iv_precision, multiplicative_ratio

Digit = tuple[int, int]

# fractional-part margin below which the float ell() candidate is re-checked exactly
_ELL_MARGIN = 1e-6


def _row_major(d: Digit) -> tuple[int, int]:
    return (d[1], d[0])


@dataclass(frozen=True)
class CarpetSpec:
    """Raw carpet data; use :func:`validate` (or :func:`carpet`) before computing."""

    n: int
    m: int
    digits: tuple[Digit, ...]

    def __post_init__(self) -> None:
        digits = tuple((int(i), int(j)) for i, j in self.digits)
        object.__setattr__(self, "digits", tuple(sorted(digits, key=_row_major)))

    @property
    def N(self) -> int:
        return len(self.digits)

    @cached_property
    def digit_set(self) -> frozenset[Digit]:
        return frozenset(self.digits)

    @cached_property
    def fibers(self) -> tuple[int, ...]:
        return fiber_sequence(self)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Column indices present in each row, ascending."""
        out: list[list[int]] = [[] for _ in range(self.m)]
        for i, j in self.digits:
            out[j].append(i)
        return tuple(tuple(r) for r in out)

    @cached_property
    def occupied_rows(self) -> frozenset[int]:
        return frozenset(j for j, a in enumerate(self.fibers) if a > 0)

    @cached_property
    def sigma_witness(self) -> tuple[int, int] | None:
        return sigma_rational(self.n, self.m)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "digits": [list(d) for d in self.digits]}

    @classmethod
    def from_json(cls, obj: dict) -> "CarpetSpec":
        return validate(cls(int(obj["n"]), int(obj["m"]), tuple(tuple(d) for d in obj["digits"])))


def validate(spec: CarpetSpec) -> CarpetSpec:
    if spec.m < 2 or spec.n <= spec.m:
        raise BadBasesError(f"need n > m >= 2, got n={spec.n}, m={spec.m}")
    seen: set[Digit] = set()
    for d in spec.digits:
        i, j = d
        if not (0 <= i < spec.n and 0 <= j < spec.m):
            raise DigitRangeError(f"digit {d} outside {spec.n}x{spec.m} grid")
        if d in seen:
            raise DuplicateDigitError(f"digit {d} repeated")
        seen.add(d)
    if len(spec.digits) < 2:
        raise TooFewDigitsError("a carpet needs at least two digits")
    return spec


def carpet(n: int, m: int, digits: Iterable[Iterable[int]]) -> CarpetSpec:
    return validate(CarpetSpec(n, m, tuple(tuple(d) for d in digits)))


def fiber_sequence(spec: CarpetSpec) -> tuple[int, ...]:
    a = [0] * spec.m
    for _, j in spec.digits:
        a[j] += 1
    return tuple(a)


def sigma_rational(n: int, m: int) -> tuple[int, int] | None:
    """``(u, v)`` with ``log m / log n == u / v`` in lowest terms, or None."""
    r = multiplicative_ratio(m, n)
    return None if r is None else (r.numerator, r.denominator)


def common_base(n: int, m: int) -> int | None:
    """The largest ``b`` with ``n`` and ``m`` both integer powers of ``b``."""
    w = sigma_rational(n, m)
    if w is None:
        return None
    u, v = w
    g = 1
    for p, e in factorize(n):
        g *= p ** (e // v)
    return g


def sigma(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> mpf:
    with mp.workdps(precision + 5):
        return mp.log(spec.m) / mp.log(spec.n)


def _ell_exact(n: int, m: int, k: int) -> int:
    with mp.workdps(30 + len(str(k))):
        c = int(mp.floor(k * mp.log(n) / mp.log(m)))
    nk = n**k
    mc = m**c
    while mc > nk:
        mc //= m
        c -= 1
    while mc * m <= nk:
        mc *= m
        c += 1
    return c


def ell(spec: CarpetSpec, k: int) -> int:
    """The integer with ``m**ell <= n**k < m**(ell + 1)``."""
    return _ell(spec.n, spec.m, int(k))


@lru_cache(maxsize=65536)
def _ell(n: int, m: int, k: int) -> int:
    if k < 0:
        raise ValueError("rank must be non-negative")
    if k == 0:
        return 0
    w = sigma_rational(n, m)
    if w is not None:
        u, v = w
        return (k * v) // u
    return _ell_exact(n, m, k)


def ell_table(spec: CarpetSpec, K: int) -> np.ndarray:
    """``ell(k)`` for ``k = 0..K`` as an int64 array (index = rank)."""
    return _ell_table(spec.n, spec.m, int(K)).copy()


@lru_cache(maxsize=32)
def _ell_table(n: int, m: int, K: int) -> np.ndarray:
    ks = np.arange(K + 1, dtype=np.int64)
    w = sigma_rational(n, m)
    if w is not None:
        u, v = w
        return (ks * v) // u
    with mp.workdps(40):
        ratio = float(mp.log(n) / mp.log(m))
    approx = ks * ratio
    out = np.floor(approx).astype(np.int64)
    frac = approx - out
    # float error is below K * 1e-15, far under the margin for any practical K
    suspect = np.nonzero((frac < _ELL_MARGIN) | (frac > 1.0 - _ELL_MARGIN))[0]
    for k in suspect:
        out[k] = _ell(n, m, int(k))
    return out


@dataclass(frozen=True)
class DoublingWitness:
    non_doubling: bool
    failing_clause: str | None
    witness_row: int | None
    adjacent_rows: tuple[int, ...] = field(default=())


def is_non_doubling(spec: CarpetSpec) -> DoublingWitness:
    """Decide whether the uniform Bernoulli measure fails to be doubling.

    Non-doubling requires both end rows occupied, with different fiber
    counts, and at least one pair of consecutive occupied rows.
    """
    a = spec.fibers
    adjacent = tuple(j for j in range(spec.m - 1) if a[j] * a[j + 1] > 0)
    if a[0] * a[-1] == 0:
        return DoublingWitness(False, "end-row-vacant", None, adjacent)
    if a[0] == a[-1]:
        return DoublingWitness(False, "equal-end-rows", None, adjacent)
    if not adjacent:
        return DoublingWitness(False, "no-adjacent-rows", None, adjacent)
    return DoublingWitness(True, None, adjacent[0], adjacent)


def flip(spec: CarpetSpec) -> CarpetSpec:
    """Vertical reflection ``(i, j) -> (i, m - 1 - j)``; an isometry of the square."""
    return CarpetSpec(spec.n, spec.m, tuple((i, spec.m - 1 - j) for i, j in spec.digits))


def normalize_orientation(spec: CarpetSpec) -> CarpetSpec:
    a = spec.fibers
    if a[0] == a[-1]:
        raise NotApplicableError("end rows have equal fibers; orientation is undefined")
    return flip(spec) if a[0] < a[-1] else spec


def is_normalized(spec: CarpetSpec) -> bool:
    return spec.fibers[0] > spec.fibers[-1]


def require_non_doubling(spec: CarpetSpec) -> None:
    w = is_non_doubling(spec)
    if not w.non_doubling:
        raise NotApplicableError(f"carpet is of doubling type ({w.failing_clause})")


def h_set(spec: CarpetSpec) -> frozenset[int]:
    """Columns shared by some pair of consecutive rows."""
    s = spec.digit_set
    return frozenset(i for i, j in spec.digits if j + 1 < spec.m and (i, j + 1) in s)


def i_set(spec: CarpetSpec) -> frozenset[int]:
    """Columns present in both the bottom and the top row."""
    return frozenset(spec.rows[0]) & frozenset(spec.rows[-1])


@dataclass(frozen=True)
class Invariants:
    """Closed-form scalar invariants of a normalized non-doubling carpet.

    ``*_exact`` fields hold a :class:`LogRatio` when the value is a ratio of
    logarithms of rationals (always for Delta_aver; for delta_max and
    gamma_max only when sigma is rational).
    """

    delta_max: mpf
    Delta_aver: mpf
    gamma_max: mpf
    dim_VE: mpf
    dim_VE_kind: str  # "formula" | "countable" | "empty" | "unresolved"
    H: frozenset[int]
    I: frozenset[int]
    delta_max_exact: LogRatio | None
    Delta_aver_exact: LogRatio
    gamma_max_exact: LogRatio | None
    dim_VE_exact: LogRatio | None
    precision: int


def delta_max_form(spec: CarpetSpec) -> LogRatio | None:
    a = spec.fibers
    w = spec.sigma_witness
    if w is None:
        return None
    u, v = w
    b = common_base(spec.n, spec.m)
    # (1/sigma - 1) log r / log n  with m = b^u, n = b^v
    return LogRatio(Fraction(a[0], a[-1]) ** (v - u), Fraction(b) ** (u * v))


def gamma_max_form(spec: CarpetSpec) -> LogRatio | None:
    a, N = spec.fibers, spec.N
    w = spec.sigma_witness
    if w is None:
        return None
    u, v = w
    return LogRatio(Fraction(N**v, a[-1] ** (v - u)), Fraction(N**v, a[0] ** (v - u)))


def Delta_aver_form(spec: CarpetSpec) -> LogRatio:
    a, N = spec.fibers, spec.N
    return LogRatio(Fraction(a[0], a[-1]), Fraction(N, a[0]))


def delta_max_value(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> mpf:
    a = spec.fibers
    with mp.workdps(precision + 5):
        s = mp.log(spec.m) / mp.log(spec.n)
        return (1 / s - 1) * mp.log(mp.mpf(a[0]) / a[-1]) / mp.log(spec.n)


def gamma_max_value(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> mpf:
    a, N = spec.fibers, spec.N
    with mp.workdps(precision + 5):
        s = mp.log(spec.m) / mp.log(spec.n)
        return (mp.log(N) - (1 - s) * mp.log(a[-1])) / (mp.log(N) - (1 - s) * mp.log(a[0]))


def gamma_max_interval(spec: CarpetSpec, precision: int = DEFAULT_PRECISION):
    a, N = spec.fibers, spec.N
    with iv_precision(precision + 10):
        s = iv.log(spec.m) / iv.log(spec.n)
        return (iv.log(N) - (1 - s) * iv.log(a[-1])) / (iv.log(N) - (1 - s) * iv.log(a[0]))


def c0_bounds(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ``n * N**(1 + 1/sigma)``."""
    with iv_precision(precision + 10):
        inv_sigma = iv.log(spec.n) / iv.log(spec.m)
        c0 = spec.n * iv.mpf(spec.N) ** (1 + inv_sigma)
        return iv_bounds(c0)


def invariants(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> Invariants:
    require_non_doubling(spec)
    if not is_normalized(spec):
        raise NotApplicableError("normalize orientation first (need a_0 > a_{m-1})")
    from .classify import dim_VE  # V_E emptiness lives with the automaton

    dform = delta_max_form(spec)
    gform = gamma_max_form(spec)
    Dform = Delta_aver_form(spec)
    dim = dim_VE(spec, precision)
    return Invariants(
        delta_max=delta_max_value(spec, precision),
        Delta_aver=Dform.evaluate(precision),
        gamma_max=gamma_max_value(spec, precision),
        dim_VE=dim.value,
        dim_VE_kind=dim.kind.value,
        H=h_set(spec),
        I=i_set(spec),
        delta_max_exact=dform,
        Delta_aver_exact=Dform,
        gamma_max_exact=gform,
        dim_VE_exact=dim.exact,
        precision=precision,
    )
