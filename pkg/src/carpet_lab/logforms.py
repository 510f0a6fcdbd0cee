"""Exact and certified arithmetic on logarithms of positive rationals.

Every scalar invariant of a carpet is a ratio of logarithms of rationals, at
least when ``log m / log n`` is rational.  Equality of two such ratios reduces
to an identity ``log a * log b == log c * log d``.  Writing each rational as a
vector of prime exponents turns both sides into quadratic forms in the
logarithms of primes; equal symmetric forms prove equality.  When the forms
differ the values are separated with interval arithmetic, and an unresolved
overlap is reported as indeterminate rather than guessed.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from mpmath import iv, mp, mpf

DEFAULT_PRECISION = 50


@contextlib.contextmanager
def iv_precision(dps: int) -> Iterator[None]:
    old = iv.dps
    iv.dps = dps
    try:
        yield
    finally:
        iv.dps = old


@lru_cache(maxsize=4096)
def factorize(k: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer as ((p, e), ...)."""
    if k < 1:
        raise ValueError(f"cannot factor {k}")
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if k > 1:
        out.append((k, 1))
    return tuple(out)


def prime_vector(q: Fraction | int) -> dict[int, int]:
    q = Fraction(q)
    if q <= 0:
        raise ValueError("logarithm of a non-positive number")
    vec: dict[int, int] = {}
    for p, e in factorize(q.numerator):
        vec[p] = vec.get(p, 0) + e
    for p, e in factorize(q.denominator):
        vec[p] = vec.get(p, 0) - e
    return vec


def _sym_form(u: dict[int, int], v: dict[int, int]) -> dict[tuple[int, int], int]:
    form: dict[tuple[int, int], int] = {}
    for p, a in u.items():
        for q, b in v.items():
            key = (p, q) if p <= q else (q, p)
            form[key] = form.get(key, 0) + a * b
    return {k: c for k, c in form.items() if c}


def multiplicative_ratio(a: Fraction | int, b: Fraction | int) -> Fraction | None:
    """Return ``log a / log b`` as a Fraction when it is rational, else None."""
    va, vb = prime_vector(a), prime_vector(b)
    if not vb:
        raise ZeroDivisionError("log of 1 in denominator")
    if not va:
        return Fraction(0)
    if set(va) != set(vb):
        return None
    p0 = next(iter(vb))
    ratio = Fraction(va[p0], vb[p0])
    if all(Fraction(va[p], vb[p]) == ratio for p in vb):
        return ratio
    return None


def to_iv(q: Fraction | int):
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def iv_log(q: Fraction | int):
    return iv.log(to_iv(q))


def iv_bounds(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return _raw_to_fraction(lo), _raw_to_fraction(hi)


def _raw_to_fraction(raw) -> Fraction:
    value = mp.make_mpf(raw)
    if not mp.isfinite(value):
        raise OverflowError("interval endpoint is not finite")
    man, exp = value.man_exp
    man = int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


def log_product_equal(a, b, c, d, precision: int = DEFAULT_PRECISION) -> bool | None:
    """Decide ``log a * log b == log c * log d`` for positive rationals.

    True and False answers are proofs; None means the interval enclosures at
    the working precision overlap while the symbolic forms differ.
    """
    lhs = _sym_form(prime_vector(a), prime_vector(b))
    rhs = _sym_form(prime_vector(c), prime_vector(d))
    if lhs == rhs:
        return True
    with iv_precision(precision + 10):
        x = iv_log(a) * iv_log(b)
        y = iv_log(c) * iv_log(d)
        lo_x, hi_x = iv_bounds(x)
        lo_y, hi_y = iv_bounds(y)
    if hi_x < lo_y or hi_y < lo_x:
        return False
    return None


@dataclass(frozen=True)
class LogRatio:
    """The real number ``log(num) / log(den)`` with ``den != 1``."""

    num: Fraction
    den: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "num", Fraction(self.num))
        object.__setattr__(self, "den", Fraction(self.den))
        if self.num <= 0 or self.den <= 0 or self.den == 1:
            raise ValueError(f"invalid log ratio log({self.num})/log({self.den})")

    def as_fraction(self) -> Fraction | None:
        """The exact value when it is rational."""
        return multiplicative_ratio(self.num, self.den)

    def evaluate(self, precision: int = DEFAULT_PRECISION) -> mpf:
        with mp.workdps(precision + 5):
            value = mp.log(mp.mpf(self.num.numerator) / self.num.denominator) / mp.log(
                mp.mpf(self.den.numerator) / self.den.denominator
            )
        return value

    def interval(self, precision: int = DEFAULT_PRECISION):
        with iv_precision(precision + 10):
            return iv_log(self.num) / iv_log(self.den)

    def equals(self, other: "LogRatio", precision: int = DEFAULT_PRECISION) -> bool | None:
        # log a / log b == log c / log d  <=>  log a * log d == log c * log b
        return log_product_equal(self.num, other.den, other.num, self.den, precision)

    def symbolic(self) -> str:
        exact = self.as_fraction()
        if exact is not None:
            return _fraction_str(exact)
        return f"log({_fraction_str(self.num)})/log({_fraction_str(self.den)})"


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fraction_str(q: Fraction | int) -> str:
    return _fraction_str(Fraction(q))


def decimal_str(x, precision: int = DEFAULT_PRECISION) -> str:
    """Fixed significant-digit rendering; infinities render as 'inf'."""
    if isinstance(x, Fraction):
        with mp.workdps(precision + 5):
            x = mp.mpf(x.numerator) / x.denominator
    if x == mp.inf or (isinstance(x, float) and math.isinf(x)):
        return "inf"
    with mp.workdps(precision + 5):
        return mp.nstr(mp.mpf(x), precision, strip_zeros=False, min_fixed=-math.inf, max_fixed=math.inf)


def fraction_upper(x) -> Fraction:
    return iv_bounds(x)[1]


def fraction_lower(x) -> Fraction:
    return iv_bounds(x)[0]
