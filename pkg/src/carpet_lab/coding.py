"""Eventually periodic codings of carpet points and the coding map."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import CarpetSpec, Digit
from .errors import BadLengthError, CodingError


def _canonical(prefix: tuple, period: tuple) -> tuple[tuple, tuple]:
    if not period:
        raise CodingError("period must be nonempty")
    q = len(period)
    for d in range(1, q + 1):
        if q % d == 0 and period[:d] * (q // d) == period:
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        period = (period[-1],) + period[:-1]
        prefix = prefix[:-1]
    return prefix, period


@dataclass(frozen=True)
class Periodic:
    """An eventually periodic sequence ``prefix + period + period + ...`` in canonical form."""

    prefix: tuple
    period: tuple

    def __post_init__(self) -> None:
        prefix, period = _canonical(tuple(self.prefix), tuple(self.period))
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def at(self, t: int):
        """Letter at 1-based position ``t``."""
        p = len(self.prefix)
        if t <= p:
            return self.prefix[t - 1]
        return self.period[(t - p - 1) % len(self.period)]

    def head(self, length: int) -> list:
        return [self.at(t) for t in range(1, length + 1)]


class OmegaClass(enum.Enum):
    IN_OMEGA_0 = "InOmega0"
    IN_OMEGA_M1 = "InOmegaM1"
    NEITHER = "Neither"


@dataclass(frozen=True)
class Coding(Periodic):
    """Eventually periodic word over the digit set; letters are ``(x, y)`` pairs."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple((int(i), int(j)) for i, j in self.prefix))
        object.__setattr__(self, "period", tuple((int(i), int(j)) for i, j in self.period))
        super().__post_init__()

    @property
    def xs(self) -> Periodic:
        return Periodic(tuple(d[0] for d in self.prefix), tuple(d[0] for d in self.period))

    @property
    def ys(self) -> Periodic:
        return Periodic(tuple(d[1] for d in self.prefix), tuple(d[1] for d in self.period))

    def x(self, t: int) -> int:
        return self.at(t)[0]

    def y(self, t: int) -> int:
        return self.at(t)[1]

    def y_digits(self, length: int) -> np.ndarray:
        """``y_1 .. y_length`` as an int64 array."""
        p = len(self.prefix)
        period = np.array([d[1] for d in self.period], dtype=np.int64)
        out = np.empty(length, dtype=np.int64)
        head = min(p, length)
        out[:head] = [d[1] for d in self.prefix[:head]]
        if length > p:
            reps = -(-(length - p) // len(period))
            out[p:] = np.tile(period, reps)[: length - p]
        return out

    def to_json(self) -> dict:
        return {"prefix": [list(d) for d in self.prefix], "period": [list(d) for d in self.period]}

    @classmethod
    def from_json(cls, obj: dict) -> "Coding":
        return cls(tuple(tuple(d) for d in obj.get("prefix", [])), tuple(tuple(d) for d in obj["period"]))


def check_coding(spec: CarpetSpec, c: Coding) -> Coding:
    s = spec.digit_set
    for d in c.prefix + c.period:
        if d not in s:
            raise CodingError(f"letter {d} is not a digit of the carpet")
    return c


def _periodic_value(seq: Periodic, base: int) -> Fraction:
    p, q = len(seq.prefix), len(seq.period)
    head = sum(Fraction(dgt, base**t) for t, dgt in enumerate(seq.prefix, start=1))
    cycle = 0
    for dgt in seq.period:
        cycle = cycle * base + dgt
    return head + Fraction(cycle, base**p * (base**q - 1))


def pi(spec: CarpetSpec, c: Coding) -> tuple[Fraction, Fraction]:
    """Exact coordinates of the point coded by ``c``."""
    return _periodic_value(c.xs, spec.n), _periodic_value(c.ys, spec.m)


def _expansions(seq: Periodic, base: int) -> list[Periodic]:
    out = [seq]
    if seq.period == (0,):
        nz = [t for t, dgt in enumerate(seq.prefix) if dgt != 0]
        if nz:
            h = nz[-1]
            out.append(Periodic(seq.prefix[:h] + (seq.prefix[h] - 1,), (base - 1,)))
    elif seq.period == (base - 1,):
        nt = [t for t, dgt in enumerate(seq.prefix) if dgt != base - 1]
        if nt:
            h = nt[-1]
            out.append(Periodic(seq.prefix[:h] + (seq.prefix[h] + 1,), (0,)))
    return out


def _zip(spec: CarpetSpec, xs: Periodic, ys: Periodic) -> Coding | None:
    P = max(len(xs.prefix), len(ys.prefix))
    Q = math.lcm(len(xs.period), len(ys.period))
    letters = [(xs.at(t), ys.at(t)) for t in range(1, P + Q + 1)]
    s = spec.digit_set
    if any(d not in s for d in letters):
        return None
    return Coding(tuple(letters[:P]), tuple(letters[P:]))


def all_codings(spec: CarpetSpec, c: Coding) -> frozenset[Coding]:
    """Every coding of the point ``pi(c)``; at most four."""
    found = set()
    for xs in _expansions(c.xs, spec.n):
        for ys in _expansions(c.ys, spec.m):
            alt = _zip(spec, xs, ys)
            if alt is not None:
                found.add(alt)
    return frozenset(found)


def _expand(q: Fraction, base: int) -> Periodic:
    """Base-``base`` expansion of ``q`` in ``[0, 1]``; 1 is written as ``(base-1)^inf``."""
    if not 0 <= q <= 1:
        raise CodingError(f"coordinate {q} outside [0, 1]")
    if q == 1:
        return Periodic((), (base - 1,))
    num, den = q.numerator, q.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    while num not in seen:
        seen[num] = len(digits)
        num *= base
        digits.append(num // den)
        num %= den
    start = seen[num]
    return Periodic(tuple(digits[:start]), tuple(digits[start:]))


def coding_of_point(spec: CarpetSpec, p: Sequence) -> Coding:
    """A coding of the rational point ``p``; raises when ``p`` is not in the carpet.

    Among several codings the smallest in canonical order is returned.
    """
    x, y = Fraction(p[0]), Fraction(p[1])
    found = set()
    for xs in _expansions(_expand(x, spec.n), spec.n):
        for ys in _expansions(_expand(y, spec.m), spec.m):
            c = _zip(spec, xs, ys)
            if c is not None:
                found.add(c)
    if not found:
        raise CodingError(f"point ({x}, {y}) is not in the carpet")
    return min(found, key=lambda c: (len(c.prefix) + len(c.period), c.prefix, c.period))


def omega_class(spec: CarpetSpec, c: Coding) -> OmegaClass:
    period = c.ys.period
    if period == (0,):
        return OmegaClass.IN_OMEGA_0
    if period == (spec.m - 1,):
        return OmegaClass.IN_OMEGA_M1
    return OmegaClass.NEITHER


def in_VE(spec: CarpetSpec, c: Coding) -> bool:
    return len({alt.ys for alt in all_codings(spec, c)}) >= 2


def digit_array(spec: CarpetSpec) -> np.ndarray:
    return np.array(spec.digits, dtype=np.int64).reshape(-1, 2)


def random_indices(spec: CarpetSpec, rng: np.random.Generator, length: int) -> np.ndarray:
    """I.i.d. uniform indices into ``spec.digits``."""
    dtype = np.uint8 if spec.N <= 256 else np.int64
    return rng.integers(0, spec.N, size=length, dtype=dtype)


def random_word(spec: CarpetSpec, seed: int, length: int) -> list[Digit]:
    """Uniform i.i.d. digits drawn with numpy's PCG64 generator seeded by ``seed``."""
    if length < 1:
        raise BadLengthError("length must be at least 1")
    rng = np.random.default_rng(seed)
    idx = random_indices(spec, rng, length)
    return [spec.digits[i] for i in idx.tolist()]


def random_coding(spec: CarpetSpec, rng: np.random.Generator, max_prefix: int = 6, max_period: int = 4) -> Coding:
    """Random eventually periodic coding, used for sampling test points."""
    p = int(rng.integers(0, max_prefix + 1))
    q = int(rng.integers(1, max_period + 1))
    idx = random_indices(spec, rng, p + q).tolist()
    letters = [spec.digits[i] for i in idx]
    return Coding(tuple(letters[:p]), tuple(letters[p:]))


def word_to_coding(word: Sequence[Digit], tail: Digit) -> Coding:
    return Coding(tuple(word), (tail,))


def flip_coding(spec: CarpetSpec, c: Coding) -> Coding:
    m = spec.m
    return Coding(tuple((i, m - 1 - j) for i, j in c.prefix), tuple((i, m - 1 - j) for i, j in c.period))
