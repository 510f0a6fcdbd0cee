"""Run lengths of y-digit sequences and the reverse run-length function beta."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from . import kernels
from .coding import Coding, Periodic
from .core import CarpetSpec, ell, ell_table
from .errors import InsufficientWordError

YWord = Union[Sequence[int], np.ndarray, Periodic, Coding]


def _y_at(y: YWord, t: int) -> int:
    """1-based y digit; finite words raise when exhausted."""
    if isinstance(y, Coding):
        return y.y(t)
    if isinstance(y, Periodic):
        return y.at(t)
    if t > len(y):
        raise InsufficientWordError(f"position {t} beyond finite word of length {len(y)}")
    return int(y[t - 1])


def _is_periodic(y: YWord) -> bool:
    return isinstance(y, Periodic)


def run_length(theta: int, k: int, y: YWord) -> int | float:
    """Length of the run of ``theta`` starting at position ``k`` (0 if ``y_k != theta``).

    A run inside a constant periodic tail never ends and is reported as ``math.inf``.
    """
    if _y_at(y, k) != theta:
        return 0
    if _is_periodic(y):
        seq = y.ys if isinstance(y, Coding) else y
        if seq.period == (theta,) and k > len(seq.prefix):
            return math.inf
    t = 0
    while _y_at(y, k + t) == theta:
        t += 1
    return t


def modified_run_length(theta0: int, theta: int, k: int, y: YWord) -> int:
    """Run length of ``theta`` at ``k`` counted only when preceded by ``theta0``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if _y_at(y, k - 1) != theta0:
        return 0
    return run_length(theta, k, y)


@dataclass(frozen=True)
class BetaParts:
    k: int
    ell: int
    h_zero: int
    h_top: int
    beta_zero: int
    beta_top: int

    @property
    def beta(self) -> int:
        return max(self.beta_zero, self.beta_top)


@lru_cache(maxsize=256)
def membership(spec: CarpetSpec) -> tuple[np.ndarray, np.ndarray]:
    """Flags for digits whose neighbouring row below (``plus``) or above (``minus``) is occupied."""
    a = spec.fibers
    m = spec.m
    plus = np.array([v >= 1 and a[v - 1] > 0 for v in range(m)], dtype=bool)
    minus = np.array([v <= m - 2 and a[v + 1] > 0 for v in range(m)], dtype=bool)
    return plus, minus


def beta_parts(spec: CarpetSpec, y: YWord, k: int) -> BetaParts:
    """Reverse run-length data of ``y`` at rank ``k``.

    ``y`` may be a coding, a periodic y-sequence, or a finite word covering
    positions ``1 .. ell(k)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    L = ell(spec, k)
    plus, minus = membership(spec)
    top = spec.m - 1
    h0 = hT = 0
    for h in range(L, 0, -1):
        v = _y_at(y, h)
        if not h0 and v != 0:
            h0 = h
        if not hT and v != top:
            hT = h
        if h0 and hT:
            break
    b0 = L - max(k, h0) if h0 and plus[_y_at(y, h0)] else 0
    bT = L - max(k, hT) if hT and minus[_y_at(y, hT)] else 0
    return BetaParts(k, L, h0, hT, b0, bT)


def beta_sequence(spec: CarpetSpec, y_digits: np.ndarray, K: int) -> tuple[np.ndarray, np.ndarray]:
    """``(beta_zero, beta_top)`` for ranks ``0..K`` of a finite word of length >= ell(K)."""
    ells = ell_table(spec, K)
    if len(y_digits) < ells[-1]:
        raise InsufficientWordError(f"need {int(ells[-1])} y digits, have {len(y_digits)}")
    plus, minus = membership(spec)
    return kernels.beta_parts_seq(y_digits, ells, plus, minus, spec.m)


def beta_values(spec: CarpetSpec, y_digits: np.ndarray, K: int) -> np.ndarray:
    b0, bT = beta_sequence(spec, y_digits, K)
    return np.maximum(b0, bT)


class BetaStream:
    """Incremental beta evaluator fed one y digit at a time.

    Keeps only the last position differing from 0 and from m-1, so memory is
    constant and total work is linear in the number of digits.
    """

    def __init__(self, spec: CarpetSpec):
        self.spec = spec
        self._plus, self._minus = membership(spec)
        self._pos = 0
        self._last0 = 0
        self._lastT = 0
        self._y_last0 = 0
        self._y_lastT = 0
        self._k = 0

    def push(self, v: int) -> list[int]:
        """Consume ``y_{pos+1}`` and return beta for every rank that became computable."""
        self._pos += 1
        if v != 0:
            self._last0, self._y_last0 = self._pos, v
        if v != self.spec.m - 1:
            self._lastT, self._y_lastT = self._pos, v
        out = []
        while ell(self.spec, self._k + 1) == self._pos:
            self._k += 1
            out.append(self._beta(self._k))
        return out

    def _beta(self, k: int) -> int:
        L = self._pos
        b0 = L - max(k, self._last0) if self._last0 and self._plus[self._y_last0] else 0
        bT = L - max(k, self._lastT) if self._lastT and self._minus[self._y_lastT] else 0
        return max(b0, bT)
