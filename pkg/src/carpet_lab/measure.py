"""Approximate squares, their exact measures, and certified ball-measure bounds.

All geometry is exact.  A node of the refinement tree is an approximate
square of rank ``k``; its closed rectangle is
``[X/n^k, (X+1)/n^k] x [Y/m^l, (Y+1)/m^l]`` with ``l = ell(k)``.  Ball
measures are bracketed by refining only the squares that straddle the ball
boundary: squares inside contribute to both bounds, squares outside to
neither, and straddling squares at the target rank to the upper bound only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from mpmath import iv

from .coding import Coding, pi
from .core import CarpetSpec, c0_bounds, ell
from .errors import (
    DepthTooShallowError,
    EmptySquareError,
    NoAdmissibleCenterError,
    OutOfRangeError,
)
from .logforms import DEFAULT_PRECISION, iv_bounds, iv_precision
from .runlength import beta_parts

Point = tuple[Fraction, Fraction]

_IN, _OUT, _PARTIAL = 1, 0, 2


@dataclass(frozen=True)
class ApproxSquare:
    """Rank-``k`` approximate square fixed by ``k`` x-digits and ``ell(k)`` y-digits."""

    k: int
    xdigits: tuple[int, ...]
    ydigits: tuple[int, ...]

    @property
    def X(self) -> int:
        return _digits_value(self.xdigits, None)

    def rect(self, spec: CarpetSpec) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        X = _digits_value(self.xdigits, spec.n)
        Y = _digits_value(self.ydigits, spec.m)
        w = Fraction(1, spec.n**self.k)
        h = Fraction(1, spec.m ** len(self.ydigits))
        return X * w, (X + 1) * w, Y * h, (Y + 1) * h

    @property
    def row(self) -> tuple[int, ...]:
        return self.ydigits


def _digits_value(digits: Sequence[int], base: int | None) -> int:
    v = 0
    for d in digits:
        v = v * base + d
    return v


def approx_square(spec: CarpetSpec, k: int, xdigits: Sequence[int], ydigits: Sequence[int]) -> ApproxSquare:
    xdigits, ydigits = tuple(xdigits), tuple(ydigits)
    if len(xdigits) != k or len(ydigits) != ell(spec, k):
        raise EmptySquareError(f"rank {k} needs {k} x-digits and {ell(spec, k)} y-digits")
    s = spec.digit_set
    for t in range(k):
        if (xdigits[t], ydigits[t]) not in s:
            raise EmptySquareError(f"({xdigits[t]}, {ydigits[t]}) at position {t + 1} is not a digit")
    for t in range(k, len(ydigits)):
        if spec.fibers[ydigits[t]] == 0:
            raise EmptySquareError(f"row {ydigits[t]} at position {t + 1} is vacant")
    return ApproxSquare(k, xdigits, ydigits)


def square_of(spec: CarpetSpec, c: Coding, k: int) -> ApproxSquare:
    """The rank-``k`` approximate square containing the coded point."""
    L = ell(spec, k)
    return ApproxSquare(k, tuple(c.x(t) for t in range(1, k + 1)), tuple(c.y(t) for t in range(1, L + 1)))


def mu_approx_square(spec: CarpetSpec, q: ApproxSquare) -> Fraction:
    a = spec.fibers
    num = 1
    for y in q.ydigits[q.k :]:
        num *= a[y]
    return Fraction(num, spec.N ** len(q.ydigits))


def log_mu_interval(spec: CarpetSpec, q: ApproxSquare, precision: int = DEFAULT_PRECISION):
    """Outward-rounded enclosure of ``log mu(Q)`` as a sum of logarithms."""
    a = spec.fibers
    with iv_precision(precision + 10):
        total = -len(q.ydigits) * iv.log(spec.N)
        for y in q.ydigits[q.k :]:
            total += iv.log(a[y])
        return total


def k_of_r(spec: CarpetSpec, r: Fraction) -> int:
    """The integer ``k >= 0`` with ``n^-(k+2) < r <= n^-(k+1)``."""
    r = Fraction(r)
    n = spec.n
    if not (0 < r < Fraction(1, n)):
        raise OutOfRangeError(f"need 0 < r < 1/{n}, got {r}")
    e = 1
    while n ** (e + 1) * r.numerator <= r.denominator:
        e += 1
    return e - 1


def _rank_floor(spec: CarpetSpec, r: Fraction) -> int:
    return k_of_r(spec, r) if r < Fraction(1, spec.n) else 0


def k0_of_rho(spec: CarpetSpec, rho: Fraction) -> int:
    """The integer with ``n^-(k0+1) < rho <= n^-k0``."""
    rho = Fraction(rho)
    if not (0 < rho < 1):
        raise OutOfRangeError("need 0 < rho < 1")
    n, k0 = spec.n, 0
    while n ** (k0 + 1) * rho.numerator <= rho.denominator:
        k0 += 1
    return k0


# --------------------------------------------------------------------------
# refinement tree


@dataclass(frozen=True)
class _Node:
    k: int
    X: int
    Y: int
    pending: tuple[int, ...]  # y digits at positions k+1 .. ell(k)
    num: int  # mu = num / N^ell(k)


_ROOT = _Node(0, 0, 0, (), 1)


@lru_cache(maxsize=64)
def _tails(spec: CarpetSpec, d: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """All length-``d`` words over occupied rows with their value and fiber product."""
    rows = sorted(spec.occupied_rows)
    a = spec.fibers
    out = []
    for word in itertools.product(rows, repeat=d):
        val = prod = 1
        val = 0
        for y in word:
            val = val * spec.m + y
            prod *= a[y]
        out.append((word, val, prod))
    return tuple(out)


def _children(spec: CarpetSpec, node: _Node) -> Iterator[_Node]:
    k1 = node.k + 1
    d = ell(spec, k1) - ell(spec, node.k)
    a = spec.fibers
    md = spec.m**d
    for word, val, prod in _tails(spec, d):
        full = node.pending + word
        y1 = full[0]
        num = node.num * prod // a[y1]
        Y = node.Y * md + val
        rest = full[1:]
        for x in spec.rows[y1]:
            yield _Node(k1, node.X * spec.n + x, Y, rest, num)


def _node_square(spec: CarpetSpec, node: _Node) -> ApproxSquare:
    L = ell(spec, node.k)
    xs = [0] * node.k
    X = node.X
    for t in range(node.k - 1, -1, -1):
        X, xs[t] = divmod(X, spec.n)
    ys = [0] * L
    Y = node.Y
    for t in range(L - 1, -1, -1):
        Y, ys[t] = divmod(Y, spec.m)
    return ApproxSquare(node.k, tuple(xs), tuple(ys))


class _Ball:
    """Open Euclidean ball with exact integer predicates against rank-k rectangles."""

    def __init__(self, spec: CarpetSpec, center: Point, r: Fraction):
        self.spec = spec
        self.cx, self.cy = Fraction(center[0]), Fraction(center[1])
        self.r = Fraction(r)
        self._consts: dict[int, tuple[int, int, int, int, int, int, int]] = {}

    def _rank(self, k: int):
        c = self._consts.get(k)
        if c is None:
            spec = self.spec
            Sx, Sy = spec.n**k, spec.m ** ell(spec, k)
            bx, by, rd, rn = self.cx.denominator, self.cy.denominator, self.r.denominator, self.r.numerator
            CX = self.cx.numerator * Sx
            CY = self.cy.numerator * Sy
            A = (by * Sy * rd) ** 2
            B = (bx * Sx * rd) ** 2
            C = (rn * bx * Sx * by * Sy) ** 2
            c = (CX, CY, bx, by, A, B, C)
            self._consts[k] = c
        return c

    def classify(self, node: _Node) -> int:
        CX, CY, bx, by, A, B, C = self._rank(node.k)
        x0, x1 = node.X * bx - CX, (node.X + 1) * bx - CX
        y0, y1 = node.Y * by - CY, (node.Y + 1) * by - CY
        nx = x0 if x0 > 0 else (-x1 if x1 < 0 else 0)
        ny = y0 if y0 > 0 else (-y1 if y1 < 0 else 0)
        if nx * nx * A + ny * ny * B >= C:
            return _OUT
        fx = max(-x0, x1)
        fy = max(-y0, y1)
        if fx * fx * A + fy * fy * B < C:
            return _IN
        return _PARTIAL

    def contains_point(self, p: Point) -> bool:
        dx, dy = p[0] - self.cx, p[1] - self.cy
        return dx * dx + dy * dy < self.r * self.r


@dataclass(frozen=True)
class MeasureInterval:
    lower: Fraction
    upper: Fraction
    depth: int = 0
    nodes: int = 0

    def __post_init__(self) -> None:
        if not (0 <= self.lower <= self.upper <= 1):
            raise ValueError(f"bad measure interval [{self.lower}, {self.upper}]")

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def ball_measure_bounds(spec: CarpetSpec, z: Point, r: Fraction, depth: int) -> MeasureInterval:
    """Certified bounds on ``mu(B_r(z))`` from rank-``depth`` approximate squares."""
    r = Fraction(r)
    if depth < _rank_floor(spec, r):
        raise DepthTooShallowError(f"depth {depth} below k(r) = {_rank_floor(spec, r)}")
    ball = _Ball(spec, z, r)
    N = spec.N
    LK = ell(spec, depth)
    lower = upper = 0
    stack = [_ROOT]
    visited = 0
    while stack:
        node = stack.pop()
        visited += 1
        cls = ball.classify(node)
        if cls == _OUT:
            continue
        w = node.num * N ** (LK - ell(spec, node.k))
        if cls == _IN:
            lower += w
            upper += w
        elif node.k == depth:
            upper += w
        else:
            stack.extend(_children(spec, node))
    den = N**LK
    return MeasureInterval(Fraction(lower, den), Fraction(upper, den), depth, visited)


def _nodes_meeting(spec: CarpetSpec, ball: _Ball, k: int) -> list[_Node]:
    out, stack = [], [_ROOT]
    while stack:
        node = stack.pop()
        if ball.classify(node) == _OUT:
            continue
        if node.k == k:
            out.append(node)
        else:
            stack.extend(_children(spec, node))
    return out


_CERTAIN, _POSSIBLE, _ABSENT = 2, 1, 0


def _descent_status(spec: CarpetSpec, ball: _Ball, node: _Node, target: int) -> int:
    """Whether the carpet part of ``node`` meets the ball: certainly, possibly, or not at all."""
    stack = [node]
    found = _ABSENT
    while stack:
        cur = stack.pop()
        cls = ball.classify(cur)
        if cls == _OUT:
            continue
        if cls == _IN:
            return _CERTAIN
        if cur.k >= target:
            found = _POSSIBLE
            continue
        stack.extend(_children(spec, cur))
    return found


@dataclass(frozen=True)
class XiBracket:
    """Rank-``k(r)`` squares split into those certainly in the set and a superset."""

    k: int
    certain: tuple[ApproxSquare, ...]
    possible: tuple[ApproxSquare, ...]


def xi_bracket(spec: CarpetSpec, z: Point | Coding, r: Fraction, depth: int = 0) -> XiBracket:
    """Two-sided enclosure of the squares whose carpet part meets ``B_r(z)``.

    ``possible`` always contains the true set.  ``certain`` holds squares with
    a descendant inside the ball (found within ``depth`` extra ranks), plus the
    square coded by ``z`` itself when a coding is given.
    """
    r = Fraction(r)
    k = k_of_r(spec, r)
    zp = pi(spec, z) if isinstance(z, Coding) else (Fraction(z[0]), Fraction(z[1]))
    ball = _Ball(spec, zp, r)
    own = square_of(spec, z, k) if isinstance(z, Coding) else None
    certain, possible = [], []
    for nd in _nodes_meeting(spec, ball, k):
        q = _node_square(spec, nd)
        status = _descent_status(spec, ball, nd, k + depth)
        if q == own:
            status = _CERTAIN
        if status == _ABSENT:
            continue
        possible.append(q)
        if status == _CERTAIN:
            certain.append(q)
    key = lambda q: (q.ydigits, q.xdigits)
    return XiBracket(k, tuple(sorted(certain, key=key)), tuple(sorted(possible, key=key)))


def xi(spec: CarpetSpec, z: Point | Coding, r: Fraction, depth: int = 0) -> list[ApproxSquare]:
    """Rank-``k(r)`` approximate squares meeting the open ball ``B_r(z)``.

    The result is a certified superset.  With ``depth = 0`` only the
    rectangles are tested; larger depths discard squares none of whose
    descendants ``depth`` ranks down can meet the ball.
    """
    return list(xi_bracket(spec, z, r, depth).possible)


# --------------------------------------------------------------------------
# doubling quotient


@dataclass(frozen=True)
class UInterval:
    """Certified enclosure of the doubling quotient ``U(z; r, rho)``."""

    lower: Fraction
    upper: Fraction
    k_r: int
    k0: int
    depth: int
    outer_depth: int
    xi: tuple[ApproxSquare, ...]
    xi_max: Fraction
    xi_min: Fraction
    xi_certain: tuple[ApproxSquare, ...] = field(default=())
    centers: tuple[Point, ...] = field(default=())
    best_center: Point | None = None

    @property
    def xi_ratio(self) -> Fraction:
        """Upper bound for the max/min measure ratio over the true square set."""
        return self.xi_max / self.xi_min


def _first_in_row(spec: CarpetSpec, j: int) -> int | None:
    row = spec.rows[j]
    return row[0] if row else None


def _square_word(spec: CarpetSpec, q: ApproxSquare) -> list[tuple[int, int]]:
    word = list(zip(q.xdigits, q.ydigits[: q.k]))
    for y in q.ydigits[q.k :]:
        word.append((spec.rows[y][0], y))
    return word


def candidate_centers(spec: CarpetSpec, z: Point | Coding, r: Fraction, rho: Fraction, lift: int = 2) -> list[Coding]:
    """Points of the carpet likely to make ``mu(B_{rho r}(z'))`` small.

    The list starts with ``z`` and the run-length construction that pushes a
    point against a row boundary, then adds boundary representatives of the
    rank ``k(r)+lift`` squares meeting ``B_{(1-rho) r}(z)``, lightest first.
    Admissibility is not checked here.
    """
    m = spec.m
    k = k_of_r(spec, r)
    bottom, top = _first_in_row(spec, 0), _first_in_row(spec, m - 1)
    out: list[Coding] = []
    if isinstance(z, Coding):
        out.append(z)
        bp = beta_parts(spec, z, max(k, 1))
        a = spec.fibers
        for h, step, tail in ((bp.h_zero, -1, top), (bp.h_top, +1, bottom)):
            if h and tail is not None:
                yh = z.y(h) + step
                if 0 <= yh < m and a[yh] > 0:
                    head = [z.at(t) for t in range(1, h)]
                    out.append(Coding(tuple(head) + ((spec.rows[yh][0], yh),), ((tail, m - 1 if step < 0 else 0),)))
        zp = pi(spec, z)
    else:
        zp = (Fraction(z[0]), Fraction(z[1]))
    tails: list[tuple[tuple, tuple]] = []
    if bottom is not None and top is not None:
        tails.append((((bottom, 0),), ((top, m - 1),)))
        tails.append((((top, m - 1),), ((bottom, 0),)))
    for j in sorted(spec.occupied_rows, key=lambda j: spec.fibers[j]):
        tails.append(((), ((spec.rows[j][0], j),)))
    near = _nodes_meeting(spec, _Ball(spec, zp, (1 - rho) * r), k + lift)
    near.sort(key=lambda nd: (nd.num * spec.N ** (ell(spec, k + lift) - ell(spec, nd.k)), nd.Y, nd.X))
    for nd in near:
        word = tuple(_square_word(spec, _node_square(spec, nd)))
        for head, period in tails:
            out.append(Coding(word + head, period))
    return out


def big_u(
    spec: CarpetSpec,
    z: Point | Coding,
    r: Fraction,
    rho: Fraction,
    depth: int | None = None,
    outer_depth: int | None = None,
    xi_depth: int = 4,
    max_centers: int = 12,
    precision: int = DEFAULT_PRECISION,
) -> UInterval:
    """Certified interval for ``U(z; r, rho)``.

    Lower bound: the measure of ``B_r(z)`` from below over the measure of a
    sub-ball ``B_{rho r}(z')`` from above, maximised over candidate centres.
    Upper bound: ``mu(B_r(z))`` from above divided by the guaranteed floor
    ``C0^-(k0+4) * min mu(Q)`` over the squares meeting the ball.
    """
    r, rho = Fraction(r), Fraction(rho)
    k = k_of_r(spec, r)
    k0 = k0_of_rho(spec, rho)
    small = rho * r
    if depth is None:
        depth = k_of_r(spec, small) + 6
    if depth < k_of_r(spec, small):
        raise DepthTooShallowError("depth below k(rho r)")
    if outer_depth is None:
        outer_depth = min(depth, k + 4)
    zp = pi(spec, z) if isinstance(z, Coding) else (Fraction(z[0]), Fraction(z[1]))

    bracket = xi_bracket(spec, z, r, xi_depth)
    squares = bracket.possible
    if not squares:
        raise NoAdmissibleCenterError("the ball does not meet the carpet")
    measures = [mu_approx_square(spec, q) for q in squares]
    qmax, qmin = max(measures), min(measures)

    outer = ball_measure_bounds(spec, zp, r, outer_depth)
    _, c0_hi = c0_bounds(spec, precision)
    upper = outer.upper * c0_hi ** (k0 + 4) / qmin

    reach = (1 - rho) * r
    seen: set[Point] = set()
    centers: list[Point] = []
    for cand in candidate_centers(spec, z, r, rho):
        p = pi(spec, cand)
        if p in seen:
            continue
        seen.add(p)
        dx, dy = p[0] - zp[0], p[1] - zp[1]
        if dx * dx + dy * dy <= reach * reach:
            centers.append(p)
        if len(centers) >= max_centers:
            break
    if not centers:
        raise NoAdmissibleCenterError("no candidate centre keeps the sub-ball inside B_r(z)")

    best, best_center = None, None
    for p in centers:
        inner = ball_measure_bounds(spec, p, small, depth)
        if best is None or inner.upper < best:
            best, best_center = inner.upper, p
    lower = outer.lower / best
    return UInterval(
        lower=lower,
        upper=max(upper, lower),
        k_r=k,
        k0=k0,
        depth=depth,
        outer_depth=outer_depth,
        xi=tuple(squares),
        xi_max=qmax,
        xi_min=qmin,
        xi_certain=bracket.certain,
        centers=tuple(centers),
        best_center=best_center,
    )


# --------------------------------------------------------------------------
# constants of the two-sided estimates


def c1_bounds(spec: CarpetSpec, rho: Fraction, precision: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    k0 = k0_of_rho(spec, rho)
    lo, hi = c0_bounds(spec, precision)
    return 4 * lo ** (k0 + 4), 4 * hi ** (k0 + 4)


def c2_bounds(spec: CarpetSpec, rho: Fraction, precision: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Enclosure of ``C1 * n * (a0/a_{m-1})^(4/sigma)``."""
    c1_lo, c1_hi = c1_bounds(spec, rho, precision)
    a = spec.fibers
    with iv_precision(precision + 10):
        f = (iv.mpf(a[0]) / a[-1]) ** (4 * iv.log(spec.n) / iv.log(spec.m))
        f_lo, f_hi = iv_bounds(f)
    return c1_lo * spec.n * f_lo, c1_hi * spec.n * f_hi


@dataclass(frozen=True)
class SandwichReport:
    """Outcome of testing oracle U-intervals against the two-sided estimates.

    Each flag is ``None`` when its hypothesis does not hold for the triple.
    A ``True`` flag is a proof that the inequality holds: the oracle bound and
    the constants are rounded against it.
    """

    k_r: int
    beta: int
    u: UInterval
    ratio_low: Fraction
    ratio_high: Fraction
    square_ratio_upper: bool
    square_ratio_lower: bool | None
    run_length_upper: bool
    run_length_lower: bool | None

    @property
    def square_ratio_ok(self) -> bool:
        return self.square_ratio_upper and self.square_ratio_lower is not False

    @property
    def run_length_ok(self) -> bool:
        return self.run_length_upper and self.run_length_lower is not False


def sandwich_checks(
    spec: CarpetSpec,
    z: Coding,
    r: Fraction,
    rho: Fraction,
    depth: int | None = None,
    precision: int = DEFAULT_PRECISION,
) -> SandwichReport:
    """Test ``U(z; r, rho)`` against the square-ratio and run-length estimates.

    Upper estimates compare the oracle's lower bound for ``U(z; r)`` with the
    smallest admissible right side.  Lower estimates compare the oracle's
    lower bound for ``U(z; n^3 r)`` (resp. ``U(z; n^6 r)``) with the largest
    admissible right side.  ``depth`` is the refinement depth for ``U(z; r)``;
    the enlarged balls are refined by the same number of extra ranks.
    """
    r, rho = Fraction(r), Fraction(rho)
    n = spec.n
    k = k_of_r(spec, r)
    extra = None if depth is None else depth - k
    u = big_u(spec, z, r, rho, depth=depth, precision=precision)

    def enlarged(scale: int) -> UInterval:
        R = r * n**scale
        d = None if extra is None else k_of_r(spec, R) + extra
        return big_u(spec, z, R, rho, depth=d, precision=precision)

    certain = [mu_approx_square(spec, q) for q in u.xi_certain]
    ratio_low = max(certain) / min(certain)
    ratio_high = u.xi_ratio
    c1_lo, _ = c1_bounds(spec, rho, precision)
    c2_lo, _ = c2_bounds(spec, rho, precision)

    sq_upper = u.lower <= c1_lo * ratio_low
    sq_lower = None
    if k >= 3:
        sq_lower = enlarged(3).lower >= ratio_high / c1_lo

    a = spec.fibers
    ends = Fraction(max(a[0], a[-1]), min(a[0], a[-1]))
    bp = beta_parts(spec, z, max(k, 1))
    beta = bp.beta if k >= 1 else 0
    rl_upper = u.lower <= c2_lo * ends**beta
    rl_lower = None
    if k >= 6 and beta <= ell(spec, k) - k - 1 and r * n**7 < 1:
        rl_lower = enlarged(6).lower >= ends**beta / c2_lo
    return SandwichReport(k, beta, u, ratio_low, ratio_high, sq_upper, sq_lower, rl_upper, rl_lower)


def cylinder_ratio(spec: CarpetSpec, y, k: int) -> Fraction:
    """Exact ``mu(Q_{k+1}(w)) / mu(Q_k(w))`` from the y-digits of ``w``."""
    a, N = spec.fibers, spec.N
    l0, l1 = ell(spec, k), ell(spec, k + 1)
    yv = (lambda t: y.y(t)) if isinstance(y, Coding) else (lambda t: int(y[t - 1]))
    num = 1
    for t in range(l0 + 1, l1 + 1):
        num *= a[yv(t)]
    return Fraction(num, a[yv(k + 1)] * N ** (l1 - l0))


def cylinder_ratio_threshold(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> Fraction:
    """A rational at or above ``1/C0``; comparing against it is conservative."""
    c0_lo, _ = c0_bounds(spec, precision)
    return 1 / c0_lo


def cylinder_ratio_check(spec: CarpetSpec, y, k: int, precision: int = DEFAULT_PRECISION) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    return cylinder_ratio(spec, y, k) >= cylinder_ratio_threshold(spec, precision)


# --------------------------------------------------------------------------
# enumeration and sampling oracles


def approx_square_table(spec: CarpetSpec, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every rank-``k`` approximate square as arrays ``(X, Y, num)``; ``mu = num / N^ell(k)``.

    Built by direct enumeration of digit words, independently of the
    refinement tree.
    """
    L = ell(spec, k)
    dig = np.array(spec.digits, dtype=np.int64)
    X = np.zeros(1, dtype=np.int64)
    Y = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        X = (X[:, None] * spec.n + dig[None, :, 0]).ravel()
        Y = (Y[:, None] * spec.m + dig[None, :, 1]).ravel()
    rows = np.array(sorted(spec.occupied_rows), dtype=np.int64)
    fib = np.array(spec.fibers, dtype=np.int64)
    T = np.zeros(1, dtype=np.int64)
    P = np.ones(1, dtype=np.int64)
    for _ in range(L - k):
        T = (T[:, None] * spec.m + rows[None, :]).ravel()
        P = (P[:, None] * fib[rows][None, :]).ravel()
    shift = spec.m ** (L - k)
    Xg = np.repeat(X, T.size)
    Yg = (Y[:, None] * shift + T[None, :]).ravel()
    Pg = np.tile(P, X.size)
    return Xg, Yg, Pg


def sample_points(spec: CarpetSpec, rng: np.random.Generator, count: int, depth: int = 24) -> tuple[np.ndarray, np.ndarray]:
    """Float coordinates of ``count`` mu-random points, truncated at ``depth`` digits."""
    dig = np.array(spec.digits, dtype=np.float64)
    x = np.zeros(count)
    y = np.zeros(count)
    for t in range(depth, 0, -1):
        idx = rng.integers(0, spec.N, size=count)
        x = (x + dig[idx, 0]) / spec.n
        y = (y + dig[idx, 1]) / spec.m
    return x, y


def monte_carlo_ball_measure(
    spec: CarpetSpec, z: Point, r: Fraction, samples: int, seed: int, depth: int = 24
) -> tuple[float, float]:
    """Estimate and binomial standard error of ``mu(B_r(z))``."""
    rng = np.random.default_rng(seed)
    x, y = sample_points(spec, rng, samples, depth)
    d2 = (x - float(z[0])) ** 2 + (y - float(z[1])) ** 2
    p = float(np.mean(d2 < float(r) ** 2))
    return p, (p * (1 - p) / samples) ** 0.5


def xi_contains_coded_square(spec: CarpetSpec, c: Coding, r: Fraction) -> bool:
    return square_of(spec, c, k_of_r(spec, r)) in xi(spec, pi(spec, c), r)


__all__ = [
    "ApproxSquare",
    "MeasureInterval",
    "UInterval",
    "approx_square",
    "approx_square_table",
    "ball_measure_bounds",
    "big_u",
    "c1_bounds",
    "c2_bounds",
    "candidate_centers",
    "cylinder_ratio",
    "cylinder_ratio_check",
    "cylinder_ratio_threshold",
    "SandwichReport",
    "XiBracket",
    "sandwich_checks",
    "xi_bracket",
    "k0_of_rho",
    "k_of_r",
    "log_mu_interval",
    "monte_carlo_ball_measure",
    "mu_approx_square",
    "sample_points",
    "square_of",
    "xi",
]
