"""Lipschitz-invariant profiles and a pairwise non-equivalence checker.

The central device is a small product automaton reading pairs of letters
``(dA, dB)`` from two codings at once.  Each coordinate of the pair is in
one of three relations: equal so far (``E``), or split by a carry, after
which the larger side must continue with zeros and the smaller with top
digits forever (``A`` when the first coding is larger, ``B`` otherwise).
Non-emptiness of the set of points with two distinct y-codings is the
existence of an infinite run that leaves ``E`` in the y coordinate; contact
between two translated copies of the carpet is an infinite run started in a
split state.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from mpmath import mp

from .coding import Coding, pi
from .core import (
    CarpetSpec,
    delta_max_form,
    delta_max_value,
    Delta_aver_form,
    gamma_max_form,
    gamma_max_interval,
    gamma_max_value,
    h_set,
    i_set,
    is_non_doubling,
    normalize_orientation,
    sigma,
)
from .errors import BaseMismatchError
from .logforms import (
    DEFAULT_PRECISION,
    LogRatio,
    decimal_str,
    fraction_str,
    iv_bounds,
    log_product_equal,
)

# --------------------------------------------------------------------------
# pair automaton

_E, _A, _B = "E", "A", "B"


def _step(state: str, a: int, c: int, base: int) -> str | None:
    if state == _E:
        if a == c:
            return _E
        if a == c + 1:
            return _A
        if c == a + 1:
            return _B
        return None
    if state == _A:
        return _A if (a == 0 and c == base - 1) else None
    return _B if (a == base - 1 and c == 0) else None


State = tuple[str, str]
Edge = tuple[State, tuple[tuple[int, int], tuple[int, int]]]


def _graph(spec: CarpetSpec, starts: Iterable[State]) -> tuple[dict[State, list[Edge]], dict[State, tuple]]:
    """Reachable transition graph and a shortest letter path to each state."""
    digits = spec.digits
    graph: dict[State, list[Edge]] = {}
    path: dict[State, tuple] = {}
    queue: deque[State] = deque()
    for s in starts:
        path[s] = ()
        queue.append(s)
    while queue:
        s = queue.popleft()
        out: list[Edge] = []
        for dA in digits:
            for dB in digits:
                xs = _step(s[0], dA[0], dB[0], spec.n)
                if xs is None:
                    continue
                ys = _step(s[1], dA[1], dB[1], spec.m)
                if ys is None:
                    continue
                t = (xs, ys)
                out.append((t, (dA, dB)))
                if t not in path:
                    path[t] = path[s] + ((dA, dB),)
                    queue.append(t)
        graph[s] = out
    return graph, path


def _cycle_from(graph: dict[State, list[Edge]], start: State) -> tuple[State, tuple, tuple] | None:
    """A lasso ``start -> c -> c`` inside the graph: (c, path to c, cycle letters)."""
    reach: dict[State, tuple] = {start: ()}
    queue: deque[State] = deque([start])
    while queue:
        s = queue.popleft()
        for t, letters in graph.get(s, []):
            if t not in reach:
                reach[t] = reach[s] + (letters,)
                queue.append(t)
    for c in sorted(reach):
        back: dict[State, tuple] = {}
        queue = deque()
        for t, letters in graph.get(c, []):
            if t not in back:
                back[t] = (letters,)
                queue.append(t)
        while queue:
            s = queue.popleft()
            if s == c:
                return c, reach[c], back[c]
            for t, letters in graph.get(s, []):
                if t not in back:
                    back[t] = back[s] + (letters,)
                    queue.append(t)
    return None


def _lasso_codings(prefix: tuple, cycle: tuple) -> tuple[Coding, Coding]:
    return (
        Coding(tuple(p[0] for p in prefix), tuple(p[0] for p in cycle)),
        Coding(tuple(p[1] for p in prefix), tuple(p[1] for p in cycle)),
    )


@dataclass(frozen=True)
class VSCResult:
    """``holds`` is True iff no point has two codings with different y-parts."""

    holds: bool
    witness: tuple[Coding, Coding] | None = None


def vsc_check(spec: CarpetSpec) -> VSCResult:
    graph, path = _graph(spec, [(_E, _E)])
    for s in sorted(path):
        if s[1] == _E:
            continue
        lasso = _cycle_from(graph, s)
        if lasso is not None:
            c, to_c, cycle = lasso
            wa, wb = _lasso_codings(path[s] + to_c, cycle)
            return VSCResult(False, (wa, wb))
    return VSCResult(True, None)


def copies_meet(spec: CarpetSpec, dx: int, dy: int) -> bool:
    """Whether ``E`` meets ``E + (dx, dy)`` for unit offsets ``dx, dy in {-1, 0, 1}``."""
    if (dx, dy) == (0, 0):
        return True
    start = ({0: _E, 1: _B, -1: _A}[dx], {0: _E, 1: _B, -1: _A}[dy])
    graph, _ = _graph(spec, [start])
    return _cycle_from(graph, start) is not None


# --------------------------------------------------------------------------
# dimension of the double-coding set


class DimKind(str, enum.Enum):
    FORMULA = "formula"
    COUNTABLE = "countable"
    EMPTY = "empty"


@dataclass(frozen=True)
class DimVE:
    value: mp.mpf
    kind: DimKind
    exact: LogRatio

    @property
    def fraction(self) -> Fraction | None:
        return self.exact.as_fraction()


def dim_VE(spec: CarpetSpec, precision: int = DEFAULT_PRECISION) -> DimVE:
    """``log #I / log n`` when ``H`` is nonempty and ``#I >= 2``; otherwise 0.

    In the zero case the kind separates an empty set (VSC holds) from a
    countable one.  The closed form is used as stated; it is not derived here.
    """
    H, I = h_set(spec), i_set(spec)
    if H and len(I) >= 2:
        form = LogRatio(len(I), spec.n)
        return DimVE(form.evaluate(precision), DimKind.FORMULA, form)
    kind = DimKind.EMPTY if vsc_check(spec).holds else DimKind.COUNTABLE
    return DimVE(mp.mpf(0), kind, LogRatio(1, spec.n))


# --------------------------------------------------------------------------
# structure flags


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class StructureFlags:
    non_doubling: bool
    vacant_rows: bool
    sigma_rational: bool
    sigma_witness: tuple[int, int] | None
    totally_disconnected: Tri
    depth: int
    reason: str

    @property
    def in_special_class(self) -> Tri:
        """Membership in the class of totally disconnected, vacant-row, doubling, rational carpets."""
        if not (self.vacant_rows and not self.non_doubling and self.sigma_rational):
            return Tri.NO
        return self.totally_disconnected

    def to_json(self) -> dict:
        return {
            "t": self.totally_disconnected.value,
            "v": self.vacant_rows,
            "d": not self.non_doubling,
            "r": self.sigma_rational,
            "depth": self.depth,
            "reason": self.reason,
        }


def _piece_graph(sub: CarpetSpec) -> dict[tuple[int, int], set[tuple[int, int]]]:
    """First-level pieces of ``sub`` joined when their parts of ``sub``'s attractor meet."""
    meets = {(dx, dy): copies_meet(sub, dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)}
    s = sub.digit_set
    adj: dict[tuple[int, int], set[tuple[int, int]]] = {d: set() for d in sub.digits}
    for i, j in sub.digits:
        for (dx, dy), ok in meets.items():
            if ok and (dx, dy) != (0, 0) and (i + dx, j + dy) in s:
                adj[(i, j)].add((i + dx, j + dy))
    return adj


def _components(adj: dict) -> list[list]:
    seen, comps = set(), []
    for v in sorted(adj):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _connected_subcarpet(spec: CarpetSpec, depth: int) -> tuple[tuple[int, int], ...] | None:
    """A digit subset of size >= 2 whose attractor is connected, searched by splitting components."""
    todo = [spec.digits]
    for _ in range(max(depth, 1) * len(spec.digits)):
        if not todo:
            return None
        digits = todo.pop()
        sub = CarpetSpec(spec.n, spec.m, digits)
        comps = _components(_piece_graph(sub))
        if len(comps) == 1:
            return digits
        todo.extend(tuple(c) for c in comps if len(c) >= 2)
    return None


def class_flags(spec: CarpetSpec, depth: int = 4) -> StructureFlags:
    """Structure flags; total disconnectedness is decided only when a certificate is found.

    ``no``: some digit subset with at least two digits has a connected
    attractor, detected by the first-level piece graph of that subset.
    ``yes``: the first-level pieces of the carpet are pairwise disjoint, so
    every component sits in a single cylinder of every rank.
    """
    w = is_non_doubling(spec)
    vacant = 0 in spec.fibers
    sw = spec.sigma_witness
    adj = _piece_graph(spec)
    if not any(adj.values()):
        t, reason = Tri.YES, "first-level pieces pairwise disjoint"
    else:
        sub = _connected_subcarpet(spec, depth)
        if sub is not None:
            t, reason = Tri.NO, "connected sub-attractor on digits " + ",".join(f"({i},{j})" for i, j in sub)
        else:
            t, reason = Tri.INDETERMINATE, f"no certificate within depth {depth}"
    return StructureFlags(w.non_doubling, vacant, sw is not None, sw, t, depth, reason)


# --------------------------------------------------------------------------
# profiles


def _distinct_fibers(fibers: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    values = sorted({a for a in fibers if a > 0}, reverse=True)
    return tuple(values), tuple(fibers.count(a) for a in values)


@dataclass(frozen=True)
class InvariantProfile:
    """Serializable summary of one carpet; scalar invariants are decimal strings."""

    n: int
    m: int
    N: int
    fibers: tuple[int, ...]
    s: int
    a_star: tuple[int, ...]
    M: tuple[int, ...]
    sigma: str
    sigma_witness: tuple[int, int] | None
    non_doubling: bool
    failing_clause: str | None
    witness_row: int | None
    normalized_fibers: tuple[int, ...] | None
    delta_max: str | None
    delta_max_exact: str | None
    Delta_aver: str | None
    Delta_aver_exact: str | None
    gamma_max: str | None
    gamma_max_exact: str | None
    dim_VE: str
    dim_VE_exact: str | None
    dim_VE_kind: str
    vsc: bool
    H: tuple[int, ...]
    I: tuple[int, ...]
    flags: dict = field(hash=False, compare=True)
    precision: int = DEFAULT_PRECISION

    def to_json(self) -> dict:
        out = {}
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            out[name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "InvariantProfile":
        kw = {}
        for name in cls.__dataclass_fields__:
            v = obj[name]
            kw[name] = tuple(v) if isinstance(v, list) else v
        return cls(**kw)


def _exact_str(form: LogRatio | None) -> str | None:
    return None if form is None else form.symbolic()


def profile(spec: CarpetSpec, precision: int = DEFAULT_PRECISION, depth: int = 4) -> InvariantProfile:
    w = is_non_doubling(spec)
    a_star, M = _distinct_fibers(spec.fibers)
    dim = dim_VE(spec, precision)
    vsc = vsc_check(spec)
    flags = class_flags(spec, depth)
    d_max = d_exact = D_aver = D_exact = g_max = g_exact = None
    norm = None
    if w.non_doubling:
        ns = normalize_orientation(spec)
        norm = ns.fibers
        d_form = delta_max_form(ns)
        D_form = Delta_aver_form(ns)
        g_form = gamma_max_form(ns)
        d_max = decimal_str(delta_max_value(ns, precision), precision)
        D_aver = decimal_str(D_form.evaluate(precision), precision)
        g_max = decimal_str(gamma_max_value(ns, precision), precision)
        d_exact, D_exact, g_exact = _exact_str(d_form), _exact_str(D_form), _exact_str(g_form)
    return InvariantProfile(
        n=spec.n,
        m=spec.m,
        N=spec.N,
        fibers=spec.fibers,
        s=len(spec.occupied_rows),
        a_star=a_star,
        M=M,
        sigma=decimal_str(sigma(spec, precision), precision),
        sigma_witness=spec.sigma_witness,
        non_doubling=w.non_doubling,
        failing_clause=w.failing_clause,
        witness_row=w.witness_row,
        normalized_fibers=norm,
        delta_max=d_max,
        delta_max_exact=d_exact,
        Delta_aver=D_aver,
        Delta_aver_exact=D_exact,
        gamma_max=g_max,
        gamma_max_exact=g_exact,
        dim_VE=decimal_str(dim.value, precision),
        dim_VE_exact=_exact_str(dim.exact),
        dim_VE_kind=dim.kind.value,
        vsc=vsc.holds,
        H=tuple(sorted(h_set(spec))),
        I=tuple(sorted(i_set(spec))),
        flags=flags.to_json(),
        precision=precision,
    )


# --------------------------------------------------------------------------
# multifractal spectrum


class Tristate(str, enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "notEqual"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class MultifractalResult:
    outcome: Tristate
    clause: str | None = None
    precision: int = DEFAULT_PRECISION


def _combine(results: list[tuple[bool | None, str]]) -> tuple[Tristate, str | None]:
    unknown = None
    for ok, clause in results:
        if ok is False:
            return Tristate.NOT_EQUAL, clause
        if ok is None and unknown is None:
            unknown = clause
    return (Tristate.INDETERMINATE, unknown) if unknown else (Tristate.EQUAL, None)


def multifractal_equal(E: CarpetSpec, F: CarpetSpec, precision: int = DEFAULT_PRECISION) -> MultifractalResult:
    """Decide the chained identities between distinct fibers, multiplicities, row counts and sizes.

    For rational ``sigma = u/v`` every clause is an integer identity; otherwise
    clauses are products of logarithms compared with certified intervals.
    """
    _same_bases(E, F)
    aE, ME = _distinct_fibers(E.fibers)
    aF, MF = _distinct_fibers(F.fibers)
    if len(aE) != len(aF):
        return MultifractalResult(Tristate.NOT_EQUAL, "distinct-fiber-count", precision)
    s, s2 = len(E.occupied_rows), len(F.occupied_rows)
    N, N2 = E.N, F.N
    n, m = E.n, E.m
    clauses: list[tuple[bool | None, str]] = []
    w = E.sigma_witness
    if w is not None:
        u, v = w
        for i, (a, b) in enumerate(zip(aE, aF), start=1):
            clauses.append((a**u * ME[i - 1] ** v == b**u * MF[i - 1] ** v, f"fiber-ratio[{i}]"))
            clauses.append((MF[i - 1] * s == ME[i - 1] * s2, f"multiplicity-ratio[{i}]"))
        clauses.append((s2 ** (v - u) * N2**u == s ** (v - u) * N**u, "size-ratio"))
    else:
        for i, (a, b) in enumerate(zip(aE, aF), start=1):
            Mi, Mi2 = ME[i - 1], MF[i - 1]
            clauses.append(
                (log_product_equal(Fraction(a, b), m, Fraction(Mi2, Mi), n, precision), f"fiber-ratio[{i}]")
            )
            clauses.append((Mi2 * s == Mi * s2, f"multiplicity-ratio[{i}]"))
        clauses.append(
            (log_product_equal(Fraction(s2, s), Fraction(n, m), m, Fraction(N, N2), precision), "size-ratio")
        )
    outcome, clause = _combine(clauses)
    return MultifractalResult(outcome, clause, precision)


# --------------------------------------------------------------------------
# comparator


class Outcome(str, enum.Enum):
    NOT_EQUIVALENT = "NotEquivalent"
    PASS = "NecessaryConditionsPass"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Certificate:
    invariant: str
    value_e: str
    value_f: str
    basis: str

    def to_json(self) -> dict:
        return {"invariant": self.invariant, "E": self.value_e, "F": self.value_f, "basis": self.basis}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificates: tuple[Certificate, ...] = ()
    notes: tuple[str, ...] = ()
    assumed_t: bool = False
    precision: int = DEFAULT_PRECISION

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "certificates": [c.to_json() for c in self.certificates],
            "notes": list(self.notes),
            "assumedT": self.assumed_t,
            "precision": self.precision,
        }


_BASIS_SPECTRUM = "multifractal spectrum of the uniform measure"
_BASIS_DOUBLING = "doubling type of the uniform measure"
_BASIS_INDEX = "point-wise doubling index"
_BASIS_ENDS = "end-row fibers of non-doubling carpets"
_BASIS_FIBERS = "fiber multiset"
_BASIS_VE = "double-coding set"
_BASIS_FLAGS = "structure flag"


def _same_bases(E: CarpetSpec, F: CarpetSpec) -> None:
    if (E.n, E.m) != (F.n, F.m):
        raise BaseMismatchError(f"bases differ: ({E.n},{E.m}) vs ({F.n},{F.m})")


def _spectrum_data(spec: CarpetSpec) -> str:
    a, M = _distinct_fibers(spec.fibers)
    pairs = ",".join(f"{x}x{c}" for x, c in zip(a, M))
    return f"N={spec.N};rows={len(spec.occupied_rows)};fibers={pairs}"


def _gamma_equal(E: CarpetSpec, F: CarpetSpec, precision: int) -> bool | None:
    gE, gF = gamma_max_form(E), gamma_max_form(F)
    if gE is not None and gF is not None:
        return gE.equals(gF, precision)
    key = lambda s: (s.N, s.fibers[0], s.fibers[-1])  # noqa: E731
    if key(E) == key(F):
        return True
    loE, hiE = iv_bounds(gamma_max_interval(E, precision))
    loF, hiF = iv_bounds(gamma_max_interval(F, precision))
    return False if (hiE < loF or hiF < loE) else None


def _dim_str(d: DimVE) -> str:
    f = d.fraction
    return fraction_str(f) if f is not None else d.exact.symbolic()


def _non_doubling_certificates(E: CarpetSpec, F: CarpetSpec, precision: int) -> tuple[list[Certificate], list[str]]:
    certs: list[Certificate] = []
    notes: list[str] = []
    nE, nF = normalize_orientation(E), normalize_orientation(F)
    aE, aF = nE.fibers, nF.fibers
    if sorted(aE) != sorted(aF):
        certs.append(Certificate("fiber-multiset", str(sorted(aE)), str(sorted(aF)), _BASIS_FIBERS))
    if aE[0] != aF[0]:
        certs.append(Certificate("a0", str(aE[0]), str(aF[0]), _BASIS_ENDS))
    if aE[-1] != aF[-1]:
        certs.append(Certificate("a_{m-1}", str(aE[-1]), str(aF[-1]), _BASIS_ENDS))

    rE, rF = Fraction(aE[0], aE[-1]), Fraction(aF[0], aF[-1])
    if rE != rF:  # same (n, m): delta_max is a strictly increasing function of a0/a_{m-1}
        certs.append(
            Certificate(
                "delta_max",
                decimal_str(delta_max_value(nE, precision), precision),
                decimal_str(delta_max_value(nF, precision), precision),
                _BASIS_INDEX,
            )
        )
    DE, DF = Delta_aver_form(nE), Delta_aver_form(nF)
    eq = DE.equals(DF, precision)
    if eq is False:
        certs.append(
            Certificate("Delta_aver", decimal_str(DE.evaluate(precision), precision),
                        decimal_str(DF.evaluate(precision), precision), _BASIS_INDEX)
        )
    elif eq is None:
        notes.append(f"Delta_aver equality unresolved at precision {precision}")
    eq = _gamma_equal(nE, nF, precision)
    if eq is False:
        certs.append(
            Certificate("gamma_max", decimal_str(gamma_max_value(nE, precision), precision),
                        decimal_str(gamma_max_value(nF, precision), precision), _BASIS_INDEX)
        )
    elif eq is None:
        notes.append(f"gamma_max equality unresolved at precision {precision}")

    dE, dF = dim_VE(E, precision), dim_VE(F, precision)
    if dE.kind is DimKind.FORMULA and dF.kind is DimKind.FORMULA:
        differ = dE.exact.equals(dF.exact, precision) is False
    else:
        differ = (dE.kind is DimKind.FORMULA) != (dF.kind is DimKind.FORMULA)
    if differ:
        certs.append(Certificate("dim_VE", _dim_str(dE), _dim_str(dF), _BASIS_VE))
    vE, vF = dE.kind is DimKind.EMPTY, dF.kind is DimKind.EMPTY
    if vE != vF:
        certs.append(Certificate("VSC", str(vE).lower(), str(vF).lower(), _BASIS_VE))
    return certs, notes


def compare(
    E: CarpetSpec,
    F: CarpetSpec,
    precision: int = DEFAULT_PRECISION,
    assume_t: str | None = None,
    depth: int = 4,
) -> Verdict:
    """Collect every certified obstruction to a bi-Lipschitz map between ``E`` and ``F``.

    Only non-equivalence is ever certified; the absence of obstructions is
    reported as ``NecessaryConditionsPass``.
    """
    _same_bases(E, F)
    certs: list[Certificate] = []
    notes: list[str] = []

    mf = multifractal_equal(E, F, precision)
    if mf.outcome is Tristate.NOT_EQUAL:
        certs.append(Certificate("multifractal-spectrum", _spectrum_data(E), _spectrum_data(F), f"{_BASIS_SPECTRUM} ({mf.clause})"))
    elif mf.outcome is Tristate.INDETERMINATE:
        notes.append(f"multifractal clause {mf.clause} unresolved at precision {precision}")

    wE, wF = is_non_doubling(E), is_non_doubling(F)
    if wE.non_doubling and wF.non_doubling:
        c, n = _non_doubling_certificates(E, F, precision)
        certs += c
        notes += n
    elif wE.non_doubling != wF.non_doubling:
        certs.append(
            Certificate("doubling-type", str(not wE.non_doubling).lower(), str(not wF.non_doubling).lower(),
                        _BASIS_DOUBLING)
        )

    fE, fF = class_flags(E, depth), class_flags(F, depth)
    tE, tF = fE.totally_disconnected, fF.totally_disconnected
    assumed = False
    if assume_t is not None:
        forced = Tri(assume_t)
        if tE is Tri.INDETERMINATE:
            tE, assumed = forced, True
        if tF is Tri.INDETERMINATE:
            tF, assumed = forced, True
    if fE.vacant_rows != fF.vacant_rows:
        certs.append(Certificate("vacant-rows", str(fE.vacant_rows).lower(), str(fF.vacant_rows).lower(), _BASIS_FLAGS))
    if Tri.INDETERMINATE not in (tE, tF) and tE != tF:
        certs.append(Certificate("totally-disconnected", tE.value, tF.value, _BASIS_FLAGS))

    def special(f: StructureFlags, t: Tri) -> Tri:
        if not (f.vacant_rows and not f.non_doubling and f.sigma_rational):
            return Tri.NO
        return t

    sE, sF = special(fE, tE), special(fF, tF)
    undecided = False
    if sorted(E.fibers) != sorted(F.fibers) and not (wE.non_doubling and wF.non_doubling):
        # class membership is itself invariant, so one carpet outside the class suffices
        if Tri.NO in (sE, sF):
            certs.append(
                Certificate("fiber-multiset", str(sorted(E.fibers)), str(sorted(F.fibers)),
                            f"{_BASIS_FIBERS} outside the special class")
            )
        elif Tri.YES not in (sE, sF) and not certs:
            undecided = True
            notes.append("fiber multisets differ; total disconnectedness undecided")
        elif sE is Tri.YES and sF is Tri.YES:
            notes.append("both carpets in the special class; fiber mismatch carries no certificate")

    if certs:
        return Verdict(Outcome.NOT_EQUIVALENT, tuple(certs), tuple(notes), assumed, precision)
    if undecided or mf.outcome is Tristate.INDETERMINATE or any("unresolved" in s for s in notes):
        return Verdict(Outcome.INDETERMINATE, (), tuple(notes), assumed, precision)
    return Verdict(Outcome.PASS, (), tuple(notes), assumed, precision)


def ve_witness_point(spec: CarpetSpec) -> tuple[Fraction, Fraction] | None:
    res = vsc_check(spec)
    return None if res.witness is None else pi(spec, res.witness[0])


__all__ = [
    "Certificate",
    "DimKind",
    "DimVE",
    "InvariantProfile",
    "MultifractalResult",
    "Outcome",
    "StructureFlags",
    "Tri",
    "Tristate",
    "VSCResult",
    "Verdict",
    "class_flags",
    "compare",
    "copies_meet",
    "dim_VE",
    "multifractal_equal",
    "profile",
    "ve_witness_point",
    "vsc_check",
]
