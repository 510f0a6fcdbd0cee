"""Deterministic SVG drawings of carpet cylinders."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .core import CarpetSpec
from .errors import TooDeepError

MAX_DEPTH = 6


def _dec(q: Fraction, places: int) -> str:
    """``q`` rounded half-even to ``places`` decimals, no exponent."""
    scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"


def cylinders(spec: CarpetSpec, depth: int) -> list[tuple[int, int]]:
    """Integer corners ``(X, Y)`` of every rank-``depth`` cylinder, in units ``n^-depth`` by ``m^-depth``."""
    cells = [(0, 0)]
    for _ in range(depth):
        cells = [(X * spec.n + i, Y * spec.m + j) for X, Y in cells for i, j in spec.digits]
    cells.sort(key=lambda c: (c[1], c[0]))
    return cells


def render_carpet(
    spec: CarpetSpec,
    depth: int,
    overlay: Iterable[Sequence] = (),
    places: int = 12,
    size: int = 512,
) -> str:
    """SVG of the ``N^depth`` cylinders; ``overlay`` points are drawn as small circles.

    The unit square maps to a ``size`` x ``size`` canvas with the y axis
    pointing up.  Coordinates are exact rationals rounded to ``places``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > MAX_DEPTH:
        raise TooDeepError(f"depth {depth} exceeds {MAX_DEPTH}")
    w = Fraction(1, spec.n**depth)
    h = Fraction(1, spec.m**depth)
    W, H = _dec(w, places), _dec(h, places)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 1 1">',
        '<rect x="0" y="0" width="1" height="1" fill="white" stroke="black" stroke-width="0.002"/>',
        '<g fill="#4a6fd1" stroke="none">',
    ]
    for X, Y in cylinders(spec, depth):
        top = 1 - (Y + 1) * h
        lines.append(f'<rect x="{_dec(X * w, places)}" y="{_dec(top, places)}" width="{W}" height="{H}"/>')
    lines.append("</g>")
    points = [(Fraction(p[0]), Fraction(p[1])) for p in overlay]
    if points:
        lines.append('<g fill="#d12a2a" stroke="none">')
        for x, y in points:
            lines.append(f'<circle cx="{_dec(x, places)}" cy="{_dec(1 - y, places)}" r="0.006"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
