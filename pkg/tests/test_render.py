import re
from fractions import Fraction

import pytest

from carpet_lab.errors import TooDeepError
from carpet_lab.render import _dec, cylinders, render_carpet

from .conftest import E


def test_decimal_rounding():
    assert _dec(Fraction(1, 3), 4) == "0.3333"
    assert _dec(Fraction(2, 3), 4) == "0.6667"
    assert _dec(Fraction(1), 2) == "1.00"


def test_depth_one_matches_digit_cells():
    svg = render_carpet(E, 1)
    cells = re.findall(r'<rect x="([0-9.]+)" y="([0-9.]+)" width="0.125000000000"', svg)
    assert len(cells) == 13
    got = {(round(float(x) * 8), round((1 - float(y)) * 4) - 1) for x, y in cells}
    assert got == set(E.digits)


@pytest.mark.parametrize("depth", [2, 3])
def test_cell_count(depth):
    assert render_carpet(E, depth).count('<rect ') - 1 == 13**depth
    assert len(cylinders(E, depth)) == 13**depth


def test_empty_overlay_is_byte_identical():
    assert render_carpet(E, 2, overlay=[]) == render_carpet(E, 2)
    assert render_carpet(E, 2, overlay=[(Fraction(1, 2), Fraction(1, 2))]) != render_carpet(E, 2)


def test_depth_guard():
    with pytest.raises(TooDeepError):
        render_carpet(E, 7)
    with pytest.raises(ValueError):
        render_carpet(E, 0)
