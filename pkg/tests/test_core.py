import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from carpet_lab.core import (
    CarpetSpec,
    carpet,
    common_base,
    ell,
    ell_table,
    flip,
    invariants,
    is_non_doubling,
    normalize_orientation,
    sigma_rational,
    validate,
)
from carpet_lab.errors import (
    BadBasesError,
    DigitRangeError,
    DuplicateDigitError,
    NotApplicableError,
    TooFewDigitsError,
)

from .conftest import D, E, F, specs


def test_validate_rejects_bad_input():
    with pytest.raises(BadBasesError):
        carpet(4, 4, [(0, 0), (1, 1)])
    with pytest.raises(BadBasesError):
        carpet(3, 1, [(0, 0), (1, 0)])
    with pytest.raises(DigitRangeError):
        carpet(8, 4, [(8, 0), (1, 1)])
    with pytest.raises(DuplicateDigitError):
        validate(CarpetSpec(8, 4, ((1, 1), (1, 1))))
    with pytest.raises(TooFewDigitsError):
        carpet(8, 4, [(1, 1)])


def test_figure_fibers():
    assert E.fibers == (3, 4, 4, 2)
    assert F.fibers == (4, 3, 4, 2)
    assert E.N == F.N == 13


def test_ell_small_values():
    # 4^ell <= 8^k < 4^(ell+1)
    assert [ell(E, k) for k in range(7)] == [0, 1, 3, 4, 6, 7, 9]


@given(specs())
@settings(max_examples=60, deadline=None)
def test_ell_bracket(spec):
    for k in range(0, 40):
        L = ell(spec, k)
        assert spec.m**L <= spec.n**k < spec.m ** (L + 1)


def test_ell_irrational_sigma_against_integers():
    spec = carpet(10, 3, [(0, 0), (1, 1), (2, 2)])
    table = ell_table(spec, 3000)
    for k in range(0, 3001, 97):
        L = int(table[k])
        assert 3**L <= 10**k < 3 ** (L + 1)


def test_sigma_witness_and_base():
    assert sigma_rational(8, 4) == (2, 3)
    assert common_base(8, 4) == 2
    assert sigma_rational(9, 3) == (1, 2)
    assert sigma_rational(10, 3) is None
    assert common_base(12, 3) is None


def test_non_doubling_clauses():
    assert is_non_doubling(E).non_doubling
    assert is_non_doubling(E).witness_row == 0
    assert 1 in is_non_doubling(F).adjacent_rows
    assert not is_non_doubling(D).non_doubling
    assert is_non_doubling(D).failing_clause == "equal-end-rows"
    vacant_end = carpet(5, 3, [(0, 0), (1, 1), (2, 1)])
    assert is_non_doubling(vacant_end).failing_clause == "end-row-vacant"
    no_adjacent = carpet(5, 3, [(0, 0), (1, 0), (2, 2)])
    assert is_non_doubling(no_adjacent).failing_clause == "no-adjacent-rows"


def test_figure_invariants_match_independent_floats():
    inv = invariants(E)
    sig = math.log(4) / math.log(8)
    assert float(inv.delta_max) == pytest.approx((1 / sig - 1) * math.log(1.5) / math.log(8), rel=1e-14)
    assert float(inv.delta_max) == pytest.approx(math.log(1.5) / (2 * math.log(8)), rel=1e-14)
    assert float(inv.Delta_aver) == pytest.approx(math.log(1.5) / math.log(13 / 3), rel=1e-14)
    g = (math.log(13) - math.log(2) / 3) / (math.log(13) - math.log(3) / 3)
    assert float(inv.gamma_max) == pytest.approx(g, rel=1e-14)
    assert inv.delta_max_exact.symbolic() == "log(3/2)/log(64)"
    assert invariants(F).delta_max_exact.as_fraction() == Fraction(1, 6)


def test_invariants_require_orientation_and_type():
    with pytest.raises(NotApplicableError):
        invariants(D)
    with pytest.raises(NotApplicableError):
        invariants(flip(E))
    assert normalize_orientation(flip(E)) == E


@given(specs())
@settings(max_examples=80, deadline=None)
def test_flip_is_involution(spec):
    assert flip(flip(spec)) == spec
    assert flip(spec).fibers == spec.fibers[::-1]
    assert is_non_doubling(flip(spec)).non_doubling == is_non_doubling(spec).non_doubling


def test_json_round_trip():
    assert CarpetSpec.from_json(E.to_json()) == E
