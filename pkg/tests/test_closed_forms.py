"""
Test closed forms
Gauge, loop group and classical group series, and the rank 1-3 moduli polynomials
"""

import dataclasses

import pytest

from realbetti.engine.closed_forms import (
    STABLE,
    FormulaId,
    FormulaTag,
    GroupFamily,
    LoopKind,
    classical_group_series,
    closed_form_factor_sum,
    expand_formula,
    gauge_classifying_series,
    loop_group_series,
    low_rank_moduli_closed_form,
)
from realbetti.engine.curves import RealCurveTopology, validate_topology
from realbetti.engine.errors import InvalidInput, InvalidTopology, UnsupportedRank
from realbetti.engine.series import FactorProduct, extract_polynomial, is_palindromic, series_from_factors

ORDER = 40


def expand(*triples, order=ORDER):
    return series_from_factors(FactorProduct.of(*triples), order)


# ==========================================
# GAUGE AND LOOP GROUPS
# ==========================================

@pytest.mark.parametrize("g,a", [(0, 0), (0, 1), (2, 0), (2, 3), (4, 2)])
def test_rank_one_gauge_series(g, a):
    expected = expand((1, 1, g), (-1, 1, -1))
    assert gauge_classifying_series(validate_topology(g, a), 1, ORDER) == expected


def test_rank_two_gauge_series():
    expected = expand((1, 1, 1), (1, 3, 2), (-1, 1, -3))
    assert gauge_classifying_series(validate_topology(2, 1), 2, ORDER) == expected


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("a", [1, 2, 3])
def test_rank_two_gauge_series_general(g, a):
    b = a - 1
    expected = expand((1, 1, g + b), (1, 2, b), (1, 3, g - b), (-1, 1, -2), (-1, 2, -1))
    assert gauge_classifying_series(validate_topology(g, a), 2, ORDER) == expected


def test_gauge_series_rejects_invalid_topology():
    with pytest.raises(InvalidTopology):
        gauge_classifying_series(RealCurveTopology(genus=2, real_circles=4), 2, ORDER)


def test_loop_groups_rank_one():
    geometric = expand((-1, 1, -1))
    assert loop_group_series(1, LoopKind.FIXED, ORDER) == geometric
    assert loop_group_series(1, LoopKind.ANTIPODAL, ORDER) == geometric


def test_loop_group_rank_two_fixed():
    expected = expand((1, 1, 1), (-1, 1, -1), (-1, 2, -1))
    assert loop_group_series(2, LoopKind.FIXED, ORDER) == expected


def test_loop_group_accepts_string_kind():
    assert loop_group_series(2, "antipodal", 10) == loop_group_series(2, LoopKind.ANTIPODAL, 10)


# ==========================================
# CLASSICAL GROUPS
# ==========================================

def test_classical_groups():
    assert classical_group_series(GroupFamily.O, 1, 10) == expand((-1, 1, -1), order=10)
    assert list(classical_group_series(GroupFamily.U, 2, 6).coefficients) == [1, 0, 1, 0, 2, 0, 2]
    assert list(classical_group_series(GroupFamily.O, STABLE, 5).coefficients) == [1, 1, 2, 3, 5, 7]
    assert list(classical_group_series(GroupFamily.SP, 1, 8).coefficients) == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_classical_group_rank_zero_is_one():
    assert list(classical_group_series(GroupFamily.U, 0, 3).coefficients) == [1, 0, 0, 0]


# ==========================================
# LOW RANK MODULI
# ==========================================

def moduli(r, g, a):
    topo = validate_topology(g, a)
    expected = r * r * (g - 1) + 1
    return extract_polynomial(low_rank_moduli_closed_form(r, topo, expected + 10), expected)


@pytest.mark.parametrize(
    "r,g,a,coefficients",
    [
        (2, 2, 1, (1, 3, 4, 4, 3, 1)),
        (2, 2, 2, (1, 4, 7, 7, 4, 1)),
        (2, 2, 3, (1, 5, 10, 10, 5, 1)),
        (2, 3, 1, (1, 4, 8, 14, 21, 21, 14, 8, 4, 1)),
        (2, 3, 4, (1, 7, 26, 62, 96, 96, 62, 26, 7, 1)),
        (3, 2, 1, (1, 3, 6, 12, 17, 18, 17, 12, 6, 3, 1)),
        (3, 2, 2, (1, 4, 11, 25, 40, 46, 40, 25, 11, 4, 1)),
        (3, 2, 3, (1, 5, 17, 44, 78, 94, 78, 44, 17, 5, 1)),
        (1, 5, 1, (1, 5, 10, 10, 5, 1)),
    ],
)
def test_published_polynomials(r, g, a, coefficients):
    assert moduli(r, g, a).coefficients == coefficients


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_closed_forms_are_palindromic(r, g):
    for a in range(1, g + 2):
        p = moduli(r, g, a)
        assert p.degree == r * r * (g - 1) + 1
        assert p.coefficients[0] == 1
        assert is_palindromic(p)


def test_rank_one_allows_no_real_points():
    assert moduli(1, 3, 0).coefficients == (1, 3, 3, 1)


def test_unsupported_rank():
    with pytest.raises(UnsupportedRank):
        low_rank_moduli_closed_form(4, validate_topology(2, 1), 20)


@pytest.mark.parametrize("r", [2, 3])
def test_low_rank_needs_real_circle(r):
    with pytest.raises(InvalidTopology):
        low_rank_moduli_closed_form(r, validate_topology(2, 0), 20)


def test_rank_three_factor_sum_has_bare_t_denominators():
    terms = closed_form_factor_sum(3, validate_topology(2, 2))
    assert [term.denominator_shift for term in terms] == [0, 1, 1]
    assert [term.coefficient for term in terms] == [1, -2, 4]


# ==========================================
# DISPATCH
# ==========================================

def test_expand_formula_matches_direct_calls():
    topo = validate_topology(3, 2)
    assert expand_formula(FormulaId(FormulaTag.GAUGE_REAL, genus=3, circles=2, rank=2), 20) == (
        gauge_classifying_series(topo, 2, 20)
    )
    assert expand_formula(FormulaId(FormulaTag.RANK3_MODULI, genus=3, circles=2), 30) == (
        low_rank_moduli_closed_form(3, topo, 30)
    )
    assert expand_formula(FormulaId(FormulaTag.CLASSICAL_SP), 12) == classical_group_series(
        GroupFamily.SP, STABLE, 12
    )


def test_expand_formula_genus_zero_stable():
    series = expand_formula(FormulaId(FormulaTag.GENUS_ZERO_STABLE_REAL_A), 4)
    # prod 1/(1-t^k)^2: 1, 2, 5, 10, 20
    assert list(series.coefficients) == [1, 2, 5, 10, 20]


def test_expand_formula_missing_parameter():
    with pytest.raises(InvalidInput):
        expand_formula(FormulaId(FormulaTag.RANK2_MODULI, genus=2), 10)


def test_formula_id_tag_carries_kind_and_family():
    assert [field.name for field in dataclasses.fields(FormulaId)] == ["tag", "genus", "circles", "rank"]
    assert expand_formula(FormulaId(FormulaTag.LOOP_GROUP_FIXED, rank=2), 15) == loop_group_series(2, LoopKind.FIXED, 15)
    assert expand_formula(FormulaId(FormulaTag.LOOP_GROUP_ANTIPODAL, rank=2), 15) == (
        loop_group_series(2, LoopKind.ANTIPODAL, 15)
    )
    assert expand_formula(FormulaId(FormulaTag.CLASSICAL_O, rank=3), 10) == classical_group_series(GroupFamily.O, 3, 10)
