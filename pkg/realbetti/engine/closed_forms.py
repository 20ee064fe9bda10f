"""
Closed Forms
Every closed-form Poincare series used by the engine, written down as
FactorProduct data and only then expanded
"""

import dataclasses
from enum import Enum
from typing import List, Optional

from realbetti.engine.curves import RealCurveTopology, validate_topology
from realbetti.engine.errors import InvalidInput, InvalidTopology, UnsupportedRank
from realbetti.engine.series import (
    FactorProduct,
    SumTerm,
    TruncatedSeries,
    expand_factor_sum,
    series_from_factors,
)

# Sentinel for n = infinity in classical_group_series
STABLE: Optional[int] = None


class FormulaTag(str, Enum):
    """Closed forms available through `formula dump`"""
    GAUGE_REAL = "GaugeReal"
    LOOP_GROUP_FIXED = "LoopGroupFixed"
    LOOP_GROUP_ANTIPODAL = "LoopGroupAntipodal"
    CLASSICAL_O = "ClassicalO"
    CLASSICAL_U = "ClassicalU"
    CLASSICAL_SP = "ClassicalSp"
    RANK1_MODULI = "Rank1Moduli"
    RANK2_MODULI = "Rank2Moduli"
    RANK3_MODULI = "Rank3Moduli"
    GENUS_ZERO_STABLE_REAL_A = "GenusZeroStableRealA"
    GENUS_ZERO_STABLE_REAL_B = "GenusZeroStableRealB"
    GENUS_ZERO_STABLE_COMPLEX = "GenusZeroStableComplex"


class LoopKind(str, Enum):
    """Involution on the circle"""
    FIXED = "fixed"          # sigma = identity
    ANTIPODAL = "antipodal"  # sigma = antipodal map


class GroupFamily(str, Enum):
    O = "O"
    U = "U"
    SP = "Sp"


@dataclasses.dataclass(frozen=True)
class FormulaId:
    """A closed form plus the parameters it needs"""
    tag: FormulaTag
    genus: Optional[int] = None
    circles: Optional[int] = None
    rank: Optional[int] = None  # also n for the classical groups (None = stable)


# ==========================================
# GAUGE GROUPS AND LOOP GROUPS
# ==========================================

def gauge_factor_product(topo: RealCurveTopology, r: int) -> FactorProduct:
    """
    (1 - t^2r) / (1 + t^r)^a * prod_{k=1..r} (1+t^k)^2a (1+t^(2k-1))^(g+1-a) / (1-t^2k)^2
    """
    g, a = topo.g, topo.a
    triples = [(-1, 2 * r, 1), (1, r, -a)]
    for k in range(1, r + 1):
        triples += [(1, k, 2 * a), (1, 2 * k - 1, g + 1 - a), (-1, 2 * k, -2)]
    return FactorProduct.of(*triples)


def gauge_classifying_series(topo: RealCurveTopology, r: int, order: int) -> TruncatedSeries:
    """
    Poincare series of the classifying space of the real gauge group

    Independent of the degree and of the Stiefel-Whitney numbers.

    Args:
        topo: Curve topology (revalidated)
        r: Rank >= 1
        order: Truncation order

    Returns:
        Expansion to the given order
    """
    if r < 1:
        raise InvalidInput(f"rank must be >= 1, got {r}")
    topo = validate_topology(topo.g, topo.a)
    return series_from_factors(gauge_factor_product(topo, r), order)


def loop_group_factor_product(r: int, kind: LoopKind) -> FactorProduct:
    if r < 1:
        raise InvalidInput(f"rank must be >= 1, got {r}")
    kind = LoopKind(kind)
    if kind is LoopKind.FIXED:
        # 1/(1+t^r) * prod (1+t^k)^2 / (1-t^2k)
        triples = [(1, r, -1)]
        for k in range(1, r + 1):
            triples += [(1, k, 2), (-1, 2 * k, -1)]
    else:
        # prod (1+t^(2k-1)) / (1-t^2k)
        triples = []
        for k in range(1, r + 1):
            triples += [(1, 2 * k - 1, 1), (-1, 2 * k, -1)]
    return FactorProduct.of(*triples)


def loop_group_series(r: int, kind: LoopKind, order: int) -> TruncatedSeries:
    """Poincare series of the classifying space of a real loop group"""
    return series_from_factors(loop_group_factor_product(r, kind), order)


def classical_group_factor_product(family: GroupFamily, n: Optional[int], order: int) -> FactorProduct:
    family = GroupFamily(family)
    if n is not None and n < 0:
        raise InvalidInput(f"n must be >= 0, got {n}")
    top = order if n is None else n
    step = {GroupFamily.O: 1, GroupFamily.U: 2, GroupFamily.SP: 4}[family]
    return FactorProduct.of(*((-1, step * k, -1) for k in range(1, top + 1)))


def classical_group_series(family: GroupFamily, n: Optional[int], order: int) -> TruncatedSeries:
    """
    Poincare series of BO_n, BU_n or BSp_n (n = STABLE for the stable limit)

    O: prod 1/(1-t^k), U: prod 1/(1-t^2k), Sp: prod 1/(1-t^4k), k = 1..n
    """
    return series_from_factors(classical_group_factor_product(family, n, order), order)


def genus_zero_stable_factor_product(tag: FormulaTag, order: int) -> FactorProduct:
    """Stable genus-zero gauge series, infinite products cut at k <= order"""
    triples = []
    for k in range(1, order + 1):
        if tag is FormulaTag.GENUS_ZERO_STABLE_REAL_A:
            triples.append((-1, k, -2))
        elif tag is FormulaTag.GENUS_ZERO_STABLE_REAL_B:
            triples += [(1, 2 * k - 1, 1), (-1, 2 * k, -2)]
        elif tag is FormulaTag.GENUS_ZERO_STABLE_COMPLEX:
            triples.append((-1, 2 * k, -2))
        else:
            raise InvalidInput(f"{tag.value} is not a genus-zero stable series")
    return FactorProduct.of(*triples)


# ==========================================
# LOW RANK MODULI SPACES
# ==========================================

def closed_form_factor_sum(r: int, topo: RealCurveTopology) -> List[SumTerm]:
    """
    Poincare polynomial of M(r, d, tau) for r = 1, 2, 3 as a sum of products

    Raises:
        UnsupportedRank: r not in {1, 2, 3}
        InvalidTopology: r in {2, 3} with no real circles
    """
    topo = validate_topology(topo.g, topo.a)
    g, a = topo.g, topo.a
    if r == 1:
        return [SumTerm(1, FactorProduct.of((1, 1, g)))]
    if r not in (2, 3):
        raise UnsupportedRank(f"closed forms exist for ranks 1, 2, 3 only, got {r}")
    if a < 1:
        raise InvalidTopology(f"rank-{r} closed form needs a >= 1 real circle, got a={a}")

    b = a - 1
    if r == 2:
        # [(1+t)^(g+b) (1+t^2)^b (1+t^3)^(g-b) - 2^b t^g (1+t)^2g] / ((1-t)(1-t^2))
        return [
            SumTerm(1, FactorProduct.of(
                (1, 1, g + b), (1, 2, b), (1, 3, g - b), (-1, 1, -1), (-1, 2, -1),
            )),
            SumTerm(-(2 ** b), FactorProduct.of(
                (1, 1, 2 * g), (-1, 1, -1), (-1, 2, -1), monomial=g,
            )),
        ]

    return [
        # (1+t)^(g+b) (1+t^2)^2b (1+t^3)^g (1+t^5)^(g-b) / ((1-t)(1-t^2)^2(1-t^3))
        SumTerm(1, FactorProduct.of(
            (1, 1, g + b), (1, 2, 2 * b), (1, 3, g), (1, 5, g - b),
            (-1, 1, -1), (-1, 2, -2), (-1, 3, -1),
        )),
        # - 2^b t^2g (1+t)^(2g+b) (1+t^2)^b (1+t^3)^(g-b) / (t (1-t)^3 (1-t^3))
        SumTerm(-(2 ** b), FactorProduct.of(
            (1, 1, 2 * g + b), (1, 2, b), (1, 3, g - b), (-1, 1, -3), (-1, 3, -1),
            monomial=2 * g,
        ), denominator_shift=1),
        # + 4^b t^3g (1+t)^3g (1+t^2+t^4) / (t (1-t)^2 (1-t^2) (1-t^6)),
        # with 1 + t^2 + t^4 = (1 - t^6) / (1 - t^2)
        SumTerm(4 ** b, FactorProduct.of(
            (1, 1, 3 * g), (-1, 6, 1), (-1, 2, -1),
            (-1, 1, -2), (-1, 2, -1), (-1, 6, -1),
            monomial=3 * g,
        ), denominator_shift=1),
    ]


def low_rank_moduli_closed_form(r: int, topo: RealCurveTopology, order: int) -> TruncatedSeries:
    """
    Expand the rank 1/2/3 closed form to the given order

    For g >= 2 the result is a palindromic polynomial of degree r^2(g-1)+1.
    """
    return expand_factor_sum(closed_form_factor_sum(r, topo), order)


# ==========================================
# DISPATCH
# ==========================================

def expand_formula(fid: FormulaId, order: int) -> TruncatedSeries:
    """
    Expand any closed form by id

    Args:
        fid: Formula tag and parameters
        order: Truncation order

    Returns:
        TruncatedSeries
    """
    tag = FormulaTag(fid.tag)

    def need(value: Optional[int], name: str) -> int:
        if value is None:
            raise InvalidInput(f"{tag.value} needs --{name}")
        return value

    if tag is FormulaTag.GAUGE_REAL:
        topo = validate_topology(need(fid.genus, "genus"), need(fid.circles, "circles"))
        return gauge_classifying_series(topo, need(fid.rank, "rank"), order)
    if tag is FormulaTag.LOOP_GROUP_FIXED:
        return loop_group_series(need(fid.rank, "rank"), LoopKind.FIXED, order)
    if tag is FormulaTag.LOOP_GROUP_ANTIPODAL:
        return loop_group_series(need(fid.rank, "rank"), LoopKind.ANTIPODAL, order)
    if tag in (FormulaTag.CLASSICAL_O, FormulaTag.CLASSICAL_U, FormulaTag.CLASSICAL_SP):
        family = {
            FormulaTag.CLASSICAL_O: GroupFamily.O,
            FormulaTag.CLASSICAL_U: GroupFamily.U,
            FormulaTag.CLASSICAL_SP: GroupFamily.SP,
        }[tag]
        return classical_group_series(family, fid.rank, order)
    if tag in (FormulaTag.RANK1_MODULI, FormulaTag.RANK2_MODULI, FormulaTag.RANK3_MODULI):
        rank = {FormulaTag.RANK1_MODULI: 1, FormulaTag.RANK2_MODULI: 2, FormulaTag.RANK3_MODULI: 3}[tag]
        topo = validate_topology(need(fid.genus, "genus"), need(fid.circles, "circles"))
        return low_rank_moduli_closed_form(rank, topo, order)
    return series_from_factors(genus_zero_stable_factor_product(tag, order), order)
