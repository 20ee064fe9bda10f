"""
Generating-Function Identities
Genus-zero identities between infinite products, checked coefficient by
coefficient to a given order
"""

from typing import Iterator, Optional, Tuple

from realbetti.engine.closed_forms import (
    STABLE,
    FormulaTag,
    GroupFamily,
    classical_group_series,
    genus_zero_stable_factor_product,
)
from realbetti.engine.errors import InvalidInput
from realbetti.engine.series import TruncatedSeries, series_add, series_from_factors
from realbetti.schemas import IdentityReport

STABLE_CP1_COMPLEX = "stable-cp1-complex"
PARTITION = "partition"
PARTITION_BRUTE_FORCE = "partition-brute-force"
GENUS_ZERO_REAL_A = "genus-zero-real-a"
GENUS_ZERO_REAL_B = "genus-zero-real-b"

# Largest n checked against explicit partition enumeration
BRUTE_FORCE_LIMIT = 30


def compare_series(identity: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    """Coefficient-wise comparison up to the common order; reports the first mismatch"""
    order = min(lhs.order, rhs.order)
    for i in range(order + 1):
        if lhs[i] != rhs[i]:
            return IdentityReport(
                identity=identity,
                order=order,
                equal=False,
                mismatch_index=i,
                lhs_coefficient=lhs[i],
                rhs_coefficient=rhs[i],
            )
    return IdentityReport(identity=identity, order=order, equal=True)


def _check_order(order: int) -> None:
    if order < 0:
        raise InvalidInput(f"order must be >= 0, got {order}")


def _squared_tail_sum(family: GroupFamily, step: int, order: int, perturb: bool) -> TruncatedSeries:
    """
    sum_n t^(step n^2) P(BG_n)^2, summands with step n^2 > order dropped

    perturb moves the n = 1 summand up by one power of t.
    """
    total = TruncatedSeries.zero(order)
    n = 0
    while step * n * n <= order:
        exponent = step * n * n + (1 if perturb and n == 1 else 0)
        if exponent <= order:
            group = classical_group_series(family, n, order - exponent)
            squared = group * group
            total = series_add(total, TruncatedSeries([0] * exponent + list(squared.coefficients), order))
        n += 1
    return total


# ==========================================
# IDENTITIES
# ==========================================

def verify_stable_cp1_complex(order: int, perturb: bool = False) -> IdentityReport:
    """
    prod 1/(1-t^2k)^2 = (prod 1/(1-t^2k)) * sum_n t^(2n^2) prod_{k<=n} 1/(1-t^2k)^2
    """
    _check_order(order)
    lhs = series_from_factors(
        genus_zero_stable_factor_product(FormulaTag.GENUS_ZERO_STABLE_COMPLEX, order), order
    )
    rhs = classical_group_series(GroupFamily.U, STABLE, order) * _squared_tail_sum(
        GroupFamily.U, 2, order, perturb
    )
    return compare_series(STABLE_CP1_COMPLEX, lhs, rhs)


def verify_partition_identity(order: int, perturb: bool = False) -> IdentityReport:
    """
    prod 1/(1-x^k) = sum_d x^(d^2) / prod_{k<=d} (1-x^k)^2

    The left side is also compared with explicit partition counts for
    n <= min(order, BRUTE_FORCE_LIMIT).
    """
    _check_order(order)
    lhs = classical_group_series(GroupFamily.O, STABLE, order)
    rhs = _squared_tail_sum(GroupFamily.O, 1, order, perturb)
    report = compare_series(PARTITION, lhs, rhs)
    if not report.equal:
        return report

    limit = min(order, BRUTE_FORCE_LIMIT)
    counts = TruncatedSeries((partition_count(n) for n in range(limit + 1)), limit)
    brute = compare_series(PARTITION_BRUTE_FORCE, lhs.truncate(limit), counts)
    if not brute.equal:
        return brute
    return report


def verify_genus_zero_real(kind: str, order: int, perturb: bool = False) -> IdentityReport:
    """
    Genus-zero real gauge series as a sum over strata

        kind a: prod 1/(1-t^k)^2 = P(BO) sum_n t^(n^2) P(BO_n)^2
        kind b: prod (1+t^(2k-1))/(1-t^2k)^2 = P(BO) sum_n t^(4n^2) P(BSp_n)^2
    """
    _check_order(order)
    if kind == "a":
        tag, family, step, identity = FormulaTag.GENUS_ZERO_STABLE_REAL_A, GroupFamily.O, 1, GENUS_ZERO_REAL_A
    elif kind == "b":
        tag, family, step, identity = FormulaTag.GENUS_ZERO_STABLE_REAL_B, GroupFamily.SP, 4, GENUS_ZERO_REAL_B
    else:
        raise InvalidInput(f"kind must be 'a' or 'b', got {kind!r}")

    lhs = series_from_factors(genus_zero_stable_factor_product(tag, order), order)
    rhs = classical_group_series(GroupFamily.O, STABLE, order) * _squared_tail_sum(
        family, step, order, perturb
    )
    return compare_series(identity, lhs, rhs)


# ==========================================
# PARTITION ORACLE (no power series)
# ==========================================

def brute_force_partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, parts bounded by largest"""
    if n < 0:
        return
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in brute_force_partitions(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in brute_force_partitions(n))
