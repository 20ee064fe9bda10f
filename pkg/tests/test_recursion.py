"""
Test the semistable recursion
Published polynomials, agreement with closed forms, structural properties and caching
"""

import pytest
from loguru import logger as loguru_logger

from realbetti.config import settings
from realbetti.engine.closed_forms import low_rank_moduli_closed_form
from realbetti.engine.curves import validate_topology
from realbetti.engine.errors import InvalidInput, NegativeCoefficient, NotCoprime
from realbetti.engine.recursion import (
    RecursionEngine,
    RecursionKey,
    canonical_key,
    expected_moduli_degree,
    moduli_betti,
)
from realbetti.engine.series import (
    FactorProduct,
    TruncatedSeries,
    extract_polynomial,
    is_palindromic,
    series_from_factors,
)
from realbetti.utils.disk_cache import DiskCache


def closed_form(r, g, a):
    expected = expected_moduli_degree(r, g)
    topo = validate_topology(g, a)
    return extract_polynomial(low_rank_moduli_closed_form(r, topo, expected + 10), expected)


# ==========================================
# SEMISTABLE SERIES
# ==========================================

@pytest.mark.parametrize("g,a,d", [(1, 0, 0), (2, 1, 3), (3, 4, -2), (4, 0, 2)])
def test_rank_one_semistable_series(engine, g, a, d):
    expected = series_from_factors(FactorProduct.of((1, 1, g), (-1, 1, -1)), 30)
    assert engine.semistable_series(1, d, validate_topology(g, a), 30) == expected


def test_rank_two_semistable_series(engine):
    expected = series_from_factors(FactorProduct.of((1, 1, 3), (1, 2, 1), (-1, 1, -1)), 40)
    assert engine.semistable_series(2, 1, validate_topology(2, 1), 40) == expected


def test_semistable_series_rejects_genus_zero(engine):
    with pytest.raises(InvalidInput):
        engine.semistable_series(2, 1, validate_topology(0, 1), 10)


def test_semistable_series_rejects_odd_degree_without_real_points(engine):
    with pytest.raises(InvalidInput):
        engine.semistable_series(2, 1, validate_topology(2, 0), 10)


@pytest.mark.parametrize("r,d,g,a", [(2, 1, 2, 1), (3, 1, 2, 2), (3, 2, 3, 1), (2, 0, 2, 3)])
def test_truncation_independence(engine, r, d, g, a):
    topo = validate_topology(g, a)
    low = engine.semistable_series(r, d, topo, 20)
    high = engine.semistable_series(r, d, topo, 30)
    assert high.agrees_with(low, upto=20)


# ==========================================
# MODULI POLYNOMIALS
# ==========================================

@pytest.mark.parametrize(
    "r,g,a,coefficients",
    [
        (2, 2, 3, (1, 5, 10, 10, 5, 1)),
        (2, 3, 4, (1, 7, 26, 62, 96, 96, 62, 26, 7, 1)),
        (3, 2, 1, (1, 3, 6, 12, 17, 18, 17, 12, 6, 3, 1)),
    ],
)
def test_published_examples(engine, r, g, a, coefficients):
    result = engine.moduli_betti(r, 1, validate_topology(g, a))
    assert result.polynomial.coefficients == coefficients
    assert result.palindromic
    assert result.order == expected_moduli_degree(r, g) + settings.safety_margin


def test_rank_two_strata_count(engine):
    # codimensions 2i + 2 for i = 0..6 stay within order 5 + 10
    result = engine.moduli_betti(2, 1, validate_topology(2, 1))
    assert result.strata_count == 7


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("g", [2, 3])
def test_matches_closed_forms(engine, r, g):
    for a in range(1, g + 2):
        for d in (1, r + 1):
            result = engine.moduli_betti(r, d, validate_topology(g, a))
            assert result.polynomial == closed_form(r, g, a)


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("g", [4, 5])
def test_matches_closed_forms_higher_genus(engine, r, g):
    for a in range(1, g + 2):
        for d in (1, r + 1):
            result = engine.moduli_betti(r, d, validate_topology(g, a))
            assert result.polynomial == closed_form(r, g, a)


@pytest.mark.parametrize("r,g,a", [(2, 2, 1), (2, 3, 2), (3, 2, 2), (3, 2, 3)])
def test_degree_shift_invariance(raw_engine, r, g, a):
    topo = validate_topology(g, a)
    base = raw_engine.moduli_betti(r, 1, topo).polynomial
    assert raw_engine.moduli_betti(r, 1 + r, topo).polynomial == base
    assert raw_engine.moduli_betti(r, 1 - r, topo).polynomial == base


@pytest.mark.parametrize("r,d,g,a", [(2, 1, 2, 2), (3, 2, 2, 1), (2, 3, 3, 1)])
def test_moduli_properties(engine, r, d, g, a):
    p = engine.moduli_betti(r, d, validate_topology(g, a)).polynomial
    assert p.degree == expected_moduli_degree(r, g)
    assert p.coefficients[0] == 1
    assert is_palindromic(p)
    assert all(c >= 0 for c in p.coefficients)


def test_order_override_only_raises(engine):
    topo = validate_topology(2, 2)
    default = engine.moduli_betti(2, 1, topo)
    raised = engine.moduli_betti(2, 1, topo, order=40)
    lowered = engine.moduli_betti(2, 1, topo, order=3)
    assert raised.order == 40
    assert lowered.order == default.order
    assert raised.polynomial == default.polynomial


def test_moduli_errors(engine):
    with pytest.raises(NotCoprime):
        engine.moduli_betti(2, 2, validate_topology(2, 1))
    with pytest.raises(InvalidInput):
        engine.moduli_betti(2, 1, validate_topology(1, 1))
    with pytest.raises(InvalidInput):
        engine.moduli_betti(1, 0, validate_topology(2, 0))


def test_rank_one_without_real_points(engine):
    result = engine.moduli_betti(1, 0, validate_topology(4, 0), allow_a0=True)
    assert result.polynomial.coefficients == (1, 4, 6, 4, 1)


def test_module_level_entry_point():
    result = moduli_betti(2, 1, validate_topology(2, 2))
    assert result.polynomial.coefficients == (1, 4, 7, 7, 4, 1)


@pytest.mark.slow
def test_rank_four_scale():
    engine = RecursionEngine(settings, cache=None)
    topo = validate_topology(2, 1)
    result = engine.moduli_betti(4, 1, topo)
    p = result.polynomial
    assert p.degree == expected_moduli_degree(4, 2) == 17
    assert p.coefficients[0] == 1
    assert is_palindromic(p)
    assert engine.moduli_betti(4, 1, topo, order=40).polynomial == p


# ==========================================
# KEYS AND CACHING
# ==========================================

def test_recursion_key_normalization():
    assert RecursionKey.normalized(2, 1, 3, 7, 20).d == 1
    assert RecursionKey.normalized(2, 1, 3, -2, 20).d == 1
    assert RecursionKey.normalized(2, 0, 3, 8, 20).d == 2
    assert RecursionKey.normalized(2, 1, 3, 7, 20, normalize=False).d == 7


def test_canonical_key():
    assert canonical_key(RecursionKey(2, 1, 2, 1, 15), version=1) == "g2a1r2d1N15v1"


def test_memo_is_filled():
    engine = RecursionEngine(settings, cache=None)
    engine.moduli_betti(3, 1, validate_topology(2, 1))
    assert engine.memo_size > 1
    engine.clear_memo()
    assert engine.memo_size == 0


def test_disk_cache_round_trip(disk_cache: DiskCache):
    topo = validate_topology(2, 2)
    first = RecursionEngine(settings, disk_cache).moduli_betti(3, 1, topo)
    assert first.cache_key in disk_cache
    assert disk_cache.stats().files > 1

    second = RecursionEngine(settings, disk_cache).moduli_betti(3, 1, topo)
    assert second.polynomial == first.polynomial
    assert second.cache_key == first.cache_key == f"g2a2r3d1N{first.order}v{settings.cache_format_version}"


def test_disk_cache_ignores_corrupt_entries(disk_cache: DiskCache):
    disk_cache.directory.mkdir(parents=True)
    (disk_cache.directory / "g2a1r2d1N15v1.json").write_text("not json", encoding="utf-8")
    assert disk_cache.get("g2a1r2d1N15v1") is None
    assert disk_cache.clear() == 1
    assert disk_cache.stats().files == 0


def test_disk_cache_hit_logs_versioned_key(disk_cache: DiskCache):
    config = settings.model_copy(update={"cache_format_version": 7})
    topo = validate_topology(2, 2)
    first = RecursionEngine(config, disk_cache).moduli_betti(2, 1, topo)
    assert first.cache_key.endswith("v7")

    messages = []
    sink = loguru_logger.add(messages.append, level="DEBUG", format="{message}")
    try:
        RecursionEngine(config, disk_cache).moduli_betti(2, 1, topo)
    finally:
        loguru_logger.remove(sink)

    hits = [m.strip() for m in messages if m.startswith("Disk cache hit")]
    assert f"Disk cache hit {first.cache_key}" in hits
    assert all(hit.endswith("v7") for hit in hits)


def test_negative_semistable_series_rejected(disk_cache: DiskCache):
    topo = validate_topology(2, 2)
    order = expected_moduli_degree(2, 2) + settings.safety_margin
    key = RecursionKey.normalized(2, 2, 2, 1, order)
    disk_cache.put(canonical_key(key, settings.cache_format_version), TruncatedSeries([1, -1], order))
    with pytest.raises(NegativeCoefficient):
        RecursionEngine(settings, disk_cache).moduli_betti(2, 1, topo)


@pytest.mark.parametrize("r,d,g,a", [(1, 0, 2, 1), (2, 1, 2, 3), (3, 1, 2, 1), (2, 1, 3, 2)])
def test_semistable_series_nonnegative(engine, r, d, g, a):
    assert engine.semistable_series(r, d, validate_topology(g, a), 20).is_nonnegative()
