"""
Semistable Recursion
Poincare series of the semistable stratum from the gauge group series minus
the unstable strata, and the Betti polynomial of the moduli space
"""

import dataclasses
import threading
from math import gcd
from typing import Dict, Optional

from realbetti.config import Settings, settings as default_settings
from realbetti.engine.closed_forms import gauge_classifying_series
from realbetti.engine.curves import RealCurveTopology, validate_topology
from realbetti.engine.errors import InvalidInput, NegativeCoefficient, NotCoprime
from realbetti.engine.series import (
    BettiPolynomial,
    TruncatedSeries,
    extract_polynomial,
    is_palindromic,
)
from realbetti.engine.strata import enumerate_unstable_types, real_refinement_count
from realbetti.utils.disk_cache import DiskCache
from realbetti.utils.logger import logger


@dataclasses.dataclass(frozen=True)
class RecursionKey:
    """Memo key; d is stored as its residue mod r (a >= 1) or mod 2r (a = 0)"""

    g: int
    a: int
    r: int
    d: int
    order: int

    @classmethod
    def normalized(cls, g: int, a: int, r: int, d: int, order: int, normalize: bool = True) -> "RecursionKey":
        if normalize:
            # Tensoring by a real line bundle shifts d by r (degree 1, a >= 1) or 2r (a = 0)
            d = d % (r if a >= 1 else 2 * r)
        return cls(g, a, r, d, order)


def canonical_key(key: RecursionKey, version: Optional[int] = None) -> str:
    """'g{g}a{a}r{r}d{d}N{N}v{version}'"""
    v = default_settings.cache_format_version if version is None else version
    return f"g{key.g}a{key.a}r{key.r}d{key.d}N{key.order}v{v}"


def expected_moduli_degree(r: int, g: int) -> int:
    """Real dimension r^2 (g - 1) + 1 of the moduli space"""
    return r * r * (g - 1) + 1


@dataclasses.dataclass(frozen=True)
class BettiResult:
    """Poincare polynomial of M(r, d, tau) with the parameters that produced it"""

    polynomial: BettiPolynomial
    genus: int
    circles: int
    rank: int
    degree: int
    order: int
    strata_count: int
    cache_key: str

    @property
    def palindromic(self) -> bool:
        return is_palindromic(self.polynomial)


class RecursionEngine:
    """
    Memoized evaluation of the semistable recursion

        P_ss(r, d) = P(BG(r)) - sum_lambda n_lambda t^(d_lambda) prod_i P_ss(r_i, d_i)

    The memo table is shared between threads; two threads may compute the
    same key concurrently, the first stored value wins.
    """

    def __init__(self, settings: Settings = default_settings, cache: Optional[DiskCache] = None):
        self.settings = settings
        self.cache = cache
        self._memo: Dict[RecursionKey, TruncatedSeries] = {}
        self._lock = threading.Lock()

    def clear_memo(self) -> None:
        with self._lock:
            self._memo.clear()

    @property
    def memo_size(self) -> int:
        with self._lock:
            return len(self._memo)

    def _lookup(self, key: RecursionKey) -> Optional[TruncatedSeries]:
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None or self.cache is None:
            return hit
        name = canonical_key(key, self.settings.cache_format_version)
        hit = self.cache.get(name)
        if hit is not None:
            logger.debug(f"Disk cache hit {name}")
            with self._lock:
                hit = self._memo.setdefault(key, hit)
        return hit

    def _store(self, key: RecursionKey, series: TruncatedSeries) -> TruncatedSeries:
        with self._lock:
            stored = self._memo.setdefault(key, series)
        if self.cache is not None and stored is series:
            self.cache.put(canonical_key(key, self.settings.cache_format_version), series)
        return stored

    def semistable_series(self, r: int, d: int, topo: RealCurveTopology, order: int) -> TruncatedSeries:
        """
        Poincare series of the semistable stratum C_ss(r, d, tau) to the given order

        Args:
            r: Rank >= 1
            d: Degree (even when a = 0)
            topo: Curve topology with g >= 1
            order: Truncation order

        Returns:
            TruncatedSeries of the given order

        Raises:
            InvalidInput: g = 0, or a = 0 with odd d
        """
        topo = validate_topology(topo.g, topo.a)
        g, a = topo.g, topo.a
        if r < 1:
            raise InvalidInput(f"rank must be >= 1, got {r}")
        if g < 1:
            raise InvalidInput(f"the recursion needs g >= 1, got g={g}")
        if a == 0 and d % 2:
            raise InvalidInput(f"no real bundle of odd degree {d} over a curve without real points")
        if order < 0:
            raise InvalidInput(f"truncation order must be >= 0, got {order}")

        key = RecursionKey.normalized(g, a, r, d, order, self.settings.normalize_degree)
        cached = self._lookup(key)
        if cached is not None:
            return cached

        series = self._compute(r, key.d, topo, order)
        return self._store(key, series)

    def _compute(self, r: int, d: int, topo: RealCurveTopology, order: int) -> TruncatedSeries:
        total = gauge_classifying_series(topo, r, order)
        for hn, codim in self.unstable_terms(r, d, topo, order):
            count = real_refinement_count(hn, topo.a)
            # Only coefficients up to order - codim survive the shift
            sub_order = order - codim
            product = TruncatedSeries.one(sub_order)
            for ri, di in hn.parts:
                product = product * self.semistable_series(ri, di, topo, sub_order)
            shifted = TruncatedSeries([0] * codim + list(product.coefficients), order)
            total = total - count * shifted
        return total

    def unstable_terms(self, r: int, d: int, topo: RealCurveTopology, order: int):
        """Unstable types reaching the given order and carrying a real refinement"""
        types = enumerate_unstable_types(r, d, topo.g, order, even_parts_only=topo.a == 0)
        return [(hn, codim) for hn, codim in types if real_refinement_count(hn, topo.a)]

    def moduli_betti(
        self,
        r: int,
        d: int,
        topo: RealCurveTopology,
        allow_a0: bool = False,
        order: Optional[int] = None,
    ) -> BettiResult:
        """
        Betti polynomial (1 - t) P_ss(r, d) of the moduli space M(r, d, tau)

        Args:
            r: Rank
            d: Degree, coprime to r
            topo: Curve topology with g >= 2
            allow_a0: Accept curves without real points
            order: Truncation order; only raises the default r^2(g-1)+1 + safety_margin

        Raises:
            NotCoprime: gcd(r, d) != 1
            InvalidInput: g < 2, or a = 0 without allow_a0
            NegativeCoefficient: the semistable series is not a Poincare series
            TailNotZero: the result is not a polynomial of the expected degree
        """
        topo = validate_topology(topo.g, topo.a)
        if topo.g < 2:
            raise InvalidInput(f"moduli polynomials need g >= 2, got g={topo.g}")
        if gcd(r, d) != 1:
            raise NotCoprime(f"gcd({r}, {d}) = {gcd(r, d)}")
        if topo.a == 0 and not allow_a0:
            raise InvalidInput("curves without real points need --allow-a0")

        expected = expected_moduli_degree(r, topo.g)
        n = expected + self.settings.safety_margin
        if order is not None:
            n = max(n, order)

        logger.info(f"Computing moduli r={r} d={d} g={topo.g} a={topo.a} to order {n}")
        semistable = self.semistable_series(r, d, topo, n)
        if not semistable.is_nonnegative():
            raise NegativeCoefficient(f"semistable series for r={r} d={d} has a negative coefficient")
        moduli = semistable * TruncatedSeries([1, -1], n)
        polynomial = extract_polynomial(moduli, expected, margin=n - expected)

        key = RecursionKey.normalized(topo.g, topo.a, r, d, n, self.settings.normalize_degree)
        return BettiResult(
            polynomial=polynomial,
            genus=topo.g,
            circles=topo.a,
            rank=r,
            degree=d,
            order=n,
            strata_count=len(self.unstable_terms(r, key.d, topo, n)),
            cache_key=canonical_key(key, self.settings.cache_format_version),
        )


# ==========================================
# PROCESS-WIDE ENGINE
# ==========================================

_engine: Optional[RecursionEngine] = None
_engine_lock = threading.Lock()


def get_engine() -> RecursionEngine:
    """Shared engine, with a disk cache when settings.cache_enabled"""
    global _engine
    with _engine_lock:
        if _engine is None:
            cache = DiskCache(default_settings.cache_dir) if default_settings.cache_enabled else None
            _engine = RecursionEngine(default_settings, cache)
        return _engine


def set_engine(engine: Optional[RecursionEngine]) -> None:
    """Replace the shared engine (None rebuilds it from settings on next use)"""
    global _engine
    with _engine_lock:
        _engine = engine


def semistable_series(r: int, d: int, topo: RealCurveTopology, order: int) -> TruncatedSeries:
    return get_engine().semistable_series(r, d, topo, order)


def moduli_betti(
    r: int,
    d: int,
    topo: RealCurveTopology,
    allow_a0: bool = False,
    order: Optional[int] = None,
) -> BettiResult:
    return get_engine().moduli_betti(r, d, topo, allow_a0=allow_a0, order=order)
