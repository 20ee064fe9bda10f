"""
Harder-Narasimhan Strata
Enumeration of unstable Harder-Narasimhan types of bounded codimension
and counting of their real refinements
"""

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Tuple

from realbetti.config import settings
from realbetti.engine.errors import InvalidInput, SlopeOrderViolation
from realbetti.utils.logger import logger


# ==========================================
# HN TYPES
# ==========================================

@dataclasses.dataclass(frozen=True, order=True)
class ComplexHNType:
    """Ordered parts ((r_1, d_1), ..., (r_n, d_n)) with strictly decreasing slopes"""

    parts: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.parts:
            raise InvalidInput("an HN type needs at least one part")
        if any(r < 1 for r, _ in self.parts):
            raise InvalidInput(f"part ranks must be >= 1, got {self.parts}")

    @classmethod
    def of(cls, *parts: Tuple[int, int]) -> "ComplexHNType":
        return cls(tuple((int(r), int(d)) for r, d in parts))

    @property
    def rank(self) -> int:
        return sum(r for r, _ in self.parts)

    @property
    def degree(self) -> int:
        return sum(d for _, d in self.parts)

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(d, r) for r, d in self.parts)

    def validate(self) -> "ComplexHNType":
        """Raises SlopeOrderViolation unless d_1/r_1 > d_2/r_2 > ..."""
        for (r1, d1), (r2, d2) in zip(self.parts, self.parts[1:]):
            if d1 * r2 <= d2 * r1:
                raise SlopeOrderViolation(
                    f"slope {d1}/{r1} is not larger than the next slope {d2}/{r2}"
                )
        return self

    def as_lists(self) -> List[List[int]]:
        return [[r, d] for r, d in self.parts]


@dataclasses.dataclass(frozen=True)
class RealHNType:
    """HN type with a Stiefel-Whitney vector on every part"""

    parts: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    def __post_init__(self):
        for r, d, w in self.parts:
            if sum(w) % 2 != d % 2:
                raise InvalidInput(f"part ({r}, {d}) has w={w} of the wrong parity")

    @property
    def complex_type(self) -> ComplexHNType:
        return ComplexHNType(tuple((r, d) for r, d, _ in self.parts))

    @property
    def total_w(self) -> Tuple[int, ...]:
        vectors = [w for _, _, w in self.parts]
        return tuple(sum(column) % 2 for column in zip(*vectors))


# ==========================================
# CODIMENSION
# ==========================================

def codimension(hn: ComplexHNType, g: int) -> int:
    """
    Codimension d_lambda = sum_{i<j} (d_i r_j - d_j r_i + r_i r_j (g - 1))

    Raises:
        SlopeOrderViolation: slopes not strictly decreasing
    """
    hn.validate()
    parts = hn.parts
    total = 0
    for i, (ri, di) in enumerate(parts):
        for rj, dj in parts[i + 1:]:
            total += di * rj - dj * ri + ri * rj * (g - 1)
    return total


def slope_form_codimension(hn: ComplexHNType, g: int) -> Fraction:
    """sum_{i<j} r_i r_j (mu_i - mu_j) + r_i r_j (g - 1), in exact fractions"""
    hn.validate()
    parts = hn.parts
    slopes = hn.slopes
    total = Fraction(0)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            rr = parts[i][0] * parts[j][0]
            total += rr * (slopes[i] - slopes[j]) + rr * (g - 1)
    return total


# ==========================================
# ENUMERATION
# ==========================================

def compositions(r: int, min_parts: int = 2) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions of r with at least min_parts parts, lexicographically"""

    def walk(remaining: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(1, remaining + 1):
            for rest in walk(remaining - first):
                yield (first,) + rest

    for comp in walk(r):
        if len(comp) >= min_parts:
            yield comp


def _degree_vectors(
    ranks: Tuple[int, ...],
    d: int,
    g: int,
    max_codim: int,
    even_parts_only: bool,
) -> List[Tuple[ComplexHNType, int]]:
    """
    Degree vectors over one rank composition with codimension <= max_codim

    With D_k, R_k the partial sums, the codimension is at least
        (pairs among the first k parts) + (D_k r - d R_k)
        + (number of pairs among the remaining parts) + (g - 1) sum r_i r_j,
    each remaining pair contributing at least 1. The bound grows with d_k.
    """
    n = len(ranks)
    r = sum(ranks)
    rank_pairs = sum(ranks[i] * ranks[j] for i in range(n) for j in range(i + 1, n))
    base = (g - 1) * rank_pairs
    found: List[Tuple[ComplexHNType, int]] = []

    def place(k: int, degrees: List[int], internal: int, D: int, R: int) -> None:
        rk = ranks[k]
        if k == n - 1:
            dn = d - D
            if degrees[-1] * rk <= dn * ranks[k - 1]:
                return
            if even_parts_only and dn % 2:
                return
            total = internal + D * rk - dn * R + base
            if total <= max_codim:
                hn = ComplexHNType(tuple(zip(ranks, degrees + [dn])))
                found.append((hn, total))
            return

        remaining_pairs = (n - k - 1) * (n - k - 2) // 2
        # mu_k must exceed the average slope of the parts k..n-1
        dk = (d - D) * rk // (r - R) + 1
        while True:
            if k > 0 and dk * ranks[k - 1] >= degrees[-1] * rk:
                break
            new_internal = internal + D * rk - dk * R
            new_D, new_R = D + dk, R + rk
            bound = new_internal + (new_D * r - d * new_R) + remaining_pairs + base
            if bound > max_codim:
                break
            if not (even_parts_only and dk % 2):
                place(k + 1, degrees + [dk], new_internal, new_D, new_R)
            dk += 1

    place(0, [], 0, 0, 0)
    return found


def enumerate_unstable_types(
    r: int,
    d: int,
    g: int,
    max_codim: int,
    even_parts_only: bool = False,
    max_workers: Optional[int] = None,
) -> List[Tuple[ComplexHNType, int]]:
    """
    Every HN type of rank r, degree d with n >= 2 parts and codimension <= max_codim

    Args:
        r: Total rank >= 1
        d: Total degree
        g: Genus >= 1
        max_codim: Largest codimension kept
        even_parts_only: Keep only types whose part degrees are all even (a = 0)
        max_workers: Thread fan-out over rank compositions (default: settings.max_workers)

    Returns:
        (type, codimension) pairs sorted by codimension, then parts
    """
    if r < 1:
        raise InvalidInput(f"rank must be >= 1, got {r}")
    if g < 1:
        raise InvalidInput(f"unstable strata need g >= 1, got g={g}")
    if max_codim < 0:
        return []

    comps = list(compositions(r, min_parts=2))
    if not comps:
        return []

    workers = max_workers or settings.max_workers
    with ThreadPoolExecutor(max_workers=max(1, min(workers, len(comps)))) as pool:
        chunks = pool.map(
            lambda ranks: _degree_vectors(ranks, d, g, max_codim, even_parts_only),
            comps,
        )
        result = [entry for chunk in chunks for entry in chunk]

    result.sort(key=lambda entry: (entry[1], entry[0].parts))
    logger.debug(f"strata r={r} d={d} g={g} max_codim={max_codim}: {len(result)} types")
    return result


# ==========================================
# REAL REFINEMENTS
# ==========================================

def real_refinement_count(hn: ComplexHNType, a: int) -> int:
    """
    Number of real HN types over hn for a fixed total Stiefel-Whitney vector

    2^((a-1)(n-1)) for a >= 1; for a = 0 one if every d_i is even, else none.
    """
    if a < 0:
        raise InvalidInput(f"number of real circles must be >= 0, got a={a}")
    n = len(hn.parts)
    if a == 0:
        return int(all(d % 2 == 0 for _, d in hn.parts))
    return 2 ** ((a - 1) * (n - 1))


def enumerate_real_refinements(hn: ComplexHNType, w_total: Tuple[int, ...]) -> List[RealHNType]:
    """All real HN types over hn whose Stiefel-Whitney vectors add up to w_total"""
    a = len(w_total)
    target = tuple(x % 2 for x in w_total)
    per_part = [
        [w for w in product((0, 1), repeat=a) if sum(w) % 2 == d % 2]
        for _, d in hn.parts
    ]
    found = []
    for choice in product(*per_part):
        total = tuple(sum(column) % 2 for column in zip(*choice)) if a else ()
        if total == target:
            found.append(RealHNType(tuple((r, d, w) for (r, d), w in zip(hn.parts, choice))))
    return found
