"""
Truncated Power Series
Exact arithmetic on power series in t with arbitrary-precision integer
coefficients, known up to an explicit truncation order
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator, Optional, Sequence, Union

from realbetti.config import settings
from realbetti.schemas import SeriesPayload
from realbetti.engine.errors import (
    DivisorNotUnit,
    InsufficientOrder,
    InvalidInput,
    NegativeCoefficient,
    NotDivisible,
    TailNotZero,
)


class TruncatedSeries:
    """
    Power series c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))

    Values are immutable. Binary operations truncate at the smaller of the
    two orders, so precision is never invented.

    Usage:
        s = TruncatedSeries([1, 1], order=5)      # 1 + t
        (s * s).coefficients                      # (1, 2, 1, 0, 0, 0)
    """

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coefficients: Iterable[int], order: int):
        """
        Args:
            coefficients: c_0, c_1, ... (padded with zeros / cut to order + 1)
            order: Truncation order N >= 0
        """
        if order < 0:
            raise InvalidInput(f"truncation order must be >= 0, got {order}")
        coeffs = [int(c) for c in coefficients][: order + 1]
        coeffs.extend([0] * (order + 1 - len(coeffs)))
        self._coeffs = tuple(coeffs)
        self._order = order

    # ------------------------------------------
    # Constructors
    # ------------------------------------------

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: int = 1) -> "TruncatedSeries":
        """coefficient * t^power (vanishes when power > order)"""
        if power < 0:
            raise InvalidInput(f"monomial power must be >= 0, got {power}")
        coeffs = [0] * (order + 1)
        if power <= order:
            coeffs[power] = coefficient
        return cls(coeffs, order)

    # ------------------------------------------
    # Accessors
    # ------------------------------------------

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    @property
    def constant_term(self) -> int:
        return self._coeffs[0]

    def __getitem__(self, index: int) -> int:
        return self._coeffs[index]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        tail = ", ..." if len(self._coeffs) > 8 else ""
        return f"TruncatedSeries([{head}{tail}], order={self._order})"

    def agrees_with(self, other: "TruncatedSeries", upto: Optional[int] = None) -> bool:
        """Coefficient-wise equality on 0..upto (default: the common order)"""
        n = min(self._order, other._order) if upto is None else upto
        return self._coeffs[: n + 1] == other._coeffs[: n + 1]

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._coeffs)

    # ------------------------------------------
    # Arithmetic
    # ------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self._order:
            raise InsufficientOrder(f"cannot raise order {self._order} to {order}")
        return TruncatedSeries(self._coeffs, order)

    def shift(self, power: int) -> "TruncatedSeries":
        """Multiply by t^power, keeping the same order"""
        if power < 0:
            raise InvalidInput(f"shift must be >= 0, got {power}")
        return TruncatedSeries([0] * power + list(self._coeffs), self._order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self._order, other._order)
        return TruncatedSeries((self._coeffs[i] + other._coeffs[i] for i in range(n + 1)), n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries((-c for c in self._coeffs), self._order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["TruncatedSeries", int]) -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries((other * c for c in self._coeffs), self._order)
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_div(self, other)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return series_div(TruncatedSeries.one(self._order), self ** (-exponent))
        result = TruncatedSeries.one(self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = series_mul(result, base)
            exponent >>= 1
            if exponent:
                base = series_mul(base, base)
        return result


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum at min(order(a), order(b))"""
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Cauchy product truncated at min(order(a), order(b))

    Args:
        a: First factor
        b: Second factor

    Returns:
        a * b to the common order
    """
    n = min(a.order, b.order)
    ac, bc = a.coefficients, b.coefficients
    out = [0] * (n + 1)
    for i in range(n + 1):
        ai = ac[i]
        if ai == 0:
            continue
        for j in range(n - i + 1):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(out, n)


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Exact quotient q with a = q * b to the common order

    Args:
        a: Dividend
        b: Divisor; its constant term must be +1 or -1

    Returns:
        Quotient series

    Raises:
        DivisorNotUnit: constant term of b is not a unit of Z
    """
    b0 = b.constant_term
    if b0 not in (1, -1):
        raise DivisorNotUnit(f"divisor constant term is {b0}, expected +1 or -1")
    n = min(a.order, b.order)
    ac, bc = a.coefficients, b.coefficients
    q = [0] * (n + 1)
    for i in range(n + 1):
        acc = ac[i]
        for j in range(1, i + 1):
            bj = bc[j]
            if bj:
                acc -= bj * q[i - j]
        # 1 / b0 == b0 for b0 in {1, -1}
        q[i] = acc * b0
    return TruncatedSeries(q, n)


# ==========================================
# SYMBOLIC PRODUCTS
# ==========================================

@dataclasses.dataclass(frozen=True)
class Factor:
    """(1 + sign * t^k)^power"""

    sign: int
    k: int
    power: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInput(f"factor sign must be +1 or -1, got {self.sign}")
        if self.k < 1:
            raise InvalidInput(f"factor exponent must be >= 1, got {self.k}")

    def label(self) -> str:
        op = "+" if self.sign > 0 else "-"
        base = f"(1{op}t^{self.k})" if self.k > 1 else f"(1{op}t)"
        return base if self.power == 1 else f"{base}^{self.power}"


@dataclasses.dataclass(frozen=True)
class FactorProduct:
    """
    t^monomial * prod (1 + sign_i t^k_i)^power_i

    Every factor has constant term 1, so any integer power expands to an
    integer series.
    """

    factors: tuple[Factor, ...] = ()
    monomial: int = 0

    def __post_init__(self):
        if self.monomial < 0:
            raise InvalidInput(f"leading monomial must be t^m with m >= 0, got m={self.monomial}")

    @classmethod
    def of(cls, *triples: tuple[int, int, int], monomial: int = 0) -> "FactorProduct":
        """Build from (sign, k, power) triples, dropping zero powers"""
        return cls(tuple(Factor(s, k, e) for s, k, e in triples if e != 0), monomial)

    def __mul__(self, other: "FactorProduct") -> "FactorProduct":
        return FactorProduct(self.factors + other.factors, self.monomial + other.monomial)

    def expand(self, order: int) -> TruncatedSeries:
        return series_from_factors(self, order)

    def label(self) -> str:
        parts = [f"t^{self.monomial}"] if self.monomial else []
        parts.extend(f.label() for f in self.factors)
        return " ".join(parts) or "1"


def series_from_factors(fp: FactorProduct, order: int) -> TruncatedSeries:
    """
    Exact expansion of a FactorProduct to the given order

    Positive powers multiply by (1 + s t^k) in place (descending sweep);
    negative powers divide by it (ascending sweep), i.e. geometric-series
    inversion.

    Args:
        fp: Symbolic product
        order: Truncation order N >= 0

    Returns:
        TruncatedSeries of order N
    """
    if order < 0:
        raise InvalidInput(f"truncation order must be >= 0, got {order}")
    if fp.monomial > order:
        return TruncatedSeries.zero(order)

    n = order - fp.monomial
    c = [0] * (n + 1)
    c[0] = 1
    for factor in fp.factors:
        s, k = factor.sign, factor.k
        if k > n:
            continue
        if factor.power > 0:
            for _ in range(factor.power):
                for i in range(n, k - 1, -1):
                    c[i] += s * c[i - k]
        else:
            for _ in range(-factor.power):
                for i in range(k, n + 1):
                    c[i] -= s * c[i - k]
    return TruncatedSeries([0] * fp.monomial + c, order)


@dataclasses.dataclass(frozen=True)
class SumTerm:
    """coefficient * FactorProduct / t^denominator_shift"""

    coefficient: int
    product: FactorProduct
    denominator_shift: int = 0


def expand_factor_sum(terms: Sequence[SumTerm], order: int) -> TruncatedSeries:
    """
    Expand an integer combination of FactorProducts, some divided by t^m

    The combination is expanded with every summand multiplied by t^M
    (M the largest denominator shift); the first M coefficients must then
    vanish before shifting back down.

    Raises:
        NotDivisible: the combined numerator is not divisible by t^M
    """
    lift = max((term.denominator_shift for term in terms), default=0)
    lifted_order = order + lift
    total = TruncatedSeries.zero(lifted_order)
    for term in terms:
        product = dataclasses.replace(
            term.product, monomial=term.product.monomial + lift - term.denominator_shift
        )
        total = total + term.coefficient * series_from_factors(product, lifted_order)
    low = total.coefficients[:lift]
    if any(low):
        index = next(i for i, c in enumerate(low) if c)
        raise NotDivisible(
            f"combined numerator has coefficient {low[index]} at t^{index - lift}; "
            f"not divisible by t^{lift}"
        )
    return TruncatedSeries(total.coefficients[lift:], order)


# ==========================================
# POLYNOMIALS
# ==========================================

class BettiPolynomial:
    """
    Poincare polynomial b_0 + b_1 t + ... + b_D t^D

    Leading coefficient is nonzero and all coefficients are nonnegative.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Sequence[int]):
        coeffs = tuple(int(c) for c in coefficients)
        if not coeffs or coeffs[-1] == 0:
            raise InvalidInput("polynomial needs a nonzero leading coefficient")
        negative = [i for i, c in enumerate(coeffs) if c < 0]
        if negative:
            i = negative[0]
            raise NegativeCoefficient(f"coefficient of t^{i} is {coeffs[i]}")
        self._coeffs = coeffs

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"BettiPolynomial({list(self._coeffs)})"

    def evaluate(self, t: int) -> int:
        value = 0
        for c in reversed(self._coeffs):
            value = value * t + c
        return value

    def as_text(self) -> str:
        """Descending powers, e.g. 't^5 + 3t^4 + 4t^3 + 4t^2 + 3t + 1'"""
        terms = []
        for power in range(self.degree, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            mono = "t" if power == 1 else f"t^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


def extract_polynomial(
    s: TruncatedSeries,
    expected_degree: int,
    margin: Optional[int] = None,
) -> BettiPolynomial:
    """
    Certify that a series is a polynomial of degree <= expected_degree

    Args:
        s: Series to inspect
        expected_degree: Largest degree allowed to carry a nonzero coefficient
        margin: Number of extra coefficients that must be known (default: settings.safety_margin)

    Returns:
        BettiPolynomial with its actual degree

    Raises:
        InsufficientOrder: order(s) < expected_degree + margin
        TailNotZero: a coefficient in (expected_degree, order] is nonzero
    """
    margin = settings.safety_margin if margin is None else margin
    if s.order < expected_degree + margin:
        raise InsufficientOrder(
            f"order {s.order} < expected degree {expected_degree} + margin {margin}"
        )
    for i in range(expected_degree + 1, s.order + 1):
        if s[i] != 0:
            raise TailNotZero(
                f"coefficient of t^{i} is {s[i]} (expected degree {expected_degree}, order {s.order})"
            )
    coeffs = list(s.coefficients[: expected_degree + 1])
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise TailNotZero("series vanishes identically; no Poincare polynomial")
    return BettiPolynomial(coeffs)


def is_palindromic(p: BettiPolynomial) -> bool:
    """True iff b_i == b_(D-i) for every i"""
    c = p.coefficients
    return c == c[::-1]


def polynomial_to_series(p: BettiPolynomial, order: int) -> TruncatedSeries:
    return TruncatedSeries(p.coefficients, order)


# ==========================================
# SERIALIZATION
# ==========================================

def series_to_json(s: TruncatedSeries) -> str:
    """{"order": N, "coeffs": ["c0", "c1", ...]}"""
    return SeriesPayload(order=s.order, coeffs=list(s.coefficients)).model_dump_json()


def series_from_json(raw: Union[str, bytes]) -> TruncatedSeries:
    payload = SeriesPayload.model_validate_json(raw)
    return TruncatedSeries(payload.coeffs, payload.order)
