"""
Real Curve Topology
Topological input data: real curves (g, a) and the topological types of
real and quaternionic bundles over them, with their classification constraints
"""

from itertools import product
from math import gcd
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from realbetti.engine.errors import InvalidBundleType, InvalidTopology, NotAdmissible, NotCoprime


# ==========================================
# VALUE TYPES
# ==========================================

class RealCurveTopology(BaseModel):
    """Genus g and number a of real circles; 0 <= a <= g + 1 (Harnack)"""
    genus: int = Field(..., ge=0)
    real_circles: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)

    @property
    def g(self) -> int:
        return self.genus

    @property
    def a(self) -> int:
        return self.real_circles


class RealBundleType(BaseModel):
    """Rank, degree and Stiefel-Whitney numbers on the real circles"""
    rank: int = Field(..., ge=1)
    degree: int
    w: tuple[int, ...] = ()

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_values(cls, rank: int, degree: int, w: List[int]) -> "RealBundleType":
        """
        Build a real bundle type, checking d = sum(w) mod 2

        Raises:
            InvalidBundleType: entries outside {0, 1} or parity mismatch
        """
        if any(x not in (0, 1) for x in w):
            raise InvalidBundleType(f"w entries must be 0 or 1, got {list(w)}")
        if sum(w) % 2 != degree % 2:
            raise InvalidBundleType(f"degree {degree} and sum(w) = {sum(w)} differ mod 2")
        return cls(rank=rank, degree=degree, w=tuple(w))


class QuaternionicBundleType(BaseModel):
    """Rank and degree of a quaternionic bundle"""
    rank: int = Field(..., ge=1)
    degree: int

    model_config = ConfigDict(frozen=True)


# ==========================================
# OPERATIONS
# ==========================================

def validate_topology(g: int, a: int) -> RealCurveTopology:
    """
    Validate the topology of a real curve

    Args:
        g: Genus
        a: Number of real circles

    Returns:
        RealCurveTopology

    Raises:
        InvalidTopology: g < 0, a < 0 or a > g + 1
    """
    if g < 0:
        raise InvalidTopology(f"genus must be >= 0, got g={g}")
    if a < 0:
        raise InvalidTopology(f"number of real circles must be >= 0, got a={a}")
    if a > g + 1:
        raise InvalidTopology(f"a={a} exceeds the Harnack bound g+1={g + 1}")
    return RealCurveTopology(genus=g, real_circles=a)


def enumerate_real_types(r: int, d: int, a: int) -> List[RealBundleType]:
    """
    All real bundle types of rank r and degree d over a curve with a real circles

    There are 2^(a-1) of them for a >= 1; for a = 0 one if d is even, none otherwise.
    """
    return [
        RealBundleType(rank=r, degree=d, w=w)
        for w in product((0, 1), repeat=a)
        if sum(w) % 2 == d % 2
    ]


def quaternionic_admissible(r: int, d: int, topo: RealCurveTopology) -> bool:
    """d = r(g-1) mod 2, and no real points when r is odd"""
    parity_ok = (d - r * (topo.g - 1)) % 2 == 0
    locus_ok = r % 2 == 0 or topo.a == 0
    return parity_ok and locus_ok


def minimal_quaternionic_line_degree(topo: RealCurveTopology) -> int:
    """Smallest d' >= 0 with d' = g - 1 mod 2 (degree of a quaternionic line bundle)"""
    return (topo.g - 1) % 2


def quaternionic_to_real(r: int, d: int, topo: RealCurveTopology) -> tuple[int, int]:
    """
    Reduce a coprime quaternionic moduli problem to a real one

    Tensoring with a quaternionic line bundle of degree d' turns a
    quaternionic bundle of degree d into a real bundle of degree d + r d'.

    Returns:
        (rank, degree) of the equivalent real problem

    Raises:
        NotAdmissible: no quaternionic bundle of this type exists
        NotCoprime: gcd(r, d) != 1
    """
    if not quaternionic_admissible(r, d, topo):
        raise NotAdmissible(
            f"no quaternionic bundle of rank {r}, degree {d} over g={topo.g}, a={topo.a}"
        )
    if gcd(r, d) != 1:
        raise NotCoprime(f"gcd({r}, {d}) = {gcd(r, d)}")
    d_prime = minimal_quaternionic_line_degree(topo)
    return r, d + r * d_prime
