"""
Compute Service
Business logic behind `compute`: request validation, quaternionic reduction
and the call into the recursion engine
"""

import time
from typing import Optional, Tuple

from realbetti.engine.curves import RealBundleType, quaternionic_to_real, validate_topology
from realbetti.engine.recursion import BettiResult, RecursionEngine, get_engine
from realbetti.schemas import BettiResultPayload, ComputeRequest, ResultParams
from realbetti.utils.logger import logger


class ComputeService:
    """
    Service class for moduli computations

    Responsibilities:
    - Turn a ComputeRequest into a real moduli problem
    - Delegate to the recursion engine
    - Render results as payloads
    """

    def __init__(self, engine: Optional[RecursionEngine] = None):
        """
        Initialize compute service

        Args:
            engine: Recursion engine (defaults to the shared one)
        """
        self.engine = engine or get_engine()

    def compute(self, request: ComputeRequest) -> Tuple[BettiResult, float]:
        """
        Compute the Betti polynomial for a request

        Args:
            request: Validated compute request

        Returns:
            (result, wall time in seconds)
        """
        topo = validate_topology(request.genus, request.circles)
        r, d = request.rank, request.degree

        if request.quaternionic:
            r, d = quaternionic_to_real(r, d, topo)
            logger.info(f"Quaternionic ({request.rank}, {request.degree}) reduced to real ({r}, {d})")
        elif request.w is not None:
            # w only labels the result; it is checked here and not used further
            RealBundleType.from_values(r, d, request.w)

        started = time.perf_counter()
        result = self.engine.moduli_betti(
            r, d, topo, allow_a0=request.allow_a0, order=request.order
        )
        elapsed = time.perf_counter() - started
        logger.info(f"Computed degree-{result.polynomial.degree} polynomial in {elapsed:.3f}s")
        return result, elapsed

    @staticmethod
    def to_payload(request: ComputeRequest, result: BettiResult) -> BettiResultPayload:
        params = ResultParams(
            rank=request.rank,
            degree=request.degree,
            genus=request.genus,
            circles=request.circles,
            w=request.w,
            quaternionic=request.quaternionic,
            real_degree=result.degree,
        )
        return BettiResultPayload(
            params=params,
            degree=result.polynomial.degree,
            coeffs=list(result.polynomial.coefficients),
            palindromic=result.palindromic,
            strata=result.strata_count,
            order=result.order,
        )
