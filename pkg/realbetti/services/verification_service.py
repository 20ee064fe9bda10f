"""
Verification Service
Runs the genus-zero identity suite and the closed-form versus recursion
oracle grid
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

from realbetti.config import settings
from realbetti.engine.closed_forms import low_rank_moduli_closed_form
from realbetti.engine.curves import validate_topology
from realbetti.engine.errors import RealBettiError
from realbetti.engine.identities import (
    verify_genus_zero_real,
    verify_partition_identity,
    verify_stable_cp1_complex,
)
from realbetti.engine.recursion import RecursionEngine, expected_moduli_degree, get_engine
from realbetti.engine.series import extract_polynomial
from realbetti.schemas import CheckOutcome, IdentityReport, VerificationSummary
from realbetti.utils.logger import logger

ORACLE_RANKS = (1, 2, 3)
ORACLE_GENERA = (2, 3, 4)

Check = Tuple[str, Callable[[], CheckOutcome]]


class VerificationService:
    """
    Service class for `verify`

    Every check is independent and runs in a thread pool; a check that
    raises is reported as failed rather than aborting the run.
    """

    def __init__(
        self,
        engine: Optional[RecursionEngine] = None,
        genera: Tuple[int, ...] = ORACLE_GENERA,
        ranks: Tuple[int, ...] = ORACLE_RANKS,
    ):
        self.engine = engine or get_engine()
        self.genera = genera
        self.ranks = ranks

    def identity_checks(self, order: int, perturb: bool = False) -> List[Check]:
        def wrap(report_fn: Callable[[], IdentityReport]) -> Callable[[], CheckOutcome]:
            def run() -> CheckOutcome:
                report = report_fn()
                detail = "" if report.equal else (
                    f"first mismatch at t^{report.mismatch_index}: "
                    f"{report.lhs_coefficient} != {report.rhs_coefficient}"
                )
                return CheckOutcome(name=report.identity, passed=report.equal, detail=detail)
            return run

        return [
            ("stable-cp1-complex", wrap(lambda: verify_stable_cp1_complex(order, perturb))),
            ("partition", wrap(lambda: verify_partition_identity(order, perturb))),
            ("genus-zero-real-a", wrap(lambda: verify_genus_zero_real("a", order, perturb))),
            ("genus-zero-real-b", wrap(lambda: verify_genus_zero_real("b", order, perturb))),
        ]

    def oracle_checks(self) -> List[Check]:
        checks: List[Check] = []
        for r in self.ranks:
            for g in self.genera:
                for a in range(1, g + 2):
                    name = f"oracle r={r} g={g} a={a} d=1"
                    checks.append((name, self._oracle(name, r, g, a)))
        return checks

    def _oracle(self, name: str, r: int, g: int, a: int) -> Callable[[], CheckOutcome]:
        def run() -> CheckOutcome:
            topo = validate_topology(g, a)
            recursive = self.engine.moduli_betti(r, 1, topo).polynomial
            expected = expected_moduli_degree(r, g)
            order = expected + settings.safety_margin
            closed = extract_polynomial(low_rank_moduli_closed_form(r, topo, order), expected)
            passed = recursive == closed
            detail = "" if passed else f"recursion {list(recursive.coefficients)} != closed form {list(closed.coefficients)}"
            return CheckOutcome(name=name, passed=passed, detail=detail)
        return run

    def run(self, order: Optional[int] = None, perturb: bool = False) -> VerificationSummary:
        """
        Run identities and oracle checks

        Args:
            order: Identity order (default: settings.identity_order)
            perturb: Shift one right-hand exponent of every identity (negative control)

        Returns:
            VerificationSummary with pass/fail counts
        """
        order = settings.identity_order if order is None else order
        checks = self.identity_checks(order, perturb) + self.oracle_checks()
        logger.info(f"Running {len(checks)} verification checks (order {order})")

        def safe(check: Check) -> CheckOutcome:
            name, fn = check
            try:
                return fn()
            except RealBettiError as e:
                logger.error(f"Check {name} raised {e.reason}")
                return CheckOutcome(name=name, passed=False, detail=e.reason)

        with ThreadPoolExecutor(max_workers=max(1, settings.max_workers)) as pool:
            outcomes = list(pool.map(safe, checks))

        passed = sum(1 for outcome in outcomes if outcome.passed)
        return VerificationSummary(
            order=order,
            passed=passed,
            failed=len(outcomes) - passed,
            checks=outcomes,
        )
