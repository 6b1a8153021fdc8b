"""Seeded runs of the property checks.

Every trial gets its own generator seeded by (seed, check, trial), so results
do not depend on the number of workers.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from app.config import settings
from app.errors import BudgetExceeded, LabError, ValidationError
from app.groups.chain import ChainGroup
from app.verify.checks import CHECKS, MUTANTS, Check, Pool, expression_check
from app.verify.shrink import shrink

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    description: str
    trials: int = 0
    passed: int = 0
    skipped: int = 0
    failure: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "trials": self.trials,
            "passed": self.passed,
            "skipped": self.skipped,
            "ok": self.ok,
            "failure": self.failure,
        }


@dataclass
class VerifyReport:
    seed: int
    trials: int
    mutant: Optional[str] = None
    results: List[CheckResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failed(self) -> List[str]:
        return [r.name for r in self.results if not r.ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "seed": self.seed,
            "trials": self.trials,
            "mutant": self.mutant,
            "failed": self.failed,
            "warnings": list(self.warnings),
            "checks": [r.to_dict() for r in self.results],
        }


@dataclass
class _Outcome:
    trial: int
    status: str
    message: Optional[str] = None
    case: Any = None


def _error_message(e: LabError) -> str:
    return f"{type(e).__name__}: {e}"


def _violation(check: Check, case: Any, mutant: Optional[str]) -> Optional[str]:
    """The failure message of a case; a LabError raised by the check counts as a failure."""
    try:
        return check.holds(case, mutant)
    except BudgetExceeded:
        return None
    except LabError as e:
        return _error_message(e)


class Verifier:
    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.verify_workers

    def _trial(self, check: Check, index: int, trial: int, seed: int, pool: Pool, mutant: Optional[str]) -> _Outcome:
        rng = np.random.default_rng([seed, index, trial])
        case = None
        try:
            case = check.generate(rng, pool)
            message = check.holds(case, mutant)
        except BudgetExceeded:
            return _Outcome(trial, "skipped")
        except LabError as e:
            message = _error_message(e)
        if message is None:
            return _Outcome(trial, "passed")
        return _Outcome(trial, "failed", message, case)

    def _failure(self, check: Check, outcome: _Outcome, mutant: Optional[str]) -> Dict[str, Any]:
        case, message = outcome.case, outcome.message
        if case is not None:
            try:
                case = shrink(case, check.candidates, lambda c: _violation(check, c, mutant) is not None)
            except LabError as e:
                logger.warning(f"⚠️ shrinking {check.name} stopped: {_error_message(e)}")
            message = _violation(check, case, mutant) or message
        return {
            "trial": outcome.trial,
            "message": message,
            "counterexample": check.show(case) if case is not None else None,
        }

    def run_check(
        self, check: Check, index: int, seed: int, trials: int, pool: Pool = None, mutant: Optional[str] = None
    ) -> CheckResult:
        count = min(trials, 1) if check.once else trials
        result = CheckResult(check.name, check.description, trials=count)
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            outcomes = list(executor.map(lambda t: self._trial(check, index, t, seed, pool, mutant), range(count)))
        for outcome in outcomes:
            if outcome.status == "passed":
                result.passed += 1
            elif outcome.status == "skipped":
                result.skipped += 1
            elif result.failure is None:
                result.failure = self._failure(check, outcome, mutant)
        status = "✅" if result.ok else "❌"
        logger.info(f"{status} {check.name}: {result.passed}/{count} passed, {result.skipped} skipped")
        return result

    def run(
        self,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        chains: Optional[Sequence[ChainGroup]] = None,
        exprs: Optional[Sequence[Any]] = None,
        mutant: Optional[str] = None,
        only: Optional[Sequence[str]] = None,
    ) -> VerifyReport:
        seed = settings.verify_seed if seed is None else seed
        trials = settings.verify_trials if trials is None else trials
        if trials < 0:
            raise ValidationError("trials must not be negative")
        if mutant is not None and mutant not in MUTANTS:
            raise ValidationError(f"unknown mutant {mutant!r}, expected one of {', '.join(MUTANTS)}")

        report = VerifyReport(seed, trials, mutant)
        if trials == 0:
            message = "no trials requested, every check passes vacuously"
            logger.warning(f"⚠️ {message}")
            report.warnings.append(message)

        checks = list(CHECKS)
        if exprs:
            checks.append(expression_check(list(exprs)))
        unknown = sorted(set(only or []) - {c.name for c in checks})
        if unknown:
            raise ValidationError(f"unknown checks {', '.join(unknown)}")
        indexed = [(i, c) for i, c in enumerate(checks) if not only or c.name in only]
        pool = list(chains) if chains else None
        for index, check in indexed:
            report.results.append(self.run_check(check, index, seed, trials, pool, mutant))
        logger.info(f"verification with seed {seed}: {len(report.results) - len(report.failed)}/{len(report.results)} checks passed")
        return report


verifier = Verifier()
