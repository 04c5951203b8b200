import os
import time
import asyncio
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
from dotenv import load_dotenv
from lib.logger import suite_logger
from lib.suites import SUITES, Case, build_suite

# Load environment variables
load_dotenv()
SUITE_WORKERS = int(os.getenv('QTR_SUITE_WORKERS', 4))


@dataclass
class CaseResult:
    id: str
    passed: bool
    detail: Any = None

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.id, 'pass': self.passed, 'detail': self.detail}


@dataclass
class RunReport:
    """Outcome of one suite run; ``cases`` keep declaration order"""
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        out = {
            'suite': self.suite,
            'cases': [c.to_dict() for c in self.cases],
            'pass': self.passed,
        }
        if timing:
            out['elapsed_ms'] = self.elapsed_ms
        return out


class SuiteController:
    """Runs identity suites with bounded concurrency"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or SUITE_WORKERS
        self._semaphore: Optional[asyncio.Semaphore] = None

    @staticmethod
    def _run_case(case: Case) -> CaseResult:
        try:
            passed, detail = case.check()
        except Exception as e:
            # the failure stays local to this case
            return CaseResult(case.id, False, f"{e.__class__.__name__}: {e}")
        return CaseResult(case.id, bool(passed), detail)

    async def _guarded(self, case: Case) -> CaseResult:
        async with self._semaphore:
            suite_logger.debug(f"Running case: {case.id}")
            return await asyncio.to_thread(self._run_case, case)

    async def run_cases(self, suite: str, cases: List[Case]) -> RunReport:
        self._semaphore = asyncio.Semaphore(self.workers)
        suite_logger.info(f"Starting suite {suite} ({len(cases)} cases, {self.workers} workers)")
        start = time.perf_counter()
        results = await asyncio.gather(*(self._guarded(c) for c in cases))
        report = RunReport(suite, list(results), int((time.perf_counter() - start) * 1000))

        for failure in report.failures:
            suite_logger.warning(f"Case failed: {suite} / {failure.id}")
        suite_logger.info(
            f"Finished suite {suite}: {len(report.cases) - len(report.failures)}/{len(report.cases)} passed "
            f"in {report.elapsed_ms}ms"
        )
        return report

    async def run_suite(self, name: str, max_n: Optional[int] = None, seed: Optional[int] = None) -> RunReport:
        """Run one named suite, or every suite when ``name`` is 'all'"""
        if name != 'all':
            return await self.run_cases(name, build_suite(name, max_n, seed))

        cases: List[Case] = []
        for suite in SUITES:
            # --max-n caps every suite but never raises a default
            cap = None if max_n is None else min(max_n, SUITES[suite][1])
            cases.extend(Case(f"{suite}: {c.id}", c.check) for c in build_suite(suite, cap, seed))
        return await self.run_cases('all', cases)
