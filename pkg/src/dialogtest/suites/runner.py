"""Running suites against an agent"""

import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any, Collection, Dict, Mapping, Optional, Tuple

from attrs import field, frozen

from dialogtest.agents import AgentHandle, AgentSpec, open_session
from dialogtest.configuration import override_context
from dialogtest.context import DialogContext
from dialogtest.oracles import SemanticOracle, Verdict, assert_state
from dialogtest.suites.cases import (
    ExpectEquivalent,
    ExpectNoBreakdown,
    ExpectState,
    Say,
    TestCase,
    TestStep,
    TestSuite,
)
from dialogtest.utils.logging import easylog

logger = easylog()


class Outcome(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"


@frozen
class StepResult:
    index: int
    """Position of the step in its case (1-based)"""

    step: TestStep
    verdict: Optional[Verdict] = None
    """The verdict of an expectation (None for say steps and errors)"""


@frozen
class CaseError:
    """An error that stopped a case"""

    type: str
    detail: str
    step: Optional[int] = None
    """The step that raised the error (None when opening the session)"""

    @staticmethod
    def of(e: BaseException, step: Optional[int] = None) -> "CaseError":
        return CaseError(type(e).__name__, str(e), step)


@frozen
class CaseResult:
    name: str
    outcome: Outcome
    steps: Tuple[StepResult, ...] = ()
    error: Optional[CaseError] = None
    duration: float = field(default=0.0, eq=False)

    @property
    def failed_steps(self) -> Tuple[StepResult, ...]:
        return tuple(
            step
            for step in self.steps
            if step.verdict is not None and not step.verdict.passed
        )


@frozen
class TestReport:
    """The outcome of a suite run, cases in declaration order"""

    __test__ = False

    cases: Tuple[CaseResult, ...]
    duration: float = field(eq=False)
    """Wall-clock duration, in seconds"""

    context: Mapping[str, Any] = field(factory=dict)
    """Snapshot of the dialog context of the run"""

    @property
    def totals(self) -> Dict[Outcome, int]:
        totals = {outcome: 0 for outcome in Outcome}
        for case in self.cases:
            totals[case.outcome] += 1
        return totals

    @property
    def exit_code(self) -> int:
        """0 if every case passed, 2 if any case errored, 1 otherwise"""
        totals = self.totals
        if totals[Outcome.ERROR]:
            return 2
        if totals[Outcome.FAIL]:
            return 1
        return 0


class CaseRunner:
    """Runs the steps of one case in its own session"""

    def __init__(self, case: TestCase, ctx: DialogContext, oracle: SemanticOracle):
        self.case = case
        self.ctx = ctx
        self.oracle = oracle

    def _run_step(self, handle: AgentHandle, step: TestStep) -> Optional[Verdict]:
        ctx = self.ctx
        if isinstance(step, Say):
            handle.send(step.text)
            return None

        if isinstance(step, ExpectEquivalent):
            return self.oracle.assert_equivalent(
                handle.transcript.last_response,
                step.expected,
                ctx,
                message=step.message or "",
                threshold=step.threshold,
            )

        if isinstance(step, ExpectState):
            return assert_state(handle.query_state(), step.path, step.matcher)

        assert isinstance(step, ExpectNoBreakdown)
        return self.oracle.assert_no_breakdown(
            handle.transcript, handle.transcript.last_response, ctx
        )

    def run(self, spec: AgentSpec) -> CaseResult:
        start = time.perf_counter()
        results = []
        error = None

        try:
            with open_session(spec, self.ctx.max_turns) as handle:
                for index, step in enumerate(self.case.steps, start=1):
                    try:
                        verdict = self._run_step(handle, step)
                    except Exception as e:
                        # Later steps would depend on the failed one
                        error = CaseError.of(e, index)
                        break
                    results.append(StepResult(index, step, verdict))
        except Exception as e:
            error = CaseError.of(e)

        result = CaseResult(
            self.case.name,
            _outcome(results, error),
            tuple(results),
            error,
            time.perf_counter() - start,
        )
        if error is not None:
            logger.info("%s: ERROR (%s: %s)", result.name, error.type, error.detail)
        else:
            logger.info("%s: %s", result.name, result.outcome.value)
        return result


def _outcome(results, error: Optional[CaseError]) -> Outcome:
    if error is not None:
        return Outcome.ERROR
    if any(r.verdict is not None and not r.verdict.passed for r in results):
        return Outcome.FAIL
    return Outcome.PASS


def run_case(
    case: TestCase,
    ctx: DialogContext,
    spec: AgentSpec,
    oracle: SemanticOracle,
    pinned: Collection[str] = (),
) -> CaseResult:
    """Runs a case; errors become an ERROR outcome, never exceptions"""
    try:
        case_ctx = override_context(ctx, case.context_overrides, pinned)
    except Exception as e:
        return CaseResult(case.name, Outcome.ERROR, error=CaseError.of(e))
    return CaseRunner(case, case_ctx, oracle).run(spec)


def run_suite(
    suite: TestSuite,
    ctx: DialogContext,
    spec: AgentSpec,
    *,
    oracle: Optional[SemanticOracle] = None,
    jobs: int = 1,
    pinned: Collection[str] = (),
) -> TestReport:
    """Runs every case of a suite, each in a fresh session

    :param jobs: number of cases run concurrently (1 runs them in order)
    :param pinned: context fields that the cases cannot override
    """
    oracle = oracle or SemanticOracle()
    start = time.perf_counter()

    def run(case: TestCase) -> CaseResult:
        return run_case(case, ctx, spec, oracle, pinned)

    if jobs <= 1:
        results = [run(case) for case in suite.cases]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(run, suite.cases))

    return TestReport(tuple(results), time.perf_counter() - start, ctx.snapshot())
