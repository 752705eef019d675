# Declarative dialog test suites

from dialogtest.suites.cases import (  # noqa: F401
    ExpectEquivalent,
    ExpectNoBreakdown,
    ExpectState,
    Say,
    StepKind,
    TestCase,
    TestStep,
    TestSuite,
)
from dialogtest.suites.parser import dump_suite, load_suite, parse_suite  # noqa: F401
from dialogtest.suites.reports import ReportFormat, render_report  # noqa: F401
from dialogtest.suites.runner import (  # noqa: F401
    CaseError,
    CaseResult,
    Outcome,
    StepResult,
    TestReport,
    run_case,
    run_suite,
)
