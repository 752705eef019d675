"""Rendering of test reports

Two formats are available: TAP (version 13) for tools, and a line-oriented
human format. Apart from the duration, both are deterministic.
"""

from enum import Enum
from typing import Iterator, List, Union

from termcolor import colored

from dialogtest.suites.cases import (
    ExpectEquivalent,
    ExpectNoBreakdown,
    ExpectState,
    Say,
    TestStep,
)
from dialogtest.suites.runner import CaseResult, Outcome, StepResult, TestReport


class ReportFormat(str, Enum):
    HUMAN = "human"
    TAP = "tap"


_COLORS = {Outcome.PASS: "green", Outcome.FAIL: "red", Outcome.ERROR: "magenta"}


def _format_number(value: float) -> str:
    # avoids "-0.0000"
    return f"{value + 0.0:.4f}"


def describe_step(step: TestStep) -> str:
    if isinstance(step, Say):
        return f"say: {step.text}"
    if isinstance(step, ExpectEquivalent):
        return f"expect_equivalent: {step.expected}"
    if isinstance(step, ExpectState):
        return f"expect_state: {step.path} {step.matcher.describe()}"
    assert isinstance(step, ExpectNoBreakdown)
    return "expect_no_breakdown"


def _scores(step: StepResult) -> str:
    verdict = step.verdict
    return (
        f"score={_format_number(verdict.score)} "
        f"threshold={_format_number(verdict.threshold)}"
    )


def _failure_lines(step: StepResult) -> Iterator[str]:
    yield f"step {step.index} {describe_step(step.step)}"
    if step.verdict.message:
        yield step.verdict.message
    yield _scores(step)


def _error_line(case: CaseResult) -> str:
    return f"ERROR {case.error.type}: {case.error.detail}"


def render_tap(report: TestReport) -> str:
    lines = ["TAP version 13", f"1..{len(report.cases)}"]
    for number, case in enumerate(report.cases, start=1):
        status = "ok" if case.outcome == Outcome.PASS else "not ok"
        lines.append(f"{status} {number} - {case.name}")
        for step in case.failed_steps:
            lines.extend(f"# {line}" for line in _failure_lines(step))
        if case.error is not None:
            lines.append(f"# {_error_line(case)}")
    lines.append(f"# duration={report.duration:.3f}s")
    return "\n".join(lines) + "\n"


def render_human(report: TestReport, color: bool = False) -> str:
    def paint(text: str, outcome: Outcome) -> str:
        return colored(text, _COLORS[outcome]) if color else text

    lines: List[str] = []
    for case in report.cases:
        lines.append(f"{paint(case.outcome.value.ljust(5), case.outcome)} {case.name}")
        for step in case.failed_steps:
            lines.extend(f"      {line}" for line in _failure_lines(step))
        if case.error is not None:
            where = f"step {case.error.step}: " if case.error.step else ""
            lines.append(f"      {where}{case.error.type}: {case.error.detail}")

    totals = report.totals
    lines.append(
        f"{len(report.cases)} cases: "
        f"{totals[Outcome.PASS]} passed, "
        f"{totals[Outcome.FAIL]} failed, "
        f"{totals[Outcome.ERROR]} errors "
        f"in {report.duration:.2f}s"
    )
    if report.context:
        context = " ".join(
            f"{key}={value}"
            for key, value in report.context.items()
            if key != "dataset_paths"
        )
        lines.append(f"context: {context}")
    return "\n".join(lines) + "\n"


def render_report(
    report: TestReport,
    format: Union[str, ReportFormat] = ReportFormat.HUMAN,
    color: bool = False,
) -> str:
    """Renders a report as text

    :param color: colour the outcomes (human format only)
    """
    if ReportFormat(format) == ReportFormat.TAP:
        return render_tap(report)
    return render_human(report, color)
