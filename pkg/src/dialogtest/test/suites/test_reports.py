import re

from termcolor import colored

from dialogtest.oracles import Verdict
from dialogtest.suites import (
    CaseError,
    CaseResult,
    ExpectEquivalent,
    Outcome,
    ReportFormat,
    Say,
    StepResult,
    TestReport,
    render_report,
)
from dialogtest.suites.reports import render_human, render_tap

TAP_LINE = re.compile(r"(TAP version 13|\d+\.\.\d+|(not )?ok \d+ - \S.*|# .*)")


def verdict(score: float, threshold: float = 0.5, message: str = ""):
    passed = score >= threshold
    return Verdict(passed, score, threshold, "avg-embedding-cosine", message)


def report(*cases: CaseResult) -> TestReport:
    return TestReport(cases, 1.25, {"model_id": "fixture", "dataset_paths": {}})


PASSED = CaseResult(
    "greet",
    Outcome.PASS,
    (StepResult(1, Say("hi")), StepResult(2, ExpectEquivalent("hi"), verdict(1.0))),
)
FAILED = CaseResult(
    "orthogonal",
    Outcome.FAIL,
    (
        StepResult(1, Say("a")),
        StepResult(2, ExpectEquivalent("b"), verdict(-0.0, message="a is not b")),
    ),
)
ERRORED = CaseResult(
    "oov",
    Outcome.ERROR,
    (StepResult(1, Say("zzz")),),
    CaseError("AllTokensOutOfVocabulary", "no token of 'zzz' is known", 2),
)


def test_tap_passes():
    text = render_tap(report(PASSED, PASSED))
    assert text.startswith("TAP version 13\n1..2\nok 1 - greet\nok 2 - greet\n")
    assert all(TAP_LINE.fullmatch(line) for line in text.splitlines())


def test_tap_failure_diagnostics():
    lines = render_report(report(FAILED), ReportFormat.TAP).splitlines()
    assert lines == [
        "TAP version 13",
        "1..1",
        "not ok 1 - orthogonal",
        "# step 2 expect_equivalent: b",
        "# a is not b",
        "# score=0.0000 threshold=0.5000",
        "# duration=1.250s",
    ]


def test_tap_error():
    text = render_report(report(PASSED, ERRORED), "tap")
    assert "not ok 2 - oov\n# ERROR AllTokensOutOfVocabulary: no token" in text
    assert all(TAP_LINE.fullmatch(line) for line in text.splitlines())


def test_tap_empty_suite():
    assert render_tap(report()).splitlines()[:2] == ["TAP version 13", "1..0"]


def test_human():
    text = render_human(report(PASSED, FAILED, ERRORED))
    lines = text.splitlines()
    assert lines[0] == "PASS  greet"
    assert lines[1] == "FAIL  orthogonal"
    assert "      score=0.0000 threshold=0.5000" in lines
    assert "      step 2: AllTokensOutOfVocabulary: no token of 'zzz' is known" in lines
    assert "3 cases: 1 passed, 1 failed, 1 errors in 1.25s" in lines
    assert lines[-1] == "context: model_id=fixture"


def test_human_colors():
    text = render_report(report(PASSED), "human", color=True)
    assert text.startswith(colored("PASS ", "green"))
    assert render_report(report(PASSED), "human").startswith("PASS  greet")
