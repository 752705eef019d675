import random
from typing import Dict, List

import pytest

from dialogtest.agents import AgentSpec, echo_agent
from dialogtest.suites import (
    ExpectEquivalent,
    Outcome,
    Say,
    TestCase,
    TestSuite,
    parse_suite,
    render_report,
    run_suite,
)
from dialogtest.text import perturb_duplicate_wake, strip_wake
from dialogtest.test.utils.utils import (
    GREETINGS,
    make_context,
    make_model,
    make_oracle,
    stub_agent,
)

THREE_CASES = """\
case pass
  say: hi
  expect_equivalent: hi

case fail
  say: a
  expect_equivalent: b

case error
  say: zzz
  expect_equivalent: hi
"""


@pytest.fixture
def oracle():
    return make_oracle(make_model(GREETINGS))


def test_pass_fail_error(oracle):
    suite = parse_suite(THREE_CASES)
    report = run_suite(suite, make_context(), echo_agent(), oracle=oracle)

    assert [case.outcome for case in report.cases] == [
        Outcome.PASS,
        Outcome.FAIL,
        Outcome.ERROR,
    ]
    assert report.totals == {Outcome.PASS: 1, Outcome.FAIL: 1, Outcome.ERROR: 1}
    assert report.exit_code == 2

    failed = report.cases[1].failed_steps
    assert len(failed) == 1
    assert failed[0].index == 2
    assert failed[0].verdict.score == pytest.approx(0.0, abs=1e-9)

    error = report.cases[2].error
    assert error.type == "AllTokensOutOfVocabulary"
    assert error.step == 2
    assert report.context["model_id"] == "fixture"


def test_tap_is_stable(oracle):
    suite = parse_suite(THREE_CASES)

    def tap() -> List[str]:
        report = run_suite(suite, make_context(), echo_agent(), oracle=oracle)
        lines = render_report(report, "tap").splitlines()
        assert lines[-1].startswith("# duration=")
        return lines[:-1]

    lines = tap()
    assert lines[:3] == ["TAP version 13", "1..3", "ok 1 - pass"]
    assert "not ok 2 - fail" in lines
    assert "not ok 3 - error" in lines
    assert sum(line.startswith("# ERROR ") for line in lines) == 1
    assert tap() == lines


def test_exit_codes(oracle):
    ctx = make_context()
    passing = parse_suite("case p\n  say: hi\n  expect_equivalent: hello")
    failing = parse_suite("case f\n  say: a\n  expect_equivalent: b")
    assert run_suite(passing, ctx, echo_agent(), oracle=oracle).exit_code == 0
    assert run_suite(failing, ctx, echo_agent(), oracle=oracle).exit_code == 1
    assert run_suite(TestSuite(), ctx, echo_agent(), oracle=oracle).exit_code == 0


def test_failures_do_not_stop_a_case(oracle):
    suite = parse_suite(
        "case c\n"
        "  say: a\n"
        "  expect_equivalent: b\n"
        "  say: hi\n"
        "  expect_equivalent: hello\n"
    )
    report = run_suite(suite, make_context(), echo_agent(), oracle=oracle)
    (case,) = report.cases
    assert case.outcome == Outcome.FAIL
    assert len(case.steps) == 4
    assert [step.index for step in case.failed_steps] == [2]


def test_errors_stop_a_case(oracle):
    suite = parse_suite(
        "case c\n  say: hi\n  say: hi\n  say: hi\n  expect_equivalent: hello\n"
    )
    report = run_suite(suite, make_context(max_turns=2), echo_agent(), oracle=oracle)
    (case,) = report.cases
    assert case.outcome == Outcome.ERROR
    assert case.error.type == "MaxTurnsExceeded"
    assert case.error.step == 3
    assert len(case.steps) == 2


def test_state_and_breakdown_steps(oracle):
    state: Dict = {}

    def respond(text: str) -> str:
        state["greeted"] = True
        return "hello"

    spec = AgentSpec.in_process(respond, state=lambda: state, reset=state.clear)
    suite = parse_suite(
        "case greet\n"
        "  say: hi\n"
        "  expect_state: greeted == true\n"
        "  expect_state: mood exists\n"
        "  expect_no_breakdown\n"
    )
    report = run_suite(suite, make_context(), spec, oracle=oracle)
    (case,) = report.cases
    assert case.outcome == Outcome.FAIL
    assert [step.index for step in case.failed_steps] == [3]
    assert case.steps[3].verdict.passed


def test_wake_phrase_in_breakdown_steps():
    model = make_model(
        {
            "hi": [1.0, 0, 0],
            "hello": [1.0, 0, 0],
            "ok": [0, 0, 1.0],
            "google": [0, 0, 1.0],
        }
    )
    steps = "  say: OK Google OK Google, hi\n  expect_no_breakdown\n"
    suite = parse_suite(
        f"case plain\n{steps}"
        f"case wake\n  context.wake_phrase = OK Google\n{steps}"
    )
    spec = AgentSpec.in_process(lambda text: "hello")
    report = run_suite(suite, make_context(), spec, oracle=make_oracle(model))
    assert [case.outcome for case in report.cases] == [Outcome.FAIL, Outcome.PASS]


def test_state_unsupported_is_an_error(oracle):
    suite = parse_suite("case c\n  say: hi\n  expect_state: x exists")
    report = run_suite(suite, make_context(), echo_agent(), oracle=oracle)
    assert report.cases[0].error.type == "StateUnsupported"


def test_case_overrides_and_pinned_fields(oracle):
    suite = parse_suite(
        "case lenient\n"
        "  context.equivalence_threshold = 0.1\n"
        "  say: hi\n"
        "  expect_equivalent: hello\n"
    )
    strict = make_context(equivalence_threshold=0.9)

    report = run_suite(suite, strict, echo_agent(), oracle=oracle)
    assert report.cases[0].outcome == Outcome.PASS

    report = run_suite(
        suite,
        strict,
        echo_agent(),
        oracle=oracle,
        pinned={"equivalence_threshold"},
    )
    assert report.cases[0].outcome == Outcome.FAIL


def test_unknown_model_is_a_case_error(oracle):
    suite = parse_suite(
        "case c\n  context.model_id = glove\n  say: hi\n  expect_equivalent: hi"
    )
    report = run_suite(suite, make_context(), echo_agent(), oracle=oracle)
    assert report.cases[0].error.type == "UnknownModel"


def test_concurrent_runs_keep_the_declaration_order(oracle):
    rng = random.Random(7)
    words = ["hi", "hello", "a", "b"]
    cases = [
        TestCase(
            f"case-{ix}",
            (Say(rng.choice(words)), ExpectEquivalent(rng.choice(words))),
        )
        for ix in range(30)
    ]
    ctx = make_context()
    serial = run_suite(TestSuite(tuple(cases)), ctx, echo_agent(), oracle=oracle)
    concurrent = run_suite(
        TestSuite(tuple(cases)), ctx, echo_agent(), oracle=oracle, jobs=8
    )
    assert [c.name for c in concurrent.cases] == [c.name for c in cases]
    assert concurrent.cases == serial.cases

    # Outcomes do not depend on the order of the cases
    shuffled = list(cases)
    rng.shuffle(shuffled)
    report = run_suite(TestSuite(tuple(shuffled)), ctx, echo_agent(), oracle=oracle)
    by_name = {case.name: case.outcome for case in report.cases}
    assert all(by_name[case.name] == case.outcome for case in serial.cases)


def _one_hot(axes: List[str]):
    return {
        word: [1.0 if ix == axis else 0.0 for ix in range(len(axes))]
        for axis, words in enumerate(axes)
        for word in words.split()
    }


WAKE_MODEL = _one_hot(
    [
        "what time is it",
        "set an alarm for six",
        "weather today hot",
        "ok google",
    ]
)
REQUESTS = ["what time is it", "set an alarm for six", "is it hot today"]


def wake_twins(seed: int, count: int) -> TestSuite:
    """Random cases, each followed by its twin with a doubled wake phrase"""
    rng = random.Random(seed)
    cases = []
    for ix in range(count):
        request = " ".join(
            rng.choice(REQUESTS).split()[: rng.randint(2, 5)]
        )
        text = "OK Google" + rng.choice([", ", " ", "! "]) + request
        expected = rng.choice([request, rng.choice(REQUESTS), "weather"])
        twin = perturb_duplicate_wake(text, "OK Google", 2).raw
        for name, said in [(f"c{ix}", text), (f"c{ix}-twin", twin)]:
            cases.append(TestCase(name, (Say(said), ExpectEquivalent(expected))))
    return TestSuite(tuple(cases))


def _assert_twins_agree(report):
    outcomes = [case.outcome for case in report.cases]
    assert Outcome.ERROR not in outcomes
    assert outcomes[::2] == outcomes[1::2]


def test_doubled_wake_phrase_in_process():
    def agent(text: str) -> str:
        return strip_wake(text, "OK Google").raw

    oracle = make_oracle(make_model(WAKE_MODEL))
    report = run_suite(
        wake_twins(1, 40), make_context(), AgentSpec.in_process(agent), oracle=oracle
    )
    _assert_twins_agree(report)


def test_doubled_wake_phrase_subprocess():
    oracle = make_oracle(make_model(WAKE_MODEL))
    report = run_suite(
        wake_twins(2, 20),
        make_context(),
        stub_agent("strip-wake"),
        oracle=oracle,
        jobs=8,
    )
    _assert_twins_agree(report)


def test_doubled_wake_phrase_breaks_a_naive_agent():
    # Without stripping, the repeated wake phrase weighs on the response
    oracle = make_oracle(make_model(WAKE_MODEL))
    suite = TestSuite(
        (
            TestCase(
                "c", (Say("OK Google, what time"), ExpectEquivalent("what time"))
            ),
            TestCase(
                "c-twin",
                (Say("OK Google OK Google, what time"), ExpectEquivalent("what time")),
            ),
        )
    )
    ctx = make_context(equivalence_threshold=0.6)
    report = run_suite(suite, ctx, echo_agent(), oracle=oracle)
    assert [case.outcome for case in report.cases] == [Outcome.PASS, Outcome.FAIL]
