"""Reading and writing suite files

A suite file is a UTF-8, line-oriented text file::

    # A greeting
    case greet
      context.equivalence_threshold = 0.6
      say: hi
      expect_equivalent: hello [threshold=<t>] [message=<m>]

    case alarm
      say: alarm for six a.m.
      expect_state: alarm.set == true
      expect_state: alarm.time exists
      expect_no_breakdown

Indentation is optional, blank lines are ignored and ``#`` starts a
comment line. In an expected text, ``\\=`` stands for ``=`` and ``\\\\`` for a
backslash, so that a text can contain ``threshold=`` or ``message=``.
"""

import math
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

import omegaconf

from dialogtest.agents.protocol import format_scalar, parse_scalar
from dialogtest.configuration import merge, resolve_context
from dialogtest.errors import (
    DialogTestError,
    DuplicateCaseName,
    MalformedPath,
    ParseError,
    ValidationError,
)
from dialogtest.oracles.state import Equals, Exists, split_path
from dialogtest.suites.cases import (
    ExpectEquivalent,
    ExpectNoBreakdown,
    ExpectState,
    Say,
    StepKind,
    TestCase,
    TestStep,
    TestSuite,
)

_CASE = re.compile(r"case\s+(?P<name>\S.*?)\s*")
_CONTEXT = re.compile(r"context\.(?P<field>[\w.]+)\s*=\s*(?P<value>.*?)\s*")
_STEP = re.compile(r"(?P<kind>[a-z_]+)\s*(?::\s*(?P<payload>.*?))?\s*")
_EQUIVALENT = re.compile(
    r"(?P<text>.*?)"
    r"(?:\s+threshold=(?P<threshold>\S+))?"
    r"(?:\s+message=(?P<message>.*))?"
)
_ESCAPED = re.compile(r"\\([\\=])")
_STATE_EQUALS = re.compile(r"(?P<path>\S+)\s*==\s*(?P<value>.*)")
_STATE_EXISTS = re.compile(r"(?P<path>\S+)\s+exists")


class _CaseDraft:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.steps: List[TestStep] = []
        self.overrides: List[str] = []

    def build(self) -> TestCase:
        if not self.steps:
            raise ValidationError(self.name, "a case needs at least one step")
        if self.overrides:
            try:
                # A placeholder model, so that the other fields are checked
                resolve_context({"model_id": "-"}, self.overrides)
            except (DialogTestError, omegaconf.errors.OmegaConfBaseException) as e:
                raise ValidationError(self.name, f"invalid context: {e}")
        return TestCase(self.name, tuple(self.steps), tuple(self.overrides), self.line)


def _parse_threshold(text: str, lineno: int) -> float:
    try:
        threshold = float(text)
    except ValueError:
        raise ParseError(lineno, f"invalid threshold {text!r}")
    return threshold


def _parse_step(kind: str, payload: Optional[str], lineno: int) -> TestStep:
    try:
        kind = StepKind(kind)
    except ValueError:
        raise ParseError(lineno, f"unknown step {kind!r}")

    if kind == StepKind.EXPECT_NO_BREAKDOWN:
        if payload:
            raise ParseError(lineno, "expect_no_breakdown takes no argument")
        return ExpectNoBreakdown()

    if not payload:
        raise ParseError(lineno, f"{kind.value} needs an argument")

    if kind == StepKind.SAY:
        return Say(payload)

    if kind == StepKind.EXPECT_EQUIVALENT:
        m = _EQUIVALENT.fullmatch(payload)
        if not m.group("text"):
            raise ParseError(lineno, "expect_equivalent needs an expected text")
        threshold = m.group("threshold")
        return ExpectEquivalent(
            _ESCAPED.sub(r"\1", m.group("text")),
            _parse_threshold(threshold, lineno) if threshold is not None else None,
            m.group("message"),
        )

    if m := _STATE_EXISTS.fullmatch(payload):
        return ExpectState(m.group("path"), Exists())
    if m := _STATE_EQUALS.fullmatch(payload):
        return ExpectState(m.group("path"), Equals(parse_scalar(m.group("value"))))
    raise ParseError(lineno, "expected '<path> == <value>' or '<path> exists'")


def _check_step(draft: _CaseDraft, step: TestStep):
    if not isinstance(step, Say) and not any(
        isinstance(s, Say) for s in draft.steps
    ):
        raise ValidationError(
            draft.name, f"{step.kind.value} must follow at least one say step"
        )
    if isinstance(step, ExpectEquivalent) and step.threshold is not None:
        if not (-1.0 <= step.threshold <= 1.0) or math.isnan(step.threshold):
            raise ValidationError(
                draft.name, f"threshold {step.threshold} is outside [-1, 1]"
            )
    if isinstance(step, ExpectState):
        try:
            split_path(step.path)
        except MalformedPath as e:
            raise ValidationError(draft.name, str(e))


def parse_suite(text: str, source: Optional[Path] = None) -> TestSuite:
    """Parses and validates the text of a suite file

    :raises ParseError: a line does not follow the format
    :raises ValidationError: a case is invalid (no step, expectation before
        any say step, invalid context override or threshold)
    :raises DuplicateCaseName: two cases have the same name
    """
    cases: List[TestCase] = []
    names = set()
    draft: Optional[_CaseDraft] = None

    def close_draft():
        if draft is not None:
            cases.append(draft.build())

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue

        if m := _CASE.fullmatch(line):
            close_draft()
            name = m.group("name")
            if name in names:
                raise DuplicateCaseName(name)
            names.add(name)
            draft = _CaseDraft(name, lineno)
            continue

        if draft is None:
            raise ParseError(lineno, "expected 'case <name>'")

        if m := _CONTEXT.fullmatch(line):
            item = f"{m.group('field')}={m.group('value')}"
            try:
                merge([item])
            except omegaconf.errors.OmegaConfBaseException as e:
                raise ValidationError(draft.name, f"invalid context field: {e}")
            draft.overrides.append(item)
            continue

        if m := _STEP.fullmatch(line):
            step = _parse_step(m.group("kind"), m.group("payload"), lineno)
            _check_step(draft, step)
            draft.steps.append(step)
            continue

        raise ParseError(lineno, f"cannot parse {line!r}")

    close_draft()
    return TestSuite(tuple(cases), source)


def load_suite(path: Union[str, Path]) -> TestSuite:
    """Reads a suite file

    :raises ParseError: the file cannot be read (line 0) or parsed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(0, f"cannot read {path}: {e}")
    return parse_suite(text, path)


def _dump_step(step: TestStep) -> str:
    if isinstance(step, Say):
        return f"say: {step.text}"
    if isinstance(step, ExpectEquivalent):
        expected = step.expected.replace("\\", "\\\\").replace("=", "\\=")
        parts = [f"expect_equivalent: {expected}"]
        if step.threshold is not None:
            parts.append(f"threshold={step.threshold!r}")
        if step.message:
            parts.append(f"message={step.message}")
        return " ".join(parts)
    if isinstance(step, ExpectState):
        if isinstance(step.matcher, Equals):
            return f"expect_state: {step.path} == {format_scalar(step.matcher.value)}"
        return f"expect_state: {step.path} exists"
    return "expect_no_breakdown"


def _dump_case(case: TestCase) -> Tuple[str, ...]:
    lines = [f"case {case.name}"]
    for item in case.context_overrides:
        key, value = item.split("=", 1)
        lines.append(f"  context.{key} = {value}")
    lines.extend(f"  {_dump_step(step)}" for step in case.steps)
    return tuple(lines)


def dump_suite(suite: TestSuite) -> str:
    """Writes a suite in the format read by :py:func:`parse_suite`"""
    return "\n\n".join("\n".join(_dump_case(case)) for case in suite.cases) + (
        "\n" if suite.cases else ""
    )
