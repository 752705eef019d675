from enum import Enum
from pathlib import Path
from typing import Optional, Tuple, Union

from attrs import field, frozen

from dialogtest.oracles.state import Matcher


class StepKind(str, Enum):
    SAY = "say"
    EXPECT_EQUIVALENT = "expect_equivalent"
    EXPECT_STATE = "expect_state"
    EXPECT_NO_BREAKDOWN = "expect_no_breakdown"


@frozen
class Say:
    text: str
    kind = StepKind.SAY


@frozen
class ExpectEquivalent:
    expected: str
    threshold: Optional[float] = None
    """Replaces the equivalence threshold of the context"""
    message: Optional[str] = None
    kind = StepKind.EXPECT_EQUIVALENT


@frozen
class ExpectState:
    path: str
    matcher: Matcher
    kind = StepKind.EXPECT_STATE


@frozen
class ExpectNoBreakdown:
    kind = StepKind.EXPECT_NO_BREAKDOWN


TestStep = Union[Say, ExpectEquivalent, ExpectState, ExpectNoBreakdown]


@frozen
class TestCase:
    """A named dialog: user turns interleaved with expectations"""

    __test__ = False

    name: str
    steps: Tuple[TestStep, ...]

    context_overrides: Tuple[str, ...] = ()
    """Context fields set by the case, as ``field=value`` items"""

    line: int = field(default=0, eq=False)
    """Line of the ``case`` keyword in the suite file (0 if unknown)"""


@frozen
class TestSuite:
    __test__ = False

    cases: Tuple[TestCase, ...] = ()
    source: Optional[Path] = field(default=None, eq=False)

    def __len__(self):
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)
