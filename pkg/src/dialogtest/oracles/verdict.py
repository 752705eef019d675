from enum import Enum
from typing import Any, Mapping, Optional

from attrs import field, frozen


class VerdictKind(str, Enum):
    EQUIVALENCE = "equivalence"
    STATE = "state"
    BREAKDOWN = "breakdown"


@frozen
class Verdict:
    """The outcome of one assertion

    For every verdict, ``passed`` is equivalent to ``score >= threshold``.
    """

    passed: bool
    score: float
    threshold: float
    strategy_id: str

    message: str = ""
    """The assertion message (only kept when the assertion failed)"""

    detail: Optional[Mapping[str, Any]] = field(default=None, eq=False)
    """Extra information, e.g. the skipped token counts for each side"""

    kind: VerdictKind = VerdictKind.EQUIVALENCE

    def __attrs_post_init__(self):
        if self.passed != (self.score >= self.threshold):
            raise ValueError(f"passed={self.passed} contradicts {self.describe()}")

    def describe(self) -> str:
        return f"score={self.score:.4f} threshold={self.threshold:.4f}"
