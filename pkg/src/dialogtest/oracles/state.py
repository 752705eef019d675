"""Predicates over the state documents exposed by agents"""

from abc import ABC, abstractmethod
from typing import Any, List, Tuple

from attrs import frozen

from dialogtest.agents.protocol import (
    Scalar,
    StateDocument,
    format_scalar,
    same_scalar,
)
from dialogtest.errors import MalformedPath
from dialogtest.oracles.verdict import Verdict, VerdictKind

STATE_STRATEGY = "state"

_MISSING = object()


class Matcher(ABC):
    @abstractmethod
    def matches(self, value: Any) -> bool:
        """Tests the value found at the path (``_MISSING`` if absent)"""

    @abstractmethod
    def describe(self) -> str:
        ...


@frozen
class Equals(Matcher):
    value: Scalar

    def matches(self, value):
        if value is _MISSING or isinstance(value, dict):
            return False
        return same_scalar(value, self.value)

    def describe(self):
        return f"== {format_scalar(self.value)}"


@frozen
class Exists(Matcher):
    def matches(self, value):
        return value is not _MISSING

    def describe(self):
        return "exists"


def equals(value: Scalar) -> Matcher:
    return Equals(value)


def exists() -> Matcher:
    return Exists()


def split_path(path: str) -> List[str]:
    """Splits a dot-separated path

    :raises MalformedPath: the path is empty or has an empty segment
    """
    segments = path.split(".")
    if not path or not all(segments):
        raise MalformedPath(path)
    return segments


def resolve(state: StateDocument, path: str) -> Tuple[bool, Any]:
    """Returns whether the path exists, and the value found there"""
    node: Any = state
    for segment in split_path(path):
        if not isinstance(node, dict) or segment not in node:
            return False, None
        node = node[segment]
    return True, node


def assert_state(
    state: StateDocument, path: str, matcher: Matcher, message: str = ""
) -> Verdict:
    """Checks a predicate on the value found at ``path``

    A missing path is not an error: ``exists`` fails, and so does
    ``equals``.

    :raises MalformedPath: the path has an empty segment
    """
    found, value = resolve(state, path)
    passed = matcher.matches(value if found else _MISSING)
    leaf = found and not isinstance(value, dict)
    return Verdict(
        passed,
        1.0 if passed else 0.0,
        1.0,
        STATE_STRATEGY,
        message="" if passed else message,
        detail={
            "path": path,
            "expected": matcher.describe(),
            "actual": format_scalar(value) if leaf else None,
        },
        kind=VerdictKind.STATE,
    )
