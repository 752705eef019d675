"""Line protocol between the runner and an agent process

All messages are UTF-8 lines::

    agent  -> runner   READY            (once, on start)
    runner -> agent    U <text>         (a user utterance)
    agent  -> runner   A <text>         (exactly one answer per U)
    runner -> agent    Q                (state query)
    agent  -> runner   S <document>     (answer to Q)
    runner -> agent    BYE              (end of session)

A state document is a single line of ``key=value`` pairs separated by
``;``, where dots in keys denote nesting, e.g.
``alarm.time=06:00;alarm.set=true``. Inside keys and values, ``\\;``,
``\\=`` and ``\\\\`` escape the special characters.
"""

import re
from typing import Dict, Iterator, List, Tuple, Union

from dialogtest.errors import MalformedState

READY = "READY"
BYE = "BYE"
QUERY = "Q"
USER_PREFIX = "U"
AGENT_PREFIX = "A"
STATE_PREFIX = "S"

Scalar = Union[str, int, float, bool]
StateDocument = Dict[str, Union["StateDocument", Scalar]]

_INT = re.compile(r"-?(?:0|[1-9]\d*)")
_FLOAT = re.compile(r"-?(?:0|[1-9]\d*)(?:\.\d+(?:[eE][-+]?\d+)?|[eE][-+]?\d+)")


def frame(prefix: str, text: str = "") -> str:
    """A protocol line (without its line feed); line breaks become spaces"""
    text = " ".join(text.splitlines())
    return f"{prefix} {text}" if text else prefix


def unframe(line: str, prefix: str):
    """Returns the payload of a line, or None if it is not framed with prefix"""
    if line == prefix:
        return ""
    if line.startswith(prefix + " "):
        return line[len(prefix) + 1 :]
    return None


def parse_scalar(text: str) -> Scalar:
    """Converts the text of a value into a boolean, a number or a string"""
    if text == "true":
        return True
    if text == "false":
        return False
    if _INT.fullmatch(text):
        return int(text)
    if _FLOAT.fullmatch(text):
        return float(text)
    return text


def format_scalar(value: Scalar) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def same_scalar(a, b) -> bool:
    """Equality that does not confuse booleans with numbers"""
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b
    return a == b


def _split_escaped(text: str, separator: str, maxsplit: int = -1) -> List[str]:
    """Splits on unescaped separators, keeping the escapes"""
    parts = []
    current = []
    chars = iter(text)
    for char in chars:
        if char == "\\":
            current.append(char)
            current.append(next(chars, ""))
        elif char == separator and maxsplit != 0:
            parts.append("".join(current))
            current = []
            maxsplit -= 1
        else:
            current.append(char)
    parts.append("".join(current))
    return parts


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text)


def _escape(text: str) -> str:
    return re.sub(r"([\\;=])", r"\\\1", text)


def parse_state(text: str) -> StateDocument:
    """Parses a single-line state document into a tree

    :raises MalformedState: missing ``=``, empty key segment, or a key used
        both as a value and as a node
    """
    document: StateDocument = {}
    for pair in _split_escaped(text.strip(), ";"):
        if not pair.strip():
            continue
        key_value = _split_escaped(pair, "=", 1)
        if len(key_value) != 2:
            raise MalformedState(f"{pair!r} is not a key=value pair")
        key, value = key_value
        segments = [_unescape(segment) for segment in key.strip().split(".")]
        if not all(segments):
            raise MalformedState(f"empty segment in key {key!r}")

        node = document
        for segment in segments[:-1]:
            child = node.setdefault(segment, {})
            if not isinstance(child, dict):
                raise MalformedState(f"{segment!r} is both a value and a node")
            node = child
        if segments[-1] in node:
            raise MalformedState(f"key {key!r} is defined twice")
        node[segments[-1]] = parse_scalar(_unescape(value))
    return document


def _flatten(document: StateDocument, prefix: str) -> Iterator[Tuple[str, Scalar]]:
    for key, value in document.items():
        path = f"{prefix}{_escape(key)}"
        if isinstance(value, dict):
            yield from _flatten(value, path + ".")
        else:
            yield path, value


def serialize_state(document: StateDocument) -> str:
    return ";".join(
        f"{key}={_escape(format_scalar(value))}"
        for key, value in _flatten(document, "")
    )
