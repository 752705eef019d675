"""Exceptions raised by dialogtest

Failed assertions are not exceptions: they are verdicts with ``passed``
set to false. Everything below signals a problem with the test itself
(its fixtures, its oracle or its agent) and is reported as an ERROR.
"""

from pathlib import Path
from typing import Optional, Union


class DialogTestError(Exception):
    """Base class for all dialogtest errors"""


# --- Embedding store


class EmbeddingError(DialogTestError):
    """Errors related to word-vector models and vector arithmetic"""


class FileUnreadable(EmbeddingError):
    def __init__(self, path: Union[str, Path], reason: str):
        super().__init__(f"cannot read {path}: {reason}")
        self.path = path
        self.reason = reason


class MalformedLine(EmbeddingError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line
        self.detail = detail


class DimensionMismatch(EmbeddingError):
    def __init__(self, expected: int, actual: int, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}expected dimension {expected}, got {actual}")
        self.expected = expected
        self.actual = actual
        self.line = line


class CountMismatch(EmbeddingError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"header announces {expected} entries, file has {actual}")
        self.expected = expected
        self.actual = actual


class EmptyModel(EmbeddingError):
    def __init__(self, path: Union[str, Path]):
        super().__init__(f"no valid entry in {path}")
        self.path = path


class EmptyInput(EmbeddingError):
    def __init__(self):
        super().__init__("cannot average an empty sequence of vectors")


class InvalidVector(EmbeddingError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ZeroVector(EmbeddingError):
    def __init__(self, argument: str):
        super().__init__(f"argument {argument} has a zero magnitude")
        self.argument = argument


# --- Utterances


class EncodingError(DialogTestError):
    """An utterance could not be projected into a vector space"""


class NoTokens(EncodingError):
    def __init__(self, raw: str):
        super().__init__(f"utterance {raw!r} has no token after normalization")
        self.raw = raw


class AllTokensOutOfVocabulary(EncodingError):
    def __init__(self, raw: str, model: str):
        super().__init__(f"no token of {raw!r} is in the vocabulary of {model}")
        self.raw = raw
        self.model = model


class WakePhraseAbsent(DialogTestError):
    def __init__(self, raw: str, wake_phrase: str):
        super().__init__(f"{raw!r} does not start with {wake_phrase!r}")
        self.raw = raw
        self.wake_phrase = wake_phrase


# --- Oracles


class OracleError(DialogTestError):
    """Errors of the oracle infrastructure"""


class UnknownStrategy(OracleError):
    def __init__(self, strategy_id: str):
        super().__init__(f"no similarity strategy registered as {strategy_id!r}")
        self.strategy_id = strategy_id


class DuplicateStrategyId(OracleError):
    def __init__(self, strategy_id: str):
        super().__init__(f"a strategy is already registered as {strategy_id!r}")
        self.strategy_id = strategy_id


class UnknownModel(OracleError):
    def __init__(self, model_id: str):
        super().__init__(f"model {model_id!r} is neither loaded nor declared")
        self.model_id = model_id


class MalformedPath(OracleError):
    def __init__(self, path: str):
        super().__init__(f"malformed state path {path!r}")
        self.path = path


class EmptyTranscript(OracleError):
    def __init__(self):
        super().__init__("the transcript has no user utterance")


# --- Context


class ContextError(DialogTestError):
    """An invalid dialog context"""


class MissingModel(ContextError):
    def __init__(self):
        super().__init__("a model identifier is required to build a context")


class InvalidThreshold(ContextError):
    def __init__(self, value: float, name: str = "equivalence_threshold"):
        super().__init__(f"{name} must lie in [-1, 1], got {value}")
        self.value = value
        self.name = name


class InvalidRate(ContextError):
    def __init__(self, value: float):
        super().__init__(f"words_per_second must be positive, got {value}")
        self.value = value


class InvalidMaxTurns(ContextError):
    def __init__(self, value: int):
        super().__init__(f"max_turns must be at least 1, got {value}")
        self.value = value


# --- Agents


class AgentError(DialogTestError):
    """Errors while talking to the agent under test"""


class LaunchFailure(AgentError):
    def __init__(self, detail: str):
        super().__init__(f"could not launch the agent: {detail}")
        self.detail = detail


class HandshakeTimeout(AgentError):
    def __init__(self, timeout: float):
        super().__init__(f"the agent did not send READY within {timeout}s")
        self.timeout = timeout


class ResponseTimeout(AgentError):
    def __init__(self, timeout: float):
        super().__init__(f"no response from the agent within {timeout}s")
        self.timeout = timeout


class SessionClosed(AgentError):
    def __init__(self, detail: str = "the session is closed"):
        super().__init__(detail)
        self.detail = detail


class ProtocolViolation(AgentError):
    def __init__(self, line: str):
        super().__init__(f"unexpected line from the agent: {line!r}")
        self.line = line


class MaxTurnsExceeded(AgentError):
    def __init__(self, max_turns: int):
        super().__init__(f"the session reached its maximum of {max_turns} turns")
        self.max_turns = max_turns


class StateUnsupported(AgentError):
    def __init__(self):
        super().__init__("the agent does not expose its state")


class MalformedState(AgentError):
    def __init__(self, detail: str):
        super().__init__(f"malformed state document: {detail}")
        self.detail = detail


# --- Suites


class SuiteError(DialogTestError):
    """Errors while reading a suite file"""


class ParseError(SuiteError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line
        self.detail = detail


class ValidationError(SuiteError):
    def __init__(self, case: str, detail: str):
        super().__init__(f"case {case}: {detail}")
        self.case = case
        self.detail = detail


class DuplicateCaseName(SuiteError):
    def __init__(self, name: str):
        super().__init__(f"case {name} is defined more than once")
        self.name = name


# --- VoiceXML


class VXMLError(DialogTestError):
    """Errors while reading a VoiceXML document"""


class UnsupportedElement(VXMLError):
    def __init__(self, name: str):
        super().__init__(f"unsupported VoiceXML element <{name}>")
        self.name = name


class DanglingGoto(VXMLError):
    def __init__(self, target: str):
        super().__init__(f"goto target #{target} does not exist")
        self.target = target


class MalformedMarkup(VXMLError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class NondeterministicField(VXMLError):
    def __init__(self, field: str, label: str):
        super().__init__(f"field {field} has more than one option {label!r}")
        self.field = field
        self.label = label
