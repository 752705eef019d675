import itertools
import shlex
import time
from abc import ABC, abstractmethod
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

from attrs import field, frozen

from dialogtest.agents.protocol import StateDocument
from dialogtest.agents.records import Exchange, Transcript
from dialogtest.errors import MaxTurnsExceeded, SessionClosed, StateUnsupported
from dialogtest.text.utterance import Utterance, UtteranceLike, as_utterance
from dialogtest.utils.logging import EasyLogger

DEFAULT_RESPONSE_TIMEOUT = 10.0
CLOSE_GRACE_PERIOD = 2.0


class AgentKind(str, Enum):
    IN_PROCESS = "in_process"
    SUBPROCESS = "subprocess"


def _check_entry(spec: "AgentSpec", attribute, entry):
    if spec.kind == AgentKind.IN_PROCESS:
        if not callable(entry):
            raise TypeError("an in-process agent needs a callable entry point")
    elif not entry or not all(isinstance(arg, str) for arg in entry):
        raise TypeError("a subprocess agent needs a non-empty command line")


@frozen
class AgentSpec:
    """How to reach the agent under test

    Use :py:meth:`in_process` or :py:meth:`subprocess` to build one.
    """

    kind: AgentKind

    entry: Union[Callable[[str], str], Tuple[str, ...]] = field(validator=_check_entry)
    """The response function (in-process) or the command line (subprocess)"""

    supports_state: bool = False
    """Whether the agent answers state queries"""

    response_timeout: float = DEFAULT_RESPONSE_TIMEOUT
    """Seconds to wait for the handshake and for each response (subprocess)"""

    state: Optional[Callable[[], StateDocument]] = None
    """Returns the state of an in-process agent"""

    reset: Optional[Callable[[], None]] = None
    """Called when an in-process session opens, so that each session starts
    afresh"""

    @staticmethod
    def in_process(
        respond: Callable[[str], str],
        *,
        state: Optional[Callable[[], StateDocument]] = None,
        reset: Optional[Callable[[], None]] = None,
    ) -> "AgentSpec":
        return AgentSpec(
            AgentKind.IN_PROCESS,
            respond,
            supports_state=state is not None,
            state=state,
            reset=reset,
        )

    @staticmethod
    def subprocess(
        command: Union[str, Sequence[str]],
        *,
        supports_state: bool = False,
        response_timeout: float = DEFAULT_RESPONSE_TIMEOUT,
    ) -> "AgentSpec":
        """An agent started as a process speaking the line protocol

        :param command: the command line, split with shell rules if a string
        """
        if isinstance(command, str):
            command = shlex.split(command)
        return AgentSpec(
            AgentKind.SUBPROCESS,
            tuple(command),
            supports_state=supports_state,
            response_timeout=response_timeout,
        )


_session_ids = itertools.count(1)


def new_session_id() -> str:
    return f"session-{next(_session_ids)}"


class AgentHandle(EasyLogger, ABC):
    """A live session with an agent

    A session is strictly sequential: each :py:meth:`send` waits for the
    answer before returning. Handles are context managers that close the
    session on exit.
    """

    def __init__(self, spec: AgentSpec, max_turns: int, session_id: str):
        self.spec = spec
        self.max_turns = max_turns
        self.transcript = Transcript(session_id)
        self.closed = False

    @property
    def session_id(self) -> str:
        return self.transcript.session_id

    @abstractmethod
    def _respond(self, text: str) -> str:
        """Sends a user turn and returns the answer text"""

    @abstractmethod
    def _state(self) -> StateDocument:
        ...

    @abstractmethod
    def _close(self):
        """Releases the agent (never raises)"""

    def _check_open(self):
        if self.closed:
            raise SessionClosed(f"{self.session_id} is closed")

    def send(self, u: UtteranceLike) -> Exchange:
        """Sends a user turn and records the exchange

        :raises SessionClosed: the session was closed (or the agent exited)
        :raises MaxTurnsExceeded: the transcript is full
        :raises ResponseTimeout: the agent did not answer in time
        :raises ProtocolViolation: the answer is not an ``A`` line
        """
        self._check_open()
        if len(self.transcript) >= self.max_turns:
            raise MaxTurnsExceeded(self.max_turns)

        user = as_utterance(u)
        start = time.perf_counter()
        answer = self._respond(user.raw)
        latency = time.perf_counter() - start
        return self.transcript.append(user, Utterance(answer), latency)

    def query_state(self) -> StateDocument:
        """Asks the agent for its state document

        :raises StateUnsupported: the agent does not expose its state
        :raises MalformedState: the document cannot be parsed
        """
        if not self.spec.supports_state:
            raise StateUnsupported()
        self._check_open()
        return self._state()

    def close(self) -> Transcript:
        """Ends the session (idempotent) and returns its transcript"""
        if not self.closed:
            self.closed = True
            self._close()
            self.logger.debug(
                "%s closed after %d exchanges", self.session_id, len(self.transcript)
            )
        return self.transcript

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()
