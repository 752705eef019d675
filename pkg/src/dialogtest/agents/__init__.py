# Sessions with the agent under test

from typing import Optional

from dialogtest.agents.base import (  # noqa: F401
    AgentHandle,
    AgentKind,
    AgentSpec,
    new_session_id,
)
from dialogtest.agents.inprocess import InProcessHandle, echo
from dialogtest.agents.process import SubprocessHandle
from dialogtest.agents.protocol import StateDocument  # noqa: F401
from dialogtest.agents.records import Exchange, Transcript  # noqa: F401
from dialogtest.text.utterance import UtteranceLike
from dialogtest.utils.logging import easylog

logger = easylog()

DEFAULT_MAX_TURNS = 50


def open_session(
    spec: AgentSpec,
    max_turns: int = DEFAULT_MAX_TURNS,
    session_id: Optional[str] = None,
) -> AgentHandle:
    """Opens a session with an empty transcript

    :raises LaunchFailure: the agent process could not be started
    :raises HandshakeTimeout: the agent did not send READY in time
    """
    session_id = session_id or new_session_id()
    if spec.kind == AgentKind.IN_PROCESS:
        return InProcessHandle(spec, max_turns, session_id)
    logger.info("%s: launching %s", session_id, " ".join(spec.entry))
    return SubprocessHandle(spec, max_turns, session_id)


def send(handle: AgentHandle, u: UtteranceLike) -> Exchange:
    return handle.send(u)


def query_state(handle: AgentHandle) -> StateDocument:
    return handle.query_state()


def close_session(handle: AgentHandle) -> Transcript:
    return handle.close()


def echo_agent() -> AgentSpec:
    """An in-process agent repeating every user turn"""
    return AgentSpec.in_process(echo)
