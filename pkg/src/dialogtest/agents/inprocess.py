from dialogtest.agents.base import AgentHandle, AgentSpec


class InProcessHandle(AgentHandle):
    """A session with an agent living in the test process

    The response function is called in the caller's thread, so no response
    timeout applies.
    """

    def __init__(self, spec: AgentSpec, max_turns: int, session_id: str):
        super().__init__(spec, max_turns, session_id)
        if spec.reset is not None:
            spec.reset()

    def _respond(self, text: str) -> str:
        return str(self.spec.entry(text))

    def _state(self):
        return self.spec.state()

    def _close(self):
        pass


def echo(text: str) -> str:
    """An agent that repeats what it is told"""
    return text
