"""Writing dialog tests with :py:mod:`unittest`

Example::

    class AlarmTest(DialogTestCase):
        context = builder().with_model("word2vec").build()
        oracle = SemanticOracle(catalog)

        def test_simple(self):
            response = self.agent.send("alarm for six a.m.").agent
            self.assert_equivalent(response, "Your alarm is set for six a.m.")

        def test_complex(self):
            self.use_model("glove")
            ...
"""

import unittest
from typing import ClassVar, Optional

from dialogtest.agents import AgentHandle, AgentSpec, open_session
from dialogtest.agents.protocol import Scalar
from dialogtest.context import DialogContext
from dialogtest.oracles import SemanticOracle, Verdict, assert_state, equals, exists
from dialogtest.text.utterance import UtteranceLike


class DialogTestCase(unittest.TestCase):
    """A test case with semantic assertions

    Errors of the oracle (unknown model, utterances without any known token)
    are raised as such and reported as test errors, not failures.
    """

    context: ClassVar[Optional[DialogContext]] = None
    """The dialog context shared by the tests of the class"""

    oracle: ClassVar[Optional[SemanticOracle]] = None
    """The oracle (a default one is created if not set)"""

    agent_spec: ClassVar[Optional[AgentSpec]] = None
    """If set, each test gets a fresh session in ``self.agent``"""

    def setUp(self):
        super().setUp()
        if self.context is None:
            raise unittest.SkipTest(f"{type(self).__name__} has no dialog context")
        self.ctx = self.context
        if self.oracle is None:
            type(self).oracle = SemanticOracle()
        self.agent: Optional[AgentHandle] = None
        if self.agent_spec is not None:
            self.agent = open_session(self.agent_spec, self.ctx.max_turns)
            self.addCleanup(self.agent.close)

    def use_model(self, model_id: str):
        """Compares utterances with another model for the rest of the test"""
        self.ctx = self.ctx.evolve(model_id=model_id)

    def _check(self, verdict: Verdict, msg: Optional[str]):
        if not verdict.passed:
            detail = verdict.describe()
            self.fail(self._formatMessage(msg, detail))
        return verdict

    def assert_equivalent(
        self,
        actual: UtteranceLike,
        expected: UtteranceLike,
        msg: Optional[str] = None,
        threshold: Optional[float] = None,
    ) -> Verdict:
        verdict = self.oracle.assert_equivalent(
            actual, expected, self.ctx, msg or "", threshold=threshold
        )
        return self._check(verdict, msg)

    def assert_state(
        self, path: str, value: Optional[Scalar] = None, msg: Optional[str] = None
    ) -> Verdict:
        """Checks the state of the agent: equality, or existence if no value"""
        matcher = exists() if value is None else equals(value)
        verdict = assert_state(self.agent.query_state(), path, matcher, msg or "")
        return self._check(verdict, msg)

    def assert_no_breakdown(self, msg: Optional[str] = None) -> Verdict:
        transcript = self.agent.transcript
        verdict = self.oracle.assert_no_breakdown(
            transcript, transcript.last_response, self.ctx, msg or ""
        )
        return self._check(verdict, msg)
