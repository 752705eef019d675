"""Heuristic detection of dialog breakdowns

A breakdown is a turn where the agent's answer prevents the user from going
on with the conversation. Three kinds are distinguished: the answer is not
related to what the user said (irrelevant response), the user asked a
question that the answer ignores (ignored question), or the answer is a bare
acknowledgment of a question that does not call for one (unclear intent).

The classification is a cascade of rules, the most specific first:

1. the last user turn is a question, and the response only contains
   acknowledgment tokens: *unclear intent*;
2. the last user turn is a question, the response is not relevant to it and
   shares no content token with it: *ignored question*;
3. the response is not relevant to the last user turn: *irrelevant
   response*;
4. otherwise, no breakdown.

A response is relevant when its similarity with the user turn reaches the
relevance threshold of the dialog context.
When the context has a wake phrase, it is removed from the start of the
user turn before the rules apply.
"""

from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Mapping, Sequence

from attrs import field, frozen

from dialogtest.context import DialogContext
from dialogtest.errors import EmptyTranscript
from dialogtest.text.utterance import Utterance, strip_wake


class Breakdown(str, Enum):
    NONE = "none"
    IRRELEVANT_RESPONSE = "irrelevant_response"
    IGNORED_QUESTION = "ignored_question"
    UNCLEAR_INTENT = "unclear_intent"


@frozen
class BreakdownLabel:
    label: Breakdown

    evidence: Mapping[str, Any] = field(factory=dict, eq=False)
    """The flags and scores consulted to produce the label"""

    @property
    def is_breakdown(self) -> bool:
        return self.label != Breakdown.NONE


def _words(text: str) -> FrozenSet[str]:
    return frozenset(text.split())


@frozen
class BreakdownCues:
    """Token lists used by the breakdown rules (all normalized)"""

    question_words: FrozenSet[str] = _words(
        "what when where who why how do does is are can could will"
    )
    """Tokens that open a question"""

    acknowledgments: FrozenSet[str] = _words("yes no ok okay sure yeah")
    """Tokens of a bare acknowledgment"""

    tag_auxiliaries: FrozenSet[str] = _words(
        "isn't aren't wasn't weren't don't doesn't didn't won't wouldn't "
        "can't couldn't shouldn't haven't hasn't is are was were do does did "
        "will would can could should have has"
    )
    tag_pronouns: FrozenSet[str] = _words("it i you he she we they there that")

    function_words: FrozenSet[str] = _words(
        "a an the this that these those it it's its i i'm me my you your he "
        "she him her we us our they them their there to of in on at for with "
        "by from and or but not is are was were be been am do does did will "
        "would can could should have has had what when where who why how "
        "please know tell"
    )
    """Tokens ignored when looking for shared content"""

    exempt_acknowledgment_questions: bool = False
    """When set, a question made only of acknowledgment tokens ("ok?") is not
    labelled unclear_intent when answered by an acknowledgment"""

    def is_tag_question(self, u: Utterance) -> bool:
        """Confirmation requests such as "it's hot, isn't it?" """
        tokens = u.tokens
        return (
            u.raw.rstrip().endswith("?")
            and len(tokens) >= 3
            and tokens[0] not in self.question_words
            and tokens[-2] in self.tag_auxiliaries
            and tokens[-1] in self.tag_pronouns
        )

    def is_question(self, u: Utterance) -> bool:
        if not u.tokens:
            return False
        cue = u.raw.rstrip().endswith("?") or u.tokens[0] in self.question_words
        return cue and not self.is_tag_question(u)

    def is_acknowledgment(self, u: Utterance) -> bool:
        return bool(u.tokens) and set(u.tokens) <= self.acknowledgments

    def content_tokens(self, u: Utterance) -> FrozenSet[str]:
        return frozenset(u.tokens) - self.function_words


def last_user_turn(transcript) -> Utterance:
    """The user utterance of the last exchange

    :raises EmptyTranscript: the transcript has no exchange
    """
    exchanges: Sequence = transcript.exchanges
    if not exchanges:
        raise EmptyTranscript()
    return exchanges[-1].user


def classify_breakdown(
    transcript,
    response: Utterance,
    ctx: DialogContext,
    similarity: Callable[[Utterance, Utterance], float],
    cues: BreakdownCues = BreakdownCues(),
) -> BreakdownLabel:
    """Labels the response given to the last user turn of a transcript

    The similarity is only computed when the first rule does not apply.

    :param similarity: compares the response with the user turn
    :raises EmptyTranscript: the transcript has no user utterance
    """
    user = last_user_turn(transcript)
    if ctx.wake_phrase:
        stripped = strip_wake(user, ctx.wake_phrase)
        # a turn made of the wake phrase alone is kept as is
        if stripped.tokens:
            user = stripped
    evidence: Dict[str, Any] = {"user": user.raw, "response": response.raw}

    question = cues.is_question(user)
    evidence["question"] = question

    if question:
        acknowledgment = cues.is_acknowledgment(response)
        if cues.exempt_acknowledgment_questions and cues.is_acknowledgment(user):
            acknowledgment = False
        evidence["acknowledgment_only"] = acknowledgment
        if acknowledgment:
            return BreakdownLabel(Breakdown.UNCLEAR_INTENT, evidence)

    score = similarity(response, user)
    relevant = score >= ctx.relevance_threshold
    evidence.update(
        similarity=score,
        relevance_threshold=ctx.relevance_threshold,
        relevant=relevant,
    )
    if relevant:
        return BreakdownLabel(Breakdown.NONE, evidence)

    if question:
        shared = sorted(cues.content_tokens(user) & cues.content_tokens(response))
        evidence["shared_content_tokens"] = shared
        if not shared:
            return BreakdownLabel(Breakdown.IGNORED_QUESTION, evidence)

    return BreakdownLabel(Breakdown.IRRELEVANT_RESPONSE, evidence)
