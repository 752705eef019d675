import re
from typing import Dict, Tuple, Union

from attrs import field, frozen

from dialogtest.errors import AllTokensOutOfVocabulary, NoTokens, WakePhraseAbsent
from dialogtest.text.tokenizers import normalize
from dialogtest.text.wordvec import Vector, WordVectorModel, average
from dialogtest.utils.logging import LazyJoin, easylog

logger = easylog()


@frozen
class Encoding:
    """The projection of an utterance in the vector space of a model"""

    vector: Vector = field(eq=False, repr=False)
    """Average of the in-vocabulary token vectors"""

    skipped: int
    """Number of out-of-vocabulary tokens"""

    model: str
    """Identifier of the model that produced the vector"""


@frozen
class Utterance:
    """One turn of text, with its normalized tokens

    Encodings are cached by model identifier; two threads filling the cache
    for the same model store identical values.
    """

    raw: str
    """The text, as authored"""

    tokens: Tuple[str, ...] = field(init=False, eq=False)
    """Normalized tokens of ``raw``"""

    _encodings: Dict[str, Encoding] = field(
        init=False, factory=dict, eq=False, repr=False
    )

    @tokens.default
    def _tokens(self):
        return tuple(normalize(self.raw))

    def encode(self, model: WordVectorModel) -> Encoding:
        """Average of the vectors of the in-vocabulary tokens

        :raises NoTokens: the utterance normalizes to nothing
        :raises AllTokensOutOfVocabulary: no token has a vector
        """
        cached = self._encodings.get(model.name)
        if cached is not None:
            return cached

        if not self.tokens:
            raise NoTokens(self.raw)

        vectors = []
        missing = []
        for token in self.tokens:
            vector = model.lookup(token)
            if vector is None:
                missing.append(token)
            else:
                vectors.append(vector)

        if not vectors:
            raise AllTokensOutOfVocabulary(self.raw, model.name)
        if missing:
            logger.debug(
                "%s: skipped out-of-vocabulary tokens %s",
                model.name,
                LazyJoin(", ", missing),
            )

        encoding = Encoding(average(vectors), len(missing), model.name)
        self._encodings[model.name] = encoding
        return encoding


UtteranceLike = Union[Utterance, str]


def as_utterance(u: UtteranceLike) -> Utterance:
    return u if isinstance(u, Utterance) else Utterance(u)


def encode(u: UtteranceLike, model: WordVectorModel) -> Encoding:
    return as_utterance(u).encode(model)


def _wake_pattern(wake_phrase: str) -> str:
    words = wake_phrase.split()
    if not words:
        raise ValueError("the wake phrase is empty")
    # the phrase must end on a word boundary
    return r"\s+".join(re.escape(word) for word in words) + r"(?![^\W_])"


def perturb_duplicate_wake(
    u: UtteranceLike, wake_phrase: str, repetitions: int = 2
) -> Utterance:
    """Repeats the wake phrase at the start of an utterance

    ``OK Google, what time is it?`` becomes
    ``OK Google OK Google, what time is it?`` with two repetitions.
    """
    u = as_utterance(u)
    if repetitions < 2:
        raise ValueError(f"repetitions must be at least 2, got {repetitions}")

    text = u.raw.lstrip()
    match = re.match(_wake_pattern(wake_phrase), text, re.IGNORECASE)
    if match is None:
        raise WakePhraseAbsent(u.raw, wake_phrase)

    prefix = " ".join([wake_phrase] * repetitions)
    return Utterance(prefix + text[match.end() :])


def strip_wake(u: UtteranceLike, wake_phrase: str) -> Utterance:
    """Removes any leading repetition of the wake phrase

    Punctuation and whitespace around the removed phrases go as well; the
    utterance is returned unchanged when it does not start with the phrase.
    """
    u = as_utterance(u)
    separator = r"[\W_]*"
    pattern = rf"^(?:{separator}{_wake_pattern(wake_phrase)})+{separator}"
    stripped = re.sub(pattern, "", u.raw, count=1, flags=re.IGNORECASE)
    if stripped == u.raw:
        return u
    return Utterance(stripped)
