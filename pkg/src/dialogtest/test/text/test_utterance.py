import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dialogtest.errors import AllTokensOutOfVocabulary, NoTokens, WakePhraseAbsent
from dialogtest.text import (
    Utterance,
    encode,
    normalize,
    perturb_duplicate_wake,
    strip_wake,
)
from dialogtest.test.utils.utils import make_model


@pytest.mark.parametrize(
    "text,tokens",
    [
        ("What's the weather, today?", ["what's", "the", "weather", "today"]),
        ("OK Google, set an alarm!", ["ok", "google", "set", "an", "alarm"]),
        ("at 6:30", ["at", "6", "30"]),
        ("  Hello\tWORLD\n", ["hello", "world"]),
        ("", []),
        ("!?...", []),
    ],
)
def test_normalize(text, tokens):
    assert normalize(text) == tokens
    assert list(Utterance(text).tokens) == tokens


@given(st.text(st.characters(categories=("Lu", "Ll", "Nd", "Po", "Zs"))))
def test_normalize_is_idempotent(text):
    tokens = normalize(text)
    assert normalize(" ".join(tokens)) == tokens


@pytest.fixture
def model():
    return make_model({"hello": [1.0, 0.0], "world": [0.0, 1.0]}, name="tiny")


def test_encode(model):
    encoding = encode("Hello, world!", model)
    np.testing.assert_allclose(encoding.vector, [0.5, 0.5])
    assert encoding.skipped == 0
    assert encoding.model == "tiny"

    encoding = encode("hello there", model)
    np.testing.assert_allclose(encoding.vector, [1.0, 0.0])
    assert encoding.skipped == 1


def test_encode_errors(model):
    with pytest.raises(NoTokens):
        encode("?!", model)
    with pytest.raises(AllTokensOutOfVocabulary) as excinfo:
        encode("there", model)
    assert excinfo.value.model == "tiny"


def test_encode_is_cached(model):
    utterance = Utterance("hello world")
    assert utterance.encode(model) is utterance.encode(model)
    assert Utterance("hello world") == utterance


def test_perturb_duplicate_wake():
    perturbed = perturb_duplicate_wake("OK Google, what time is it?", "OK Google")
    assert perturbed.raw == "OK Google OK Google, what time is it?"

    perturbed = perturb_duplicate_wake("ok google what time", "OK Google", 3)
    assert perturbed.raw == "OK Google OK Google OK Google what time"

    with pytest.raises(WakePhraseAbsent):
        perturb_duplicate_wake("what time is it?", "OK Google")
    with pytest.raises(WakePhraseAbsent):
        perturb_duplicate_wake("OK Googleplex, hi", "OK Google")
    with pytest.raises(ValueError):
        perturb_duplicate_wake("OK Google, hi", "OK Google", 1)


def test_strip_wake():
    stripped = strip_wake("OK Google OK Google, what time is it?", "OK Google")
    assert stripped.raw == "what time is it?"

    u = Utterance("what time is it?")
    assert strip_wake(u, "OK Google") is u
    assert strip_wake("OK Googleplex", "OK Google").raw == "OK Googleplex"


WORDS = ["what", "time", "is", "it", "set", "an", "alarm", "for", "six"]


@given(
    st.lists(st.sampled_from(WORDS), min_size=1, max_size=8),
    st.sampled_from([", ", " ", "! ", " - "]),
    st.integers(2, 5),
)
def test_duplicated_wake_strips_to_the_same_request(words, separator, repetitions):
    u = Utterance("OK Google" + separator + " ".join(words))
    twin = perturb_duplicate_wake(u, "OK Google", repetitions)

    assert twin.tokens[: 2 * repetitions] == ("ok", "google") * repetitions
    assert strip_wake(twin, "OK Google").raw == strip_wake(u, "OK Google").raw
    assert strip_wake(u, "OK Google").tokens == tuple(words)
