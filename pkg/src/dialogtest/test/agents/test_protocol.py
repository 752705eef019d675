import pytest
from hypothesis import given
from hypothesis import strategies as st

from dialogtest.agents.protocol import (
    frame,
    parse_scalar,
    parse_state,
    serialize_state,
    unframe,
)
from dialogtest.errors import MalformedState


def test_frame():
    assert frame("U", "what time is it?") == "U what time is it?"
    assert frame("U", "two\nlines") == "U two lines"
    assert frame("Q") == "Q"
    assert unframe("A It is six", "A") == "It is six"
    assert unframe("A", "A") == ""
    assert unframe("AB c", "A") is None
    assert unframe("S a=1", "A") is None


@pytest.mark.parametrize(
    "text,value",
    [
        ("true", True),
        ("false", False),
        ("3", 3),
        ("-12", -12),
        ("0.5", 0.5),
        ("1e3", 1000.0),
        ("06:00", "06:00"),
        ("007", "007"),
        ("True", "True"),
        ("", ""),
    ],
)
def test_parse_scalar(text, value):
    parsed = parse_scalar(text)
    assert parsed == value
    assert type(parsed) is type(value)


def test_parse_state():
    assert parse_state("alarm.time=06:00;alarm.set=true;volume=3") == {
        "alarm": {"time": "06:00", "set": True},
        "volume": 3,
    }
    assert parse_state("") == {}
    assert parse_state("a=1;") == {"a": 1}
    assert parse_state("note=x\\=y\\;z") == {"note": "x=y;z"}


def test_escaped_values():
    assert parse_state("path=C:\\\\dir") == {"path": "C:\\dir"}
    assert parse_state("k=a=b") == {"k": "a=b"}


@pytest.mark.parametrize(
    "text",
    ["alarm", "alarm.=1", "=1", "a=1;a.b=2", "a.b=1;a=2", "a=1;a=2"],
)
def test_malformed_state(text):
    with pytest.raises(MalformedState):
        parse_state(text)


def test_serialize_state():
    document = {"alarm": {"time": "06:00", "set": True}, "note": "a;b=c"}
    line = serialize_state(document)
    assert line == "alarm.time=06:00;alarm.set=true;note=a\\;b\\=c"
    assert parse_state(line) == document


KEYS = st.text(st.sampled_from("abcxyz_"), min_size=1, max_size=5)
SCALARS = st.one_of(
    st.booleans(),
    st.integers(-1000, 1000),
    st.text(st.sampled_from("ab ;=\\:"), max_size=6).filter(
        lambda s: parse_scalar(s) == s and s == s.strip()
    ),
)
DOCUMENTS = st.recursive(
    st.dictionaries(KEYS, SCALARS, min_size=1, max_size=3),
    lambda children: st.dictionaries(KEYS, children, min_size=1, max_size=3),
    max_leaves=8,
)


@given(DOCUMENTS)
def test_state_documents_survive_the_wire(document):
    assert parse_state(serialize_state(document)) == document
