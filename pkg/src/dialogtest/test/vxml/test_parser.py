import pytest

from dialogtest.errors import (
    DanglingGoto,
    MalformedMarkup,
    NondeterministicField,
    UnsupportedElement,
)
from dialogtest.vxml import END, Transition, parse_vxml

ALARM_DIALOG = """\
<?xml version="1.0" encoding="UTF-8"?>
<vxml version="2.1" xmlns="http://www.w3.org/2001/vxml">
  <!-- the main menu -->
  <form id="main">
    <field name="command">
      <prompt>What can I do for you?</prompt>
      <option>set an alarm<goto next="#alarm"/></option>
      <option>what time is it</option>
      <option value="goodbye"><exit/></option>
      <nomatch>Sorry, I did not understand.</nomatch>
      <help>Ask me for the time.</help>
    </field>
    <field name="confirm">
      <prompt>It is six a.m.</prompt>
      <prompt>Anything else?</prompt>
      <option>yes<goto next="#main"/></option>
      <option>no</option>
      <filled><prompt>Goodbye</prompt><exit/></filled>
    </field>
  </form>
  <form id="alarm">
    <field name="time">
      <prompt>For what time?</prompt>
      <option>six a.m.</option>
      <option>seven a.m.</option>
      <filled><prompt>Your alarm is set</prompt></filled>
    </field>
    <goto next="#main"/>
  </form>
</vxml>
"""


def test_parse_alarm_dialog():
    automaton = parse_vxml(ALARM_DIALOG)

    assert automaton.states == ("main.command", "main.confirm", "alarm.time", END)
    assert automaton.initial == "main.command"
    assert set(automaton.transitions) == {
        Transition("main.command", "set an alarm", "alarm.time"),
        Transition("main.command", "what time is it", "main.confirm"),
        Transition("main.command", "goodbye", END),
        Transition("main.confirm", "yes", "main.command"),
        Transition("main.confirm", "no", END),
        Transition("alarm.time", "six a.m.", "main.command"),
        Transition("alarm.time", "seven a.m.", "main.command"),
    }
    assert dict(automaton.prompts) == {
        "main.command": "What can I do for you?",
        "main.confirm": "It is six a.m. Anything else?",
        "alarm.time": "For what time?",
    }
    assert dict(automaton.filled_prompts) == {
        "main.confirm": "Goodbye",
        "alarm.time": "Your alarm is set",
    }


def test_automaton_navigation():
    automaton = parse_vxml(ALARM_DIALOG.encode("utf-8"))
    assert [t.label for t in automaton.outgoing("main.command")] == [
        "goodbye",
        "set an alarm",
        "what time is it",
    ]
    assert automaton.replay(["what time is it", "no"]) == END
    assert automaton.step("main.confirm", "maybe") is None
    with pytest.raises(KeyError):
        automaton.replay(["maybe"])
    assert automaton.is_final(END)
    assert automaton.unreachable_states() == []


def test_unreachable_forms():
    automaton = parse_vxml(
        """<vxml>
          <form id="a"><field name="f"><option>x</option></field></form>
          <form id="b"><field name="g"><option>y</option></field></form>
        </vxml>"""
    )
    assert automaton.unreachable_states() == ["b.g"]


def vxml(form: str) -> str:
    return f'<vxml><form id="main">{form}</form></vxml>'


def field(content: str) -> str:
    return vxml(f"<field name='f'>{content}</field>")


INVALID_DOCUMENTS = {
    "not-well-formed": ("<vxml><form", MalformedMarkup),
    "not-vxml": ("<html/>", MalformedMarkup),
    "no-form": ("<vxml/>", MalformedMarkup),
    "no-field": ('<vxml><form id="main"/></vxml>', MalformedMarkup),
    "no-field-name": (vxml("<field><option>x</option></field>"), MalformedMarkup),
    "no-form-id": ("<vxml><form><field name='f'/></form></vxml>", MalformedMarkup),
    "duplicate-field": (vxml("<field name='f'/><field name='f'/>"), MalformedMarkup),
    "external-goto": (
        field("<option>x<goto next='other.vxml'/></option>"),
        MalformedMarkup,
    ),
    "two-exits": (field("<exit/><exit/>"), MalformedMarkup),
    "empty-option": (field("<option/>"), MalformedMarkup),
    "block": (vxml("<block>hello</block>"), UnsupportedElement),
    "grammar": (field("<grammar src='g.grxml'/>"), UnsupportedElement),
    "prompt-in-option": (
        field("<option>x<prompt>y</prompt></option>"),
        UnsupportedElement,
    ),
    "dangling-option": (
        field("<option>x<goto next='#nowhere'/></option>"),
        DanglingGoto,
    ),
    "dangling-form": (vxml("<field name='f'/><goto next='#nowhere'/>"), DanglingGoto),
    "same-option": (
        field("<option>x</option><option>x</option>"),
        NondeterministicField,
    ),
}


@pytest.mark.parametrize(
    "document,error",
    list(INVALID_DOCUMENTS.values()),
    ids=list(INVALID_DOCUMENTS),
)
def test_invalid_documents(document, error):
    with pytest.raises(error):
        parse_vxml(document)


def test_entities_are_not_resolved():
    document = (
        '<?xml version="1.0"?>'
        '<!DOCTYPE vxml [<!ENTITY secret SYSTEM "file:///etc/passwd">]>'
        '<vxml><form id="main"><field name="f">'
        "<prompt>&secret;</prompt><option>x</option>"
        "</field></form></vxml>"
    )
    automaton = parse_vxml(document)
    assert "root:" not in automaton.prompts.get("main.f", "")
