"""Extraction of dialog automata from VoiceXML documents

The supported subset is made of ``<vxml>``, ``<form id>``, ``<field name>``,
``<prompt>``, ``<option>``, ``<filled>``, ``<goto next="#form">`` and
``<exit/>``. Each field is a state; each option of a field is a transition.
An option leads to the destination of the first ``<goto>``/``<exit/>`` found
in the option, then in the field (or its ``<filled>``), and otherwise to the
next field of the form. After the last field, a ``<goto>``/``<exit/>``
following the fields of the form applies, and ``END`` otherwise.

The ``<nomatch>``, ``<noinput>`` and ``<help>`` handlers are ignored; any
other element is rejected.
"""

from typing import Dict, List, Optional, Tuple, Union

from attrs import define, field
from lxml import etree

from dialogtest.errors import (
    DanglingGoto,
    MalformedMarkup,
    NondeterministicField,
    UnsupportedElement,
)
from dialogtest.utils.logging import easylog
from dialogtest.vxml.automaton import END, DialogAutomaton, Transition

logger = easylog()

IGNORED = {"nomatch", "noinput", "help"}
JUMPS = {"goto", "exit"}


@define
class _Jump:
    """A ``<goto>`` (to the first field of a form) or an ``<exit/>``"""

    form: Optional[str]
    """Target form, None for an exit"""


@define
class _Field:
    name: str
    prompt: str = ""
    filled_prompt: str = ""
    options: List[Tuple[str, Optional[_Jump]]] = field(factory=list)
    jump: Optional[_Jump] = None


@define
class _Form:
    id: str
    fields: List[_Field] = field(factory=list)
    jump: Optional[_Jump] = None


def _tag(element) -> Optional[str]:
    """Local name of an element, None for processing instructions"""
    if not isinstance(element.tag, str):
        return None
    return etree.QName(element).localname


def _children(element):
    for child in element:
        tag = _tag(child)
        if tag is not None and tag not in IGNORED:
            yield tag, child


def _text(element) -> str:
    return " ".join("".join(element.itertext()).split())


def _jump(tag: str, element) -> _Jump:
    if tag == "exit":
        return _Jump(None)
    target = element.get("next", "")
    if not target.startswith("#") or len(target) < 2:
        raise MalformedMarkup(f"unsupported goto target {target!r}")
    return _Jump(target[1:])


def _set_jump(current: Optional[_Jump], tag: str, element, where: str) -> _Jump:
    if current is not None:
        raise MalformedMarkup(f"more than one goto/exit in {where}")
    return _jump(tag, element)


def _parse_option(element, where: str) -> Tuple[str, Optional[_Jump]]:
    label = _text(element) or " ".join(element.get("value", "").split())
    if not label:
        raise MalformedMarkup(f"empty option in {where}")
    jump = None
    for tag, child in _children(element):
        if tag not in JUMPS:
            raise UnsupportedElement(tag)
        jump = _set_jump(jump, tag, child, where)
    return label, jump


def _parse_filled(element, field_: _Field, where: str):
    prompts = []
    for tag, child in _children(element):
        if tag == "prompt":
            prompts.append(_text(child))
        elif tag in JUMPS:
            field_.jump = _set_jump(field_.jump, tag, child, where)
        else:
            raise UnsupportedElement(tag)
    field_.filled_prompt = " ".join(p for p in prompts if p)


def _parse_field(element, form_id: str) -> _Field:
    name = element.get("name")
    if not name:
        raise MalformedMarkup(f"a field of form {form_id} has no name")
    where = f"{form_id}.{name}"
    field_ = _Field(name)
    prompts = []
    labels = set()
    for tag, child in _children(element):
        if tag == "prompt":
            prompts.append(_text(child))
        elif tag == "option":
            label, jump = _parse_option(child, where)
            if label in labels:
                raise NondeterministicField(where, label)
            labels.add(label)
            field_.options.append((label, jump))
        elif tag == "filled":
            _parse_filled(child, field_, where)
        elif tag in JUMPS:
            field_.jump = _set_jump(field_.jump, tag, child, where)
        else:
            raise UnsupportedElement(tag)
    field_.prompt = " ".join(p for p in prompts if p)
    return field_


def _parse_form(element) -> _Form:
    form_id = element.get("id")
    if not form_id:
        raise MalformedMarkup("a form has no id")
    form = _Form(form_id)
    names = set()
    for tag, child in _children(element):
        if tag == "field":
            if form.jump is not None:
                raise MalformedMarkup(f"form {form_id}: field after a goto/exit")
            field_ = _parse_field(child, form_id)
            if field_.name in names:
                raise MalformedMarkup(f"form {form_id}: duplicate field {field_.name}")
            names.add(field_.name)
            form.fields.append(field_)
        elif tag in JUMPS:
            form.jump = _set_jump(form.jump, tag, child, f"form {form_id}")
        else:
            raise UnsupportedElement(tag)
    if not form.fields:
        raise MalformedMarkup(f"form {form_id} has no field")
    return form


def _parse_tree(doc: Union[str, bytes]):
    if isinstance(doc, str):
        doc = doc.encode("utf-8")
    parser = etree.XMLParser(
        remove_comments=True, resolve_entities=False, no_network=True
    )
    try:
        return etree.fromstring(doc, parser)
    except etree.XMLSyntaxError as e:
        raise MalformedMarkup(str(e))


def parse_vxml(doc: Union[str, bytes]) -> DialogAutomaton:
    """Builds the automaton of a VoiceXML document

    :raises MalformedMarkup: the document is not well-formed, or misses a
        required attribute
    :raises UnsupportedElement: an element lies outside the supported subset
    :raises DanglingGoto: a goto names a form that does not exist
    :raises NondeterministicField: a field has two identical options
    """
    root = _parse_tree(doc)
    if _tag(root) != "vxml":
        raise MalformedMarkup(f"expected a <vxml> root, got <{_tag(root)}>")

    forms: Dict[str, _Form] = {}
    for tag, child in _children(root):
        if tag != "form":
            raise UnsupportedElement(tag)
        form = _parse_form(child)
        if form.id in forms:
            raise MalformedMarkup(f"duplicate form id {form.id}")
        forms[form.id] = form
    if not forms:
        raise MalformedMarkup("the document has no form")

    def state(form: _Form, field_: _Field) -> str:
        return f"{form.id}.{field_.name}"

    def destination(jump: _Jump) -> str:
        if jump.form is None:
            return END
        if jump.form not in forms:
            raise DanglingGoto(jump.form)
        target = forms[jump.form]
        return state(target, target.fields[0])

    states: List[str] = []
    transitions: List[Transition] = []
    prompts: Dict[str, str] = {}
    filled_prompts: Dict[str, str] = {}

    for form in forms.values():
        for ix, field_ in enumerate(form.fields):
            source = state(form, field_)
            states.append(source)
            if field_.prompt:
                prompts[source] = field_.prompt
            if field_.filled_prompt:
                filled_prompts[source] = field_.filled_prompt

            if field_.jump is not None:
                default = destination(field_.jump)
            elif ix + 1 < len(form.fields):
                default = state(form, form.fields[ix + 1])
            elif form.jump is not None:
                default = destination(form.jump)
            else:
                default = END

            for label, jump in field_.options:
                target = destination(jump) if jump is not None else default
                transitions.append(Transition(source, label, target))

        # Checks form-level gotos even when no option uses them
        if form.jump is not None:
            destination(form.jump)

    first = next(iter(forms.values()))
    automaton = DialogAutomaton(
        tuple(states) + (END,),
        state(first, first.fields[0]),
        tuple(transitions),
        prompts,
        filled_prompts,
    )
    logger.debug(
        "Parsed %d states and %d transitions",
        len(automaton.states),
        len(automaton.transitions),
    )
    return automaton
