# Test generation from VoiceXML dialogs

from dialogtest.vxml.automaton import (  # noqa: F401
    END,
    DialogAutomaton,
    InputSequence,
    Transition,
)
from dialogtest.vxml.generation import (  # noqa: F401
    CoverageReport,
    coverage_report,
    emit_suite,
    generate_sequences,
)
from dialogtest.vxml.parser import parse_vxml  # noqa: F401
