from collections import deque
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from attrs import field, frozen

END = "END"
"""The final state of every dialog automaton"""


@frozen(order=True)
class Transition:
    source: str
    label: str
    target: str


@frozen
class InputSequence:
    """User inputs, and the state they lead to from the initial state"""

    labels: Tuple[str, ...]
    terminal: str


def _frozen_mapping(mapping: Mapping[str, str]) -> Mapping[str, str]:
    return MappingProxyType(dict(mapping))


@frozen
class DialogAutomaton:
    """A deterministic finite-state model of a scripted dialog

    States are prompts waiting for an input; transitions are the inputs the
    dialog accepts in each state.
    """

    states: Tuple[str, ...]
    """State identifiers, in document order (``END`` last)"""

    initial: str
    transitions: Tuple[Transition, ...]

    prompts: Mapping[str, str] = field(factory=dict, converter=_frozen_mapping)
    """Prompt played when entering a state"""

    filled_prompts: Mapping[str, str] = field(factory=dict, converter=_frozen_mapping)
    """Prompt played once the input of a state has been accepted"""

    _outgoing: Dict[str, Tuple[Transition, ...]] = field(
        init=False, eq=False, repr=False
    )

    @_outgoing.default
    def _index(self):
        outgoing: Dict[str, List[Transition]] = {state: [] for state in self.states}
        for transition in self.transitions:
            outgoing.setdefault(transition.source, []).append(transition)
        return {
            state: tuple(sorted(transitions, key=lambda t: t.label))
            for state, transitions in outgoing.items()
        }

    def __attrs_post_init__(self):
        states = set(self.states)
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial} is not a state")
        seen = set()
        for t in self.transitions:
            if t.source not in states or t.target not in states:
                raise ValueError(f"{t} has an endpoint outside the states")
            if not t.label:
                raise ValueError(f"{t} has an empty label")
            if (t.source, t.label) in seen:
                raise ValueError(f"{t.source} has two transitions on {t.label!r}")
            seen.add((t.source, t.label))

    def outgoing(self, state: str) -> Tuple[Transition, ...]:
        """Transitions leaving a state, ordered by label"""
        return self._outgoing.get(state, ())

    def step(self, state: str, label: str) -> Optional[str]:
        for transition in self.outgoing(state):
            if transition.label == label:
                return transition.target
        return None

    def replay(self, labels: Iterable[str]) -> str:
        """Returns the state reached from the initial state

        :raises KeyError: a label is not accepted on the way
        """
        state = self.initial
        for label in labels:
            target = self.step(state, label)
            if target is None:
                raise KeyError(f"no transition on {label!r} from {state}")
            state = target
        return state

    def path_transitions(self, labels: Sequence[str]) -> List[Transition]:
        """The transitions taken when replaying labels"""
        state = self.initial
        path = []
        for label in labels:
            transition = next(
                (t for t in self.outgoing(state) if t.label == label), None
            )
            if transition is None:
                raise KeyError(f"no transition on {label!r} from {state}")
            path.append(transition)
            state = transition.target
        return path

    def is_final(self, state: str) -> bool:
        """END, or a state without any outgoing transition"""
        return state == END or not self.outgoing(state)

    def reachable_states(self) -> List[str]:
        """States reachable from the initial state, in breadth-first order"""
        order = [self.initial]
        seen: Set[str] = {self.initial}
        queue = deque(order)
        while queue:
            state = queue.popleft()
            for transition in self.outgoing(state):
                if transition.target not in seen:
                    seen.add(transition.target)
                    order.append(transition.target)
                    queue.append(transition.target)
        return order

    def reachable_transitions(self) -> List[Transition]:
        return [t for state in self.reachable_states() for t in self.outgoing(state)]

    def unreachable_states(self) -> List[str]:
        reachable = set(self.reachable_states())
        return [state for state in self.states if state not in reachable]
