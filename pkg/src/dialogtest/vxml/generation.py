"""Transition-covering generation of user inputs"""

from collections import Counter, deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from attrs import frozen

from dialogtest.suites.cases import ExpectEquivalent, Say, TestCase, TestSuite
from dialogtest.suites.parser import dump_suite
from dialogtest.utils.logging import easylog
from dialogtest.vxml.automaton import DialogAutomaton, InputSequence, Transition

logger = easylog()

TRANSITION_COVERAGE = "transition"


def _shortest_path(
    automaton: DialogAutomaton,
    start: str,
    is_goal,
    usable=lambda transition: True,
) -> Optional[List[Transition]]:
    """Breadth-first search, exploring transitions by label"""
    if is_goal(start):
        return []
    parents: Dict[str, Tuple[str, Transition]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for transition in automaton.outgoing(state):
            if transition.target in seen or not usable(transition):
                continue
            seen.add(transition.target)
            parents[transition.target] = (state, transition)
            if is_goal(transition.target):
                path = []
                node = transition.target
                while node != start:
                    node, step = parents[node]
                    path.append(step)
                return path[::-1]
            queue.append(transition.target)
    return None


def generate_sequences(
    automaton: DialogAutomaton,
    coverage: str = TRANSITION_COVERAGE,
    loop_bound: int = 1,
) -> List[InputSequence]:
    """Input sequences that exercise every reachable transition

    Each uncovered transition (in breadth-first order, by label) yields one
    sequence: the shortest path to its source, the transition, and the
    shortest completion to ``END`` or a state without outgoing transition.
    No transition is used more than ``loop_bound + 1`` times in a sequence;
    when the bound leaves no completion, the sequence stops after the
    transition.

    The result is deterministic and free of duplicates.
    """
    if coverage != TRANSITION_COVERAGE:
        raise ValueError(f"unsupported coverage criterion {coverage!r}")
    if loop_bound < 0:
        raise ValueError(f"loop_bound must be non-negative, got {loop_bound}")

    unreachable = automaton.unreachable_states()
    if unreachable:
        logger.warning("Unreachable states: %s", ", ".join(unreachable))
    if not automaton.outgoing(automaton.initial):
        logger.warning(
            "The initial state %s has no outgoing transition", automaton.initial
        )
        return []

    max_uses = loop_bound + 1
    covered = set()
    sequences: List[InputSequence] = []
    seen_labels = set()

    for transition in automaton.reachable_transitions():
        if transition in covered:
            continue

        prefix = _shortest_path(
            automaton, automaton.initial, lambda s: s == transition.source
        )
        path = prefix + [transition]
        uses = Counter(path)
        completion = _shortest_path(
            automaton,
            transition.target,
            automaton.is_final,
            lambda t: uses[t] < max_uses,
        )
        path.extend(completion or [])

        covered.update(path)
        labels = tuple(t.label for t in path)
        if labels not in seen_labels:
            seen_labels.add(labels)
            sequences.append(InputSequence(labels, path[-1].target))

    return sequences


def emit_suite(sequences: Iterable[InputSequence], automaton: DialogAutomaton) -> str:
    """Writes one test case ``path-<k>`` per sequence

    Each input is followed by an expectation on the agent's answer when the
    automaton knows it: the prompt played once the input is accepted, or
    else the prompt of the state reached.
    """
    cases = []
    for k, sequence in enumerate(sequences, start=1):
        steps = []
        state = automaton.initial
        for label in sequence.labels:
            target = automaton.step(state, label)
            steps.append(Say(label))
            expected = automaton.filled_prompts.get(state)
            expected = expected or automaton.prompts.get(target) or ""
            # one line per step
            expected = " ".join(expected.split())
            if expected:
                steps.append(ExpectEquivalent(expected))
            state = target
        cases.append(TestCase(f"path-{k}", tuple(steps)))
    return dump_suite(TestSuite(tuple(cases)))


@frozen
class CoverageReport:
    reachable_states: Tuple[str, ...]
    unreachable_states: Tuple[str, ...]
    reachable_transitions: Tuple[Transition, ...]
    covered_transitions: Tuple[Transition, ...]

    @property
    def uncovered_transitions(self) -> Tuple[Transition, ...]:
        covered = set(self.covered_transitions)
        return tuple(t for t in self.reachable_transitions if t not in covered)

    @property
    def ratio(self) -> float:
        """Share of reachable transitions covered (1 if there is none)"""
        if not self.reachable_transitions:
            return 1.0
        covered = len(self.reachable_transitions) - len(self.uncovered_transitions)
        return covered / len(self.reachable_transitions)

    def summary(self) -> str:
        covered = len(self.reachable_transitions) - len(self.uncovered_transitions)
        return (
            f"{covered}/{len(self.reachable_transitions)} transitions covered, "
            f"{len(self.reachable_states)} reachable states, "
            f"{len(self.unreachable_states)} unreachable"
        )


def coverage_report(
    automaton: DialogAutomaton, sequences: Sequence[InputSequence]
) -> CoverageReport:
    """Replays the sequences and measures the transitions they exercise

    :raises KeyError: a sequence does not replay on the automaton
    """
    covered = set()
    for sequence in sequences:
        covered.update(automaton.path_transitions(sequence.labels))
    return CoverageReport(
        tuple(automaton.reachable_states()),
        tuple(automaton.unreachable_states()),
        tuple(automaton.reachable_transitions()),
        tuple(sorted(covered)),
    )
