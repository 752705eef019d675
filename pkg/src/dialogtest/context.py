"""The test environment in which dialogs are run and judged"""

import math
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional, Union

import attrs
from attrs import field, frozen

from dialogtest.errors import (
    InvalidMaxTurns,
    InvalidRate,
    InvalidThreshold,
    MissingModel,
)

DEFAULT_STRATEGY = "avg-embedding-cosine"


def _frozen_paths(paths: Mapping[str, Union[str, Path]]) -> Mapping[str, Path]:
    return MappingProxyType({key: Path(value) for key, value in paths.items()})


def _check_threshold(name: str, value: float):
    if not (-1.0 <= value <= 1.0) or math.isnan(value):
        raise InvalidThreshold(value, name)


@frozen
class DialogContext:
    """Dialog parameters bound for a test

    Contexts are immutable and compared field by field. Use
    :py:func:`builder` to create one.
    """

    model_id: str
    """Identifier of the word-vector model used for comparisons"""

    strategy_id: str = DEFAULT_STRATEGY
    """Identifier of the similarity strategy"""

    equivalence_threshold: float = 0.5
    """Minimum similarity for two utterances to be equivalent"""

    relevance_threshold: float = 0.3
    """Minimum similarity of a response with the user turn it answers"""

    words_per_second: float = 2.5
    """Pacing metadata, attached to reports; never changes a verdict"""

    allow_confirmations: bool = True
    """Whether the agent may ask for a confirmation"""

    wake_phrase: Optional[str] = None
    """Phrase that starts an interaction, e.g. "OK Google" """

    dataset_paths: Mapping[str, Path] = field(
        factory=dict, converter=_frozen_paths, hash=False
    )
    """Word-vector files, by model identifier"""

    max_turns: int = 50
    """Maximum number of exchanges in a session"""

    def __attrs_post_init__(self):
        if not self.model_id:
            raise MissingModel()
        _check_threshold("equivalence_threshold", self.equivalence_threshold)
        _check_threshold("relevance_threshold", self.relevance_threshold)
        if not (self.words_per_second > 0) or math.isinf(self.words_per_second):
            raise InvalidRate(self.words_per_second)
        if isinstance(self.max_turns, bool) or self.max_turns < 1:
            raise InvalidMaxTurns(self.max_turns)

    def evolve(self, **changes) -> "DialogContext":
        """Returns a copy of the context with some fields changed"""
        return attrs.evolve(self, **changes)

    def snapshot(self) -> Dict[str, Any]:
        """A plain dictionary view of the context (for reports)"""
        values = attrs.asdict(self)
        values["dataset_paths"] = {
            key: str(path) for key, path in self.dataset_paths.items()
        }
        return values


class ContextBuilder:
    """Builds a :py:class:`DialogContext`, one parameter at a time

    Every setter returns the builder; values are only validated by
    :py:meth:`build`.
    """

    def __init__(self):
        self._values: Dict[str, Any] = {}
        self._datasets: Dict[str, Path] = {}

    def _set(self, name: str, value: Any) -> "ContextBuilder":
        self._values[name] = value
        return self

    def with_model(self, model_id: str):
        return self._set("model_id", model_id)

    def with_strategy(self, strategy_id: str):
        return self._set("strategy_id", strategy_id)

    def with_threshold(self, threshold: float):
        return self._set("equivalence_threshold", threshold)

    def with_relevance_threshold(self, threshold: float):
        return self._set("relevance_threshold", threshold)

    def with_words_per_second(self, rate: float):
        return self._set("words_per_second", rate)

    def with_confirmations(self, allow: bool):
        return self._set("allow_confirmations", allow)

    def with_wake_phrase(self, phrase: Optional[str]):
        return self._set("wake_phrase", phrase)

    def with_dataset(self, model_id: str, path: Union[str, Path]):
        self._datasets[model_id] = Path(path)
        return self

    def with_max_turns(self, max_turns: int):
        return self._set("max_turns", max_turns)

    def build(self, **values) -> DialogContext:
        """Creates the context

        Keyword arguments take precedence over the values set so far, so
        that ``builder().build(model_id="glove")`` is valid.

        :raises MissingModel: no model identifier was given
        :raises InvalidThreshold: a threshold lies outside [-1, 1]
        :raises InvalidRate: the words per second are not positive
        :raises InvalidMaxTurns: the maximum number of turns is below 1
        """
        values = {**self._values, **values}
        if "model" in values:
            values["model_id"] = values.pop("model")
        if not values.get("model_id"):
            raise MissingModel()
        datasets = {**self._datasets, **values.pop("dataset_paths", {})}
        return DialogContext(dataset_paths=datasets, **values)


def builder() -> ContextBuilder:
    return ContextBuilder()
