# Similarity strategies used by the semantic oracles

import threading
from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterator, Protocol, Tuple

from attrs import frozen
from experimaestro import Config, Param

from dialogtest.context import DEFAULT_STRATEGY, DialogContext
from dialogtest.errors import DuplicateStrategyId, NoTokens, UnknownStrategy
from dialogtest.text.utterance import Utterance
from dialogtest.text.wordvec import ModelCatalog, cosine
from dialogtest.utils.logging import EasyLogger


@frozen
class SimilarityScore:
    """The result of a comparison between two utterances"""

    value: float
    """The similarity, in [-1, 1] for the built-in strategies"""

    skipped: Tuple[int, int] = (0, 0)
    """Number of out-of-vocabulary tokens on each side"""


class Scorer(Protocol):
    """Anything that can be registered as a similarity strategy"""

    id: str

    def score(
        self, a: Utterance, b: Utterance, ctx: DialogContext, models: ModelCatalog
    ) -> SimilarityScore:
        ...


class SimilarityStrategy(Config, EasyLogger, ABC):
    """Base class for similarity strategies

    A strategy compares two utterances within a dialog context; the context
    names the model to use, and the catalog resolves it.
    """

    id: Param[str]
    """Identifier used by dialog contexts to select the strategy"""

    @abstractmethod
    def score(
        self, a: Utterance, b: Utterance, ctx: DialogContext, models: ModelCatalog
    ) -> SimilarityScore:
        ...


class AverageEmbeddingCosine(SimilarityStrategy):
    """Cosine of the averaged word vectors of the two utterances

    Out-of-vocabulary tokens are skipped (and counted); an utterance with no
    known token is an error.
    """

    id: Param[str] = DEFAULT_STRATEGY

    def score(self, a, b, ctx, models):
        model = models.get(ctx.model_id, ctx.dataset_paths)
        encoding_a = a.encode(model)
        encoding_b = b.encode(model)
        return SimilarityScore(
            cosine(encoding_a.vector, encoding_b.vector),
            (encoding_a.skipped, encoding_b.skipped),
        )


class JaccardTokens(SimilarityStrategy):
    """Jaccard index of the normalized token sets

    Does not use any word-vector model; scores lie in [0, 1].
    """

    id: Param[str] = "jaccard-tokens"

    def score(self, a, b, ctx, models):
        for u in (a, b):
            if not u.tokens:
                raise NoTokens(u.raw)
        tokens_a, tokens_b = set(a.tokens), set(b.tokens)
        return SimilarityScore(
            len(tokens_a & tokens_b) / len(tokens_a | tokens_b)
        )


@frozen
class FunctionStrategy:
    """Wraps a function ``(a, b, ctx) -> float`` as a strategy"""

    id: str
    function: Callable[[Utterance, Utterance, DialogContext], float]

    def score(self, a, b, ctx, models):
        return SimilarityScore(float(self.function(a, b, ctx)))


class StrategyRegistry:
    """Strategies by identifier

    Strategies are registered during setup and read during runs.
    """

    def __init__(self):
        self._strategies: Dict[str, Scorer] = {}
        self._lock = threading.Lock()

    @staticmethod
    def default() -> "StrategyRegistry":
        """A registry holding the built-in strategy"""
        registry = StrategyRegistry()
        registry.register(AverageEmbeddingCosine().instance())
        return registry

    def register(self, strategy: Scorer) -> Scorer:
        """Registers a strategy

        :raises DuplicateStrategyId: a strategy already uses the identifier
        """
        with self._lock:
            if strategy.id in self._strategies:
                raise DuplicateStrategyId(strategy.id)
            self._strategies[strategy.id] = strategy
        return strategy

    def register_function(
        self,
        strategy_id: str,
        function: Callable[[Utterance, Utterance, DialogContext], float],
    ) -> Scorer:
        return self.register(FunctionStrategy(strategy_id, function))

    def get(self, strategy_id: str) -> Scorer:
        try:
            return self._strategies[strategy_id]
        except KeyError:
            raise UnknownStrategy(strategy_id) from None

    def __contains__(self, strategy_id: str):
        return strategy_id in self._strategies

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._strategies))
