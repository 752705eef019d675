# Test oracles: semantic equivalence, state predicates and breakdowns

from typing import Optional

from dialogtest.context import DialogContext
from dialogtest.oracles.breakdown import (  # noqa: F401
    Breakdown,
    BreakdownCues,
    BreakdownLabel,
    classify_breakdown as _classify_breakdown,
)
from dialogtest.oracles.state import (  # noqa: F401
    Matcher,
    assert_state,
    equals,
    exists,
)
from dialogtest.oracles.strategies import (  # noqa: F401
    AverageEmbeddingCosine,
    FunctionStrategy,
    JaccardTokens,
    Scorer,
    SimilarityScore,
    SimilarityStrategy,
    StrategyRegistry,
)
from dialogtest.oracles.verdict import Verdict, VerdictKind  # noqa: F401
from dialogtest.text.utterance import UtteranceLike, as_utterance
from dialogtest.text.wordvec import ModelCatalog
from dialogtest.utils.logging import EasyLogger


class SemanticOracle(EasyLogger):
    """Compares utterances with the strategy and model named by a context

    Errors (unknown model or strategy, utterances that cannot be encoded)
    are raised, never turned into failed verdicts.
    """

    def __init__(
        self,
        catalog: Optional[ModelCatalog] = None,
        registry: Optional[StrategyRegistry] = None,
        cues: BreakdownCues = BreakdownCues(),
    ):
        self.catalog = catalog if catalog is not None else ModelCatalog()
        if registry is None:
            registry = StrategyRegistry.default()
        self.registry = registry
        self.cues = cues

    def score(
        self, a: UtteranceLike, b: UtteranceLike, ctx: DialogContext
    ) -> SimilarityScore:
        strategy = self.registry.get(ctx.strategy_id)
        return strategy.score(as_utterance(a), as_utterance(b), ctx, self.catalog)

    def similarity(self, a: UtteranceLike, b: UtteranceLike, ctx: DialogContext):
        """Similarity of two utterances

        :raises UnknownStrategy: the context names an unregistered strategy
        :raises UnknownModel: the model is neither loaded nor declared
        :raises NoTokens: an utterance normalizes to nothing
        :raises AllTokensOutOfVocabulary: no token of an utterance is known
        """
        return self.score(a, b, ctx).value

    def assert_equivalent(
        self,
        actual: UtteranceLike,
        expected: UtteranceLike,
        ctx: DialogContext,
        message: str = "",
        threshold: Optional[float] = None,
    ) -> Verdict:
        """Checks that the similarity reaches the equivalence threshold

        :param threshold: replaces the threshold of the context
        """
        threshold = ctx.equivalence_threshold if threshold is None else threshold
        result = self.score(actual, expected, ctx)
        passed = result.value >= threshold
        return Verdict(
            passed,
            result.value,
            threshold,
            ctx.strategy_id,
            message="" if passed else message,
            detail={
                "skipped_actual": result.skipped[0],
                "skipped_expected": result.skipped[1],
            },
        )

    def classify_breakdown(
        self, transcript, response: UtteranceLike, ctx: DialogContext
    ) -> BreakdownLabel:
        return _classify_breakdown(
            transcript,
            as_utterance(response),
            ctx,
            lambda a, b: self.similarity(a, b, ctx),
            self.cues,
        )

    def assert_no_breakdown(
        self,
        transcript,
        response: UtteranceLike,
        ctx: DialogContext,
        message: str = "",
    ) -> Verdict:
        label = self.classify_breakdown(transcript, response, ctx)
        passed = not label.is_breakdown
        return Verdict(
            passed,
            1.0 if passed else 0.0,
            1.0,
            ctx.strategy_id,
            message="" if passed else message or label.label.value,
            detail={"label": label.label.value, **label.evidence},
            kind=VerdictKind.BREAKDOWN,
        )


_default_oracle: Optional[SemanticOracle] = None


def default_oracle() -> SemanticOracle:
    """The oracle used by the module-level functions"""
    global _default_oracle
    if _default_oracle is None:
        _default_oracle = SemanticOracle()
    return _default_oracle


def similarity(a: UtteranceLike, b: UtteranceLike, ctx: DialogContext) -> float:
    return default_oracle().similarity(a, b, ctx)


def assert_equivalent(
    actual: UtteranceLike,
    expected: UtteranceLike,
    ctx: DialogContext,
    message: str = "",
) -> Verdict:
    return default_oracle().assert_equivalent(actual, expected, ctx, message)


def classify_breakdown(transcript, response: UtteranceLike, ctx: DialogContext):
    return default_oracle().classify_breakdown(transcript, response, ctx)


def register_strategy(strategy: Scorer) -> Scorer:
    """Makes a strategy available to contexts, by its identifier

    :raises DuplicateStrategyId: the identifier is already registered
    """
    return default_oracle().registry.register(strategy)
