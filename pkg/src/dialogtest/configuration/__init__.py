"""Layered configuration of dialog contexts

Context values come from three layers: the documented defaults, the
``context.<field> = <value>`` lines of a suite file and the command line.
Layers are merged with omegaconf, later layers winning.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Union

import click
import omegaconf
from omegaconf import DictConfig, OmegaConf

from dialogtest.context import DEFAULT_STRATEGY, ContextBuilder, DialogContext


@dataclass
class ContextConfig:
    """Structured schema of a dialog context"""

    model_id: Optional[str] = None
    strategy_id: str = DEFAULT_STRATEGY
    equivalence_threshold: float = 0.5
    relevance_threshold: float = 0.3
    words_per_second: float = 2.5
    allow_confirmations: bool = True
    wake_phrase: Optional[str] = None
    dataset_paths: Dict[str, str] = field(default_factory=dict)
    max_turns: int = 50


Layer = Union[DictConfig, Dict, List[str]]


def schema() -> DictConfig:
    return OmegaConf.structured(ContextConfig)


def as_layer(layer: Layer) -> DictConfig:
    """Converts a dot-list (``["field=value", ...]``) or a dict to a layer"""
    if isinstance(layer, DictConfig):
        return layer
    if isinstance(layer, list):
        return OmegaConf.from_dotlist(layer)
    return OmegaConf.create(layer)


def merge(*layers: Layer) -> DictConfig:
    """Merges layers over the schema

    :raises omegaconf.errors.OmegaConfBaseException: unknown keys or values
        of the wrong type
    """
    return OmegaConf.merge(schema(), *(as_layer(layer) for layer in layers))


def context_layer(context: DialogContext) -> DictConfig:
    return OmegaConf.create(context.snapshot())


def build_context(conf: DictConfig) -> DialogContext:
    """Builds a context from a merged configuration"""
    values = OmegaConf.to_container(conf, resolve=True)
    builder = ContextBuilder()
    for model_id, path in values.pop("dataset_paths").items():
        builder.with_dataset(model_id, path)
    return builder.build(**values)


def resolve_context(*layers: Layer) -> DialogContext:
    return build_context(merge(*layers))


def override_context(
    context: DialogContext,
    overrides: Iterable[str],
    pinned: Iterable[str] = (),
) -> DialogContext:
    """Applies ``field=value`` overrides to a context

    :param pinned: fields that overrides cannot change (set on the command
        line)
    """
    pinned = set(pinned)
    kept = [
        item
        for item in overrides
        if item.split("=", 1)[0].strip().split(".")[0] not in pinned
    ]
    if not kept:
        return context
    return resolve_context(context_layer(context), kept)


class DotListParamType(click.ParamType):
    """A ``field=value`` command line parameter checked against the schema"""

    name = "field=value"

    def convert(self, value: str, param, ctx):
        if "=" not in value:
            self.fail(f"{value!r} is not of the form field=value", param, ctx)
        try:
            merge([value])
        except omegaconf.errors.OmegaConfBaseException as e:
            self.fail(f"invalid context override {value!r}: {e}", param, ctx)
        return value
