import sys
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence

from dialogtest.agents import AgentSpec
from dialogtest.context import DialogContext, builder
from dialogtest.oracles import SemanticOracle
from dialogtest.text.wordvec import ModelCatalog, WordVectorModel

STUB_AGENT = Path(__file__).parents[1] / "agents" / "stub_agent.py"

GREETINGS: Dict[str, List[float]] = {
    "hi": [1.0, 0.0],
    "hello": [0.8, 0.6],
    "a": [1.0, 0.0],
    "b": [0.0, 1.0],
}
"""Hand-built model: cosine("hi", "hello") = 0.8, "a" and "b" are orthogonal"""


def _axis(dim: int, ix: int) -> List[float]:
    vector = [0.0] * dim
    vector[ix] = 1.0
    return vector


def _on_axis(words: str, ix: int, dim: int = 3) -> Dict[str, List[float]]:
    return {word: _axis(dim, ix) for word in words.split()}


WEATHER_MOVIE: Dict[str, List[float]] = {
    **_on_axis("it's hot today isn't it cold sunny weather", 0),
    **_on_axis("what time is six a m where the do you know will be on alarm", 1),
    **_on_axis(
        "please tell me your favorite movie genre cinema playing aired friday night",
        2,
    ),
}
"""Weather, time and movie tokens live in orthogonal subspaces"""


def make_model(entries: Mapping[str, Sequence[float]], name: str = "fixture"):
    return WordVectorModel.from_mapping(name, entries)


def make_context(model_id: str = "fixture", **values) -> DialogContext:
    return builder().build(model_id=model_id, **values)


def make_oracle(*models: WordVectorModel) -> SemanticOracle:
    return SemanticOracle(ModelCatalog(models))


def write_lines(path: Path, lines: Iterable[str]) -> Path:
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return path


def stub_agent(mode: str, *args: str, timeout: float = 5.0, state=False):
    """A subprocess agent running the stub script in the given mode"""
    return AgentSpec.subprocess(
        [sys.executable, str(STUB_AGENT), "--mode", mode, *args],
        supports_state=state,
        response_timeout=timeout,
    )
