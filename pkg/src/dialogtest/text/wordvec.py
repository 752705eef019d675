"""Pre-trained word vectors and the vector arithmetic used by the oracles"""

import os
import re
import threading
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from attrs import field, frozen
from tqdm import tqdm

from dialogtest.errors import (
    CountMismatch,
    DimensionMismatch,
    EmptyInput,
    EmptyModel,
    FileUnreadable,
    InvalidVector,
    MalformedLine,
    UnknownModel,
    ZeroVector,
)
from dialogtest.utils.logging import EasyLogger, easylog

logger = easylog()

Vector = np.ndarray
"""A one-dimensional float64 array with finite components"""

ZERO_MAGNITUDE = 1e-12
"""Vectors with a smaller norm are considered null"""

_COUNT = re.compile(r"[0-9]+")
"""Header counts (ASCII digits only)"""


class ModelFormat(str, Enum):
    W2V_TEXT = "w2v-text"
    """word2vec text format: a ``count dim`` header, then one row per token"""

    GLOVE_TEXT = "glove-text"
    """GloVe text format: one row per token, no header"""


def as_vector(values: Union[Sequence[float], np.ndarray]) -> Vector:
    """Converts values into a (read-only) vector, checking its invariants"""
    vector = np.array(values, dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] < 1:
        raise InvalidVector(f"expected a non-empty 1-d vector, got {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidVector("vector components must be finite")
    vector.setflags(write=False)
    return vector


@frozen(eq=False)
class WordVectorModel:
    """An immutable table mapping tokens to vectors of a fixed dimension

    Tokens are stored exactly as read; callers normalize before looking up.
    """

    name: str
    """Model identifier"""

    terms: Tuple[str, ...]
    """Tokens, in file order"""

    weights: np.ndarray = field(repr=False)
    """A (len(terms), dim) read-only matrix"""

    duplicates: int = 0
    """Number of rows ignored because their token was already defined"""

    _term2idx: Dict[str, int] = field(init=False, repr=False)

    @_term2idx.default
    def _index(self):
        return {term: ix for ix, term in enumerate(self.terms)}

    def __attrs_post_init__(self):
        if not self.terms:
            raise EmptyModel(self.name)
        if self.weights.shape[0] != len(self.terms):
            raise DimensionMismatch(len(self.terms), self.weights.shape[0])
        self.weights.setflags(write=False)

    @staticmethod
    def from_mapping(name: str, entries: Mapping[str, Sequence[float]]):
        """Builds a model from a token to vector mapping"""
        terms = tuple(entries.keys())
        if not terms:
            raise EmptyModel(name)
        rows = [as_vector(entries[term]) for term in terms]
        dim = rows[0].shape[0]
        for row in rows:
            if row.shape[0] != dim:
                raise DimensionMismatch(dim, row.shape[0])
        return WordVectorModel(name, terms, np.stack(rows))

    @property
    def dim(self) -> int:
        return self.weights.shape[1]

    def __len__(self):
        return len(self.terms)

    def __contains__(self, token: str):
        return token in self._term2idx

    def items(self) -> Iterable[Tuple[str, Vector]]:
        for term, ix in self._term2idx.items():
            yield term, self.weights[ix]

    def lookup(self, token: str) -> Optional[Vector]:
        """Returns the vector of a token, or None when out of vocabulary"""
        ix = self._term2idx.get(token)
        if ix is None:
            return None
        return self.weights[ix]


def lookup(model: WordVectorModel, token: str) -> Optional[Vector]:
    return model.lookup(token)


def _parse_row(parts: List[str], line: int) -> np.ndarray:
    if len(parts) < 2:
        raise MalformedLine(line, "a row needs a token and at least one component")
    try:
        row = np.array([float(x) for x in parts[1:]], dtype=np.float64)
    except ValueError as e:
        raise MalformedLine(line, f"non-numeric component ({e})")
    if not np.all(np.isfinite(row)):
        raise MalformedLine(line, "non-finite component")
    return row


def detect_format(path: Union[str, Path]) -> ModelFormat:
    """Guess the format: a first line made of two integers is a w2v header"""
    try:
        with Path(path).open("rt", encoding="utf-8") as fp:
            first = fp.readline().split()
    except (OSError, UnicodeDecodeError) as e:
        raise FileUnreadable(path, str(e))

    if len(first) == 2 and all(_COUNT.fullmatch(x) for x in first):
        return ModelFormat.W2V_TEXT
    return ModelFormat.GLOVE_TEXT


def load_model(
    path: Union[str, Path],
    format: Union[str, ModelFormat],
    *,
    name: Optional[str] = None,
) -> WordVectorModel:
    """Load a word-vector model from a text file

    :param path: The file to read (UTF-8)
    :param format: Either ``w2v-text`` or ``glove-text``
    :param name: The model identifier, defaults to the file stem
    :raises FileUnreadable: if the file cannot be opened or decoded
    :raises MalformedLine: on rows with a non-numeric component
    :raises DimensionMismatch: on rows whose length differs from the dimension
    :raises EmptyModel: if the file holds no entry
    """
    path = Path(path)
    format = ModelFormat(format)
    name = name or path.stem

    terms: List[str] = []
    rows: List[np.ndarray] = []
    seen = set()
    duplicates = 0
    dim = None
    expected_count = None
    row_count = 0

    try:
        size = os.path.getsize(path)
        fp = path.open("rt", encoding="utf-8")
    except OSError as e:
        raise FileUnreadable(path, str(e))

    with fp, tqdm(
        total=size, unit="B", unit_scale=True, desc=name, disable=None, leave=False
    ) as pb:
        try:
            for lineno, line in enumerate(fp, start=1):
                pb.update(len(line))
                parts = line.split()
                if not parts:
                    continue

                if format == ModelFormat.W2V_TEXT and expected_count is None:
                    if len(parts) != 2 or not all(_COUNT.fullmatch(p) for p in parts):
                        raise MalformedLine(lineno, "expected a 'count dim' header")
                    expected_count, dim = int(parts[0]), int(parts[1])
                    if dim < 1:
                        raise MalformedLine(lineno, "the dimension must be positive")
                    continue

                row = _parse_row(parts, lineno)
                if dim is None:
                    dim = len(row)
                elif len(row) != dim:
                    raise DimensionMismatch(dim, len(row), line=lineno)

                row_count += 1
                token = parts[0]
                if token in seen:
                    duplicates += 1
                    continue
                seen.add(token)
                terms.append(token)
                rows.append(row)
        except UnicodeDecodeError as e:
            raise FileUnreadable(path, str(e))

    if expected_count is not None and row_count != expected_count:
        raise CountMismatch(expected_count, row_count)
    if not terms:
        raise EmptyModel(path)
    if duplicates:
        logger.warning("%s: %d duplicate token(s) ignored", path, duplicates)

    model = WordVectorModel(name, tuple(terms), np.stack(rows), duplicates)
    logger.info("Loaded %s: %d entries of dimension %d", name, len(model), model.dim)
    return model


def save_model(
    model: WordVectorModel, path: Union[str, Path], format: Union[str, ModelFormat]
):
    """Writes a model in a text format, tokens sorted"""
    format = ModelFormat(format)
    with Path(path).open("wt", encoding="utf-8") as fp:
        if format == ModelFormat.W2V_TEXT:
            fp.write(f"{len(model)} {model.dim}\n")
        for term in sorted(model.terms):
            values = " ".join(repr(float(x)) for x in model.lookup(term))
            fp.write(f"{term} {values}\n")


def average(vectors: Sequence[Vector]) -> Vector:
    """Component-wise mean of a non-empty sequence of vectors"""
    if len(vectors) == 0:
        raise EmptyInput()
    dim = len(vectors[0])
    for vector in vectors:
        if len(vector) != dim:
            raise DimensionMismatch(dim, len(vector))
    mean = np.mean(np.stack(vectors), axis=0)
    mean.setflags(write=False)
    return mean


def cosine(a: Vector, b: Vector) -> float:
    """Cosine similarity, clamped to [-1, 1]

    :raises ZeroVector: if one argument has a null magnitude
    :raises DimensionMismatch: if the two vectors differ in size
    """
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b))

    norm_a = float(np.linalg.norm(a))
    if norm_a < ZERO_MAGNITUDE:
        raise ZeroVector("a")
    norm_b = float(np.linalg.norm(b))
    if norm_b < ZERO_MAGNITUDE:
        raise ZeroVector("b")

    # Equal vectors are exactly similar, whatever the rounding of the norms
    if np.array_equal(a, b):
        return 1.0

    value = float(np.dot(a, b)) / (norm_a * norm_b)
    return min(1.0, max(-1.0, value))


class ModelCatalog(EasyLogger):
    """Word-vector models available to the oracles, by identifier

    Models are either added once loaded, or loaded on first use from the
    dataset paths declared in a dialog context.
    """

    def __init__(self, models: Iterable[WordVectorModel] = ()):
        self._models: Dict[str, WordVectorModel] = {}
        self._lock = threading.Lock()
        for model in models:
            self.add(model)

    def add(self, model: WordVectorModel) -> WordVectorModel:
        with self._lock:
            self._models[model.name] = model
        return model

    def __contains__(self, model_id: str):
        return model_id in self._models

    def get(
        self, model_id: str, dataset_paths: Mapping[str, Path] = {}
    ) -> WordVectorModel:
        """Returns a model, loading it from the dataset paths if needed

        :raises UnknownModel: when the model is neither loaded nor declared
        """
        model = self._models.get(model_id)
        if model is not None:
            return model

        path = dataset_paths.get(model_id)
        if path is None:
            raise UnknownModel(model_id)

        with self._lock:
            if model_id not in self._models:
                self.logger.info("Loading model %s from %s", model_id, path)
                self._models[model_id] = load_model(
                    path, detect_format(path), name=model_id
                )
            return self._models[model_id]
