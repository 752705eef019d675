# Utterances and the word vectors they are compared with

from dialogtest.text.tokenizers import normalize  # noqa: F401
from dialogtest.text.utterance import (  # noqa: F401
    Encoding,
    Utterance,
    encode,
    perturb_duplicate_wake,
    strip_wake,
)
from dialogtest.text.wordvec import (  # noqa: F401
    ModelCatalog,
    ModelFormat,
    WordVectorModel,
    average,
    cosine,
    detect_format,
    load_model,
    lookup,
    save_model,
)
