import unicodedata
from typing import List


def _keep(char: str) -> bool:
    if char == "'":
        return True
    category = unicodedata.category(char)
    return category.startswith("L") or category == "Nd"


def normalize(text: str) -> List[str]:
    """Normalizes an utterance into a list of tokens

    The text is lower-cased, every character that is neither a letter, a
    digit nor an apostrophe becomes a space, and the result is split on
    whitespace.
    """
    text = text.lower()
    text = "".join(char if _keep(char) else " " for char in text)
    return text.split()
