import logging
import sys
from functools import cached_property
from typing import Iterable, Optional

ROOT = "dialogtest"


def easylog() -> logging.Logger:
    """Returns the logger of the calling module

    Modules outside the package get a child of the ``dialogtest`` logger, so
    that a single handler (e.g. the one of the command line) sees everything.
    """
    try:
        name = sys._getframe(1).f_globals.get("__name__")
    except ValueError:
        name = None
    if not name or name == "__main__":
        return logging.getLogger(ROOT)
    if name == ROOT or name.startswith(f"{ROOT}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT}.{name}")


class EasyLogger:
    """Mixin giving ``self.logger``, named after the module and the class"""

    @cached_property
    def logger(self) -> logging.Logger:
        cls = self.__class__
        logger = cls.__dict__.get("__LOGGER__", None)
        if logger is None:
            module = cls.__module__
            if not module.startswith(ROOT):
                module = f"{ROOT}.{module}"
            logger = logging.getLogger(f"{module}.{cls.__qualname__}")
            cls.__LOGGER__ = logger
        return logger


class LazyJoin:
    """Joins the items only when the log record is formatted

    At most ``limit`` items are shown; the remaining ones are counted.
    """

    def __init__(self, glue: str, items: Iterable, limit: Optional[int] = 20):
        self.glue = glue
        self.items = items
        self.limit = limit

    def __str__(self):
        items = [str(x) for x in self.items]
        if self.limit is None or len(items) <= self.limit:
            return self.glue.join(items)
        hidden = len(items) - self.limit
        return f"{self.glue.join(items[:self.limit])} (+{hidden} more)"
