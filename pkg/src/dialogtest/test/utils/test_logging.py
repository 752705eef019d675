import logging

from dialogtest.text.wordvec import ModelCatalog
from dialogtest.utils.logging import EasyLogger, LazyJoin, easylog


class Recorder(EasyLogger):
    pass


def test_module_loggers():
    assert easylog().name == "dialogtest.test.utils.test_logging"
    assert Recorder().logger.name == "dialogtest.test.utils.test_logging.Recorder"
    assert ModelCatalog().logger.name == "dialogtest.text.wordvec.ModelCatalog"
    assert Recorder().logger is Recorder().logger


def test_lazy_join():
    assert str(LazyJoin(", ", ["a", 1])) == "a, 1"
    assert str(LazyJoin(" ", range(5), limit=3)) == "0 1 2 (+2 more)"
    assert str(LazyJoin(" ", range(5), limit=None)) == "0 1 2 3 4"


def test_lazy_join_in_records(caplog):
    with caplog.at_level(logging.INFO, logger="dialogtest"):
        easylog().info("tokens: %s", LazyJoin(",", ["x", "y"]))
    assert "tokens: x,y" in caplog.text
