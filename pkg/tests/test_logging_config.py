import logging

import pytest

from bifgraph import logging_config
from bifgraph.logging_config import configure_logging


@pytest.fixture
def fresh_root(monkeypatch):
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    monkeypatch.setattr(logging_config.configure_logging, "_configured", False, raising=False)
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)
    for name in logging_config.NOISY_LOGGERS:
        logging.getLogger(name).setLevel(logging.NOTSET)


def test_handler_is_installed_once_and_level_follows_calls(fresh_root):
    before = len(fresh_root.handlers)
    configure_logging()
    configure_logging(logging.DEBUG)
    assert len(fresh_root.handlers) == before + 1
    assert fresh_root.level == logging.DEBUG
    assert logging.getLogger("matplotlib").level == logging.WARNING

    configure_logging(logging.ERROR)
    assert fresh_root.level == logging.ERROR
    assert logging.getLogger("matplotlib").level == logging.ERROR
