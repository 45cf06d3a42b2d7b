"""Root logger setup for bifgraph stages."""
from __future__ import annotations

import logging
import sys

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
# third-party loggers that flood DEBUG runs
NOISY_LOGGERS = ("matplotlib", "PIL")


def configure_logging(level: int = logging.INFO) -> None:
    """Attach one stdout handler to the root logger and set its level.

    The handler is installed once; later calls only change the level, so
    ``main`` can start at INFO and switch to the configured level after the
    config file has been read.
    """

    root = logging.getLogger()
    if not getattr(configure_logging, "_configured", False):
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        configure_logging._configured = True
    root.setLevel(level)
    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
