"""Logging setup: library modules log, the CLI decides where it goes."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "lamedisc-rich"


def setup_logging(level: str = "WARNING", console: Console | None = None) -> logging.Logger:
    """Attach a Rich handler to the package logger.

    Calling it again only changes the level.

    Args:
        level: Level name, e.g. "INFO" or "DEBUG".
        console: Console to render on. Defaults to stderr so JSON/CSV on stdout stay clean.
    """
    logger = logging.getLogger("lamedisc")
    logger.setLevel(level.upper())

    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(
            console=console or Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.set_name(_HANDLER_NAME)
        logger.addHandler(handler)
        logger.propagate = False

    return logger
