import sys
from typing import Optional, TextIO

from loguru import logger  # type: ignore

# stdout carries the JSON/CSV records; logs only ever go to stderr
LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | <cyan>{extra[module]}</cyan>:"
    "<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


def setup_logger(level: str = "INFO", sink: Optional[TextIO] = None) -> None:
    stream = sink if sink is not None else sys.stderr
    logger.remove()
    logger.configure(extra={"module": "adg"})

    logger.add(
        stream,
        format=LOG_FORMAT,
        level=level.upper(),
        colorize=stream.isatty(),
    )


def get_logger(name: str = __name__) -> logger:
    return logger.bind(module=name)
