import logging
import os
import sys

from loguru import logger

from config import LOG_FILE, LOG_LEVEL, LOG_TO_CONSOLE, LOG_TO_FILE

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


def remove_default_loggers():
    """Remove default loggers from root logger."""
    root_logger = logging.getLogger()
    if root_logger.hasHandlers():
        root_logger.handlers.clear()


def init_loguru_logger(level: str = LOG_LEVEL, to_file: bool = LOG_TO_FILE, to_console: bool = LOG_TO_CONSOLE):
    """Initialize and configure loguru logger.

    Console output goes to stderr; stdout is reserved for command results.
    """
    logger.remove()

    if to_file:
        os.makedirs(os.path.dirname(LOG_FILE), exist_ok=True)
        logger.add(
            LOG_FILE,
            level=level,
            rotation="10 MB",
            retention="1 week",
            compression="zip",
            format=LOG_FORMAT,
            backtrace=True,
            diagnose=True,
        )

    if to_console:
        logger.add(
            sys.stderr,
            level=level,
            format=LOG_FORMAT,
            backtrace=True,
            diagnose=False,
        )


remove_default_loggers()
init_loguru_logger()
