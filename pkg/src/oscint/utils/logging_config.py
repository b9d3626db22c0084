"""loguru sinks for the CLI process and for scan/ensemble worker processes."""

import os
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

LOG_LEVEL_ENV = "OSCINT_LOG_LEVEL"
DEFAULT_LEVEL = "WARNING"

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> "
    "<level>{level: <7}</level> "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {process} | {level: <8} | {name}:{function}:{line} | {message}"
WORKER_FORMAT = "<green>{time:HH:mm:ss.SSS}</green> <magenta>[pid {process}]</magenta> <level>{level: <7}</level> {message}"

_configured_level = DEFAULT_LEVEL


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[Path] = None,
    enable_console: bool = True,
    format_string: Optional[str] = None
) -> None:
    """Replace all loguru sinks: colourised stderr and an optional rotating file.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_file: Optional log file path (10 MB rotation, kept one week)
        enable_console: False for --quiet
        format_string: Console format override
    """
    global _configured_level
    level = log_level.upper()
    _configured_level = level
    logger.remove()

    if enable_console:
        logger.add(sys.stderr, format=format_string or CONSOLE_FORMAT, level=level,
                   colorize=True, diagnose=level == "DEBUG")

    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        # enqueue: worker processes of a scan write to the same file
        logger.add(str(log_file), format=FILE_FORMAT, level=level, rotation="10 MB",
                   retention="1 week", compression="zip", enqueue=True)
        logger.debug(f"Log file: {log_file}")

    logger.debug(f"Logging configured at {level}")


def current_log_level() -> str:
    """Level chosen by the last setup_logging call in this process."""
    return _configured_level


def configure_worker_logging(log_level: str) -> None:
    """ProcessPoolExecutor initializer: stderr only, tagged with the worker pid."""
    logger.remove()
    logger.add(sys.stderr, format=WORKER_FORMAT, level=log_level.upper(), colorize=True)


def get_log_level_from_verbosity(verbose_count: int, default: Optional[str] = None) -> str:
    """-vv gives DEBUG, -v gives INFO; otherwise ``default``, then OSCINT_LOG_LEVEL, then WARNING."""
    if verbose_count >= 2:
        return "DEBUG"
    if verbose_count == 1:
        return "INFO"
    return (default or os.getenv(LOG_LEVEL_ENV) or DEFAULT_LEVEL).upper()
