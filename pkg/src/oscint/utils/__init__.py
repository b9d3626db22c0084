"""Utility modules for oscint."""

from .logging_config import (
    configure_worker_logging, current_log_level, get_log_level_from_verbosity, setup_logging
)
from .performance import PerformanceProfiler, PerformanceMetrics
from .progress_tracker import ProgressTracker

__all__ = [
    "setup_logging",
    "get_log_level_from_verbosity",
    "configure_worker_logging",
    "current_log_level",
    "PerformanceProfiler",
    "PerformanceMetrics",
    "ProgressTracker",
]
