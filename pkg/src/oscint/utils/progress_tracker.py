"""Progress bars for long integrations, scans and ensembles."""

import time
from typing import Optional

from loguru import logger
from rich.console import Console
from rich.progress import (
    BarColumn, MofNCompleteColumn, Progress, TaskID, TextColumn, TimeElapsedColumn, TimeRemainingColumn
)


class ProgressTracker:
    """Rich progress bar counting steps, grid points or ensemble members.

    Failed units (scan points that produced NaN rows) are tallied in the
    bar description.
    """

    def __init__(self, console: Optional[Console] = None, enabled: bool = True):
        self.console = console or Console(stderr=True)
        self.enabled = enabled
        self.progress: Optional[Progress] = None
        self.task_id: Optional[TaskID] = None
        self.description = ""
        self.failed = 0
        self._t0: Optional[float] = None

    def start(self, total: int, description: str = "Integrating", unit: str = "steps") -> None:
        self._t0 = time.perf_counter()
        self.description = description
        self.failed = 0
        if self.enabled:
            self.progress = Progress(
                TextColumn("[bold blue]{task.description}"),
                BarColumn(bar_width=None),
                MofNCompleteColumn(),
                TextColumn(unit),
                TimeElapsedColumn(),
                TextColumn("eta"),
                TimeRemainingColumn(),
                console=self.console,
            )
            self.progress.start()
            self.task_id = self.progress.add_task(description, total=total)
        logger.info(f"{description}: {total} {unit}")

    def update(self, advance: int = 1, failed: bool = False) -> None:
        if failed:
            self.failed += 1
        if self.progress is None or self.task_id is None:
            return
        if failed:
            self.progress.update(self.task_id, description=f"{self.description} [red]({self.failed} failed)")
        self.progress.update(self.task_id, advance=advance)

    def finish(self) -> float:
        """Stop the bar and return the elapsed seconds."""
        elapsed = time.perf_counter() - self._t0 if self._t0 is not None else 0.0
        if self.progress is not None:
            self.progress.stop()
        self.progress = None
        self.task_id = None
        logger.info(f"{self.description} finished in {elapsed:.2f}s"
                    + (f", {self.failed} failed" if self.failed else ""))
        return elapsed

    def is_active(self) -> bool:
        return self.progress is not None
