"""Wall time, CPU time and peak memory of integration runs."""

import threading
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import psutil
from loguru import logger

MB = 1024 * 1024


@dataclass
class PerformanceMetrics:
    """Resource usage of one run."""
    processing_time: float = 0.0
    cpu_time: float = 0.0
    memory_mb: float = 0.0
    steps_completed: int = 0
    steps_per_second: float = 0.0

    @property
    def microseconds_per_step(self) -> float:
        if self.steps_completed == 0:
            return 0.0
        return 1e6 * self.processing_time / self.steps_completed

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["microseconds_per_step"] = self.microseconds_per_step
        return data


class PerformanceProfiler:
    """Context manager timing a run; a daemon thread tracks peak resident memory.

    With ``enable_monitoring=False`` only wall time is measured (used for
    scan points and ensemble members, which run in bulk).
    """

    def __init__(self, enable_monitoring: bool = True, sample_interval: float = 0.5):
        self.enable_monitoring = enable_monitoring
        self.sample_interval = sample_interval
        self.metrics = PerformanceMetrics()
        self._process: Optional[psutil.Process] = None
        self._t0 = 0.0
        self._cpu0 = 0.0
        self._peak_rss = 0
        self._sampler: Optional[threading.Thread] = None
        self._done = threading.Event()

    def start(self) -> None:
        self._t0 = time.perf_counter()
        self._done.clear()
        if self.enable_monitoring:
            self._process = psutil.Process()
            self._cpu0 = self._cpu_seconds()
            self._record_rss()
            self._sampler = threading.Thread(target=self._track_memory, daemon=True)
            self._sampler.start()

    def stop(self) -> PerformanceMetrics:
        m = self.metrics
        m.processing_time = time.perf_counter() - self._t0
        if self._process is not None:
            self._done.set()
            if self._sampler is not None:
                self._sampler.join(timeout=1.0)
            self._record_rss()
            m.cpu_time = self._cpu_seconds() - self._cpu0
            m.memory_mb = self._peak_rss / MB
        if m.processing_time > 0:
            m.steps_per_second = m.steps_completed / m.processing_time
        logger.info(f"{m.steps_completed} steps in {m.processing_time:.2f}s "
                    f"({m.microseconds_per_step:.1f} us/step, peak {m.memory_mb:.1f} MB)")
        return m

    def update_step_count(self, steps_completed: int) -> None:
        self.metrics.steps_completed = steps_completed

    def _cpu_seconds(self) -> float:
        times = self._process.cpu_times()
        return times.user + times.system

    def _record_rss(self) -> None:
        self._peak_rss = max(self._peak_rss, self._process.memory_info().rss)

    def _track_memory(self) -> None:
        while not self._done.wait(self.sample_interval):
            try:
                self._record_rss()
            except psutil.Error as e:
                logger.warning(f"Stopped memory sampling: {e}")
                return

    def __enter__(self) -> "PerformanceProfiler":
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.stop()
