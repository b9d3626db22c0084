"""Orchestration of simulations, perturbation ensembles and step-size scans."""

import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from ..analysis.energies import EnergyMonitor
from ..core.config import MethodKind, MethodSpec, RunConfig, ScanConfig
from ..core.exceptions import ConfigurationError, GapNotFound, OscIntError
from ..core.models import OscState, OutputPaths, RunSummary, ScanRow
from ..experiments.catalog import ProblemSpec, build_problem, perturb_initial
from ..io.exporters import (
    EnergyCSVWriter, EnsembleSummaryExporter, JSONSummaryExporter, ScanCSVExporter, read_energy_csv
)
from ..io.file_manager import FileManager
from ..io.validators import ConfigValidator
from ..methods.filters import check_filter_sign_condition, get_filter_pair, is_symplectic
from ..methods.integrators import AlphaIntegrator, AlphaScheme, Stepper, TrigIntegrator, integrate
from ..resonance.analysis import analyze_resonance
from ..resonance.conditions import check_kappa
from ..utils.logging_config import configure_worker_logging, current_log_level
from ..utils.performance import PerformanceProfiler
from ..utils.progress_tracker import ProgressTracker

PROGRESS_CHUNK = 10_000

ProgressCallback = Callable[[int], None]


def build_stepper(problem: ProblemSpec, method: MethodSpec, h: float) -> Tuple[Stepper, EnergyMonitor]:
    """Integrator for ``method`` and the energy monitor matching it."""
    if method.kind is MethodKind.TRIG:
        pair = get_filter_pair(method.filter_name)
        stepper = TrigIntegrator(pair, h, problem.freq, problem.potential)
        return stepper, EnergyMonitor.for_trig(pair, h, problem.freq, problem.potential)
    scheme = AlphaScheme(alpha_method=method.alpha, h=h, freq=problem.freq)
    return AlphaIntegrator(scheme, problem.potential), EnergyMonitor.for_alpha(scheme, problem.potential)


def target_frequencies(problem: ProblemSpec, method: MethodSpec, h: float, N: int) -> np.ndarray:
    """Fast frequencies a trajectory of ``method`` oscillates at.

    alpha-family runs oscillate at the modified frequencies w~ of the scheme,
    so the resonance analysis runs on that system. Outside h < 1, or when no
    gap is found, the plain fast frequencies are returned.
    """
    freq = problem.freq
    if method.kind is MethodKind.ALPHA:
        freq = AlphaScheme(alpha_method=method.alpha, h=h, freq=freq).modified_freq
    if h < 1.0:
        try:
            return np.asarray(analyze_resonance(freq, h, N).modified.varpi)
        except GapNotFound as e:
            logger.warning(f"Probing at the unmodified frequencies: {e}")
    return freq.fast_omegas


def method_diagnostics(problem: ProblemSpec, method: MethodSpec, h: float, omega: float) -> Dict[str, object]:
    """Filter and step-size properties reported in the run summary.

    ``h_omega`` uses the reference frequency ``omega`` the step was chosen
    from; ``h_omega_max`` uses the largest block frequency.
    """
    kappa = check_kappa(problem.freq, h)
    info: Dict[str, object] = {
        "problem": problem.name,
        "method": str(method),
        "omegas": list(problem.freq.omegas),
        "h_omega": h * omega,
        "h_omega_max": h * max(problem.freq.omegas),
        "kappa": kappa.value,
        "kappa_passed": kappa.passed,
    }
    if method.kind is MethodKind.TRIG:
        pair = get_filter_pair(method.filter_name)
        sign = check_filter_sign_condition(pair, h, problem.freq)
        info.update({"symplectic": is_symplectic(pair, h, problem.freq),
                     "sigma_min": sign.c1, "sigma_max": sign.C1, "sign_condition": sign.passed})
    return info


class _RunObserver:
    """Feeds the energy monitor every step and reports progress in chunks."""

    def __init__(self, monitor: EnergyMonitor, progress: Optional[ProgressCallback]):
        self.monitor = monitor
        self.progress = progress

    def observe(self, n: int, t: float, q: np.ndarray, p: np.ndarray) -> None:
        self.monitor.observe(n, t, q, p)
        if self.progress is not None and n > 0 and n % PROGRESS_CHUNK == 0:
            self.progress(PROGRESS_CHUNK)


def run_simulation(
    config: RunConfig,
    csv_file: Optional[Path] = None,
    initial: Optional[OscState] = None,
    progress: Optional[ProgressCallback] = None,
    monitor_resources: bool = True,
) -> RunSummary:
    """Integrate one configuration, streaming sampled energies to ``csv_file``.

    Max deviations come from every step, not only the sampled ones.

    Raises:
        NumericalError: Step failures, with the step index attached
        OutputError: If the CSV cannot be written
    """
    problem = build_problem(config.problem, config.omega, config.m)
    h = config.step_size
    n_steps = config.n_steps
    stepper, monitor = build_stepper(problem, config.method, h)
    state0 = initial if initial is not None else problem.initial
    writer = EnergyCSVWriter(csv_file) if csv_file is not None else None

    def sampler(n: int, state: OscState) -> None:
        writer.write(monitor.last_report)

    logger.info(f"Run {config.label()}: {n_steps} steps of h={h:.6g}")
    profiler = PerformanceProfiler(enable_monitoring=monitor_resources)
    start_time = datetime.now()
    with profiler:
        if writer is not None:
            writer.open()
        try:
            integrate(stepper, state0, n_steps,
                      sampler=sampler if writer is not None else None,
                      stride=config.stride, monitor=_RunObserver(monitor, progress))
        finally:
            if writer is not None:
                writer.close()
        profiler.update_step_count(n_steps)
    metrics = profiler.metrics

    return RunSummary(
        label=config.label(),
        n_steps=n_steps,
        h=h,
        t_end=state0.t + n_steps * h,
        initial=monitor.initial.to_dict(),
        final=monitor.last_report.to_dict(),
        max_deviation=monitor.max_deviation,
        processing_time=metrics.processing_time,
        steps_per_second=metrics.steps_per_second,
        memory_mb=metrics.memory_mb,
        start_time=start_time,
        end_time=datetime.now(),
        csv_file=csv_file,
        extra=method_diagnostics(problem, config.method, h, config.omega),
    )


def scan_point(index: int, h_omega: float, config: RunConfig) -> ScanRow:
    """Max |H_osc deviation| at one grid point; numerical failures become NaN rows."""
    h = config.step_size
    try:
        summary = run_simulation(config, monitor_resources=False)
        return ScanRow(index=index, h_omega=h_omega, h=h, max_deviation=summary.max_dev_osc)
    except OscIntError as e:
        logger.warning(f"Scan point {index} (h*omega={h_omega:.6g}) failed: {e}")
        return ScanRow(index=index, h_omega=h_omega, h=h, max_deviation=math.nan, error=str(e))


def ensemble_member(config: RunConfig, delta: float, csv_file: Path) -> RunSummary:
    """One ensemble member: the catalog initial state with ``delta`` added to the target."""
    problem = build_problem(config.problem, config.omega, config.m)
    initial = problem.initial
    if delta != 0.0:
        initial = perturb_initial(initial, config.perturb_target, delta)
    summary = run_simulation(config, csv_file=csv_file, initial=initial, monitor_resources=False)
    summary.extra["delta"] = delta
    return summary


class SimulationRunner:
    """Runs simulate, ensemble and scan jobs for one base configuration."""

    def __init__(self, config: RunConfig, show_progress: bool = True, output_dir: Path = Path("output")):
        """Initialize the runner.

        Args:
            config: Base run configuration
            show_progress: Whether to show progress bars
            output_dir: Directory for generated file names
        """
        self.config = config
        self.output_dir = output_dir
        self.show_progress = show_progress
        self.progress_tracker = ProgressTracker(enabled=show_progress)
        self.json_exporter = JSONSummaryExporter()
        ConfigValidator.validate_workers(config.workers)
        logger.info(f"SimulationRunner initialized for {config.label()}")

    @staticmethod
    def _pool(workers: int) -> ProcessPoolExecutor:
        return ProcessPoolExecutor(max_workers=workers, initializer=configure_worker_logging,
                                   initargs=(current_log_level(),))

    def _paths(self, kind: str) -> OutputPaths:
        out = ConfigValidator.validate_output_path(self.config.out) if self.config.out else None
        return FileManager.create_output_paths(out, kind, self.config.label(), self.output_dir)

    def simulate(self) -> RunSummary:
        """Single run: energy CSV plus JSON summary."""
        paths = self._paths("simulate")
        self.progress_tracker.start(self.config.n_steps, "Integrating")
        try:
            summary = run_simulation(self.config, csv_file=paths.csv_file,
                                     progress=self.progress_tracker.update)
        finally:
            self.progress_tracker.finish()
        self.json_exporter.export(summary, paths.summary_file)
        logger.info(f"Max |H_osc deviation| = {summary.max_dev_osc:.6e}")
        return summary

    def ensemble(self) -> List[RunSummary]:
        """Base run plus one run per accepted perturbation size, and a spread summary CSV."""
        config = self.config
        paths = self._paths("ensemble")
        deltas = [0.0]
        if config.deltas:
            if config.perturb_target is None:
                raise ConfigurationError("Perturbation sizes given without --perturb component")
            problem = build_problem(config.problem, config.omega, config.m)
            deltas += ConfigValidator.validate_deltas(problem.initial, config.perturb_target, config.deltas)
        jobs = [(i, delta, FileManager.member_path(paths.csv_file, i)) for i, delta in enumerate(deltas)]

        results: Dict[int, RunSummary] = {}
        self.progress_tracker.start(len(jobs), "Ensemble", unit="members")
        try:
            if config.workers == 1 or len(jobs) == 1:
                for i, delta, path in jobs:
                    results[i] = ensemble_member(config, delta, path)
                    self.progress_tracker.update()
            else:
                with self._pool(config.workers) as pool:
                    futures = {pool.submit(ensemble_member, config, delta, path): i for i, delta, path in jobs}
                    for future in as_completed(futures):
                        results[futures[future]] = future.result()
                        self.progress_tracker.update()
        finally:
            self.progress_tracker.finish()

        members = [results[i] for i, _, _ in jobs]
        EnsembleSummaryExporter().export([read_energy_csv(m.csv_file) for m in members],
                                         FileManager.summary_path(paths.csv_file))
        for member in members:
            self.json_exporter.export(member, member.csv_file.with_suffix(".json"))
        logger.info(f"Ensemble of {len(members)} members finished")
        return members

    def scan(self, scan: ScanConfig) -> List[ScanRow]:
        """Max |H_osc deviation| over an h*omega grid, rows in grid order."""
        paths = self._paths("scan")
        grid = scan.grid
        rows: Dict[int, ScanRow] = {}
        self.progress_tracker.start(len(grid), "Scanning", unit="points")
        try:
            if self.config.workers == 1:
                for i, h_omega in enumerate(grid):
                    rows[i] = scan_point(i, h_omega, scan.point_config(i))
                    self.progress_tracker.update(failed=rows[i].failed)
            else:
                with self._pool(self.config.workers) as pool:
                    futures = {pool.submit(scan_point, i, h_omega, scan.point_config(i)): i
                               for i, h_omega in enumerate(grid)}
                    for future in as_completed(futures):
                        rows[futures[future]] = future.result()
                        self.progress_tracker.update(failed=rows[futures[future]].failed)
        finally:
            self.progress_tracker.finish()

        ordered = [rows[i] for i in range(len(grid))]
        ScanCSVExporter().export(ordered, paths.csv_file)
        failed = sum(r.failed for r in ordered)
        if failed:
            logger.warning(f"{failed} of {len(ordered)} scan points failed")
        return ordered

    def close(self) -> None:
        if self.progress_tracker.is_active():
            self.progress_tracker.finish()
        logger.info("SimulationRunner closed")

    def __enter__(self) -> "SimulationRunner":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()
