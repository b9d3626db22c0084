"""Main CLI entry point."""

import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from loguru import logger
from pydantic import ValidationError as PydanticValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text
from typing_extensions import Annotated

from ..analysis.spectrum import probe_peaks, sample_trajectory
from ..core.config import RunConfig, ScanConfig
from ..core.exceptions import ConfigurationError, NumericalError, OscIntError, ValidationError
from ..core.models import ProblemName, RunSummary, ScanRow
from ..experiments.catalog import build_problem
from ..io.config_file import load_config_file, load_env_defaults, merge_config
from ..io.exporters import ExporterFactory
from ..io.file_manager import FileManager
from ..io.validators import ConfigValidator
from ..resonance.analysis import ResonanceAnalysis, analyze_resonance
from ..resonance.combinations import canonical_vectors
from ..utils.logging_config import get_log_level_from_verbosity, setup_logging
from .runner import SimulationRunner, build_stepper, target_frequencies

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_PARTIAL_SCAN = 4
EXIT_INTERRUPTED = 130

app = typer.Typer(
    name="oscint",
    help="Long-time energy behaviour of trigonometric integrators for oscillatory Hamiltonian systems",
    add_completion=False
)

console = Console()

ProblemOpt = Annotated[Optional[ProblemName], typer.Option("--problem", help="Catalog problem")]
OmegaOpt = Annotated[Optional[float], typer.Option("--omega", help="Reference frequency omega = 1/epsilon")]
MOpt = Annotated[Optional[int], typer.Option("--m", help="Chain length of the fpu problem")]
HOmegaOpt = Annotated[Optional[float], typer.Option("--h-omega", help="Step size as h*omega")]
HOpt = Annotated[Optional[float], typer.Option("--h", help="Step size (instead of --h-omega)")]
MethodOpt = Annotated[Optional[str], typer.Option("--method", help="trig:<deuflhard|gautschi_A> or alpha:<value>")]
TEndOpt = Annotated[Optional[float], typer.Option("--t-end", help="Final time")]
StrideOpt = Annotated[Optional[int], typer.Option("--stride", help="CSV sampling stride in steps")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", "-o", help="Output CSV path")]
ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="key=value config file")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Random seed")]
WorkersOpt = Annotated[Optional[int], typer.Option("--workers", help="Worker processes")]
VerboseOpt = Annotated[int, typer.Option("--verbose", "-v", count=True, help="Increase verbosity (-v, -vv)")]
QuietOpt = Annotated[bool, typer.Option("--quiet", "-q", help="Suppress console output")]
LogFileOpt = Annotated[Optional[Path], typer.Option("--log-file", help="Log file path")]


def _setup(verbose: int, quiet: bool, log_file: Optional[Path]) -> Dict[str, Any]:
    env = load_env_defaults()
    setup_logging(
        log_level=get_log_level_from_verbosity(verbose, env.get("log_level")),
        log_file=log_file,
        enable_console=not quiet
    )
    return env


def _collect(env: Dict[str, Any], config: Optional[Path], flags: Dict[str, Any]) -> Dict[str, Any]:
    """Defaults from the environment, then the config file, then explicit flags."""
    base = {k: v for k, v in env.items() if k != "log_level"}
    if config is not None:
        base = merge_config(base, load_config_file(ConfigValidator.validate_config_path(config)))
    return merge_config(base, flags)


def _execute(verbose: int, action: Callable[[], int]) -> None:
    """Run a command body and map its outcome to the process exit code."""
    try:
        code = action()
    except (ConfigurationError, ValidationError, PydanticValidationError) as e:
        console.print(f"[red]Configuration error: {str(e)}[/red]")
        sys.exit(EXIT_CONFIG)
    except NumericalError as e:
        console.print(f"[red]Numerical failure: {str(e)}[/red]")
        sys.exit(EXIT_NUMERICAL)
    except OscIntError as e:
        console.print(f"[red]Error: {str(e)}[/red]")
        sys.exit(EXIT_UNEXPECTED)
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user[/yellow]")
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        console.print(f"[red]Unexpected error: {str(e)}[/red]")
        if verbose >= 2:
            console.print_exception()
        sys.exit(EXIT_UNEXPECTED)
    if code:
        sys.exit(code)


def _step_size(values: Dict[str, Any], omega: float) -> float:
    h, h_omega = values.get("h"), values.get("h_omega")
    if (h is None) == (h_omega is None):
        raise ConfigurationError("Exactly one of --h and --h-omega must be given")
    return float(h) if h is not None else float(h_omega) / omega


@app.command()
def simulate(
    problem: ProblemOpt = None,
    omega: OmegaOpt = None,
    m: MOpt = None,
    h_omega: HOmegaOpt = None,
    h: HOpt = None,
    method: MethodOpt = None,
    t_end: TEndOpt = None,
    stride: StrideOpt = None,
    out: OutOpt = None,
    config: ConfigOpt = None,
    seed: SeedOpt = None,
    no_progress: Annotated[bool, typer.Option("--no-progress", help="Hide progress bar")] = False,
    log_file: LogFileOpt = None,
    verbose: VerboseOpt = 0,
    quiet: QuietOpt = False,
) -> None:
    """Integrate one problem and write sampled energies and their deviations to CSV.

    Examples:
        oscint simulate --problem exp1 --omega 100 --h-omega 2.0944 --t-end 200
        oscint simulate --problem fpu --method alpha:0.25 --h-omega 2 --omega 25 --t-end 3000
    """
    def action() -> int:
        env = _setup(verbose, quiet, log_file)
        values = _collect(env, config, dict(problem=problem, omega=omega, m=m, h_omega=h_omega, h=h,
                                            method=method, t_end=t_end, stride=stride, out=out, seed=seed))
        run_config = RunConfig(**values)
        if not quiet:
            _display_banner()
            _display_config(run_config)
        with SimulationRunner(run_config, show_progress=not (quiet or no_progress)) as runner:
            summary = runner.simulate()
        if not quiet:
            _display_summary(summary)
        return EXIT_OK

    _execute(verbose, action)


@app.command()
def ensemble(
    problem: ProblemOpt = None,
    omega: OmegaOpt = None,
    m: MOpt = None,
    h_omega: HOmegaOpt = None,
    h: HOpt = None,
    method: MethodOpt = None,
    t_end: TEndOpt = None,
    stride: StrideOpt = None,
    out: OutOpt = None,
    perturb: Annotated[Optional[str], typer.Option("--perturb", help="Perturbed component, e.g. q0 or p3")] = None,
    deltas: Annotated[Optional[str], typer.Option("--deltas", help="Comma-separated perturbation sizes")] = None,
    config: ConfigOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    log_file: LogFileOpt = None,
    verbose: VerboseOpt = 0,
    quiet: QuietOpt = False,
) -> None:
    """Run the base problem and perturbed copies; write one CSV per member and a spread summary.

    Examples:
        oscint ensemble --problem fpu --h-omega 2.0944 --t-end 3000 --perturb q0 --deltas=7e-16,-7e-16
    """
    def action() -> int:
        env = _setup(verbose, quiet, log_file)
        values = _collect(env, config, dict(problem=problem, omega=omega, m=m, h_omega=h_omega, h=h,
                                            method=method, t_end=t_end, stride=stride, out=out,
                                            perturb=perturb, deltas=deltas, seed=seed, workers=workers))
        run_config = RunConfig(**values)
        if not quiet:
            _display_banner()
            _display_config(run_config)
        with SimulationRunner(run_config, show_progress=not quiet) as runner:
            members = runner.ensemble()
        if not quiet:
            table = Table(title="Ensemble members")
            table.add_column("member")
            table.add_column("delta", justify="right")
            table.add_column("max |dev H_osc|", justify="right")
            table.add_column("CSV")
            for i, member in enumerate(members):
                table.add_row(str(i), f"{member.extra.get('delta', 0.0):.3e}",
                              f"{member.max_dev_osc:.6e}", str(member.csv_file))
            console.print(table)
        return EXIT_OK

    _execute(verbose, action)


@app.command()
def scan(
    problem: ProblemOpt = None,
    omega: OmegaOpt = None,
    m: MOpt = None,
    method: MethodOpt = None,
    t_end: TEndOpt = None,
    out: OutOpt = None,
    center: Annotated[Optional[float], typer.Option("--center", help="Center of the h*omega interval")] = None,
    width: Annotated[Optional[float], typer.Option("--width", help="Length of the h*omega interval")] = None,
    points: Annotated[Optional[int], typer.Option("--points", help="Number of grid points")] = None,
    config: ConfigOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    log_file: LogFileOpt = None,
    verbose: VerboseOpt = 0,
    quiet: QuietOpt = False,
) -> None:
    """Max |H_osc deviation| over an equidistant h*omega grid (omega fixed, h varies).

    Exits with code 4 when some grid points failed.

    Examples:
        oscint scan --problem fpu --omega 50 --center 2.0944 --width 0.1 --points 59 --t-end 10000
    """
    def action() -> int:
        env = _setup(verbose, quiet, log_file)
        values = _collect(env, config, dict(problem=problem, omega=omega, m=m, method=method, t_end=t_end,
                                            out=out, center=center, width=width, points=points,
                                            seed=seed, workers=workers))
        values.pop("h", None)
        values["h_omega"] = values.get("center")
        template = RunConfig(**values)
        scan_config = ScanConfig(center=values.get("center"), width=values.get("width"),
                                 points=values.get("points"), template=template)
        if not quiet:
            _display_banner()
            _display_config(template, extra=f"  Grid: {scan_config.points} points of width "
                                            f"{scan_config.width:g} around {scan_config.center:.6g}\n")
        with SimulationRunner(template, show_progress=not quiet) as runner:
            rows = runner.scan(scan_config)
        if not quiet:
            _display_scan(rows)
        return EXIT_PARTIAL_SCAN if any(r.failed for r in rows) else EXIT_OK

    _execute(verbose, action)


@app.command()
def resonance(
    problem: ProblemOpt = None,
    omega: OmegaOpt = None,
    m: MOpt = None,
    h_omega: HOmegaOpt = None,
    h: HOpt = None,
    n: Annotated[Optional[int], typer.Option("--N", help="Truncation index N (||k|| <= N+1)")] = None,
    delta: Annotated[Optional[float], typer.Option("--delta", help="Gap parameter in (0, 1/4]")] = None,
    out: OutOpt = None,
    config: ConfigOpt = None,
    log_file: LogFileOpt = None,
    verbose: VerboseOpt = 0,
    quiet: QuietOpt = False,
) -> None:
    """Resonance report: sine combinations, gap, resonance module, modified frequencies and
    non-resonance conditions for one step size.

    Examples:
        oscint resonance --problem exp1 --omega 100 --h-omega 2.0944 --N 2
    """
    def action() -> int:
        env = _setup(verbose, quiet, log_file)
        values = _collect(env, config, dict(problem=problem, omega=omega, m=m, h_omega=h_omega, h=h,
                                            n=n, delta=delta, out=out))
        spec = build_problem(values.get("problem", ProblemName.FPU), float(values.get("omega", 50.0)),
                             int(values.get("m", 3)))
        step = _step_size(values, float(values.get("omega", 50.0)))
        N, gap_delta = ConfigValidator.validate_resonance_parameters(int(values.get("n", 2)),
                                                                     float(values.get("delta", 0.25)))
        analysis = analyze_resonance(spec.freq, step, N, gap_delta)
        _display_resonance(analysis, quiet)
        if values.get("out"):
            path = ConfigValidator.validate_output_path(values["out"])
            ExporterFactory.create_exporter("resonance").export(analysis.rows(), path)
        return EXIT_OK

    _execute(verbose, action)


@app.command()
def spectrum(
    problem: ProblemOpt = None,
    omega: OmegaOpt = None,
    m: MOpt = None,
    h_omega: HOmegaOpt = None,
    h: HOpt = None,
    method: MethodOpt = None,
    t_end: TEndOpt = None,
    stride: StrideOpt = None,
    out: OutOpt = None,
    max_order: Annotated[int, typer.Option("--max-order", help="Probe all k with ||k|| <= this")] = 2,
    window_start: Annotated[Optional[float], typer.Option("--window-start", help="Analysis window start")] = None,
    window_end: Annotated[Optional[float], typer.Option("--window-end", help="Analysis window end")] = None,
    config: ConfigOpt = None,
    log_file: LogFileOpt = None,
    verbose: VerboseOpt = 0,
    quiet: QuietOpt = False,
) -> None:
    """Hann-windowed amplitudes of every position component at the frequencies k.varpi.

    Examples:
        oscint spectrum --problem exp1 --omega 100 --h-omega 1 --t-end 10 --out spectrum.csv
    """
    def action() -> int:
        env = _setup(verbose, quiet, log_file)
        values = _collect(env, config, dict(problem=problem, omega=omega, m=m, h_omega=h_omega, h=h,
                                            method=method, t_end=t_end, stride=stride, out=out))
        run_config = RunConfig(**values)
        spec = build_problem(run_config.problem, run_config.omega, run_config.m)
        step = run_config.step_size
        varpi = target_frequencies(spec, run_config.method, step, max(1, max_order - 1))
        stepper, _ = build_stepper(spec, run_config.method, step)
        times, series = sample_trajectory(stepper, spec.initial, run_config.n_steps, run_config.stride)
        window = None
        if window_start is not None or window_end is not None:
            window = (window_start if window_start is not None else times[0],
                      window_end if window_end is not None else times[-1])
        labels = [tuple([0] * spec.freq.ell)] + canonical_vectors(spec.freq.ell, max_order)
        peaks = probe_peaks(times, series, labels, varpi, step, window=window)
        path = run_config.out or Path("output") / FileManager.default_csv_name("spectrum", run_config.label())
        ExporterFactory.create_exporter("spectrum").export(peaks, ConfigValidator.validate_output_path(path))
        if not quiet:
            console.print(f"[green]{len(peaks)} spectral amplitudes written to {path}[/green]")
        return EXIT_OK

    _execute(verbose, action)


def _display_banner() -> None:
    """Display application banner."""
    banner_text = Text()
    banner_text.append("oscint", style="bold blue")
    banner_text.append(" - energy conservation of trigonometric integrators", style="dim")
    console.print()
    console.print(Panel(banner_text, expand=False, border_style="blue"))
    console.print()


def _display_config(config: RunConfig, extra: str = "") -> None:
    """Display run configuration."""
    config_text = Text()
    config_text.append("Configuration:\n", style="bold")
    config_text.append(f"  Problem: {config.problem.value} (omega={config.omega:g})\n")
    config_text.append(f"  Method: {config.method}\n")
    config_text.append(f"  Step size: h={config.step_size:.6g}, h*omega={config.step_size * config.omega:.6g}\n")
    config_text.append(f"  t_end: {config.t_end:g} ({config.n_steps} steps, stride {config.stride})\n")
    config_text.append(extra)
    config_text.append(f"  Workers: {config.workers}")
    console.print(Panel(config_text, title="Settings", border_style="green"))
    console.print()


def _display_summary(summary: RunSummary) -> None:
    """Display run results summary."""
    text = Text()
    text.append("Run Results:\n", style="bold green")
    text.append(f"  Steps: {summary.n_steps} (t_end={summary.t_end:g})\n")
    for name, value in summary.max_deviation.items():
        text.append(f"  max |dev {name}|: {value:.6e}\n")
    text.append(f"  CSV: {summary.csv_file}\n")
    text.append(f"  Processing time: {summary.processing_time:.2f}s ({summary.steps_per_second:.0f} steps/s)\n")
    text.append(f"  Peak memory: {summary.memory_mb:.1f} MB")
    finite = all(math.isfinite(v) for v in summary.max_deviation.values())
    console.print()
    console.print(Panel(text, title="Summary", border_style="green" if finite else "yellow"))


def _display_scan(rows: List[ScanRow]) -> None:
    ok = [r for r in rows if not r.failed]
    text = Text()
    text.append(f"Scan of {len(rows)} points, {len(rows) - len(ok)} failed\n", style="bold")
    if ok:
        worst = max(ok, key=lambda r: r.max_deviation)
        text.append(f"  Largest deviation {worst.max_deviation:.6e} at h*omega={worst.h_omega:.8f}")
    console.print(Panel(text, title="Scan", border_style="green" if len(ok) == len(rows) else "yellow"))


def _display_resonance(analysis: ResonanceAnalysis, quiet: bool) -> None:
    """Print the resonance report (log-only when quiet)."""
    gap = analysis.gap
    ver = analysis.verification
    table = Table(title=f"Resonance report (h={analysis.h:.6g}, N={analysis.N}, delta={analysis.delta:g})")
    table.add_column("quantity")
    table.add_column("value")
    table.add_row("combinations", str(len(analysis.combinations)))
    table.add_row("gap alpha / mu", f"{gap.alpha_gap:.6g} / {gap.mu:.3g}")
    table.add_row("empty window", f"[{gap.lower:.3e}, {gap.upper:.3e}]")
    table.add_row("near-resonant k", str(analysis.near_resonant))
    table.add_row("module basis", str(list(analysis.module.basis)))
    table.add_row("modified frequencies", str(analysis.modified.varpi.tolist()))
    table.add_row("module residual", f"{ver.member_residual:.3e}")
    table.add_row("off-module margin", f"{ver.nonmember_margin:.3e} (bound {ver.nonmember_threshold:.3e})")
    table.add_row("empirical gamma", f"{ver.gamma_empirical:.3e}")
    table.add_row("units/doubles outside", f"{ver.units_outside}/{ver.doubles_outside}")
    table.add_row("verification", "pass" if ver.passed else "FAIL: " + "; ".join(ver.failures))
    if ver.notes:
        table.add_row("verification notes", "; ".join(ver.notes))
    table.add_row("kappa >= sqrt(h)", f"{analysis.kappa.value:.6g} ({'pass' if analysis.kappa.passed else 'fail'})")
    table.add_row("numerical non-resonance",
                  f"{analysis.numerical_nonresonance.value:.6g} "
                  f"({'pass' if analysis.numerical_nonresonance.passed else 'fail'})")
    table.add_row("strong non-resonance",
                  f"{analysis.strong_nonresonance.value:.6g} "
                  f"({'pass' if analysis.strong_nonresonance.passed else 'fail'})")
    if quiet:
        logger.info(f"Resonance basis {list(analysis.module.basis)}, verification passed={ver.passed}")
    else:
        console.print(table)


def main() -> None:
    """Console-script entry point."""
    app()


if __name__ == "__main__":
    main()
