"""CSV and JSON exporters for runs, scans, spectra and resonance reports."""

import csv
import json
import math
from abc import ABC, abstractmethod
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from loguru import logger

from ..analysis.energies import ENERGY_FIELDS, EnergyReport
from ..analysis.spectrum import SpectralPeak
from ..core.exceptions import OutputError
from ..core.models import RunSummary, ScanRow

ENERGY_HEADER = ["t", *ENERGY_FIELDS, *[f"dev_{name}" for name in ENERGY_FIELDS]]


def format_float(value: Optional[float]) -> str:
    """17 significant digits in scientific notation; 'nan' for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return f"{value:.16e}"


def format_k(k: Sequence[int]) -> str:
    return ";".join(str(int(v)) for v in k)


def _open_csv(output_path: Path) -> Tuple[TextIO, Any]:
    output_path.parent.mkdir(parents=True, exist_ok=True)
    f = open(output_path, "w", newline="", encoding="utf-8")
    return f, csv.writer(f, lineterminator="\n")


class EnergyCSVWriter:
    """Streams sampled EnergyReports with their deviations from the first row."""

    def __init__(self, output_path: Path):
        self.output_path = Path(output_path)
        self._file: Optional[TextIO] = None
        self._writer: Any = None
        self._initial: Optional[EnergyReport] = None
        self.rows_written = 0

    def open(self) -> "EnergyCSVWriter":
        try:
            self._file, self._writer = _open_csv(self.output_path)
            self._writer.writerow(ENERGY_HEADER)
        except Exception as e:
            raise OutputError(f"Failed to open CSV {self.output_path}: {str(e)}") from e
        return self

    def write(self, report: EnergyReport) -> None:
        if self._writer is None:
            raise OutputError(f"CSV writer for {self.output_path} is not open")
        if self._initial is None:
            self._initial = report
        values = [getattr(report, name) for name in ENERGY_FIELDS]
        devs = [v - getattr(self._initial, name) for v, name in zip(values, ENERGY_FIELDS)]
        try:
            self._writer.writerow([format_float(report.t), *map(format_float, values), *map(format_float, devs)])
        except Exception as e:
            raise OutputError(f"Failed to write CSV row to {self.output_path}: {str(e)}") from e
        self.rows_written += 1

    def close(self) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None
            self._writer = None
            logger.info(f"Wrote {self.rows_written} samples to CSV: {self.output_path}")

    def __enter__(self) -> "EnergyCSVWriter":
        return self.open()

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()


def read_energy_csv(path: Path) -> Dict[str, np.ndarray]:
    """Columns of an energy CSV as float arrays keyed by header name."""
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
    except Exception as e:
        raise OutputError(f"Failed to read CSV {path}: {str(e)}") from e
    header, body = rows[0], rows[1:]
    data = np.asarray([[float(v) for v in row] for row in body], dtype=np.float64).reshape(len(body), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


class BaseExporter(ABC):
    """Base class for one-shot exporters."""

    @abstractmethod
    def export(self, data: Any, output_path: Path) -> None:
        """Export ``data`` to ``output_path``.

        Raises:
            OutputError: If the file cannot be written
        """
        pass

    def _write_rows(self, output_path: Path, header: List[str], rows: List[List[str]], what: str) -> None:
        try:
            f, writer = _open_csv(output_path)
            with f:
                writer.writerow(header)
                writer.writerows(rows)
            logger.info(f"Exported {len(rows)} {what} rows to CSV: {output_path}")
        except Exception as e:
            raise OutputError(f"Failed to export CSV to {output_path}: {str(e)}") from e


class ScanCSVExporter(BaseExporter):
    """index, h_omega, h, max_deviation, error; rows in grid order."""

    def export(self, data: Sequence[ScanRow], output_path: Path) -> None:
        rows = [
            [str(r.index), format_float(r.h_omega), format_float(r.h),
             format_float(r.max_deviation), r.error or ""]
            for r in sorted(data, key=lambda r: r.index)
        ]
        self._write_rows(output_path, ["index", "h_omega", "h", "max_deviation", "error"], rows, "scan")


class SpectrumCSVExporter(BaseExporter):
    """k, target_freq, amplitude, component."""

    def export(self, data: Sequence[SpectralPeak], output_path: Path) -> None:
        rows = [[format_k(p.k), format_float(p.target_freq), format_float(p.amplitude), str(p.component)]
                for p in data]
        self._write_rows(output_path, ["k", "target_freq", "amplitude", "component"], rows, "spectrum")


class ResonanceCSVExporter(BaseExporter):
    """k, value, near_resonant, in_module for every enumerated combination."""

    def export(self, data: Sequence[Dict[str, Any]], output_path: Path) -> None:
        rows = [[format_k(r["k"]), format_float(r["value"]), str(int(r["near_resonant"])), str(int(r["in_module"]))]
                for r in data]
        self._write_rows(output_path, ["k", "value", "near_resonant", "in_module"], rows, "resonance")


class EnsembleSummaryExporter(BaseExporter):
    """Mean and standard deviation of dev_H_osc across ensemble members per sample time."""

    def export(self, data: Sequence[Dict[str, np.ndarray]], output_path: Path) -> None:
        if not data:
            logger.warning("No ensemble members to summarize")
            return
        length = min(len(member["t"]) for member in data)
        times = data[0]["t"][:length]
        devs = np.vstack([member["dev_H_osc"][:length] for member in data])
        mean = devs.mean(axis=0)
        std = devs.std(axis=0)
        rows = [[format_float(t), format_float(m), format_float(s), str(len(data))]
                for t, m, s in zip(times, mean, std)]
        self._write_rows(output_path, ["t", "mean_dev_H_osc", "std_dev_H_osc", "members"], rows, "ensemble")


class JSONSummaryExporter(BaseExporter):
    """Run summary with metadata, energies, max deviations and performance."""

    def export(self, data: RunSummary, output_path: Path) -> None:
        try:
            export_data = {
                "metadata": {
                    "export_timestamp": datetime.now().isoformat(),
                    "label": data.label,
                    "n_steps": data.n_steps,
                    "h": data.h,
                    "t_end": data.t_end,
                    "csv_file": str(data.csv_file) if data.csv_file else None,
                    "start_time": data.start_time.isoformat(),
                    "end_time": data.end_time.isoformat(),
                },
                "initial": data.initial,
                "final": data.final,
                "max_deviation": data.max_deviation,
                "performance": {
                    "processing_time_seconds": data.processing_time,
                    "steps_per_second": data.steps_per_second,
                    "memory_mb": data.memory_mb,
                },
                "extra": data.extra,
            }
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8") as f:
                json.dump(export_data, f, indent=2, ensure_ascii=False, default=str)
            logger.info(f"Exported run summary to JSON: {output_path}")
        except Exception as e:
            raise OutputError(f"Failed to export JSON to {output_path}: {str(e)}") from e


class ExporterFactory:
    """Factory for creating exporters."""

    _exporters = {
        "scan": ScanCSVExporter,
        "spectrum": SpectrumCSVExporter,
        "resonance": ResonanceCSVExporter,
        "ensemble": EnsembleSummaryExporter,
        "json": JSONSummaryExporter,
    }

    @classmethod
    def create_exporter(cls, format_type: str) -> BaseExporter:
        """Create exporter for the given output kind.

        Raises:
            ValueError: If the kind is not supported
        """
        if format_type.lower() not in cls._exporters:
            raise ValueError(f"Unsupported export format: {format_type}")
        return cls._exporters[format_type.lower()]()
