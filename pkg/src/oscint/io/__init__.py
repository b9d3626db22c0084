"""Input/output utilities for oscint."""

from .exporters import (
    ENERGY_HEADER, EnergyCSVWriter, read_energy_csv, BaseExporter, ScanCSVExporter,
    SpectrumCSVExporter, ResonanceCSVExporter, EnsembleSummaryExporter, JSONSummaryExporter,
    ExporterFactory
)
from .config_file import load_config_file, merge_config, load_env_defaults
from .file_manager import FileManager
from .validators import ConfigValidator

__all__ = [
    "ENERGY_HEADER",
    "EnergyCSVWriter",
    "read_energy_csv",
    "BaseExporter",
    "ScanCSVExporter",
    "SpectrumCSVExporter",
    "ResonanceCSVExporter",
    "EnsembleSummaryExporter",
    "JSONSummaryExporter",
    "ExporterFactory",
    "load_config_file",
    "merge_config",
    "load_env_defaults",
    "FileManager",
    "ConfigValidator",
]
