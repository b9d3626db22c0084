"""Command-line interface for oscint."""

from .main import main
from .runner import SimulationRunner

__all__ = ["main", "SimulationRunner"]
