"""Validation of paths, perturbations and analysis parameters."""

from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..core.exceptions import ValidationError
from ..core.models import OscState


class ConfigValidator:
    """Validates user-supplied settings before a run starts."""

    MAX_WORKERS = 256

    @classmethod
    def validate_config_path(cls, config_path: Union[str, Path]) -> Path:
        """Validate that a config file exists.

        Raises:
            ValidationError: If the path is not a file
        """
        path = Path(config_path)
        if not path.is_file():
            raise ValidationError(f"Config file does not exist: {path}")
        return path

    @classmethod
    def validate_output_path(cls, output_path: Union[str, Path]) -> Path:
        """Validate output path and create parent directories.

        Args:
            output_path: Output file path

        Returns:
            Validated Path object

        Raises:
            ValidationError: If path is invalid
        """
        try:
            path = Path(output_path)
            if path.exists() and path.is_dir():
                raise ValidationError(f"Output path is a directory: {path}")
            path.parent.mkdir(parents=True, exist_ok=True)
            return path
        except Exception as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"Invalid output path '{output_path}': {str(e)}")

    @classmethod
    def validate_component(cls, state: OscState, target: Tuple[str, int]) -> Tuple[str, int]:
        """Check that a perturbation target such as ('q', 3) exists in the state."""
        which, index = target
        size = len(state.q)
        if which not in ("q", "p") or not 0 <= index < size:
            raise ValidationError(f"Perturbation component {which}{index} does not exist (dimension {size})")
        return target

    @classmethod
    def validate_deltas(cls, state: OscState, target: Tuple[str, int], deltas: Sequence[float]) -> List[float]:
        """Keep the perturbation sizes that change the target component.

        Sizes below one ulp of the component are dropped with a warning.
        """
        which, index = cls.validate_component(state, target)
        base = float((state.q if which == "q" else state.p).data[index])
        ulp = float(np.spacing(abs(base)))
        accepted = []
        for delta in deltas:
            if not np.isfinite(delta):
                raise ValidationError(f"Perturbation size must be finite, got {delta}")
            if delta != 0.0 and abs(delta) < ulp:
                logger.warning(
                    f"Dropping perturbation {delta:g}: below one ulp ({ulp:.3g}) of {which}{index}={base:g}"
                )
                continue
            accepted.append(float(delta))
        return accepted

    @classmethod
    def validate_workers(cls, workers: int) -> int:
        """Validate the worker process count.

        Args:
            workers: Requested number of processes (1 runs in-process)

        Returns:
            The validated count

        Raises:
            ValidationError: If outside 1..MAX_WORKERS
        """
        if not 1 <= workers <= cls.MAX_WORKERS:
            raise ValidationError(f"workers must be between 1 and {cls.MAX_WORKERS}, got {workers}")
        return workers

    @classmethod
    def validate_resonance_parameters(cls, N: int, delta: float) -> Tuple[int, float]:
        """N >= 1 and 0 < delta <= 1/4."""
        if N < 1:
            raise ValidationError(f"N must be >= 1, got {N}")
        if not 0.0 < delta <= 0.25:
            raise ValidationError(f"delta must lie in (0, 1/4], got {delta}")
        return N, delta
