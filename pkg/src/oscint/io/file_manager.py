"""Output file naming and housekeeping."""

from datetime import datetime
from pathlib import Path
from typing import Optional

from loguru import logger

from ..core.exceptions import OutputError
from ..core.models import OutputPaths


class FileManager:
    """Manages output locations of runs, ensembles and scans."""

    @staticmethod
    def generate_timestamp() -> str:
        """Timestamp string in format YYYYMMDD_HHMMSS."""
        return datetime.now().strftime("%Y%m%d_%H%M%S")

    @staticmethod
    def default_csv_name(kind: str, label: str) -> str:
        safe = "".join(c if c.isalnum() or c in "._-" else "_" for c in label).strip("_")
        return f"{kind}_{safe}_{FileManager.generate_timestamp()}.csv"

    @staticmethod
    def create_output_paths(csv_file: Optional[Path], kind: str, label: str,
                            output_dir: Path = Path("output")) -> OutputPaths:
        """CSV path (given or generated) and the JSON summary next to it.

        Raises:
            OutputError: If the directories cannot be created
        """
        if csv_file is None:
            csv_file = output_dir / FileManager.default_csv_name(kind, label)
        csv_file = Path(csv_file)
        paths = OutputPaths(csv_file=csv_file, summary_file=csv_file.with_suffix(".json"))
        try:
            paths.create_directories()
        except Exception as e:
            raise OutputError(f"Cannot create output directory for {csv_file}: {str(e)}") from e
        logger.debug(f"Output paths: {paths.csv_file}, {paths.summary_file}")
        return paths

    @staticmethod
    def member_path(base_csv: Path, index: int) -> Path:
        """CSV path of ensemble member ``index`` (0 is the unperturbed run)."""
        base_csv = Path(base_csv)
        return base_csv.with_name(f"{base_csv.stem}_member{index:03d}{base_csv.suffix or '.csv'}")

    @staticmethod
    def summary_path(base_csv: Path, suffix: str = "summary") -> Path:
        """Sibling of ``base_csv`` named <stem>_<suffix> with the same extension."""
        base_csv = Path(base_csv)
        return base_csv.with_name(f"{base_csv.stem}_{suffix}{base_csv.suffix or '.csv'}")
