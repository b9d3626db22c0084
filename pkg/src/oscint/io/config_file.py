"""Flat key=value configuration files and .env defaults."""

import configparser
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv
from loguru import logger

from ..core.exceptions import ConfigurationError

_SECTION = "run"

_ALIASES = {
    "sample_stride": "stride",
    "homega": "h_omega",
    "tend": "t_end",
    "delta_list": "deltas",
}


def normalize_key(key: str) -> str:
    key = key.strip().lower().lstrip("-").replace("-", "_")
    return _ALIASES.get(key, key)


def load_config_file(path: Path) -> Dict[str, str]:
    """Read a flat key=value file; a leading [run] section header is optional.

    Raises:
        ConfigurationError: If the file is missing or malformed
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file does not exist: {path}")
    try:
        text = path.read_text(encoding="utf-8")
        parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
        if not text.lstrip().startswith("["):
            text = f"[{_SECTION}]\n{text}"
        parser.read_string(text, source=str(path))
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed config file {path}: {e}") from e

    values: Dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            values[normalize_key(key)] = value.strip()
    logger.info(f"Loaded {len(values)} settings from {path}")
    return values


def merge_config(file_values: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """File values overridden by every flag that was actually given (not None)."""
    merged: Dict[str, Any] = {normalize_key(k): v for k, v in file_values.items()}
    for key, value in overrides.items():
        if value is not None:
            merged[normalize_key(key)] = value
    return merged


def load_env_defaults(env_file: Optional[Path] = None) -> Dict[str, Any]:
    """OSCINT_LOG_LEVEL and OSCINT_WORKERS from the environment or a .env file."""
    load_dotenv(dotenv_path=env_file, override=False)
    defaults: Dict[str, Any] = {}
    level = os.getenv("OSCINT_LOG_LEVEL")
    if level:
        defaults["log_level"] = level.upper()
    workers = os.getenv("OSCINT_WORKERS")
    if workers:
        try:
            defaults["workers"] = int(workers)
        except ValueError:
            logger.warning(f"Ignoring non-integer OSCINT_WORKERS={workers!r}")
    return defaults
