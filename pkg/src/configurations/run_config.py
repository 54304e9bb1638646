import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from src.logging import logging
from src.exception import ConfigError
from src.schemas.config import RunConfig

TOLERANCE_PREFIX = "tolerance."

# Keys whose values are comma separated lists.
_LIST_KEYS = {"riesz_sizes"}


def _parse_lines(text: str, source: str) -> dict:
    values: dict = {}
    tolerances: dict = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{source}:{number}: empty key or value in {raw.strip()!r}")

        if key.startswith(TOLERANCE_PREFIX):
            target, name = tolerances, key[len(TOLERANCE_PREFIX):]
        else:
            target, name = values, key
        if name in target:
            raise ConfigError(f"{source}:{number}: duplicate key {key!r}")
        target[name] = [item.strip() for item in value.split(",")] if name in _LIST_KEYS else value

    if tolerances:
        values["tolerances"] = tolerances
    return values


def parse_config(path: Optional[str | Path] = None) -> RunConfig:
    """
    Read a flat 'key = value' file into a RunConfig.

    Args:
        path: config file; None gives the all-default configuration

    Returns:
        validated RunConfig

    Raises:
        ConfigError: unreadable file, malformed line, duplicate or unknown key,
            invariant violation
    """
    if path is None:
        return RunConfig()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logging.error(f"Cannot read config {path}: {e}")
        raise ConfigError(f"cannot read config file {path}: {e}", sys)

    values = _parse_lines(text, str(path))
    try:
        config = RunConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}" for error in e.errors())
        logging.error(f"Invalid config {path}: {problems}")
        raise ConfigError(f"invalid config {path}: {problems}")

    logging.info(f"Loaded config {path} ({len(values)} keys set)")
    return config
