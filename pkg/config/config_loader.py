# config/config_loader.py
"""
Configuration loader utility.
Loads config.json and applies environment overrides.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict

from core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "json_config" / "config.json"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
REPORT_FORMATS = ("json", "csv")


def _env_int(name: str, fallback: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return fallback
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer", name, raw)
        return fallback


def apply_env_overrides(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Overlay RADIOMATCH_* environment variables on a loaded config.

    Malformed numbers keep the file value.
    """
    config = dict(config)
    output_dir = os.getenv("RADIOMATCH_OUTPUT_DIR", "").strip()
    if output_dir:
        config["output_dir"] = output_dir
    config["workers"] = _env_int("RADIOMATCH_WORKERS", config.get("workers", 1))
    config["trace_cap"] = _env_int("RADIOMATCH_TRACE_CAP", config.get("trace_cap", 0))
    level = os.getenv("RADIOMATCH_LOG_LEVEL", "").strip().upper()
    if level:
        config["log_level"] = level
    return config


def load_config(config_path: str | Path = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    """
    Load configuration from a JSON file and apply environment overrides.

    Args:
        config_path: Path to config.json in config/json_config

    Raises:
        ConfigError: file missing or not valid JSON
    """
    path = Path(config_path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            config = json.load(f)
    except FileNotFoundError as exc:
        raise ConfigError(f"Config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config file {path} is not valid JSON: {exc}") from exc

    return apply_env_overrides(config)


def _positive(config: Dict[str, Any], *keys: str) -> None:
    for key in keys:
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
            raise ConfigError(f"Config field '{key}' must be a positive number, got {value!r}")


def validate_config(config: Dict[str, Any]) -> None:
    """
    Validate that config has all required fields with sane values.

    Raises:
        ConfigError: missing field or value out of range
    """
    required_fields = [
        "schedule", "id_mode", "id_bits_factor", "trace_cap", "default_seed", "trials",
        "workers", "output_dir", "report_format", "report_schema_version", "oracle_limits",
    ]
    for field in required_fields:
        if field not in config:
            raise ConfigError(f"Missing required config field: {field}")

    schedule = config["schedule"]
    if "C" not in schedule or "log_mode" not in schedule:
        raise ConfigError("schedule needs both 'C' and 'log_mode'")
    _positive(schedule, "C")
    if schedule["log_mode"] not in ("natural", "binary"):
        raise ConfigError(f"schedule.log_mode must be natural or binary, got {schedule['log_mode']!r}")

    if config["id_mode"] not in ("index", "random"):
        raise ConfigError(f"id_mode must be index or random, got {config['id_mode']!r}")
    _positive(config, "id_bits_factor", "trials", "workers", "report_schema_version")
    if config["trace_cap"] < 0:
        raise ConfigError(f"trace_cap must be >= 0, got {config['trace_cap']}")
    if not isinstance(config["default_seed"], int) or config["default_seed"] < 0:
        raise ConfigError(f"default_seed must be a non-negative integer, got {config['default_seed']!r}")
    if config["report_format"] not in REPORT_FORMATS:
        raise ConfigError(f"report_format must be one of {REPORT_FORMATS}")
    if config.get("log_level", "WARNING") not in LOG_LEVELS:
        raise ConfigError(f"log level must be one of {LOG_LEVELS}, got {config['log_level']!r}")

    limits = config["oracle_limits"]
    required_limits = [
        "cover_max_nodes", "naf_max_nodes", "naf_max_degree_product",
        "pair_max_nodes", "enumeration_max_nodes", "maximum_matching_max_nodes",
    ]
    for key in required_limits:
        if key not in limits:
            raise ConfigError(f"Missing oracle limit: {key}")
    _positive(limits, *required_limits)
