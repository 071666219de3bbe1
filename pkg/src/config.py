"""Configuration loading for the command-line tool.

Settings are merged from, in increasing priority:
1. Built-in defaults
2. A JSON file (``--config``, or ``nonorientable.json`` when present)
3. Environment variables prefixed ``NONOR_``
4. Command-line flags (applied by the CLI)

Environment Variables:
    NONOR_BRANCH_LIMIT=64
    NONOR_FORMAT=text|json
    NONOR_SEED=20240601
    NONOR_SAMPLE_WORDS=200
    NONOR_N4_READING=auto|literal|corrected
"""

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

DEFAULT_CONFIG_FILE = "nonorientable.json"
ENV_PREFIX = "NONOR_"

OUTPUT_FORMATS = ("text", "json")
N4_READINGS = ("auto", "literal", "corrected")


class ConfigError(Exception):
    """Raised when configuration loading fails."""

    pass


@dataclass(frozen=True)
class Settings:
    """Effective settings of one invocation."""

    branch_limit: int = 64
    output_format: str = "text"
    random_seed: int = 20240601
    sample_words: int = 200
    n4_reading: str = "auto"

    def merged(self, overrides: Mapping[str, Any]) -> "Settings":
        """Copy with validated overrides; None values are ignored."""
        values = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(values) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"Unknown setting(s): {', '.join(sorted(unknown))}")
        return validate(replace(self, **values))


# env suffix -> (field, parser)
ENV_FIELDS = {
    "BRANCH_LIMIT": ("branch_limit", int),
    "FORMAT": ("output_format", str),
    "SEED": ("random_seed", int),
    "SAMPLE_WORDS": ("sample_words", int),
    "N4_READING": ("n4_reading", str),
}


def validate(settings: Settings) -> Settings:
    """Check ranges and choices.

    Raises:
        ConfigError: On a non-integer count, a value out of range or an unknown choice
    """
    for name in ("branch_limit", "random_seed", "sample_words"):
        value = getattr(settings, name)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
    if settings.branch_limit < 1:
        raise ConfigError(f"branch_limit must be at least 1, got {settings.branch_limit}")
    if settings.sample_words < 0:
        raise ConfigError(f"sample_words must be non-negative, got {settings.sample_words}")
    if settings.output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, got {settings.output_format!r}")
    if settings.n4_reading not in N4_READINGS:
        raise ConfigError(f"n4_reading must be one of {', '.join(N4_READINGS)}, got {settings.n4_reading!r}")
    return settings


def load_from_json(config_path: str) -> dict[str, Any]:
    """Load setting overrides from a JSON object.

    Raises:
        ConfigError: If the file doesn't exist, contains invalid JSON,
                    or is not a JSON object.
    """
    path = Path(config_path)

    if not path.exists():
        raise ConfigError(f"Config file not found: {config_path}")

    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in config file: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError("Config file must contain a JSON object")
    return data


def load_from_env(environ: Optional[Mapping[str, str]] = None) -> dict[str, Any]:
    """Collect NONOR_* overrides.

    Raises:
        ConfigError: If an integer variable does not parse
    """
    env = os.environ if environ is None else environ
    overrides: dict[str, Any] = {}
    for suffix, (name, parse) in ENV_FIELDS.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is None or raw == "":
            continue
        try:
            overrides[name] = parse(raw)
        except ValueError as e:
            raise ConfigError(f"Invalid value for {ENV_PREFIX}{suffix}: {raw!r}") from e
    return overrides


def load_settings(config_path: Optional[str] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Defaults, then the JSON file, then the environment.

    Args:
        config_path: Explicit config file; it must exist. When None,
            nonorientable.json is read if present.
        environ: Environment mapping (defaults to os.environ)

    Raises:
        ConfigError: On a missing explicit file, invalid JSON or invalid values
    """
    settings = Settings()
    if config_path is not None:
        settings = settings.merged(load_from_json(config_path))
    elif Path(DEFAULT_CONFIG_FILE).exists():
        settings = settings.merged(load_from_json(DEFAULT_CONFIG_FILE))
    return settings.merged(load_from_env(environ))
