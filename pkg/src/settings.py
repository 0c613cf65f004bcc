"""
File: settings.py

Purpose: Run-time configuration. Caps and defaults come from built-in values,
         then FUSION_LIMITS_* environment variables (a .env file is honoured
         through python-dotenv), then explicit overrides such as the optional
         root config.py module.

Imports from: dataclasses, logging, os, typing, dotenv, src.errors
Imported by: app.py, src.groups, src.fusion, src.cohomology, src.homalg

Key Functions:
- load_settings(): Build a Settings object from defaults, environment, overrides
- get_settings(): Process-wide settings (loaded once)
- use_settings(): Replace the process-wide settings
- configure_logging(): Install the single stream handler used by the CLI
- cohomology_degree_cap(): Highest degree allowed for a group of given order
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Mapping, Optional, Tuple
import logging
import os

from .errors import ConfigError

try:
    # Load environment variables from a .env file if present
    from dotenv import load_dotenv  # type: ignore
    load_dotenv()
except Exception:
    # dotenv is optional at import time; environment variables still apply
    pass


ENV_PREFIX = "FUSION_LIMITS_"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LIMIT_METHODS = ("auto", "cobar", "resolution")


@dataclass(frozen=True)
class Settings:
    group_size_cap: int = 10000
    morphism_cap: int = 2_000_000
    # (largest group order, highest degree) pairs, checked in order
    cohomology_degree_caps: Tuple[Tuple[int, int], ...] = ((16, 4), (32, 3), (64, 2))
    cohomology_degree_fallback: int = 1
    cochain_entry_cap: int = 60_000_000
    cobar_degree_cap: int = 5
    cobar_dimension_cap: int = 20000
    resolution_dimension_cap: int = 200_000
    dense_column_limit: int = 4096
    limit_method: str = "auto"
    output_dir: str = "reports"
    log_level: str = "WARNING"
    extra: Dict[str, Any] = field(default_factory=dict, compare=False)

    def validate(self) -> "Settings":
        for name in (
            "group_size_cap",
            "morphism_cap",
            "cochain_entry_cap",
            "cobar_degree_cap",
            "cobar_dimension_cap",
            "resolution_dimension_cap",
            "dense_column_limit",
        ):
            if getattr(self, name) <= 0:
                raise ConfigError(f"Invalid {name}: {getattr(self, name)} (must be positive)")
        for order, degree in self.cohomology_degree_caps:
            if order <= 0 or degree < 0:
                raise ConfigError(f"Invalid cohomology degree cap: ({order}, {degree})")
        if self.limit_method not in LIMIT_METHODS:
            raise ConfigError(f"Invalid limit_method: {self.limit_method}")
        if logging.getLevelName(self.log_level.upper()) == f"Level {self.log_level.upper()}":
            raise ConfigError(f"Invalid log_level: {self.log_level}")
        return self


def _coerce(name: str, raw: Any, current: Any) -> Any:
    if isinstance(current, bool):
        return str(raw).lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        try:
            return int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"Invalid {name}: {raw!r} (expected an integer)")
    if name == "cohomology_degree_caps":
        if isinstance(raw, str):
            # "16:4,32:3,64:2"
            try:
                pairs = [item.split(":") for item in raw.split(",") if item.strip()]
                return tuple((int(a), int(b)) for a, b in pairs)
            except ValueError:
                raise ConfigError(f"Invalid cohomology_degree_caps: {raw!r}")
        return tuple((int(a), int(b)) for a, b in raw)
    return str(raw)


def load_settings(overrides: Optional[Mapping[str, Any]] = None) -> Settings:
    """
    Build settings from defaults, FUSION_LIMITS_* variables and overrides.

    Args:
        overrides: Mapping of field name (case-insensitive) to value

    Returns:
        Validated Settings
    """
    base = Settings()
    values: Dict[str, Any] = {}
    for f in fields(Settings):
        if f.name == "extra":
            continue
        env_value = os.getenv(ENV_PREFIX + f.name.upper())
        if env_value is not None:
            values[f.name] = _coerce(f.name, env_value, getattr(base, f.name))

    extra: Dict[str, Any] = {}
    known = {f.name for f in fields(Settings)}
    for key, value in (overrides or {}).items():
        name = key.lower()
        if name in known and name != "extra":
            values[name] = _coerce(name, value, getattr(base, name))
        else:
            extra[name] = value

    return replace(base, extra=extra, **values).validate()


def settings_from_module(module: Any) -> Dict[str, Any]:
    """Collect UPPER_CASE attributes of an optional config module as overrides."""
    if module is None:
        return {}
    return {
        name: getattr(module, name)
        for name in dir(module)
        if name.isupper() and not name.startswith("_")
    }


_active: Optional[Settings] = None


def get_settings() -> Settings:
    global _active
    if _active is None:
        _active = load_settings()
    return _active


def use_settings(settings: Settings) -> Settings:
    global _active
    _active = settings.validate()
    return _active


def cohomology_degree_cap(order: int, settings: Optional[Settings] = None) -> int:
    cfg = settings or get_settings()
    for bound, degree in cfg.cohomology_degree_caps:
        if order <= bound:
            return degree
    return cfg.cohomology_degree_fallback


def configure_logging(level: Optional[str] = None) -> None:
    """Install one stream handler on the root logger (idempotent)."""
    name = (level or get_settings().log_level).upper()
    root = logging.getLogger()
    root.setLevel(name)
    if not any(getattr(h, "_fusion_limits", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._fusion_limits = True  # type: ignore[attr-defined]
        root.addHandler(handler)
