"""
Configuration utilities for the adsb-sentinel library.
"""

import os
from typing import Any, Optional

ENV_PREFIX = "ADSB_SENTINEL_"


def get_env_config(key: str, default: Any = None) -> Any:
    """Get a configuration value from environment variables.

    Args:
        key: The configuration key (will be prefixed with ADSB_SENTINEL_)
        default: The default value if not found

    Returns:
        The configuration value
    """
    env_key = f"{ENV_PREFIX}{key.upper()}"
    if env_key in os.environ:
        return os.environ[env_key]
    return default


def get_env_bool(key: str, default: bool = False) -> bool:
    """Get a boolean configuration value from environment variables.

    Args:
        key: The configuration key (will be prefixed with ADSB_SENTINEL_)
        default: The default value if not set

    Returns:
        The boolean value
    """
    value = get_env_config(key)
    if value is None:
        return default
    return str(value).lower() in ("true", "1", "yes", "y", "t")


def get_worker_count() -> int:
    """Number of worker threads for data-parallel stages.

    Reads ``ADSB_SENTINEL_THREADS``; falls back to the number of cores.
    Invalid or non-positive values fall back as well.
    """
    fallback = os.cpu_count() or 1
    raw = get_env_config("threads")
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except (TypeError, ValueError):
        return fallback
    return value if value > 0 else fallback


def merge_configs(
    base: dict[str, Any], override: Optional[dict[str, Any]] = None
) -> dict[str, Any]:
    """Merge configuration dictionaries.

    Args:
        base: The base configuration
        override: The override configuration

    Returns:
        The merged configuration
    """
    if override is None:
        return base.copy()

    result = base.copy()
    for key, value in override.items():
        if isinstance(value, dict) and key in result and isinstance(result[key], dict):
            result[key] = merge_configs(result[key], value)
        else:
            result[key] = value

    return result
