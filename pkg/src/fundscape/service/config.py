"""Service configuration: key = value file, environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

from ..errors import ValidationError

#: env var -> config field
ENV_KEYS = {
    "FUNDSCAPE_HOST": "host",
    "FUNDSCAPE_PORT": "port",
    "FUNDSCAPE_SNAPSHOT": "snapshot_path",
    "FUNDSCAPE_REGISTRY": "registry_path",
    "FUNDSCAPE_STATIC": "static_path",
    "FUNDSCAPE_SEED": "seed",
    "FUNDSCAPE_THRESHOLD": "threshold",
}

_INT_FIELDS = {"port", "seed", "cache_size"}
_FLOAT_FIELDS = {"threshold"}


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    snapshot_path: str | None = None
    registry_path: str | None = None
    static_path: str | None = None
    seed: int = 0
    threshold: float = 0.5
    cache_size: int = 32

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValidationError(f"port {self.port} out of range")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError("threshold must be in [0, 1]")
        if self.cache_size < 1:
            raise ValidationError("cache_size must be >= 1")


def parse_config_file(path) -> dict:
    """Parse a flat ``key = value`` file; '#' starts a comment, values may
    be quoted."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}: line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        value = value.strip().strip("'\"")
        values[key.strip()] = value
    return values


def _coerce(field: str, value):
    if field in _INT_FIELDS:
        return int(value)
    if field in _FLOAT_FIELDS:
        return float(value)
    return value


def load_config(path=None, env=None, **overrides) -> ServiceConfig:
    """Build the config: file first, then environment, then keyword
    overrides (highest precedence)."""
    env = os.environ if env is None else env
    config = ServiceConfig()
    if path is not None:
        fields = {}
        for key, value in parse_config_file(path).items():
            if key not in ServiceConfig.__dataclass_fields__:
                raise ValidationError(f"{path}: unknown config key {key!r}")
            fields[key] = _coerce(key, value)
        config = replace(config, **fields)
    env_fields = {
        field: _coerce(field, env[var])
        for var, field in ENV_KEYS.items()
        if var in env
    }
    if env_fields:
        config = replace(config, **env_fields)
    clean = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **clean) if clean else config
