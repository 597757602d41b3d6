"""Flat key-value config file loading.

Format: one `key = value` pair per line, `#` starts a comment, blank lines
ignored.  Keys are exactly the SimConfig field names; unknown keys are
rejected, missing keys take the documented defaults.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from .types import SimConfig, ValidationError


class ConfigError(ValueError):
    pass


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(SimConfig)}


def _coerce(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind in ("int", int):
            return int(raw)
        return float(raw)
    except ValueError:
        raise ConfigError(f"config key '{key}': cannot parse {raw!r}") from None


def parse_config(text: str, source: str = "<string>") -> SimConfig:
    overrides: dict[str, float | int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown config key '{key}'")
        if key in overrides:
            raise ConfigError(f"{source}:{lineno}: duplicate config key '{key}'")
        overrides[key] = _coerce(key, raw)

    try:
        return SimConfig(**overrides).validate()
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> SimConfig:
    path = Path(path)
    return parse_config(path.read_text(), source=str(path))


def config_to_dict(cfg: SimConfig) -> dict:
    return dataclasses.asdict(cfg)


def config_from_dict(data: dict) -> SimConfig:
    unknown = set(data) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        return SimConfig(**data).validate()
    except (ValidationError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
