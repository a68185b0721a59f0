"""Service configuration: TOML file plus VOXSYNC_* environment overrides."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

ENV_PREFIX = "VOXSYNC_"

_VOICE_ID = re.compile(r"^[A-Za-z0-9._-]+$")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class VoiceConfig:
    backend: str
    custom_lexicon: str | None = None
    cmu_dict: str | None = None


def default_voices() -> dict[str, VoiceConfig]:
    return {
        "einstein-fast": VoiceConfig(backend="mock_fast"),
        "einstein-glim": VoiceConfig(backend="mock_glim"),
    }


@dataclass(frozen=True)
class ServiceConfig:
    listen: str = "127.0.0.1:8300"
    base_url: str = "http://127.0.0.1:8300"
    storage_root: str = "voxsync-data/store"
    journal_path: str = "voxsync-data/cache.journal"
    pool_size: int = 0  # 0 = logical CPU count
    queue_depth: int = 64
    queue_timeout_s: float = 5.0
    max_cache_entries: int = 0  # 0 = unbounded
    cmu_dict: str | None = None  # None = bundled dictionary
    voices: dict[str, VoiceConfig] = field(default_factory=default_voices)

    def __post_init__(self):
        for voice_id in self.voices:
            if not _VOICE_ID.match(voice_id):
                raise ConfigError(f"invalid voice id {voice_id!r}")
        if self.queue_depth < 1:
            raise ConfigError("queue_depth must be >= 1")


_INT_KEYS = {"pool_size", "queue_depth", "max_cache_entries"}
_FLOAT_KEYS = {"queue_timeout_s"}
_STR_KEYS = {"listen", "base_url", "storage_root", "journal_path", "cmu_dict"}


def parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise ConfigError(f"listen must be host:port, got {listen!r}")
    return host, int(port)


def load_service_config(path: str | Path | None = None, env: dict | None = None) -> ServiceConfig:
    """Build the config from an optional TOML file, then apply env overrides."""
    values: dict = {}
    if path is not None:
        raw = tomllib.loads(Path(path).read_text(encoding="utf-8"))
        for key in _STR_KEYS | _INT_KEYS | _FLOAT_KEYS:
            if key in raw:
                values[key] = raw[key]
        if "voices" in raw:
            voices = {}
            for voice_id, spec in raw["voices"].items():
                if "backend" not in spec:
                    raise ConfigError(f"voice {voice_id!r} missing backend")
                voices[voice_id] = VoiceConfig(
                    backend=spec["backend"],
                    custom_lexicon=spec.get("custom_lexicon"),
                    cmu_dict=spec.get("cmu_dict"),
                )
            values["voices"] = voices
    config = ServiceConfig(**values)
    return apply_env_overrides(config, env if env is not None else os.environ)


def apply_env_overrides(config: ServiceConfig, env: dict) -> ServiceConfig:
    updates: dict = {}
    for key in _STR_KEYS:
        value = env.get(ENV_PREFIX + key.upper())
        if value is not None:
            updates[key] = value
    for key in _INT_KEYS:
        value = env.get(ENV_PREFIX + key.upper())
        if value is not None:
            updates[key] = int(value)
    for key in _FLOAT_KEYS:
        value = env.get(ENV_PREFIX + key.upper())
        if value is not None:
            updates[key] = float(value)
    return replace(config, **updates) if updates else config
