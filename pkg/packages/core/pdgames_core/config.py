"""Persistent solver settings schema and load/save helpers."""

from __future__ import annotations

import json
import os
import platform
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any


CONFIG_VERSION = 2
CAPS_ENV = "PDGAMES_CAPS"


@dataclass
class SearchConfig:
    max_classes: int = 6
    max_prefix: int = 8
    max_period: int = 8
    max_nodes: int = 200_000


@dataclass
class SimulationConfig:
    max_steps: int = 200
    max_height: int = 32
    seed: int = 0


@dataclass
class ValidationConfig:
    depth: int = 24
    height: int = 12


@dataclass
class DiagnosticsConfig:
    keep_log_files: int = 7


@dataclass
class AppConfig:
    config_version: int = CONFIG_VERSION
    search: SearchConfig = field(default_factory=SearchConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    validation: ValidationConfig = field(default_factory=ValidationConfig)
    diagnostics: DiagnosticsConfig = field(default_factory=DiagnosticsConfig)


DEFAULT_CONFIG = AppConfig()


def config_path() -> Path:
    system = platform.system()
    if system == "Windows":
        base = Path(os.environ.get("APPDATA", Path.home() / "AppData" / "Roaming"))
        return base / "pdgames" / "config.json"
    if system == "Darwin":
        return Path.home() / "Library" / "Application Support" / "pdgames" / "config.json"
    return Path.home() / ".config" / "pdgames" / "config.json"


def _merge(dataclass_type, raw: dict[str, Any]):
    defaults = dataclass_type()  # type: ignore[misc]
    for k, v in (raw or {}).items():
        if hasattr(defaults, k):
            setattr(defaults, k, v)
    return defaults


def _normalize_search(cfg: AppConfig) -> None:
    cfg.search.max_classes = max(1, min(64, int(cfg.search.max_classes)))
    cfg.search.max_prefix = max(1, int(cfg.search.max_prefix))
    cfg.search.max_period = max(1, int(cfg.search.max_period))
    cfg.search.max_nodes = max(1000, int(cfg.search.max_nodes))


def _normalize_bounds(cfg: AppConfig) -> None:
    cfg.simulation.max_steps = max(1, int(cfg.simulation.max_steps))
    cfg.simulation.max_height = max(1, int(cfg.simulation.max_height))
    cfg.simulation.seed = int(cfg.simulation.seed)
    cfg.validation.depth = max(1, int(cfg.validation.depth))
    cfg.validation.height = max(1, int(cfg.validation.height))
    cfg.diagnostics.keep_log_files = max(2, int(cfg.diagnostics.keep_log_files))


def _migrate(raw: dict[str, Any]) -> dict[str, Any]:
    version = int(raw.get("config_version", 1))
    data = dict(raw)

    if version < 2:
        # v1 kept the caps flat at top level.
        search = dict(data.get("search", {}) or {})
        for key in ("max_classes", "max_prefix", "max_period", "max_nodes"):
            if key in data:
                search.setdefault(key, data.pop(key))
        data["search"] = search
        data.setdefault("validation", {})
        data["config_version"] = 2

    return data


def parse_caps(text: str | None) -> tuple[int, int, int] | None:
    """Parse ``"classes,prefix,period"``; malformed values yield None."""
    if not text:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        return None
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        return None
    if any(v < 1 for v in values):
        return None
    return values  # type: ignore[return-value]


def _apply_env(cfg: AppConfig, environ: dict[str, str] | None = None) -> None:
    env = os.environ if environ is None else environ
    caps = parse_caps(env.get(CAPS_ENV))
    if caps is not None:
        cfg.search.max_classes, cfg.search.max_prefix, cfg.search.max_period = caps


def load_config(path: Path | None = None, environ: dict[str, str] | None = None) -> AppConfig:
    path = path or config_path()
    cfg = AppConfig()
    if path.exists():
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except Exception:
            raw = None
        if isinstance(raw, dict):
            data = _migrate(raw)
            cfg = AppConfig(
                config_version=int(data.get("config_version", CONFIG_VERSION)),
                search=_merge(SearchConfig, data.get("search", {})),
                simulation=_merge(SimulationConfig, data.get("simulation", {})),
                validation=_merge(ValidationConfig, data.get("validation", {})),
                diagnostics=_merge(DiagnosticsConfig, data.get("diagnostics", {})),
            )

    _apply_env(cfg, environ)
    _normalize_search(cfg)
    _normalize_bounds(cfg)
    return cfg


def save_config(cfg: AppConfig, path: Path | None = None) -> Path:
    cfg.config_version = CONFIG_VERSION
    path = path or config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(cfg), indent=2, sort_keys=True), encoding="utf-8")
    return path
