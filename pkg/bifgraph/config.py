"""Configuration loader for bifgraph runs.

Provides YAML-first loading with JSON fallback, section defaults merged in
one place, CLI override plumbing, and validation of the solver settings.
"""
from __future__ import annotations

import copy
import json
import logging
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict

from .errors import ConfigError
from .models import SolverConfig

try:
    import yaml
except Exception:  # pragma: no cover - optional dependency
    yaml = None


DEFAULT_CONFIG_PATH = Path("config.yaml")

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "graph": {
        "edgelist": None,
        "catalog": None,
        "blocks": None,
    },
    "logging": {
        "level": "INFO",
    },
    "layout": {
        "restarts": 10,
        "seed": 1,
        "charge": 1.0,
        "epsilon": 0.001,
        "spring_length": 1.0,
        "exponent": 1.1,
        "step": 0.1,
        "force_tol": 1e-6,
        "max_iterations": 20000,
        "threads": 1,
    },
    "symmetry": {
        "odd": None,
        "automorphism_node_limit": 10_000_000,
        "max_group_order": 2000,
        "condensation_max_order": 240,
        "condensation_budget": 1_000_000,
        "character_retries": 20,
        "seed": 7,
    },
    "solver": {},
    "render": {
        "format": "svg",
        "selection": "weighted",
        "weights": None,
        "contours": True,
    },
}


def load_config(path: str | None = None) -> Dict[str, Any]:
    """Load configuration from YAML or JSON.

    If ``path`` is ``None``, the loader will look for ``config.yaml`` in the
    working directory. YAML is preferred; if PyYAML is not installed, a JSON
    file with the same stem is used instead. The resolved file location is
    stored under ``_base_dir`` so relative paths inside the file (edgelists,
    output directories) resolve against it.
    """

    def _load_yaml(config_path: Path) -> Dict[str, Any]:
        if yaml is None:
            raise RuntimeError("PyYAML not installed; falling back to JSON")
        with config_path.open("r", encoding="utf-8") as f:
            try:
                return yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"Malformed YAML in {config_path}: {exc}") from exc

    def _load_json(config_path: Path) -> Dict[str, Any]:
        with config_path.open("r", encoding="utf-8") as f:
            try:
                return json.load(f)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"Malformed JSON in {config_path}: {exc}") from exc

    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found at {config_path}")

    if config_path.suffix.lower() == ".json":
        cfg = _load_json(config_path)
    else:
        try:
            cfg = _load_yaml(config_path)
        except RuntimeError:
            # Fall back to JSON with same stem if YAML unavailable
            json_path = config_path.with_suffix(".json")
            if not json_path.exists():
                raise
            cfg = _load_json(json_path)

    if not isinstance(cfg, dict):
        raise ConfigError(f"Config root in {config_path} must be a mapping")
    cfg["_base_dir"] = str(config_path.resolve().parent)
    return cfg


def get_section(global_cfg: Dict[str, Any], name: str) -> Dict[str, Any]:
    """Merge a config section over its defaults.

    Priority (lowest to highest):
    1. ``DEFAULTS[name]``
    2. The section in the loaded file
    3. CLI overrides stored under ``_overrides[name]``
    """

    section = global_cfg.get(name) or {}
    if not isinstance(section, dict):
        raise ConfigError(f"Config section '{name}' must be a mapping")
    overrides = (global_cfg.get("_overrides") or {}).get(name, {})
    merged = copy.deepcopy(DEFAULTS.get(name, {}))
    merged.update(section)
    merged.update(overrides)
    return merged


def apply_cli_overrides(global_cfg: Dict[str, Any], args: Any) -> Dict[str, Any]:
    """Record CLI flags as highest-priority overrides on ``global_cfg``."""

    overrides: Dict[str, Dict[str, Any]] = {"solver": {}, "layout": {}, "render": {}}
    mapping = {
        "seed": ("solver", "seed"),
        "nonlinearity": ("solver", "nonlinearity"),
        "s_min": ("solver", "s_min"),
        "s_max": ("solver", "s_max"),
        "epsilon": ("solver", "epsilon"),
        "threads": ("solver", "threads"),
        "format": ("render", "format"),
    }
    for attr, (section, key) in mapping.items():
        value = getattr(args, attr, None)
        if value is not None:
            overrides[section][key] = value
    threads = getattr(args, "threads", None)
    if threads is not None:
        overrides["layout"]["threads"] = threads
    global_cfg["_overrides"] = overrides
    out = getattr(args, "out", None)
    if out:
        global_cfg["output_dir"] = out
    return global_cfg


def resolve_path(global_cfg: Dict[str, Any], value: str | Path) -> Path:
    """Resolve ``value`` relative to the directory of the loaded config file."""

    path = Path(value)
    if path.is_absolute():
        return path
    return Path(global_cfg.get("_base_dir", ".")) / path


def output_dir(global_cfg: Dict[str, Any]) -> Path:
    return resolve_path(global_cfg, global_cfg.get("output_dir") or "runs/default")


LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "WARN": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


def logging_level(global_cfg: Dict[str, Any]) -> int:
    """Numeric level for the ``logging.level`` setting (a name or an integer)."""

    level = get_section(global_cfg, "logging")["level"]
    if isinstance(level, bool):
        raise ConfigError(f"Invalid logging level {level!r}")
    if isinstance(level, int):
        return level
    name = str(level).strip().upper()
    if name not in LOG_LEVELS:
        raise ConfigError(f"Unknown logging level {level!r}; use one of {', '.join(LOG_LEVELS)}")
    return LOG_LEVELS[name]


def solver_config(global_cfg: Dict[str, Any]) -> SolverConfig:
    """Build a validated :class:`SolverConfig` from the ``solver`` section."""

    section = get_section(global_cfg, "solver")
    known = {f.name for f in fields(SolverConfig)}
    unknown = sorted(set(section) - known)
    if unknown:
        raise ConfigError(f"Unknown solver settings: {', '.join(unknown)}")
    try:
        cfg = SolverConfig(**section)
        cfg.f_nc = {int(k): int(v) for k, v in (cfg.f_nc or {}).items()}
        cfg.nonlinearity_params = dict(cfg.nonlinearity_params or {})
        for name in ("s_min", "s_max", "norm_max", "c_min", "c_max", "c_init", "tau"):
            setattr(cfg, name, float(getattr(cfg, name)))
        if cfg.epsilon is not None:
            cfg.epsilon = float(cfg.epsilon)
        if cfg.s_start is not None:
            cfg.s_start = float(cfg.s_start)
        cfg.seed = int(cfg.seed)
        cfg.threads = int(cfg.threads)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid solver settings: {exc}") from exc

    if not 0 < cfg.c_min <= cfg.c_max:
        raise ConfigError(f"Need 0 < c_min <= c_max, got c_min={cfg.c_min}, c_max={cfg.c_max}")
    if not cfg.s_min < cfg.s_max:
        raise ConfigError(f"Empty s window [{cfg.s_min}, {cfg.s_max}]")
    if cfg.norm_max <= 0:
        raise ConfigError("norm_max must be positive")
    if cfg.epsilon is not None and cfg.epsilon <= 0:
        raise ConfigError("epsilon must be positive")
    if cfg.s_start is not None and not cfg.s_min <= cfg.s_start <= cfg.s_max:
        raise ConfigError("s_start must lie inside the s window")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    cfg.c_init = min(max(cfg.c_init, cfg.c_min), cfg.c_max)
    return cfg
