"""Registry of built-in nonlinearities."""
from __future__ import annotations

from typing import Dict, Mapping, Optional, Type

from ..errors import ConfigError
from .base import Nonlinearity
from .cubic import Cubic
from .cubic_family import CubicFamily
from .quintic import Quintic
from .sinh import Sinh

REGISTRY: Dict[str, Type[Nonlinearity]] = {
    cls.name: cls for cls in (Cubic, Sinh, Quintic, CubicFamily)
}


def get_nonlinearity(name: str, params: Optional[Mapping[str, float]] = None) -> Nonlinearity:
    try:
        cls = REGISTRY[name]
    except KeyError as exc:
        raise ConfigError(f"Unknown nonlinearity {name!r}; choose from {', '.join(sorted(REGISTRY))}") from exc
    try:
        return cls(**dict(params or {}))
    except TypeError as exc:
        raise ConfigError(f"Bad parameters for nonlinearity {name!r}: {exc}") from exc


__all__ = ["Nonlinearity", "REGISTRY", "get_nonlinearity", "Cubic", "Sinh", "Quintic", "CubicFamily"]
