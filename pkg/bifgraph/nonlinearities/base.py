"""Nonlinearity interface for the family f_s(t)."""
from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np


class Nonlinearity(ABC):
    """Pointwise family f_s with f_s(0) = 0.

    ``linear_in_s`` declares the form f_s(t) = s·t + H(t), for which the
    parameter derivative of the gradient coefficients is exactly −a.
    """

    name: str = "base"
    linear_in_s: bool = False

    @abstractmethod
    def f(self, t: np.ndarray, s: float) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def df(self, t: np.ndarray, s: float) -> np.ndarray:
        """Derivative in t."""
        raise NotImplementedError

    @abstractmethod
    def primitive(self, t: np.ndarray, s: float) -> np.ndarray:
        """F_s with F_s(0) = 0 and F_s' = f_s."""
        raise NotImplementedError

    @property
    def is_odd(self) -> bool:
        return True

    def df_ds(self, t: np.ndarray, s: float) -> np.ndarray:
        """∂f_s/∂s, by central differences unless overridden."""

        h = 1e-6 * max(1.0, abs(s))
        return (self.f(t, s + h) - self.f(t, s - h)) / (2.0 * h)

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"
