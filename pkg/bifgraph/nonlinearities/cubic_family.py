"""f_s(t) = s·t + α·t² + β·t³; odd only when α = 0."""
from __future__ import annotations

import numpy as np

from .base import Nonlinearity


class CubicFamily(Nonlinearity):
    name = "cubic_family"
    linear_in_s = True

    def __init__(self, alpha: float = 0.5, beta: float = 1.0):
        self.alpha = float(alpha)
        self.beta = float(beta)

    @property
    def is_odd(self) -> bool:
        return self.alpha == 0.0

    def f(self, t, s):
        t = np.asarray(t, dtype=float)
        return s * t + self.alpha * t ** 2 + self.beta * t ** 3

    def df(self, t, s):
        t = np.asarray(t, dtype=float)
        return s + 2.0 * self.alpha * t + 3.0 * self.beta * t ** 2

    def primitive(self, t, s):
        t = np.asarray(t, dtype=float)
        return 0.5 * s * t ** 2 + self.alpha * t ** 3 / 3.0 + 0.25 * self.beta * t ** 4

    def df_ds(self, t, s):
        return np.asarray(t, dtype=float)

    def __repr__(self) -> str:
        return f"CubicFamily(alpha={self.alpha}, beta={self.beta})"
