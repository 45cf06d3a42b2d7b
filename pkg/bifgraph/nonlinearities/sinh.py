"""f_s(t) = sinh(s·t)."""
from __future__ import annotations

import numpy as np

from .base import Nonlinearity

_SMALL_S = 1e-8


class Sinh(Nonlinearity):
    name = "sinh"

    def f(self, t, s):
        return np.sinh(s * np.asarray(t, dtype=float))

    def df(self, t, s):
        return s * np.cosh(s * np.asarray(t, dtype=float))

    def primitive(self, t, s):
        t = np.asarray(t, dtype=float)
        if abs(s) < _SMALL_S:
            # (cosh(st) − 1)/s → s t²/2 as s → 0
            return 0.5 * s * t ** 2
        return 2.0 * np.sinh(0.5 * s * t) ** 2 / s

    def df_ds(self, t, s):
        t = np.asarray(t, dtype=float)
        return t * np.cosh(s * t)
