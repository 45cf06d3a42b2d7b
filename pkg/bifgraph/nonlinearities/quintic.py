"""f_s(t) = (s·t + t³)(t² − 1)."""
from __future__ import annotations

import numpy as np

from .base import Nonlinearity


class Quintic(Nonlinearity):
    name = "quintic"

    def f(self, t, s):
        t = np.asarray(t, dtype=float)
        return (s * t + t ** 3) * (t ** 2 - 1.0)

    def df(self, t, s):
        t = np.asarray(t, dtype=float)
        return 5.0 * t ** 4 + 3.0 * (s - 1.0) * t ** 2 - s

    def primitive(self, t, s):
        t = np.asarray(t, dtype=float)
        return t ** 6 / 6.0 + (s - 1.0) * t ** 4 / 4.0 - 0.5 * s * t ** 2

    def df_ds(self, t, s):
        t = np.asarray(t, dtype=float)
        return t ** 3 - t
