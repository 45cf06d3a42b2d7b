"""Default nonlinearity f_s(t) = s·t + t³."""
from __future__ import annotations

import numpy as np

from .base import Nonlinearity


class Cubic(Nonlinearity):
    name = "cubic"
    linear_in_s = True

    def f(self, t, s):
        t = np.asarray(t, dtype=float)
        return s * t + t ** 3

    def df(self, t, s):
        t = np.asarray(t, dtype=float)
        return s + 3.0 * t ** 2

    def primitive(self, t, s):
        t = np.asarray(t, dtype=float)
        return 0.5 * s * t ** 2 + 0.25 * t ** 4

    def df_ds(self, t, s):
        return np.asarray(t, dtype=float)
