"""Isomorphism-class names for small groups given by a multiplication table."""
from __future__ import annotations

from collections import Counter
from typing import Dict, List, Tuple

import numpy as np
from sympy import factorint

# Element-order histograms of the non-abelian groups drawn in digraphs that
# the cyclic/dihedral/dicyclic tests below do not already name.
_KNOWN: Dict[Tuple[int, Tuple[Tuple[int, int], ...]], str] = {
    (12, ((1, 1), (2, 3), (3, 8))): "A4",
    (16, ((1, 1), (2, 11), (4, 4))): "D4×Z2",
    (16, ((1, 1), (2, 3), (4, 12))): "Q×Z2",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (24, ((1, 1), (2, 7), (3, 8), (6, 8))): "A4×Z2",
    (24, ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8))): "SL(2,3)",
    (24, ((1, 1), (2, 15), (3, 2), (6, 6))): "D6×Z2",
    (48, ((1, 1), (2, 19), (3, 8), (4, 12), (6, 8))): "S4×Z2",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A5",
    (120, ((1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20))): "S5",
    (120, ((1, 1), (2, 31), (3, 20), (5, 24), (6, 20), (10, 24))): "A5×Z2",
    (240, ((1, 1), (2, 51), (3, 20), (4, 60), (5, 24), (6, 40), (10, 24))): "S5×Z2",
}


def element_orders(table: np.ndarray) -> np.ndarray:
    size = len(table)
    idx = np.arange(size)
    orders = np.zeros(size, dtype=int)
    power = idx.copy()
    k = 1
    while np.any(orders == 0):
        orders[(power == 0) & (orders == 0)] = k
        power = table[power, idx]
        k += 1
    return orders


def invariant_factors(orders: np.ndarray) -> List[int]:
    """Invariant factors d₁ | d₂ | … of an abelian group from its element orders."""

    size = len(orders)
    partitions = {}
    for p, exponent in factorint(size).items():
        counts = []
        for k in range(exponent + 1):
            divisible = np.count_nonzero((p ** k) % orders == 0)
            counts.append(int(round(np.log(divisible) / np.log(p))))
        # number of cyclic p-factors of exponent >= k
        at_least = [counts[k] - counts[k - 1] for k in range(1, exponent + 1)]
        parts = []
        for k in range(len(at_least)):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            parts += [k + 1] * (at_least[k] - nxt)
        partitions[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in partitions.values()), default=0)
    factors = [1] * width
    for p, parts in partitions.items():
        for t, e in enumerate(parts):
            factors[t] *= p ** e
    return sorted(f for f in factors if f > 1)


def name_group(table: np.ndarray) -> str:
    """Standard name (Z_n, Z2×Z2, S3, D_n, Q, Dic_n, A4, S4, ...) or ``G_order_classes``."""

    table = np.asarray(table)
    size = len(table)
    if size == 1:
        return "Z1"
    orders = element_orders(table)
    if np.array_equal(table, table.T):
        return "×".join(f"Z{f}" for f in invariant_factors(orders))

    hist = Counter(int(o) for o in orders)
    if size == 6:
        return "S3"
    if size == 8:
        return "Q" if hist[2] == 1 else "D4"
    half = size // 2
    rotations = np.flatnonzero(orders == half)
    if len(rotations):
        r = rotations[0]
        powers = np.zeros(size, dtype=bool)
        cur = 0
        for _ in range(half):
            powers[cur] = True
            cur = table[cur, r]
        outside = orders[~powers]
        if np.all(outside == 2):
            return f"D{half}"
        if hist[2] == 1 and np.all(outside == 4):
            return "Q" if size == 8 else f"Dic{size // 4}"

    key = (size, tuple(sorted(hist.items())))
    if key in _KNOWN:
        return _KNOWN[key]
    idx = np.arange(size)
    inverse = np.argmax(table == 0, axis=1)
    classes = {int(np.unique(table[table[:, x], inverse])[0]) for x in idx}
    return f"G_{size}_{len(classes)}"
