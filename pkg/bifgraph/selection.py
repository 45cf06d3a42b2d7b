"""Orbit representative choice for contour plots and the schematic y(u)."""
from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from .groups import SignedGroup

_MIRROR_TOL = 1e-6
_TIE_TOL = 1e-9


def schematic(u: np.ndarray, weights: Optional[np.ndarray] = None) -> float:
    """y_w(u) = Σ w_i |u_i| with w = 1 by default."""

    u = np.abs(np.asarray(u, dtype=float))
    if weights is None:
        return float(u.sum())
    return float(np.asarray(weights, dtype=float) @ u)


def _pair_distances(coords: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    i, j = np.triu_indices(len(coords), k=1)
    return i, j, np.linalg.norm(coords[i] - coords[j], axis=1)


def weighted_objective(u: np.ndarray, coords: np.ndarray) -> float:
    """Σ_{i<j} u_i u_j ‖d_ij‖; small when opposite signs sit far apart."""

    i, j, d = _pair_distances(coords)
    return float((u[i] * u[j] * d).sum())


def cardinality_objective(u: np.ndarray, coords: np.ndarray, decimals: int = 6) -> float:
    """Number of distinct values u_i u_j ‖d_ij‖."""

    i, j, d = _pair_distances(coords)
    return float(len(np.unique(np.round(u[i] * u[j] * d, decimals))))


def normalize_layout(coords: np.ndarray) -> np.ndarray:
    """Centre at the centroid and scale into the unit disk."""

    centred = np.asarray(coords, dtype=float) - np.mean(coords, axis=0)
    radius = np.abs(centred).max(initial=0.0)
    return centred / radius if radius > 0 else centred


def has_mirror(u: np.ndarray, coords: np.ndarray, tol: float = _MIRROR_TOL) -> bool:
    """True if reflecting across the vertical or horizontal axis preserves the plot."""

    norm = normalize_layout(coords)
    scale = max(1.0, float(np.abs(u).max(initial=0.0)))
    for flip in (np.array([-1.0, 1.0]), np.array([1.0, -1.0])):
        mirrored = norm * flip
        gaps = np.linalg.norm(mirrored[:, None, :] - norm[None, :, :], axis=2)
        partner = gaps.argmin(axis=1)
        if np.all(gaps[np.arange(len(u)), partner] < tol) and np.all(np.abs(u[partner] - u) < tol * scale):
            return True
    return False


def contour_select(u: np.ndarray, coords: np.ndarray, group: SignedGroup,
                   objective: str = "weighted") -> np.ndarray:
    """Representative of the Aut(G)-orbit of ``u`` for plotting.

    Minimizes the objective; ties prefer a mirror-symmetric picture, then the
    lexicographically smallest vector.
    """

    score = weighted_objective if objective == "weighted" else cardinality_objective
    perm_only = np.flatnonzero(group.signs > 0)
    images = np.unique(np.round(group.act_all(u, perm_only), 12), axis=0)
    scores = np.array([score(img, coords) for img in images])
    best = scores.min()
    tied = [img for img, sc in zip(images, scores) if sc <= best + _TIE_TOL * max(1.0, abs(best))]
    mirrored = [img for img in tied if has_mirror(img, coords)]
    pool = mirrored or tied
    # np.unique already sorts rows lexicographically
    return pool[0]
