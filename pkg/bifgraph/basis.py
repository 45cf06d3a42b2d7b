"""Symmetry-adapted eigenbasis Ψ of L and isotypic bases in Ψ-coordinates."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .digraph import intersection_basis
from .errors import NumericalError
from .groups import SignedGroup
from .isotropy import SymmetryLattice
from .models import BifurcationArrow, IsotypicDecomposition, Spectrum, SymmetryAdaptedBasis

LOGGER = logging.getLogger(__name__)

_KEEP_TOL = 1e-6


def _restricted_eigenbasis(lap: np.ndarray, subspace: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if subspace.shape[1] == 0:
        return np.zeros(0), subspace
    values, vectors = linalg.eigh(subspace.T @ lap @ subspace)
    return values, subspace @ vectors


def _sign_normalize(vectors: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    out = vectors.copy()
    for c in range(out.shape[1]):
        nonzero = np.flatnonzero(np.abs(out[:, c]) > tol)
        if len(nonzero) and out[nonzero[0], c] < 0:
            out[:, c] *= -1.0
    return out


def _orbit_gram_schmidt(group: SignedGroup, seeds: np.ndarray, target_dim: int) -> np.ndarray:
    """Orthonormal vectors from ``seeds`` followed by their Γ₀-images."""

    kept: List[np.ndarray] = []

    def offer(v: np.ndarray) -> None:
        w = v.copy()
        for q in kept:
            w -= (q @ w) * q
        for q in kept:
            w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if norm > _KEEP_TOL:
            kept.append(w / norm)

    for v in seeds.T:
        offer(v)
    for v in seeds.T:
        if len(kept) >= target_dim:
            break
        for image in group.act_all(v):
            offer(image)
            if len(kept) >= target_dim:
                break
    if not kept:
        return np.zeros((group.n, 0))
    return np.column_stack(kept)


def _first_arrow(arrows: Sequence[BifurcationArrow], k: int) -> Optional[BifurcationArrow]:
    for arrow in arrows:
        if arrow.mother == 0 and arrow.k == k:
            return arrow
    return None


def symmetry_adapted_basis(lap: np.ndarray, spectrum: Spectrum, lattice: SymmetryLattice,
                           decompositions: Sequence[IsotypicDecomposition],
                           arrows: Sequence[BifurcationArrow],
                           m: Optional[int] = None) -> SymmetryAdaptedBasis:
    """Eigenbasis of L with every vector inside one Γ₀ isotypic component.

    For each k the first arrow Γ₀ --k--> Γ_j picks the seed space
    V^(k) ∩ fix(Γ_j); its L-eigenbasis is extended to all of V^(k) by
    Gram–Schmidt over the Γ₀-orbit. Vectors are sorted by eigenvalue, then k.
    """

    group = lattice.group
    lap = np.asarray(lap, dtype=float)
    columns: List[np.ndarray] = []
    tags: List[int] = []
    for comp in decompositions[0].components:
        if comp.dim == 0:
            continue
        arrow = _first_arrow(arrows, comp.k)
        if arrow is None:
            _, vectors = _restricted_eigenbasis(lap, comp.basis)
        else:
            seed_space = intersection_basis(comp.basis, lattice.fixed_bases[arrow.daughter])
            _, seeds = _restricted_eigenbasis(lap, seed_space)
            vectors = _orbit_gram_schmidt(group, _sign_normalize(seeds), comp.dim)
            if vectors.shape[1] != comp.dim:
                LOGGER.warning(
                    "[BASIS] orbit of V^(%d) ∩ fix(Γ_%d) spans %d of %d dimensions; using plain eigenbasis",
                    comp.k, arrow.daughter, vectors.shape[1], comp.dim,
                )
                _, vectors = _restricted_eigenbasis(lap, comp.basis)
        columns.append(vectors)
        tags += [comp.k] * vectors.shape[1]

    psi = _sign_normalize(np.column_stack(columns))
    eigenvalues = np.einsum("ij,ij->j", psi, lap @ psi)
    order = np.lexsort((np.arange(psi.shape[1]), np.array(tags), np.round(eigenvalues, 8)))
    psi, eigenvalues, tags_arr = psi[:, order], eigenvalues[order], np.array(tags)[order]

    residual = np.abs(lap @ psi - psi * eigenvalues).max() if psi.size else 0.0
    if residual > 1e-8 * max(1.0, float(np.abs(spectrum.eigenvalues).max(initial=0.0))):
        raise NumericalError(f"Symmetry-adapted basis is not an eigenbasis (residual {residual:.2e})")
    gram_err = np.abs(psi.T @ psi - np.eye(psi.shape[1])).max()
    if gram_err > 1e-9:
        raise NumericalError(f"Symmetry-adapted basis is not orthonormal ({gram_err:.2e})")
    if m is not None:
        psi, eigenvalues, tags_arr = psi[:, :m], eigenvalues[:m], tags_arr[:m]

    basis = SymmetryAdaptedBasis(psi=psi, eigenvalues=eigenvalues, tags=tags_arr)
    basis.coords = projection_bases(basis, decompositions)
    LOGGER.info("[BASIS] m = %d, eigenvalues %s", basis.m, np.array2string(np.round(eigenvalues, 6)))
    return basis


def projection_bases(basis: SymmetryAdaptedBasis,
                     decompositions: Sequence[IsotypicDecomposition]) -> Dict[Tuple[int, int], np.ndarray]:
    """``(i, k) -> Ψᵀ B^(k)_{Γ_i}`` for every symmetry and component."""

    return {
        (dec.index, comp.k): basis.psi.T @ comp.basis
        for dec in decompositions
        for comp in dec.components
    }


def write_projection_bases(decompositions: Sequence[IsotypicDecomposition], path: str | Path,
                           basis: Optional[SymmetryAdaptedBasis] = None) -> None:
    """Header ``i k dim`` per component, then one basis vector per line.

    Vectors are in vertex coordinates, or in Ψ-coordinates when ``basis`` is
    given.
    """

    lines = []
    for dec in decompositions:
        for comp in dec.components:
            vectors = comp.basis if basis is None else basis.coords[(dec.index, comp.k)]
            lines.append(f"{dec.index} {comp.k} {comp.dim}")
            lines += [" ".join(f"{x:.15g}" for x in col) for col in vectors.T]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_basis(basis: SymmetryAdaptedBasis, path: str | Path) -> None:
    lines = []
    for j in range(basis.m):
        lines.append(f"{j + 1} {basis.eigenvalues[j]:.15g} {int(basis.tags[j])}")
        lines.append(" ".join(f"{x:.15g}" for x in basis.psi[:, j]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
