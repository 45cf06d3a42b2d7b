"""Daughter search at a located bifurcation point.

Given p* on a branch of symmetry Γ_i and its critical eigenspace E, the
expected daughter symmetries J̄ are the maximal isotropy subgroups of the
Γ_i action on E (plus Γ_i itself when E meets fix(Γ_i)). Each search
subspace E_j = E ∩ fix(Γ_j) is sampled with random ±e cylinder guesses until
f_nc(dim E_j) consecutive directions bring nothing new.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .digraph import component_isotropy, intersection_basis
from .gnga import GNGASolver
from .models import (
    AuditResult,
    BifurcationRecord,
    CriticalEigenspace,
    Daughter,
    IsotypicDecomposition,
    SolutionPoint,
)

LOGGER = logging.getLogger(__name__)

_MEET_TOL = 1e-6


def f_nc(d: int, overrides: Optional[dict] = None) -> int:
    """Consecutive unproductive tries allowed in a d-dimensional subspace."""

    if overrides and d in overrides:
        return int(overrides[d])
    return 1 + 20 * (d - 1) ** 2


def orbit_dedup(q: SolutionPoint, found: Sequence[SolutionPoint], solver: GNGASolver,
                elements: np.ndarray, tol: float) -> bool:
    """True iff ``q`` is outside the ``elements``-orbit of every point in ``found``."""

    if not found:
        return True
    images = solver.lattice.group.act_all(q.u, elements)
    for d in found:
        gap = np.abs(images - d.u[None, :]).max(axis=1).min() + abs(q.s - d.s)
        if gap <= tol:
            return False
    return True


def orbit_size(solver: GNGASolver, mother: int, q: SolutionPoint) -> int:
    lattice = solver.lattice
    outer = lattice.symmetries[mother]
    inner = lattice.symmetries[q.symmetry]
    return outer.order // int(np.count_nonzero(inner.mask & outer.mask))


@dataclass
class SearchSpace:
    """A daughter search subspace: j = -1 for E itself."""

    j: int
    coords: np.ndarray  # orthonormal columns in Ψ-coordinates


def isotypic_content(critical: CriticalEigenspace, decomposition: IsotypicDecomposition,
                     coords: dict) -> List[Tuple[int, int]]:
    """``(k, dim(E ∩ V^(k)))`` for every component E meets."""

    content = []
    for comp in decomposition.components:
        if comp.dim == 0:
            continue
        c = coords[(decomposition.index, comp.k)]
        overlap = c.T @ critical.vectors
        dim = int(np.count_nonzero(np.linalg.svd(overlap, compute_uv=False) > 0.5))
        if dim:
            content.append((comp.k, dim))
    return content


def degeneracy_types(content: Sequence[Tuple[int, int]], decomposition: IsotypicDecomposition,
                     meets_fixed: bool, mother: int) -> List[int]:
    """Accidental degeneracy types present at a bifurcation.

    Type 1: E meets fix(Γ_i) on a branch with Γ_i ≠ Γ₀.
    Type 2: E meets several isotypic components.
    Type 3: E ∩ V^(k) is larger than one copy of the irreducible.
    """

    types = []
    if meets_fixed and mother != 0:
        types.append(1)
    if len(content) > 1:
        types.append(2)
    if any(dim > decomposition.component(k).real_degree for k, dim in content):
        types.append(3)
    return types


def search_spaces(solver: GNGASolver, mother: int, critical: CriticalEigenspace) -> Tuple[List[SearchSpace], bool]:
    """Search subspaces E_j for j in J̄, then E itself when dim E > 1."""

    lattice = solver.lattice
    psi = solver.basis.psi
    vertex_e = psi @ critical.vectors
    vertex_e, _ = np.linalg.qr(vertex_e)
    fixed_meet = intersection_basis(vertex_e, lattice.fixed_bases[mother], tol=_MEET_TOL)
    meets_fixed = fixed_meet.shape[1] > 0

    candidates = [j for j in component_isotropy(lattice, mother, vertex_e) if j != mother]
    expected = [
        j for j in candidates
        if not any(other != j and lattice.contains(other, j) for other in candidates)
    ]
    if meets_fixed:
        expected.insert(0, mother)

    spaces = []
    for j in expected:
        meet = fixed_meet if j == mother else intersection_basis(vertex_e, lattice.fixed_bases[j], tol=_MEET_TOL)
        if meet.shape[1]:
            coords, _ = np.linalg.qr(psi.T @ meet)
            spaces.append(SearchSpace(j=j, coords=coords))
    if critical.dim > 1:
        spaces.append(SearchSpace(j=-1, coords=critical.vectors))
    return spaces, meets_fixed


def find_daughters(solver: GNGASolver, p_star: SolutionPoint, mother: int, critical: CriticalEigenspace,
                   rng: np.random.Generator) -> Tuple[List[Daughter], bool]:
    """Nonconjugate daughters of p*; the flag reports whether E meets fix(Γ_i)."""

    cfg = solver.cfg
    lattice = solver.lattice
    elements = lattice.symmetries[mother].elements
    eps = cfg.epsilon if cfg.epsilon is not None else cfg.epsilon_scale * max(1.0, float(np.linalg.norm(p_star.u)))

    spaces, meets_fixed = search_spaces(solver, mother, critical)
    found: List[Daughter] = []
    for space in spaces:
        budget = f_nc(space.coords.shape[1], cfg.f_nc)
        misses = 0
        tries = 0
        while misses < budget:
            e = space.coords @ rng.standard_normal(space.coords.shape[1])
            e /= np.linalg.norm(e)
            productive = False
            # a direction counts as a miss only when both +e and -e fail
            for direction in (e, -e):
                tries += 1
                guess = np.append(p_star.a + eps * direction, p_star.s)
                result = solver.cgnga(p_star, guess, critical.vectors, eps)
                if result.converged and orbit_dedup(result.point, [d.point for d in found], solver,
                                                    elements, cfg.dedup_tol):
                    q = result.point
                    found.append(Daughter(point=q, subspace=space.j, orbit_size=orbit_size(solver, mother, q),
                                          tries=tries))
                    LOGGER.info("[DAUGHTER] s=%.6f MI=%d symmetry=%d via E_%d after %d tries",
                                q.s, q.signature, q.symmetry, space.j, tries)
                    productive = True
            misses = 0 if productive else misses + 1
    return found, meets_fixed


def index_check(record: BifurcationRecord, left_mi: int, right_mi: int) -> AuditResult:
    """Poincaré–Hopf balance over the mother and the daughter orbits.

    The signed count Σ(−1)^MI over solutions just left of s* must equal the
    count just right of s*. Daughters sitting exactly at s* are ignored.
    """

    s_star = record.point.s
    left = (-1) ** left_mi
    right = (-1) ** right_mi
    for d in record.daughters:
        weight = d.orbit_size * (-1) ** d.point.signature
        if d.point.s < s_star:
            left += weight
        elif d.point.s > s_star:
            right += weight
    return AuditResult("pass" if left == right else "fail", left, right)


def resolve_bifurcation(solver: GNGASolver, record_id: int, p_star: SolutionPoint, mother_branch: int,
                        mother: int, decomposition: IsotypicDecomposition, left_mi: int, right_mi: int,
                        rng: np.random.Generator) -> BifurcationRecord:
    """Critical eigenspace, K̄, degeneracy types, daughters and index audit at p*."""

    critical = solver.critical_eigenspace(p_star.a, p_star.s)
    daughters, meets_fixed = find_daughters(solver, p_star, mother, critical, rng)
    content = isotypic_content(critical, decomposition, solver.basis.coords)
    record = BifurcationRecord(
        id=record_id,
        point=p_star,
        mother_branch=mother_branch,
        critical=critical,
        k_bar=content,
        degeneracy=degeneracy_types(content, decomposition, meets_fixed, mother),
        daughters=daughters,
        mother_signatures=(left_mi, right_mi),
    )
    record.audit = index_check(record, left_mi, right_mi)
    solver.stats.record_audit(record.audit.status)
    LOGGER.info("[BIF] #%d s*=%.8f dim E=%d K̄=%s degeneracy=%s daughters=%d audit=%s",
                record_id, p_star.s, critical.dim, content, record.degeneracy_label,
                len(daughters), record.audit.status)
    if record.audit.status == "fail":
        LOGGER.warning("[AUDIT] bifurcation #%d at s*=%.6f fails the index balance (%d vs %d); "
                       "a larger f_nc may find the missing daughters",
                       record_id, p_star.s, record.audit.left, record.audit.right)
    return record
