"""Fixed-point subspaces and the lattice 𝒢 of isotropy subgroups of Γ₀."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .errors import BudgetExceededError
from .groups import SignedGroup, SymmetryGroup

LOGGER = logging.getLogger(__name__)


def fixed_point_subspace(group: SignedGroup, elements: np.ndarray) -> np.ndarray:
    """Orthonormal basis of fix(Γ, ℝⁿ) for the subgroup with ``elements``.

    Each Γ-orbit of vertices contributes one signed indicator vector unless
    two elements send the base vertex to the same place with opposite signs,
    in which case the orbit carries only zero.
    """

    elements = np.asarray(elements)
    n = group.n
    visited = np.zeros(n, dtype=bool)
    columns = []
    targets_all = group.perms[elements]
    signs = group.signs[elements]
    for base in range(n):
        if visited[base]:
            continue
        targets = targets_all[:, base]
        pos = np.zeros(n, dtype=bool)
        neg = np.zeros(n, dtype=bool)
        pos[targets[signs > 0]] = True
        neg[targets[signs < 0]] = True
        visited |= pos | neg
        if np.any(pos & neg):
            continue
        vec = pos.astype(float) - neg.astype(float)
        columns.append(vec / np.sqrt(np.count_nonzero(vec)))
    if not columns:
        return np.zeros((n, 0))
    return np.column_stack(columns)


def isotropy_of(group: SignedGroup, mask: np.ndarray) -> np.ndarray:
    """pstab(fix(H)) as a mask over Γ₀."""

    basis = fixed_point_subspace(group, np.flatnonzero(mask))
    return group.stabilizer_of_vectors(basis)


@dataclass
class SymmetryLattice:
    """The ordered list 𝒢 with its symmetry types 𝒮.

    Attributes:
        group: Γ₀.
        symmetries: 𝒢 in output order, Γ₀ first.
        types: ``types[t]`` lists the indices of the members of type S_t.
        fixed_bases: Orthonormal basis of fix(Γ_i) per symmetry.
    """

    group: SignedGroup
    symmetries: List[SymmetryGroup]
    types: List[List[int]]
    fixed_bases: List[np.ndarray]
    lookup: Dict[bytes, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.lookup:
            self.lookup = {sym.mask.tobytes(): sym.index for sym in self.symmetries}

    def __len__(self) -> int:
        return len(self.symmetries)

    def index_of(self, mask: np.ndarray) -> Optional[int]:
        return self.lookup.get(np.asarray(mask, dtype=bool).tobytes())

    def largest_contained(self, mask: np.ndarray) -> int:
        """Index of sym(u) given the detected symmetry mask of ``u``."""

        exact = self.index_of(mask)
        if exact is not None:
            return exact
        for sym in self.symmetries:
            if not np.any(sym.mask & ~mask):
                return sym.index
        return len(self.symmetries) - 1

    def type_of(self, i: int) -> int:
        return self.symmetries[i].type_index

    def contains(self, outer: int, inner: int) -> bool:
        return not np.any(self.symmetries[inner].mask & ~self.symmetries[outer].mask)


def _cyclic_subgroups(group: SignedGroup) -> List[np.ndarray]:
    seen: Dict[bytes, np.ndarray] = {}
    for g in range(group.order):
        mask = group.closure([g])
        seen.setdefault(mask.tobytes(), mask)
    return list(seen.values())


def isotropy_symmetries(group: SignedGroup, max_order: int = 2000) -> SymmetryLattice:
    """Enumerate every Γ ≤ Γ₀ with pstab(fix(Γ)) = Γ and group them by conjugacy.

    Each isotropy subgroup is the isotropy closure of the join of the
    isotropy closures of its cyclic subgroups, so the lattice is generated
    from those atoms by repeated joins.
    """

    if group.order > max_order:
        raise BudgetExceededError(
            f"|Γ₀| = {group.order} exceeds the subgroup enumeration cap {max_order}"
        )

    found: Dict[bytes, np.ndarray] = {}
    gens: Dict[bytes, List[int]] = {}

    def register(mask: np.ndarray) -> bool:
        key = mask.tobytes()
        if key in found:
            return False
        found[key] = mask
        gens[key] = group.generating_set(np.flatnonzero(mask))
        return True

    trivial = np.zeros(group.order, dtype=bool)
    trivial[0] = True
    register(isotropy_of(group, trivial))
    for cyclic in _cyclic_subgroups(group):
        register(isotropy_of(group, cyclic))
    atoms = list(found.values())
    LOGGER.info("[GROUP] %d isotropy atoms from cyclic subgroups", len(atoms))

    join_cache: Dict[bytes, np.ndarray] = {}
    frontier = list(atoms)
    while frontier:
        fresh = []
        for a_mask in frontier:
            a_gens = gens[a_mask.tobytes()]
            for c_mask in atoms:
                if not np.any(c_mask & ~a_mask) or not np.any(a_mask & ~c_mask):
                    continue
                joined = group.closure(a_gens + gens[c_mask.tobytes()])
                key = joined.tobytes()
                iso = join_cache.get(key)
                if iso is None:
                    iso = isotropy_of(group, joined)
                    join_cache[key] = iso
                if register(iso):
                    fresh.append(iso)
        frontier = fresh

    return _order_lattice(group, found, gens)


def _order_lattice(group: SignedGroup, found: Dict[bytes, np.ndarray],
                   gens: Dict[bytes, List[int]]) -> SymmetryLattice:
    keys = list(found)
    position = {key: t for t, key in enumerate(keys)}
    elements = {key: np.flatnonzero(found[key]) for key in keys}
    size = group.order

    type_of = [-1] * len(keys)
    classes: List[List[bytes]] = []
    rows = np.arange(size)[:, None]
    for key in keys:
        if type_of[position[key]] >= 0:
            continue
        conj_masks = np.zeros((size, size), dtype=bool)
        conj_masks[rows, group.conj[:, elements[key]]] = True
        members = sorted({conj_masks[g].tobytes() for g in range(size)},
                         key=lambda k: tuple(elements[k]))
        for member in members:
            type_of[position[member]] = len(classes)
        classes.append(members)

    classes.sort(key=lambda members: (-len(elements[members[0]]), tuple(elements[members[0]])))
    symmetries: List[SymmetryGroup] = []
    types: List[List[int]] = []
    for t, members in enumerate(classes):
        indices = []
        for key in members:
            sym = SymmetryGroup(
                index=len(symmetries),
                elements=elements[key],
                mask=found[key],
                type_index=t,
                generators=gens[key],
            )
            indices.append(sym.index)
            symmetries.append(sym)
        types.append(indices)

    fixed = [fixed_point_subspace(group, sym.elements) for sym in symmetries]
    LOGGER.info("[GROUP] %d symmetries in %d types", len(symmetries), len(types))
    return SymmetryLattice(group=group, symmetries=symmetries, types=types, fixed_bases=fixed)


def has_generic_vertex(group: SignedGroup) -> bool:
    """True when some vertex is fixed by no nontrivial automorphism."""

    moved = group.perms[1:] != np.arange(group.n)[None, :]
    nontrivial = np.any(moved, axis=1)
    stabilizing = ~moved[nontrivial]
    return bool(np.any(~np.any(stabilizing, axis=0))) if np.any(nontrivial) else True


def generic_vertex_check(lattice: SymmetryLattice) -> bool:
    """Cross-check 𝒢 against the generic-vertex characterization.

    With a generic vertex and odd f, 𝒢 = {Γ₀} ∪ {Γ : −1 ∉ Γ}; here every
    cyclic subgroup avoiding −1 must be listed and no listed proper subgroup
    may contain −1. Returns True when the check passes or does not apply.
    """

    group = lattice.group
    if not group.odd or not has_generic_vertex(group):
        return True
    ok = True
    for sym in lattice.symmetries[1:]:
        if sym.mask[1]:
            LOGGER.warning("[GROUP] symmetry %d contains -1 despite a generic vertex", sym.index)
            ok = False
    for cyclic in _cyclic_subgroups(group):
        if not cyclic[1] and lattice.index_of(cyclic) is None:
            LOGGER.warning("[GROUP] cyclic subgroup %s missing from the lattice",
                           np.flatnonzero(cyclic).tolist())
            ok = False
    return ok
