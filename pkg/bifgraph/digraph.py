"""Bifurcation arrows, condensation classes and digraph export.

An arrow Γ_i --k--> Γ_j records that Γ_j is a maximal isotropy subgroup of
the Γ_i action on the isotypic component V^(k)_{Γ_i}. Arrows are computed
exactly: every isotropy subgroup of that action has the form
Γ_i ∩ pstab(fix(Γ_j) ∩ V^(k)) for some Γ_j ⊆ Γ_i in 𝒢.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .characters import local_table
from .errors import BudgetExceededError
from .group_names import name_group
from .groups import SignedGroup
from .isotropy import SymmetryLattice
from .layout import digraph_layout
from .models import BifurcationArrow, CondensationClass, IsotypicDecomposition

LOGGER = logging.getLogger(__name__)

__all__ = [
    "bifurcation_arrows",
    "component_isotropy",
    "intersection_basis",
    "maximal_isotropy",
    "condensation_classes",
    "export_digraph",
    "type_names",
    "write_arrow_table",
]


def intersection_basis(basis: np.ndarray, fixed: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of span(basis) ∩ span(fixed); both inputs orthonormal."""

    if basis.shape[1] == 0 or fixed.shape[1] == 0:
        return np.zeros((basis.shape[0], 0))
    residual = basis - fixed @ (fixed.T @ basis)
    _, sigma, vh = linalg.svd(residual)
    rank = int(np.count_nonzero(sigma > tol))
    return basis @ vh[rank:].T


def component_isotropy(lattice: SymmetryLattice, i: int, subspace: np.ndarray) -> List[int]:
    """Indices in 𝒢 of all isotropy subgroups of Γ_i acting on a Γ_i-invariant subspace, Γ_i included."""

    group = lattice.group
    mother = lattice.symmetries[i]
    found = []
    for sym in lattice.symmetries:
        if not lattice.contains(i, sym.index):
            continue
        shared = intersection_basis(subspace, lattice.fixed_bases[sym.index])
        if shared.shape[1] == 0:
            continue
        mask = np.zeros(group.order, dtype=bool)
        mask[mother.elements] = group.stabilizer_of_vectors(shared, mother.elements, tol=1e-8)
        j = lattice.index_of(mask)
        if j is None:
            # not reachable for a lattice closed under pstab∘fix
            LOGGER.warning("[DIGRAPH] isotropy %s of symmetry %d is missing from the lattice",
                           np.flatnonzero(mask).tolist(), i)
            continue
        if j not in found:
            found.append(j)
    return sorted(found)


def maximal_isotropy(lattice: SymmetryLattice, i: int, subspace: np.ndarray) -> List[int]:
    """Maximal proper isotropy subgroups of the Γ_i action on ``subspace`` (vertex coordinates)."""

    proper = [j for j in component_isotropy(lattice, i, subspace) if j != i]
    return [
        j for j in proper
        if not any(other != j and lattice.contains(other, j) for other in proper)
    ]


def _conjugate_within(group: SignedGroup, within: np.ndarray, a: np.ndarray, b_mask: np.ndarray) -> bool:
    images = group.conj[np.ix_(within, a)]
    return bool(np.any(np.all(b_mask[images], axis=1)))


def quotient_table(group: SignedGroup, elements: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Multiplication table of Γ/K for a normal subgroup K of Γ."""

    table = local_table(group, elements)
    pos = np.full(group.order, -1, dtype=int)
    pos[elements] = np.arange(len(elements))
    kernel_local = pos[np.asarray(kernel)]
    coset = table[:, kernel_local].min(axis=1)
    reps = np.unique(coset)
    index = np.full(len(elements), -1, dtype=int)
    index[reps] = np.arange(len(reps))
    return index[coset[table[np.ix_(reps, reps)]]]


def bifurcation_arrows(lattice: SymmetryLattice, decompositions: Sequence[IsotypicDecomposition],
                       representatives_only: bool = True) -> List[BifurcationArrow]:
    """Arrows Γ_i --k--> Γ_j, one per Γ_i-conjugacy class of daughters.

    With ``representatives_only`` the mothers are the first member of each
    symmetry type, which gives one arrow per equivalence class.
    """

    group = lattice.group
    mothers = [members[0] for members in lattice.types] if representatives_only else range(len(lattice))
    names: Dict[Tuple[int, bytes], str] = {}
    arrows: List[BifurcationArrow] = []
    for i in mothers:
        mother = lattice.symmetries[i]
        for comp in decompositions[i].components:
            if comp.dim == 0:
                continue
            daughters = maximal_isotropy(lattice, i, comp.basis)
            kept: List[int] = []
            for j in daughters:
                if any(_conjugate_within(group, mother.elements, lattice.symmetries[j].elements,
                                         lattice.symmetries[other].mask) for other in kept):
                    continue
                kept.append(j)
            if not kept:
                continue
            key = (i, np.sort(comp.kernel).tobytes())
            if key not in names:
                names[key] = name_group(quotient_table(group, mother.elements, comp.kernel))
            for j in kept:
                daughter = lattice.symmetries[j]
                normalizer = group.normalizer(mother.elements, daughter.mask)
                arrows.append(BifurcationArrow(
                    mother=i,
                    k=comp.k,
                    daughter=j,
                    kernel_order=len(comp.kernel),
                    bif_group=names[key],
                    normalizer_quotient=len(normalizer) // daughter.order,
                ))
    LOGGER.info("[DIGRAPH] %d bifurcation arrows from %d mothers", len(arrows), len(list(mothers)))
    return arrows


# ---------------------------------------------------------------------------
# Condensation
# ---------------------------------------------------------------------------

def _two_generators(group: SignedGroup, tries: int = 24) -> List[int]:
    if group.order <= 2:
        return list(group.generators)
    by_order = sorted(range(1, group.order), key=lambda g: (-group.element_orders[g], g))
    for a in by_order[:tries]:
        for b in range(1, group.order):
            if group.closure([a, b]).all():
                return [a, b]
    return list(group.generators)


def _class_sizes(group: SignedGroup) -> np.ndarray:
    return np.array([len(np.unique(group.conj[:, x])) for x in range(group.order)])


def _extend(group: SignedGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[np.ndarray]:
    """Homomorphism ⟨gens⟩ → Γ₀ sending gens to images, or None if inconsistent/non-injective."""

    mapping = np.full(group.order, -1, dtype=int)
    used = np.zeros(group.order, dtype=bool)
    mapping[0] = 0
    used[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = int(group.table[x, g])
                target = int(group.table[mapping[x], h])
                if mapping[y] < 0:
                    if used[target]:
                        return None
                    mapping[y] = target
                    used[target] = True
                    nxt.append(y)
                elif mapping[y] != target:
                    return None
        frontier = nxt
    return mapping


def symmetry_preserving_automorphisms(lattice: SymmetryLattice, budget: int = 1_000_000) -> List[np.ndarray]:
    """Permutations of 𝒢 induced by automorphisms of Γ₀ that map 𝒢 onto itself."""

    group = lattice.group
    gens = _two_generators(group)
    orders = group.element_orders
    sizes = _class_sizes(group)
    candidates = [
        np.flatnonzero((orders == orders[g]) & (sizes == sizes[g])) for g in gens
    ]
    nodes = 0
    found: Dict[bytes, np.ndarray] = {}

    def search(depth: int, images: List[int]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"Aut(Γ₀) search exceeded {budget} nodes")
        mapping = _extend(group, gens[:depth], images)
        if mapping is None:
            return
        if depth == len(gens):
            if np.any(mapping < 0):
                return
            perm = np.empty(len(lattice), dtype=int)
            for sym in lattice.symmetries:
                mask = np.zeros(group.order, dtype=bool)
                mask[mapping[sym.elements]] = True
                j = lattice.index_of(mask)
                if j is None:
                    return
                perm[sym.index] = j
            found.setdefault(perm.tobytes(), perm)
            return
        for h in candidates[depth]:
            search(depth + 1, images + [int(h)])

    search(0, [])
    LOGGER.info("[DIGRAPH] %d distinct 𝒢 permutations from Aut(Γ₀) (%d search nodes)", len(found), nodes)
    return list(found.values())


def condensation_classes(lattice: SymmetryLattice, max_order: int = 240,
                         budget: int = 1_000_000) -> Optional[List[CondensationClass]]:
    """Orbits of symmetry types under symmetry-preserving automorphisms of Γ₀.

    Returns None (with a warning) when |Γ₀| exceeds ``max_order`` or the
    search runs out of budget.
    """

    if lattice.group.order > max_order:
        LOGGER.warning("[DIGRAPH] |Γ₀| = %d > %d; condensation skipped", lattice.group.order, max_order)
        return None
    try:
        perms = symmetry_preserving_automorphisms(lattice, budget=budget)
    except BudgetExceededError as exc:
        LOGGER.warning("[DIGRAPH] %s; condensation skipped", exc)
        return None

    parent = list(range(len(lattice.types)))

    def find(t: int) -> int:
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for perm in perms:
        for sym in lattice.symmetries:
            a = find(sym.type_index)
            b = find(lattice.type_of(int(perm[sym.index])))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = defaultdict(list)
    for t in range(len(lattice.types)):
        groups[find(t)].append(t)
    classes = [CondensationClass(index=c, types=members)
               for c, members in enumerate(sorted(groups.values()))]
    LOGGER.info("[DIGRAPH] %d condensation classes over %d types", len(classes), len(lattice.types))
    return classes


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def _type_edges(lattice: SymmetryLattice, arrows: Sequence[BifurcationArrow]):
    """Distinct digraph edges (tail type, head type, label, style)."""

    edges = []
    for arrow in arrows:
        key = (lattice.type_of(arrow.mother), lattice.type_of(arrow.daughter), arrow.bif_group, arrow.style)
        if key not in edges:
            edges.append(key)
    return edges


def _ranks(orders: Dict[int, int]) -> Dict[int, int]:
    levels = sorted(set(orders.values()), reverse=True)
    return {node: levels.index(order) for node, order in orders.items()}


def type_names(lattice: SymmetryLattice) -> Dict[int, str]:
    """Isomorphism-class name of each symmetry type."""

    group = lattice.group
    return {
        t: name_group(local_table(group, lattice.symmetries[members[0]].elements))
        for t, members in enumerate(lattice.types)
    }


def _node_line(node: str, label: str, pos: Tuple[float, float], shape: str) -> str:
    return f'  {node} [label="{label}", shape={shape}, pos="{pos[0]:.3f},{pos[1]:.3f}!"];'


def export_digraph(lattice: SymmetryLattice, arrows: Sequence[BifurcationArrow],
                   classes: Optional[Sequence[CondensationClass]] = None,
                   condensed: bool = False, seed: int = 1) -> str:
    """DOT text of the bifurcation digraph or its condensation.

    Nodes are symmetry types (or condensation classes) labeled with the
    group name; edge labels are bifurcation-group names with the arrow
    style. In the condensed variant ``taillabel``/``headlabel`` give the
    number of merged arrows leaving one tail type / entering one head type
    when that number exceeds 1.
    """

    title = "condensed" if condensed else "bifurcation"
    lines = [f"digraph {title} {{", "  rankdir=TB;"]
    if not arrows:
        lines.append("}")
        return "\n".join(lines) + "\n"

    type_name = type_names(lattice)
    type_order = {t: lattice.symmetries[members[0]].order for t, members in enumerate(lattice.types)}
    edges = _type_edges(lattice, arrows)

    if not condensed or classes is None:
        ranks = _ranks(type_order)
        pos = digraph_layout(ranks, [(a, b) for a, b, _, _ in edges], seed=seed)
        for t in sorted(type_order):
            lines.append(_node_line(f"S{t}", f"S{t}\\n{type_name[t]}", pos[t], "ellipse"))
        for a, b, label, style in edges:
            lines.append(f'  S{a} -> S{b} [label="{label}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    class_of = {t: c.index for c in classes for t in c.types}
    ranks = _ranks({c.index: type_order[c.types[0]] for c in classes})
    merged: Dict[Tuple[int, int, str, str], List[Tuple[int, int]]] = defaultdict(list)
    for a, b, label, style in edges:
        merged[(class_of[a], class_of[b], label, style)].append((a, b))
    pos = digraph_layout(ranks, [(a, b) for a, b, _, _ in merged], seed=seed)
    for c in classes:
        names = ", ".join(f"S{t}" for t in c.types)
        lines.append(_node_line(f"C{c.index}", f"{names}\\n{type_name[c.types[0]]}", pos[c.index], "box"))
    for (a, b, label, style), pairs in merged.items():
        tails = len({t for t, _ in pairs})
        heads = len({h for _, h in pairs})
        attrs = [f'label="{label}"', f"style={style}"]
        if len(pairs) // tails > 1:
            attrs.append(f'taillabel="{len(pairs) // tails}"')
        if len(pairs) // heads > 1:
            attrs.append(f'headlabel="{len(pairs) // heads}"')
        lines.append(f"  C{a} -> C{b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_arrow_table(arrows: Sequence[BifurcationArrow], path: str | Path) -> None:
    """One line per arrow: ``i k j bifurcation_group quotient_order``."""

    lines = ["# i k j group quotient"]
    lines += [f"{a.mother} {a.k} {a.daughter} {a.bif_group} {a.normalizer_quotient}" for a in arrows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
