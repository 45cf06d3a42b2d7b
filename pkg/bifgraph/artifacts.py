"""Preprocessing bundle persisted between the analyze, solve and render stages."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from .basis import projection_bases
from .errors import MissingArtifactError
from .groups import SignedGroup, SymmetryGroup
from .isotropy import SymmetryLattice, fixed_point_subspace
from .layout import complexity
from .models import (
    BifurcationArrow,
    CondensationClass,
    Graph,
    IsotypicComponent,
    IsotypicDecomposition,
    Layout,
    Spectrum,
    SymmetryAdaptedBasis,
)

LOGGER = logging.getLogger(__name__)

ANALYSIS_FILE = "analysis.npz"


@dataclass
class AnalysisBundle:
    graph: Graph
    layout: Layout
    spectrum: Spectrum
    group: SignedGroup
    lattice: SymmetryLattice
    decompositions: List[IsotypicDecomposition]
    arrows: List[BifurcationArrow]
    classes: Optional[List[CondensationClass]]
    basis: SymmetryAdaptedBasis


def save_analysis(bundle: AnalysisBundle, out_dir: str | Path) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lattice = bundle.lattice
    arrays = {
        "graph_n": np.array(bundle.graph.n),
        "graph_edges": np.array(bundle.graph.edges, dtype=int).reshape(-1, 2),
        "graph_name": np.array(bundle.graph.name),
        "layout": bundle.layout.coords,
        "eigenvalues": bundle.spectrum.eigenvalues,
        "eigenvectors": bundle.spectrum.eigenvectors,
        "perms": bundle.group.perms,
        "signs": bundle.group.signs,
        "odd": np.array(bundle.group.odd),
        "sym_masks": np.array([sym.mask for sym in lattice.symmetries]),
        "sym_types": np.array([sym.type_index for sym in lattice.symmetries]),
        "arrows": np.array(
            [[a.mother, a.k, a.daughter, a.kernel_order, a.normalizer_quotient] for a in bundle.arrows],
            dtype=int,
        ).reshape(-1, 5),
        "arrow_groups": np.array([a.bif_group for a in bundle.arrows], dtype=str),
        "classes": np.array(
            [-1] * len(lattice.types) if bundle.classes is None
            else [next(c.index for c in bundle.classes if t in c.types) for t in range(len(lattice.types))]
        ),
        "psi": bundle.basis.psi,
        "basis_eigenvalues": bundle.basis.eigenvalues,
        "basis_tags": bundle.basis.tags,
    }
    meta = []
    for dec in bundle.decompositions:
        for comp in dec.components:
            meta.append([dec.index, comp.k, comp.complex_degree, comp.real_degree, comp.indicator])
            prefix = f"dec_{dec.index}_{comp.k}"
            arrays[f"{prefix}_character"] = comp.character
            arrays[f"{prefix}_basis"] = comp.basis
            arrays[f"{prefix}_kernel"] = comp.kernel
    arrays["components"] = np.array(meta, dtype=int).reshape(-1, 5)
    path = out_dir / ANALYSIS_FILE
    np.savez_compressed(path, **arrays)
    LOGGER.info("[STATS] analysis bundle written to %s", path)
    return path


def load_analysis(out_dir: str | Path) -> AnalysisBundle:
    """Rebuild the bundle written by :func:`save_analysis`."""

    path = Path(out_dir) / ANALYSIS_FILE
    if not path.exists():
        raise MissingArtifactError(f"No preprocessing results at {path}; run 'analyze' first")
    with np.load(path) as data:
        edges = tuple((int(i), int(j)) for i, j in data["graph_edges"])
        graph = Graph(n=int(data["graph_n"]), edges=edges, name=str(data["graph_name"]))
        layout = Layout(coords=data["layout"], complexity=complexity(data["layout"]))
        spectrum = Spectrum(eigenvalues=data["eigenvalues"], eigenvectors=data["eigenvectors"])
        group = SignedGroup(data["perms"], data["signs"], odd=bool(data["odd"]))

        symmetries = []
        types: List[List[int]] = [[] for _ in range(int(data["sym_types"].max()) + 1)]
        for i, (mask, t) in enumerate(zip(data["sym_masks"], data["sym_types"])):
            elements = np.flatnonzero(mask)
            symmetries.append(SymmetryGroup(index=i, elements=elements, mask=mask.astype(bool),
                                            type_index=int(t),
                                            generators=group.generating_set(elements)))
            types[int(t)].append(i)
        fixed = [fixed_point_subspace(group, sym.elements) for sym in symmetries]
        lattice = SymmetryLattice(group=group, symmetries=symmetries, types=types, fixed_bases=fixed)

        decompositions = [IsotypicDecomposition(index=i, components=[]) for i in range(len(symmetries))]
        for i, k, dtil, real_degree, nu in data["components"]:
            prefix = f"dec_{i}_{k}"
            comp_basis = data[f"{prefix}_basis"]
            decompositions[int(i)].components.append(IsotypicComponent(
                k=int(k),
                complex_degree=int(dtil),
                real_degree=int(real_degree),
                indicator=int(nu),
                character=data[f"{prefix}_character"],
                projector=comp_basis @ comp_basis.T,
                basis=comp_basis,
                kernel=data[f"{prefix}_kernel"],
            ))

        arrows = [
            BifurcationArrow(mother=int(r[0]), k=int(r[1]), daughter=int(r[2]), kernel_order=int(r[3]),
                             bif_group=str(name), normalizer_quotient=int(r[4]))
            for r, name in zip(data["arrows"], data["arrow_groups"])
        ]
        class_ids = data["classes"]
        classes = None
        if len(class_ids) and class_ids[0] >= 0:
            classes = [CondensationClass(index=c, types=[int(t) for t in np.flatnonzero(class_ids == c)])
                       for c in range(int(class_ids.max()) + 1)]
        basis = SymmetryAdaptedBasis(psi=data["psi"], eigenvalues=data["basis_eigenvalues"],
                                     tags=data["basis_tags"])
    basis.coords = projection_bases(basis, decompositions)
    return AnalysisBundle(graph, layout, spectrum, group, lattice, decompositions, arrows, classes, basis)
