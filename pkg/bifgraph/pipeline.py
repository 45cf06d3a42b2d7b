"""Stage runners: analyze (preprocessing), solve (continuation) and render."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from . import digraph
from .artifacts import AnalysisBundle, load_analysis, save_analysis
from .basis import symmetry_adapted_basis, write_basis, write_projection_bases
from .catalog import catalog_graph
from .characters import character_table, isotypic_decomposition
from .config import DEFAULTS, get_section, output_dir, resolve_path, solver_config
from .continuation import ContinuationEngine
from .errors import ConfigError, MissingArtifactError
from .gnga import GNGASolver
from .graphs import laplacian, read_edgelist, symmetric_eigen, write_edgelist, write_eigen
from .groups import automorphisms, build_gamma0, write_permutations
from .invariant_subspaces import block_eigenvectors, constant_subspace_is_anomalous
from .isotropy import generic_vertex_check, isotropy_symmetries
from .layout import ForceParams, spring_layout, write_layout
from .logging_utils import BifurcationLogger, SolutionLogger, read_bifurcations, read_solutions
from .models import Graph, RunResult
from .nonlinearities import Nonlinearity, get_nonlinearity
from .plots import area_scale, contour_plot, diagram_plot, diagram_series, write_diagram_data
from .report import build_report, write_report
from .selection import contour_select
from .stats import SolverStats

LOGGER = logging.getLogger(__name__)

SOLUTIONS_FILE = "solutions.txt"
BIFURCATIONS_FILE = "bifurcations.txt"
SUMMARY_FILE = "run_summary.json"


def load_graph(cfg: Dict[str, Any]) -> Graph:
    section = get_section(cfg, "graph")
    if section.get("edgelist"):
        return read_edgelist(resolve_path(cfg, section["edgelist"]))
    if section.get("catalog"):
        return catalog_graph(str(section["catalog"]))
    raise ConfigError("The graph section needs either 'edgelist' or 'catalog'")


def load_nonlinearity(cfg: Dict[str, Any]) -> Nonlinearity:
    solver = solver_config(cfg)
    return get_nonlinearity(solver.nonlinearity, solver.nonlinearity_params)


def _is_odd(cfg: Dict[str, Any], f: Nonlinearity) -> bool:
    forced = get_section(cfg, "symmetry").get("odd")
    return f.is_odd if forced is None else bool(forced)


def _report_blocks(graph: Graph, blocks) -> None:
    spectrum = block_eigenvectors(graph, blocks)
    for value, vector in zip(spectrum.eigenvalues, spectrum.eigenvectors.T):
        LOGGER.info("[GRAPH] block-constant eigenvector λ=%.10g: %s", value,
                    np.array2string(vector, precision=6))


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def analyze_graph(graph: Graph, odd: bool = True, layout_cfg: Optional[Dict[str, Any]] = None,
                  sym_cfg: Optional[Dict[str, Any]] = None, basis_size: Optional[int] = None) -> AnalysisBundle:
    """Layout, spectrum, Γ₀, 𝒢, decompositions, digraph and basis for one graph."""

    layout_cfg = {**DEFAULTS["layout"], **(layout_cfg or {})}
    sym_cfg = {**DEFAULTS["symmetry"], **(sym_cfg or {})}

    layout = spring_layout(
        graph,
        restarts=int(layout_cfg["restarts"]),
        seed=int(layout_cfg["seed"]),
        params=ForceParams.from_section(layout_cfg),
        threads=int(layout_cfg["threads"]),
    )
    lap = laplacian(graph)
    spectrum = symmetric_eigen(lap)

    aut = automorphisms(graph, node_limit=int(sym_cfg["automorphism_node_limit"]))
    group = build_gamma0(aut, odd=odd)
    if constant_subspace_is_anomalous(graph, group):
        LOGGER.info("[GRAPH] not vertex transitive: the constant subspace is anomalous")

    lattice = isotropy_symmetries(group, max_order=int(sym_cfg["max_group_order"]))
    generic_vertex_check(lattice)
    rng = np.random.default_rng(int(sym_cfg["seed"]))
    decompositions = []
    for sym in lattice.symmetries:
        table = character_table(group, sym.elements, rng=rng, retries=int(sym_cfg["character_retries"]))
        decompositions.append(isotypic_decomposition(group, sym, table))
    LOGGER.info("[GROUP] Γ₀ isotypic dimensions %s", decompositions[0].dims)

    arrows = digraph.bifurcation_arrows(lattice, decompositions)
    classes = digraph.condensation_classes(
        lattice,
        max_order=int(sym_cfg["condensation_max_order"]),
        budget=int(sym_cfg["condensation_budget"]),
    )
    basis = symmetry_adapted_basis(lap, spectrum, lattice, decompositions, arrows, m=basis_size)
    return AnalysisBundle(graph, layout, spectrum, group, lattice, decompositions, arrows, classes, basis)


def write_analysis(bundle: AnalysisBundle, out: Path, seed: int = 1) -> None:
    """Human-readable preprocessing files next to ``analysis.npz``."""

    out.mkdir(parents=True, exist_ok=True)
    write_edgelist(bundle.graph, out / "graph.edges")
    write_layout(bundle.layout, out / "layout.txt")
    write_eigen(bundle.spectrum, out / "eigen.txt")
    write_permutations(bundle.group, out / "permutations.txt")
    write_projection_bases(bundle.decompositions, out / "projection_bases.txt")
    digraph.write_arrow_table(bundle.arrows, out / "arrows.txt")
    (out / "digraph.dot").write_text(digraph.export_digraph(bundle.lattice, bundle.arrows, seed=seed),
                                     encoding="utf-8")
    if bundle.classes is not None:
        (out / "condensed.dot").write_text(
            digraph.export_digraph(bundle.lattice, bundle.arrows, bundle.classes, condensed=True, seed=seed),
            encoding="utf-8",
        )
    write_basis(bundle.basis, out / "basis.txt")
    write_projection_bases(bundle.decompositions, out / "projection_bases_psi.txt", basis=bundle.basis)
    save_analysis(bundle, out)


def run_analyze(cfg: Dict[str, Any]) -> AnalysisBundle:
    """Preprocessing stage: analyze the configured graph and write every artifact."""

    out = output_dir(cfg)
    layout_cfg = get_section(cfg, "layout")
    graph = load_graph(cfg)
    LOGGER.info("[GRAPH] %s: n=%d, %d edges", graph.name or "graph", graph.n, len(graph.edges))
    blocks = get_section(cfg, "graph").get("blocks")
    if blocks:
        _report_blocks(graph, blocks)
    bundle = analyze_graph(
        graph,
        odd=_is_odd(cfg, load_nonlinearity(cfg)),
        layout_cfg=layout_cfg,
        sym_cfg=get_section(cfg, "symmetry"),
        basis_size=solver_config(cfg).basis_size,
    )
    write_analysis(bundle, out, seed=int(layout_cfg["seed"]))
    return bundle


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def run_solve(cfg: Dict[str, Any], bundle: Optional[AnalysisBundle] = None) -> RunResult:
    """Continuation from the trivial branch; writes solutions, bifurcations and a summary."""

    out = output_dir(cfg)
    bundle = bundle or load_analysis(out)
    solver_cfg = solver_config(cfg)
    f = get_nonlinearity(solver_cfg.nonlinearity, solver_cfg.nonlinearity_params)
    if _is_odd(cfg, f) != bundle.group.odd:
        raise ConfigError(
            f"Nonlinearity {f.name!r} does not match the preprocessing (odd={bundle.group.odd}); rerun 'analyze'"
        )

    stats = SolverStats()
    solver = GNGASolver(laplacian(bundle.graph), bundle.basis, bundle.lattice, f, solver_cfg, stats)
    result = ContinuationEngine(solver, bundle.decompositions).run()

    solutions = SolutionLogger(out / SOLUTIONS_FILE, bundle.basis.m, overwrite=True)
    for branch in result.branches:
        solutions.log_branch(branch)
    bifurcations = BifurcationLogger(out / BIFURCATIONS_FILE, overwrite=True)
    for record in result.records:
        bifurcations.log_record(record)

    summary = {
        "graph": bundle.graph.name,
        "nonlinearity": f.name,
        "seed": solver_cfg.seed,
        "s_min": solver_cfg.s_min,
        "s_max": solver_cfg.s_max,
        "terminations": {str(b.id): b.termination for b in result.branches},
        "stats": result.stats,
    }
    (out / SUMMARY_FILE).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    LOGGER.info("[STATS]\n%s", stats.snapshot())
    return result


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def run_render(cfg: Dict[str, Any], bundle: Optional[AnalysisBundle] = None) -> Path:
    """Diagram data, plots and the report from the files of a previous solve."""

    out = output_dir(cfg)
    render_cfg = get_section(cfg, "render")
    fmt = str(render_cfg["format"])
    if fmt not in ("svg", "txt", "dot"):
        raise ConfigError(f"Unknown render format {fmt!r}; choose svg, txt or dot")
    summary_path = out / SUMMARY_FILE
    if not summary_path.exists():
        raise MissingArtifactError(f"No solver results at {summary_path}; run 'solve' first")
    bundle = bundle or load_analysis(out)

    branches = read_solutions(out / SOLUTIONS_FILE, bundle.basis.psi)
    records = read_bifurcations(out / BIFURCATIONS_FILE)
    summary = json.loads(summary_path.read_text(encoding="utf-8"))
    weights = render_cfg.get("weights")
    weights = None if weights is None else np.asarray(weights, dtype=float)

    mother_of = {int(r["id"]): int(r["mother_branch"]) for r in records}
    series = diagram_series(branches, mother_of, weights)
    write_diagram_data(series, out / "diagram.txt")

    by_id = {b.id: b for b in branches}
    if fmt == "svg":
        marks = []
        for r in records:
            mother = by_id.get(int(r["mother_branch"]))
            if mother is not None and mother.points:
                p = mother.points[-1]
                marks.append((p.s, float(np.abs(p.u).sum() if weights is None else weights @ np.abs(p.u))))
        diagram_plot(series, marks, out / "diagram.svg", title=bundle.graph.name)
        if render_cfg.get("contours", True):
            contour_dir = out / "contours"
            contour_dir.mkdir(exist_ok=True)
            middles = [b.points[len(b.points) // 2] for b in branches]
            reps = [contour_select(p.u, bundle.layout.coords, bundle.group,
                                   objective=str(render_cfg["selection"])) for p in middles]
            scale = area_scale(reps)
            for b, p, rep in zip(branches, middles, reps):
                title = f"branch {b.id}  s={p.s:.4g}  MI={p.signature}  Γ_{b.symmetry}  J={p.action:.4g}"
                contour_plot(rep, bundle.layout.coords, bundle.graph.edges,
                             contour_dir / f"branch_{b.id:04d}.svg", title=title, scale=scale)
            LOGGER.info("[RENDER] %d contour plots -> %s", len(branches), contour_dir)
    elif fmt == "dot":
        (out / "render_digraph.dot").write_text(
            digraph.export_digraph(bundle.lattice, bundle.arrows), encoding="utf-8"
        )

    text = build_report(
        f"bifgraph run: {bundle.graph.name or 'graph'}",
        branches,
        records,
        bundle.lattice,
        digraph.type_names(bundle.lattice),
        summary,
    )
    return write_report(text, out / "report.md")


def run_all(cfg: Dict[str, Any]) -> Path:
    bundle = run_analyze(cfg)
    run_solve(cfg, bundle)
    return run_render(cfg, bundle)
