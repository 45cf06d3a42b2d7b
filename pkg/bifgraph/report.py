"""Plain-markup run report: branches, bifurcation points and solver statistics."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Mapping, Sequence

from .isotropy import SymmetryLattice
from .models import Branch

LOGGER = logging.getLogger(__name__)


def _branch_lines(branches: Sequence[Branch], lattice: SymmetryLattice, names: Mapping[int, str],
                  terminations: Mapping[str, str]) -> List[str]:
    lines = [
        "## Branches",
        "",
        "| branch | symmetry | type | MI range | parent | s range | J at ends | points | end |",
        "|---|---|---|---|---|---|---|---|---|",
    ]
    for b in branches:
        if not b.points:
            continue
        t = lattice.type_of(b.symmetry)
        mis = [p.signature for p in b.points]
        first, last = b.points[0], b.points[-1]
        parent = "trivial" if b.parent < 0 else f"#{b.parent}"
        lines.append(
            f"| {b.id} | Γ_{b.symmetry} | S_{t} ({names.get(t, '?')}) | {min(mis)}–{max(mis)} | {parent} "
            f"| {first.s:.6g} .. {last.s:.6g} | {first.action:.6g} .. {last.action:.6g} | {len(b.points)} "
            f"| {terminations.get(str(b.id), b.termination or '-')} |"
        )
    return lines


def _record_lines(records: Sequence[Mapping[str, object]]) -> List[str]:
    lines = [
        "## Bifurcation points",
        "",
        "| id | s* | mother | dim E | K̄ | degeneracy | daughters (MI) | audit |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for r in records:
        kbar = ", ".join(f"{k}:{d}" for k, d in r["k_bar"]) or "-"
        daughters = ", ".join(f"{b} ({mi})" for b, mi in zip(r["daughter_branches"], r["daughter_signatures"])) or "-"
        lines.append(
            f"| {r['id']} | {r['s']:.10g} | {r['mother_branch']} | {r['dim_e']} | {kbar} | {r['degeneracy']} "
            f"| {daughters} | {r['audit']} ({r['audit_left']} vs {r['audit_right']}) |"
        )
    return lines


def _stats_lines(stats: Mapping[str, object]) -> List[str]:
    lines = ["## Statistics", ""]
    for key, value in stats.items():
        if isinstance(value, dict):
            inner = ", ".join(f"{k}: {v}" for k, v in value.items()) or "none"
            lines.append(f"- {key}: {inner}")
        else:
            lines.append(f"- {key}: {value}")
    return lines


def build_report(title: str, branches: Sequence[Branch], records: Sequence[Mapping[str, object]],
                 lattice: SymmetryLattice, names: Mapping[int, str],
                 summary: Mapping[str, object]) -> str:
    """Report text; ``summary`` is the run summary written by the solve stage."""

    terminations: Dict[str, str] = dict(summary.get("terminations") or {})
    lines = [
        f"# {title}",
        "",
        f"- nonlinearity: {summary.get('nonlinearity', '?')}",
        f"- seed: {summary.get('seed', '?')}",
        f"- window: s in [{summary.get('s_min', '?')}, {summary.get('s_max', '?')}]",
        f"- branches: {len(branches)}",
        f"- bifurcation points: {len(records)}",
        f"- points: {sum(len(b.points) for b in branches)}",
        "",
    ]
    lines += _branch_lines(branches, lattice, names, terminations)
    lines.append("")
    lines += _record_lines(records)
    lines.append("")
    lines += _stats_lines(summary.get("stats") or {})
    return "\n".join(lines) + "\n"


def write_report(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    LOGGER.info("[RENDER] report -> %s", path)
    return path
