"""Columnar result files for branch points and bifurcation records."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, List

import numpy as np

from .errors import MissingArtifactError, ParseError
from .models import BifurcationRecord, Branch, SolutionPoint

_DELIMITER = " "


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _pairs(content) -> str:
    return "|".join(f"{k}:{d}" for k, d in content) if content else "-"


def _ids(values) -> str:
    return "|".join(str(v) for v in values) if values else "-"


class SolutionLogger:
    """One row per solution point: ids, s, MI, symmetry, ‖u‖₁, J, then Ψ-coefficients."""

    def __init__(self, path: str | Path, m: int, overwrite: bool = False):
        self.path = Path(path)
        self.m = m
        if overwrite and self.path.exists():
            self.path.unlink()
        self._ensure_header()

    def _ensure_header(self):
        if not self.path.exists():
            with self.path.open("w", newline="") as f:
                writer = csv.writer(f, delimiter=_DELIMITER, lineterminator="\n")
                writer.writerow(
                    ["branch", "parent", "s", "mi", "symmetry", "norm1", "action"]
                    + [f"a{j + 1}" for j in range(self.m)]
                )

    def log_branch(self, branch: Branch):
        with self.path.open("a", newline="") as f:
            writer = csv.writer(f, delimiter=_DELIMITER, lineterminator="\n")
            for p in branch.points:
                writer.writerow(
                    [
                        branch.id,
                        branch.parent,
                        _fmt(p.s),
                        p.signature,
                        p.symmetry,
                        _fmt(p.norm1),
                        _fmt(p.action),
                    ]
                    + [_fmt(x) for x in p.a]
                )


class BifurcationLogger:
    """One row per resolved bifurcation point."""

    def __init__(self, path: str | Path, overwrite: bool = False):
        self.path = Path(path)
        if overwrite and self.path.exists():
            self.path.unlink()
        self._ensure_header()

    def _ensure_header(self):
        if not self.path.exists():
            with self.path.open("w", newline="") as f:
                writer = csv.writer(f, delimiter=_DELIMITER, lineterminator="\n")
                writer.writerow(
                    [
                        "id",
                        "s",
                        "mother_branch",
                        "dim_e",
                        "k_bar",
                        "degeneracy",
                        "daughter_branches",
                        "daughter_signatures",
                        "audit",
                        "audit_left",
                        "audit_right",
                    ]
                )

    def log_record(self, record: BifurcationRecord):
        with self.path.open("a", newline="") as f:
            writer = csv.writer(f, delimiter=_DELIMITER, lineterminator="\n")
            writer.writerow(
                [
                    record.id,
                    _fmt(record.point.s),
                    record.mother_branch,
                    record.critical.dim,
                    _pairs(record.k_bar),
                    record.degeneracy_label,
                    _ids([d.branch_id for d in record.daughters]),
                    _ids([d.point.signature for d in record.daughters]),
                    record.audit.status,
                    record.audit.left,
                    record.audit.right,
                ]
            )


def _rows(path: Path) -> List[List[str]]:
    if not path.exists():
        raise MissingArtifactError(f"Result file not found: {path}")
    with path.open("r", newline="") as f:
        rows = [row for row in csv.reader(f, delimiter=_DELIMITER) if row]
    return rows[1:]


def read_solutions(path: str | Path, psi: np.ndarray) -> List[Branch]:
    """Rebuild branches from a solutions file; ``u`` is recomputed as Ψ a."""

    branches: Dict[int, Branch] = {}
    for line_no, row in enumerate(_rows(Path(path)), start=2):
        try:
            branch_id, parent, s, mi, sym = int(row[0]), int(row[1]), float(row[2]), int(row[3]), int(row[4])
            action = float(row[6])
            a = np.array([float(x) for x in row[7:]])
        except (IndexError, ValueError) as exc:
            raise ParseError(f"{path}:{line_no}: malformed solution row") from exc
        if len(a) != psi.shape[1]:
            raise ParseError(f"{path}:{line_no}: expected {psi.shape[1]} coefficients, got {len(a)}")
        branch = branches.setdefault(branch_id, Branch(id=branch_id, symmetry=sym, parent=parent))
        branch.points.append(SolutionPoint(a=a, s=s, u=psi @ a, grad_norm=0.0, signature=mi,
                                           symmetry=sym, action=action, branch_id=branch_id))
    return [branches[k] for k in sorted(branches)]


def read_bifurcations(path: str | Path) -> List[Dict[str, object]]:
    """Bifurcation rows as plain dicts (ids, s*, dim E, K̄, degeneracy, daughters, audit)."""

    records = []
    for line_no, row in enumerate(_rows(Path(path)), start=2):
        try:
            records.append(
                {
                    "id": int(row[0]),
                    "s": float(row[1]),
                    "mother_branch": int(row[2]),
                    "dim_e": int(row[3]),
                    "k_bar": [] if row[4] == "-" else [tuple(int(x) for x in p.split(":")) for p in row[4].split("|")],
                    "degeneracy": row[5],
                    "daughter_branches": [] if row[6] == "-" else [int(x) for x in row[6].split("|")],
                    "daughter_signatures": [] if row[7] == "-" else [int(x) for x in row[7].split("|")],
                    "audit": row[8],
                    "audit_left": int(row[9]),
                    "audit_right": int(row[10]),
                }
            )
        except (IndexError, ValueError) as exc:
            raise ParseError(f"{path}:{line_no}: malformed bifurcation row") from exc
    return records
