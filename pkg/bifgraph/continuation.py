"""Branch-following driver: the job queue, step control and bifurcation handling.

A job is a converged start point with a unit direction in (a, s) space.
Following a job walks the branch with tGNGA predictor/corrector steps,
locates bifurcation points on every segment whose Morse index changes,
splits the branch there and enqueues one job per new daughter. Jobs run
serially in FIFO order so a fixed seed reproduces the run point for point.
"""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Optional, Sequence, Tuple

import numpy as np

from .daughters import resolve_bifurcation
from .gnga import GNGASolver
from .models import (
    BifurcationRecord,
    Branch,
    Daughter,
    IsotypicDecomposition,
    RunResult,
    SolutionPoint,
    SolverConfig,
)

LOGGER = logging.getLogger(__name__)

__all__ = [
    "speed_factor",
    "speed_update",
    "turning_angle",
    "is_fold",
    "BranchRegistry",
    "ContinuationEngine",
]

_REFERENCE_ANGLE = 0.1
_FOLD_TANGENCY = 0.9


def speed_factor(angle: float) -> float:
    """Step multiplier in (0, 2]: 1 at 0.1 rad, 2 for collinear points."""

    return 2.0 * math.exp(-max(angle, 0.0) * math.log(2.0) / _REFERENCE_ANGLE)


def speed_update(c: float, cfg: SolverConfig, angle: Optional[float] = None, failed: bool = False) -> float:
    if failed:
        return max(0.5 * c, cfg.c_min)
    if angle is None:
        return c
    return min(max(c * speed_factor(angle), cfg.c_min), cfg.c_max)


def turning_angle(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray) -> float:
    """Angle between the segments p0→p1 and p1→p2."""

    d1 = p1 - p0
    d2 = p2 - p1
    denom = float(np.linalg.norm(d1) * np.linalg.norm(d2))
    if denom == 0.0:
        return 0.0
    return float(np.arccos(np.clip(d1 @ d2 / denom, -1.0, 1.0)))


def is_fold(p_a: SolutionPoint, p_star: SolutionPoint, p_b: SolutionPoint, critical_vectors: np.ndarray) -> bool:
    """A simple degenerate point where E is tangent to the branch and s turns back."""

    if critical_vectors.shape[1] != 1:
        return False
    chord = p_b.p - p_a.p
    length = float(np.linalg.norm(chord))
    if length == 0.0:
        return False
    tangency = abs(float(np.append(critical_vectors[:, 0], 0.0) @ chord)) / length
    before = p_star.s - p_a.s
    after = p_b.s - p_star.s
    return tangency > _FOLD_TANGENCY and before * after < 0


@dataclass
class _Job:
    start: SolutionPoint
    direction: np.ndarray
    symmetry: int
    parent: int
    parent_point: Optional[SolutionPoint] = None
    daughter: Optional[Daughter] = None


class BranchRegistry:
    """Polylines of finished branches in (u, s), grouped by symmetry type."""

    def __init__(self, solver: GNGASolver, tol: float):
        self.solver = solver
        self.tol = tol
        self._entries: List[Tuple[int, int, np.ndarray]] = []

    def add(self, branch: Branch, parent_point: Optional[SolutionPoint] = None) -> None:
        points = ([parent_point] if parent_point is not None else []) + branch.points
        if not points:
            return
        poly = np.array([np.append(p.u, p.s) for p in points])
        self._entries.append((branch.id, self.solver.lattice.type_of(branch.symmetry), poly))

    @staticmethod
    def _distances(images: np.ndarray, poly: np.ndarray) -> np.ndarray:
        """Distance of every image row to the polyline."""

        if len(poly) == 1:
            return np.linalg.norm(images - poly[0][None, :], axis=1)
        start = poly[:-1]
        seg = poly[1:] - start
        seg_len2 = np.maximum((seg * seg).sum(axis=1), 1e-300)
        rel = images[:, None, :] - start[None, :, :]
        t = np.clip((rel * seg[None]).sum(axis=2) / seg_len2[None, :], 0.0, 1.0)
        nearest = start[None] + t[..., None] * seg[None]
        return np.linalg.norm(images[:, None, :] - nearest, axis=2).min(axis=1)

    def matches(self, point: SolutionPoint) -> List[int]:
        """Ids of registered branches that pass within tol of the Γ₀-orbit of ``point``."""

        type_index = self.solver.lattice.type_of(point.symmetry)
        images = self.solver.lattice.group.act_all(point.u)
        images = np.hstack([images, np.full((len(images), 1), point.s)])
        hits = []
        for branch_id, t, poly in self._entries:
            if t == type_index and self._distances(images, poly).min() <= self.tol:
                hits.append(branch_id)
        return hits

    def duplicate_of(self, first: SolutionPoint, second: SolutionPoint) -> Optional[int]:
        common = set(self.matches(first)) & set(self.matches(second))
        return min(common) if common else None


class ContinuationEngine:
    """Runs the branch queue from the trivial branch until no jobs remain."""

    def __init__(self, solver: GNGASolver, decompositions: Sequence[IsotypicDecomposition]):
        self.solver = solver
        self.cfg = solver.cfg
        self.stats = solver.stats
        self.decompositions = list(decompositions)
        self.branches: List[Branch] = []
        self.records: List[BifurcationRecord] = []
        self.registry = BranchRegistry(solver, self.cfg.branch_match_tol)
        self.queue: Deque[_Job] = deque()

    # ------------------------------------------------------------------
    # Queue
    # ------------------------------------------------------------------

    def in_window(self, point: SolutionPoint) -> bool:
        cfg = self.cfg
        return cfg.s_min <= point.s <= cfg.s_max and point.norm1 <= cfg.norm_max

    def seed_jobs(self) -> List[_Job]:
        cfg = self.cfg
        s0 = cfg.s_start if cfg.s_start is not None else cfg.s_max
        origin = self.solver.make_point(np.zeros(self.solver.m), s0)
        down = np.zeros(self.solver.m + 1)
        down[-1] = -1.0
        jobs = []
        if s0 > cfg.s_min:
            jobs.append(_Job(origin, down, origin.symmetry, -1))
        if s0 < cfg.s_max:
            jobs.append(_Job(origin, -down, origin.symmetry, -1))
        return jobs

    def run(self) -> RunResult:
        if self.cfg.threads > 1:
            LOGGER.info("[BRANCH] branch jobs run serially; threads=%d applies to layout restarts only",
                        self.cfg.threads)
        self.queue.extend(self.seed_jobs())
        while self.queue:
            if len(self.branches) >= self.cfg.max_branches:
                LOGGER.warning("[BRANCH] branch cap %d reached; %d jobs dropped",
                               self.cfg.max_branches, len(self.queue))
                break
            self.follow_branch(self.queue.popleft())
        LOGGER.info("[STATS] %d branches, %d bifurcation points, %d points",
                    len(self.branches), len(self.records), self.stats.points)
        return RunResult(branches=self.branches, records=self.records, stats=self.stats.as_dict())

    def _new_branch(self, symmetry: int, parent: int) -> Branch:
        branch = Branch(id=len(self.branches), symmetry=symmetry, parent=parent)
        self.branches.append(branch)
        return branch

    def _append(self, branch: Branch, point: SolutionPoint) -> None:
        point.branch_id = branch.id
        branch.points.append(point)
        self.stats.record_point()

    def _close(self, branch: Branch, reason: str, parent_point: Optional[SolutionPoint]) -> None:
        branch.termination = reason
        self.stats.record_branch(reason)
        self.registry.add(branch, parent_point)
        LOGGER.info("[BRANCH] #%d symmetry %d closed after %d points: %s",
                    branch.id, branch.symmetry, len(branch.points), reason)

    # ------------------------------------------------------------------
    # Branch following
    # ------------------------------------------------------------------

    def _step(self, p_c: SolutionPoint, v: np.ndarray, c: float, symmetry: int) -> Optional[SolutionPoint]:
        """One predictor/corrector step; None when the result is unacceptable."""

        result = self.solver.tgnga(p_c.p + c * v, v)
        if not result.converged:
            return None
        point = result.point
        if np.linalg.norm(point.p - p_c.p) > 2.0 * c or point.symmetry != symmetry:
            return None
        return point

    def follow_branch(self, job: _Job) -> Optional[Branch]:
        cfg = self.cfg
        solver = self.solver
        start = job.start
        v = job.direction / np.linalg.norm(job.direction)
        c = cfg.c_init
        history: List[np.ndarray] = [start.p]
        branch: Optional[Branch] = None
        parent_point = job.parent_point
        p_c = start
        first_step = True

        while True:
            p_n = self._step(p_c, v, c, job.symmetry)
            if p_n is None:
                if c <= cfg.c_min or c < cfg.tau:
                    reason = "speed underflow"
                    break
                c = speed_update(c, cfg, failed=True)
                continue

            if first_step:
                first_step = False
                if job.parent >= 0:
                    duplicate = self.registry.duplicate_of(start, p_n)
                    if duplicate is not None:
                        self.stats.record_duplicate()
                        if job.daughter is not None:
                            job.daughter.branch_id = duplicate
                        LOGGER.info("[BRANCH] job from bifurcation #%d retraces branch #%d; dropped",
                                    job.parent, duplicate)
                        return None
                branch = self._new_branch(job.symmetry, job.parent)
                if job.daughter is not None:
                    job.daughter.branch_id = branch.id
                self._append(branch, start)

            if not self.in_window(p_n):
                reason = "window exit"
                break

            for p_star, p_a, p_b in self.find_bifpoints(p_c, p_n):
                record = self._handle_bifurcation(branch, p_star, p_a, p_b)
                self._append(branch, p_star)
                self._close(branch, "bifurcation", parent_point)
                branch = self._new_branch(job.symmetry, record.id)
                parent_point = None
                self._append(branch, p_star)

            self._append(branch, p_n)
            if len(branch.points) >= cfg.max_points_per_branch:
                reason = "point cap"
                break

            history.append(p_n.p)
            angle = turning_angle(*history[-3:]) if len(history) >= 3 else None
            c = speed_update(c, cfg, angle)
            v = (p_n.p - p_c.p) / np.linalg.norm(p_n.p - p_c.p)
            p_c = p_n

        if branch is None:
            # not even one acceptable step: keep the start point as a one-point branch
            branch = self._new_branch(job.symmetry, job.parent)
            if job.daughter is not None:
                job.daughter.branch_id = branch.id
            self._append(branch, start)
        self._close(branch, reason, parent_point)
        return branch

    # ------------------------------------------------------------------
    # Bifurcation points
    # ------------------------------------------------------------------

    def find_bifpoints(self, p_o: SolutionPoint, p_c: SolutionPoint,
                       depth: int = 0) -> List[Tuple[SolutionPoint, SolutionPoint, SolutionPoint]]:
        """Degenerate points on the segment p_o → p_c with their bracketing points.

        Results are ordered from p_o to p_c. Folds are dropped; segments that
        still hold several crossings are split at their projected midpoint.
        """

        if p_o.signature == p_c.signature:
            return []
        jump = abs(p_c.signature - p_o.signature)
        result = self.solver.secant(p_o, p_c)
        if result.converged:
            p_star = result.point
            critical = self.solver.critical_eigenspace(p_star.a, p_star.s)
            if critical.dim == jump:
                if is_fold(p_o, p_star, p_c, critical.vectors):
                    self.stats.record_fold()
                    LOGGER.info("[BRANCH] fold at s=%.8f", p_star.s)
                    return []
                return [(p_star, p_o, p_c)]

        if depth >= self.cfg.max_split_depth:
            self.stats.record_unresolved()
            LOGGER.warning("[BRANCH] unresolved MI change %d -> %d between s=%.6f and s=%.6f",
                           p_o.signature, p_c.signature, p_o.s, p_c.s)
            return []
        chord = p_c.p - p_o.p
        middle = self.solver.tgnga(0.5 * (p_o.p + p_c.p), chord / np.linalg.norm(chord))
        if not middle.converged:
            self.stats.record_unresolved()
            LOGGER.warning("[BRANCH] could not split segment s=%.6f..%.6f (%s)",
                           p_o.s, p_c.s, middle.reason)
            return []
        mid = middle.point
        return self.find_bifpoints(p_o, mid, depth + 1) + self.find_bifpoints(mid, p_c, depth + 1)

    def _handle_bifurcation(self, branch: Branch, p_star: SolutionPoint,
                            p_a: SolutionPoint, p_b: SolutionPoint) -> BifurcationRecord:
        left, right = sorted((p_a, p_b), key=lambda p: p.s)
        record_id = len(self.records)
        rng = np.random.default_rng([self.cfg.seed, record_id])
        p_star.branch_id = branch.id
        record = resolve_bifurcation(
            self.solver, record_id, p_star, branch.id, branch.symmetry,
            self.decompositions[branch.symmetry], left.signature, right.signature, rng,
        )
        self.records.append(record)
        self.stats.record_bifurcation()
        for daughter in record.daughters:
            q = daughter.point
            direction = q.p - p_star.p
            self.queue.append(_Job(q, direction, q.symmetry, record.id, parent_point=p_star, daughter=daughter))
        return record
