"""Counters for solver kernels and the branch queue."""
from __future__ import annotations

import time
from typing import Dict


class SolverStats:
    def __init__(self):
        self.started = time.monotonic()
        self.tgnga_calls = 0
        self.tgnga_iterations = 0
        self.tgnga_failures = 0
        self.cgnga_calls = 0
        self.cgnga_iterations = 0
        self.cgnga_failures = 0
        self.secant_calls = 0
        self.points = 0
        self.branches = 0
        self.bifurcations = 0
        self.folds = 0
        self.unresolved = 0
        self.duplicate_branches = 0
        self.audits: dict[str, int] = {}
        self.terminations: dict[str, int] = {}

    def record_tgnga(self, iterations: int, converged: bool):
        self.tgnga_calls += 1
        self.tgnga_iterations += iterations
        if not converged:
            self.tgnga_failures += 1

    def record_cgnga(self, iterations: int, converged: bool):
        self.cgnga_calls += 1
        self.cgnga_iterations += iterations
        if not converged:
            self.cgnga_failures += 1

    def record_secant(self):
        self.secant_calls += 1

    def record_point(self):
        self.points += 1

    def record_branch(self, termination: str):
        self.branches += 1
        self.terminations[termination] = self.terminations.get(termination, 0) + 1

    def record_bifurcation(self):
        self.bifurcations += 1

    def record_fold(self):
        self.folds += 1

    def record_unresolved(self):
        self.unresolved += 1

    def record_duplicate(self):
        self.duplicate_branches += 1

    def record_audit(self, status: str):
        self.audits[status] = self.audits.get(status, 0) + 1

    @staticmethod
    def _average(total: int, calls: int) -> float:
        return total / calls if calls else 0.0

    def as_dict(self) -> Dict[str, object]:
        """Counters for the run summary file; excludes wall time for reproducibility."""
        return {
            "tgnga_calls": self.tgnga_calls,
            "tgnga_iterations": self.tgnga_iterations,
            "tgnga_iterations_per_call": round(self._average(self.tgnga_iterations, self.tgnga_calls), 3),
            "tgnga_failures": self.tgnga_failures,
            "cgnga_calls": self.cgnga_calls,
            "cgnga_iterations": self.cgnga_iterations,
            "cgnga_iterations_per_call": round(self._average(self.cgnga_iterations, self.cgnga_calls), 3),
            "cgnga_failures": self.cgnga_failures,
            "secant_calls": self.secant_calls,
            "points": self.points,
            "branches": self.branches,
            "bifurcations": self.bifurcations,
            "folds": self.folds,
            "unresolved_segments": self.unresolved,
            "duplicate_branches": self.duplicate_branches,
            "audits": dict(sorted(self.audits.items())),
            "terminations": dict(sorted(self.terminations.items())),
        }

    def snapshot(self) -> str:
        elapsed = time.monotonic() - self.started
        lines = [
            f"Solver status after {elapsed:.1f}s",
            f"• Branches: {self.branches} | Points: {self.points} | Bifurcations: {self.bifurcations}",
            (
                f"• tGNGA: {self.tgnga_calls} calls, {self.tgnga_iterations} iterations "
                f"({self._average(self.tgnga_iterations, self.tgnga_calls):.3f}/call), "
                f"{self.tgnga_failures} failures"
            ),
            (
                f"• cGNGA: {self.cgnga_calls} calls, {self.cgnga_iterations} iterations "
                f"({self._average(self.cgnga_iterations, self.cgnga_calls):.3f}/call)"
            ),
            f"• Secant: {self.secant_calls} | Folds: {self.folds} | Unresolved: {self.unresolved}",
            f"• Duplicate branches dropped: {self.duplicate_branches}",
            "• Audits:",
        ]
        for status, count in sorted(self.audits.items()):
            lines.append(f"  - {status}: {count}")
        return "\n".join(lines)

    def reset(self):
        self.__init__()
