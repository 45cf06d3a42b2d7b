"""Exception hierarchy for bifgraph.

Each fatal category carries the process exit code used by the CLI. Solver
kernels never raise these for ordinary non-convergence; they return result
objects flagged ``converged=False`` instead.
"""
from __future__ import annotations


class BifgraphError(Exception):
    """Base class for all fatal bifgraph errors."""

    exit_code = 1


class ConfigError(BifgraphError):
    """Malformed or inconsistent configuration."""

    exit_code = 2


class MissingArtifactError(BifgraphError):
    """A required input or intermediate file is absent."""

    exit_code = 3


class ParseError(BifgraphError):
    """Edgelist or layout text that cannot be tokenized."""

    exit_code = 4


class GraphStructureError(BifgraphError):
    """Input graph violates the simple-connected-graph contract."""

    exit_code = 4


class BudgetExceededError(BifgraphError):
    """A combinatorial search ran past its configured budget."""

    exit_code = 5


class NumericalError(BifgraphError):
    """Broken numerical invariant (eigensolver, character table, projections)."""

    exit_code = 6
