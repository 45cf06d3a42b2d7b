from __future__ import annotations

from typing import Callable, Optional

import numpy as np
import pytest

from bifgraph.graphs import build_graph, laplacian
from bifgraph.groups import automorphisms, build_gamma0
from bifgraph.isotropy import isotropy_symmetries
from bifgraph.models import Graph, SolutionPoint, SolverConfig
from bifgraph.nonlinearities import Cubic
from bifgraph.pipeline import analyze_graph
from bifgraph.gnga import GNGASolver
from bifgraph.stats import SolverStats

FAST_LAYOUT = {"restarts": 2}


@pytest.fixture(scope="session")
def p3_graph() -> Graph:
    return build_graph(3, [(1, 2), (2, 3)], name="P3")


@pytest.fixture(scope="session")
def c4_graph() -> Graph:
    return build_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)], name="C4")


@pytest.fixture(scope="session")
def p3_bundle(p3_graph):
    return analyze_graph(p3_graph, odd=True, layout_cfg=FAST_LAYOUT)


@pytest.fixture
def make_solver(p3_bundle) -> Callable[..., GNGASolver]:
    """Cubic GNGA solver on P3; keyword arguments override SolverConfig fields."""

    def factory(bundle=None, **overrides) -> GNGASolver:
        bundle = bundle or p3_bundle
        return GNGASolver(
            laplacian(bundle.graph),
            bundle.basis,
            bundle.lattice,
            Cubic(),
            SolverConfig(**overrides),
            SolverStats(),
        )

    return factory


@pytest.fixture
def p3_solver(make_solver) -> GNGASolver:
    return make_solver()


@pytest.fixture
def lattice_of():
    def factory(graph: Graph, odd: bool = True, max_order: int = 2000):
        group = build_gamma0(automorphisms(graph), odd=odd)
        return group, isotropy_symmetries(group, max_order=max_order)

    return factory


@pytest.fixture
def make_point() -> Callable[..., SolutionPoint]:
    """Bare solution point in (a, s) coordinates for geometry tests."""

    def factory(a, s: float, signature: int = 0, symmetry: int = 0, u: Optional[np.ndarray] = None):
        a = np.atleast_1d(np.asarray(a, dtype=float))
        return SolutionPoint(
            a=a,
            s=float(s),
            u=a.copy() if u is None else np.asarray(u, dtype=float),
            grad_norm=0.0,
            signature=signature,
            symmetry=symmetry,
        )

    return factory


def constant_point(solver: GNGASolver, s: float) -> SolutionPoint:
    """Point on the constant branch u = √(−s)·1 of the cubic problem."""

    u = np.full(solver.basis.psi.shape[0], np.sqrt(-s))
    return solver.make_point(solver.basis.psi.T @ u, s)


@pytest.fixture
def on_constant_branch():
    return constant_point
