"""Domain models for the bifurcation engine.

Each dataclass has typing-friendly fields and short documentation so the
group engine, the continuation driver and the renderers share one shape.
Vertex indices are 1-based in files and in ``Graph.edges``; every array
indexed by vertex is 0-based. Group elements are referred to by their
integer index into the master signed group Γ₀.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on vertices ``1..n``.

    Attributes:
        n: Vertex count.
        edges: Sorted tuple of pairs ``(i, j)`` with ``1 <= i < j <= n``.
        name: Optional label used in logs and reports.
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    name: str = ""

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            adj[i - 1, j - 1] = adj[j - 1, i - 1] = True
        return adj

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_set


@dataclass
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass
class Layout:
    """Planar vertex positions.

    Attributes:
        coords: ``(n, 2)`` array, row ``i`` holds vertex ``i + 1``.
        complexity: Number of distinct pairwise distances (6 decimals).
        seed_index: Restart index that produced this layout.
        converged: False when the force norm never dropped below tolerance.
        alternates: Other restarts, best first (only set on the returned layout).
    """

    coords: np.ndarray
    complexity: int
    seed_index: int = 0
    converged: bool = True
    alternates: List["Layout"] = field(default_factory=list)


@dataclass(frozen=True)
class SignedSymmetry:
    """Pair (π, β) acting by ``(γ·u)[π(j)] = β u[j]``.

    ``perm`` is 0-based image notation: ``perm[j] = π(j)``.
    """

    perm: Tuple[int, ...]
    sign: int = 1

    def compose(self, other: "SignedSymmetry") -> "SignedSymmetry":
        """Return ``self ∘ other`` (apply ``other`` first)."""
        perm = tuple(self.perm[j] for j in other.perm)
        return SignedSymmetry(perm, self.sign * other.sign)

    def act(self, u: np.ndarray) -> np.ndarray:
        out = np.empty_like(u, dtype=float)
        out[list(self.perm)] = self.sign * np.asarray(u, dtype=float)
        return out

    def matrix(self) -> np.ndarray:
        n = len(self.perm)
        mat = np.zeros((n, n))
        mat[list(self.perm), np.arange(n)] = self.sign
        return mat


@dataclass
class IsotypicComponent:
    """One real isotypic component V^(k) of a subgroup action.

    Attributes:
        k: 1-based label within the subgroup's decomposition.
        complex_degree: Degree of the complex irreducible.
        real_degree: Degree of the real irreducible (doubled unless real type).
        indicator: Frobenius–Schur indicator in {-1, 0, 1}.
        character: Complex character values, one per element of the subgroup
            (same order as the subgroup's element array).
        projector: Real orthogonal projection P^(k), ``(n, n)``.
        basis: Orthonormal basis of V^(k) in vertex coordinates, ``(n, dim)``.
        kernel: Global indices of elements acting trivially on V^(k).
    """

    k: int
    complex_degree: int
    real_degree: int
    indicator: int
    character: np.ndarray
    projector: np.ndarray
    basis: np.ndarray
    kernel: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])


@dataclass
class IsotypicDecomposition:
    """All isotypic components for symmetry ``index`` (zero-dim ones kept)."""

    index: int
    components: List[IsotypicComponent]

    @property
    def dims(self) -> List[int]:
        return [c.dim for c in self.components]

    def component(self, k: int) -> IsotypicComponent:
        return self.components[k - 1]


@dataclass
class BifurcationArrow:
    """Arrow Γ_mother --k--> Γ_daughter of the bifurcation digraph.

    Attributes:
        mother: Index i of the mother symmetry in 𝒢.
        k: Isotypic label of the critical representation.
        daughter: Index j of the maximal isotropy subgroup.
        kernel_order: Order of the kernel Γ'_{i,k}.
        bif_group: Name of the bifurcation group Γ_i/Γ'_{i,k}.
        normalizer_quotient: Order of N_{Γ_i}(Γ_j)/Γ_j.
    """

    mother: int
    k: int
    daughter: int
    kernel_order: int
    bif_group: str
    normalizer_quotient: int

    @property
    def style(self) -> str:
        if self.normalizer_quotient == 2:
            return "solid"
        if self.normalizer_quotient == 1:
            return "dashed"
        return "dotted"


@dataclass
class CondensationClass:
    index: int
    types: List[int]


@dataclass
class SymmetryAdaptedBasis:
    """Eigenbasis Ψ of L adapted to the Γ₀ isotypic decomposition.

    Attributes:
        psi: ``(n, m)`` orthonormal eigenvectors.
        eigenvalues: λ_j per column.
        tags: Γ₀ isotypic label k per column.
        coords: ``(i, k) -> [B^(k)_{Γ_i}]_Ψ`` coordinate matrices.
    """

    psi: np.ndarray
    eigenvalues: np.ndarray
    tags: np.ndarray
    coords: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return int(self.psi.shape[1])


@dataclass
class SolutionPoint:
    """Converged (or degenerate) point on a branch.

    Attributes:
        a: Coefficients in Ψ-coordinates.
        s: Bifurcation parameter.
        u: Vertex values ``Ψ a``.
        grad_norm: ‖g‖∞ at the point.
        signature: Number of negative Hessian eigenvalues (Morse index).
        symmetry: Index into 𝒢 of sym(u).
        action: J_s(u).
        branch_id: Owning branch, -1 until assigned.
        degenerate: True for located bifurcation/fold points.
        anomalous_constant: True iff u is constant across vertices.
    """

    a: np.ndarray
    s: float
    u: np.ndarray
    grad_norm: float
    signature: int
    symmetry: int
    action: float = 0.0
    branch_id: int = -1
    degenerate: bool = False
    anomalous_constant: bool = False

    @property
    def p(self) -> np.ndarray:
        return np.append(self.a, self.s)

    @property
    def norm1(self) -> float:
        return float(np.abs(self.u).sum())


@dataclass
class CriticalEigenspace:
    """Near-kernel of the Hessian: orthonormal columns in Ψ-coordinates."""

    vectors: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])


@dataclass
class Branch:
    """Maximal C¹ piece of constant symmetry.

    ``parent`` is the id of the bifurcation record that spawned it, or -1 for
    the trivial branch seeds.
    """

    id: int
    symmetry: int
    parent: int = -1
    points: List[SolutionPoint] = field(default_factory=list)
    termination: str = ""


@dataclass
class Daughter:
    """Daughter found by cGNGA at a bifurcation point."""

    point: SolutionPoint
    subspace: int  # index j of the search subspace E_j, -1 for E itself
    orbit_size: int
    tries: int
    branch_id: int = -1


@dataclass
class AuditResult:
    status: str  # "pass" | "fail" | "skipped"
    left: int = 0
    right: int = 0


@dataclass
class BifurcationRecord:
    """Resolved bifurcation point.

    Attributes:
        id: Record id referenced by daughter branches.
        point: Degenerate point p*.
        mother_branch: Branch on which p* was located.
        critical: Critical eigenspace E at p*.
        k_bar: ``(k, dim(E ∩ V^(k)))`` pairs for the mother symmetry.
        degeneracy: Accidental degeneracy types found (empty means none).
        daughters: Nonconjugate daughters.
        audit: Index-audit outcome.
        mother_signatures: Morse indices of the bracketing mother points.
    """

    id: int
    point: SolutionPoint
    mother_branch: int
    critical: CriticalEigenspace
    k_bar: List[Tuple[int, int]] = field(default_factory=list)
    degeneracy: List[int] = field(default_factory=list)
    daughters: List[Daughter] = field(default_factory=list)
    audit: AuditResult = field(default_factory=lambda: AuditResult("skipped"))
    mother_signatures: Tuple[int, int] = (0, 0)

    @property
    def degeneracy_label(self) -> str:
        return ",".join(str(t) for t in self.degeneracy) if self.degeneracy else "none"


@dataclass
class SolverConfig:
    """Continuation settings; see ``config.solver_config`` for validation."""

    s_min: float = -4.0
    s_max: float = 4.0
    s_start: Optional[float] = None
    norm_max: float = 40.0
    c_min: float = 0.01
    c_max: float = 0.4
    c_init: float = 0.1
    tau: float = 0.01
    epsilon: Optional[float] = None
    epsilon_scale: float = 0.05
    seed: int = 0
    f_nc: Dict[int, int] = field(default_factory=dict)
    nonlinearity: str = "cubic"
    nonlinearity_params: Dict[str, float] = field(default_factory=dict)
    basis_size: Optional[int] = None
    newton_tol: float = 1e-10
    zero_rel_tol: float = 1e-6
    secant_tol: float = 1e-13
    lstsq_cond: float = 1e-12
    tgnga_max_iter: int = 4
    cgnga_max_iter: int = 20
    secant_max_iter: int = 30
    secant_newton_iter: int = 12
    step_max: float = 10.0
    escape_factor: float = 20.0
    dedup_tol: float = 1e-5
    branch_match_tol: float = 0.02
    symmetry_tol: float = 1e-6
    max_split_depth: int = 10
    max_points_per_branch: int = 4000
    max_branches: int = 2000
    threads: int = 1


@dataclass
class NewtonResult:
    """Outcome of a Newton kernel; failures are values, not exceptions."""

    point: Optional[SolutionPoint]
    converged: bool
    iterations: int
    reason: str = ""
    residuals: List[float] = field(default_factory=list)


@dataclass
class RunResult:
    """Everything a continuation run produced."""

    branches: List[Branch]
    records: List[BifurcationRecord]
    stats: Dict[str, object] = field(default_factory=dict)

    def branch(self, branch_id: int) -> Branch:
        for b in self.branches:
            if b.id == branch_id:
                return b
        raise KeyError(branch_id)

    def record(self, record_id: int) -> BifurcationRecord:
        for r in self.records:
            if r.id == record_id:
                return r
        raise KeyError(record_id)
