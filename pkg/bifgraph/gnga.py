"""Gradient Newton–Galerkin kernels in eigenbasis coordinates.

A point is p = (a, s) with u = Ψ a. The gradient coefficients are
g_j = a_j λ_j − f_s(u)·ψ_j and the Hessian is h = diag(λ) − Ψᵀ diag(f_s'(u)) Ψ.
Every Newton step solves a bordered system by minimum-norm least squares.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from .isotropy import SymmetryLattice
from .models import (
    CriticalEigenspace,
    NewtonResult,
    SolutionPoint,
    SolverConfig,
    SymmetryAdaptedBasis,
)
from .nonlinearities import Nonlinearity
from .stats import SolverStats

LOGGER = logging.getLogger(__name__)

__all__ = [
    "action",
    "gradient_coeffs",
    "hessian_coeffs",
    "signature",
    "GNGASolver",
]


def action(u: np.ndarray, s: float, f: Nonlinearity, lap: np.ndarray) -> float:
    """J_s(u) = ½ Lu·u − Σ F_s(u_i)."""

    u = np.asarray(u, dtype=float)
    return float(0.5 * u @ (lap @ u) - f.primitive(u, s).sum())


def gradient_coeffs(a: np.ndarray, s: float, f: Nonlinearity, basis: SymmetryAdaptedBasis) -> np.ndarray:
    u = basis.psi @ a
    return a * basis.eigenvalues - basis.psi.T @ f.f(u, s)


def hessian_coeffs(a: np.ndarray, s: float, f: Nonlinearity, basis: SymmetryAdaptedBasis) -> np.ndarray:
    u = basis.psi @ a
    weighted = basis.psi * f.df(u, s)[:, None]
    h = np.diag(basis.eigenvalues) - basis.psi.T @ weighted
    return 0.5 * (h + h.T)


def signature(h: np.ndarray, zero_rel_tol: float = 1e-6) -> Tuple[int, np.ndarray, float]:
    """Morse index with the ascending Hessian spectrum and the zero tolerance used."""

    values = linalg.eigvalsh(h)
    zero_tol = zero_rel_tol * max(1.0, float(np.abs(h).max(initial=0.0)))
    return int(np.count_nonzero(values < -zero_tol)), values, zero_tol


class GNGASolver:
    """Newton kernels bound to one graph, basis, symmetry lattice and f."""

    def __init__(self, lap: np.ndarray, basis: SymmetryAdaptedBasis, lattice: SymmetryLattice,
                 nonlinearity: Nonlinearity, config: SolverConfig, stats: Optional[SolverStats] = None):
        self.lap = np.asarray(lap, dtype=float)
        self.basis = basis
        self.lattice = lattice
        self.f = nonlinearity
        self.cfg = config
        self.stats = stats or SolverStats()

    @property
    def m(self) -> int:
        return self.basis.m

    # ------------------------------------------------------------------
    # Evaluations
    # ------------------------------------------------------------------

    def u_of(self, a: np.ndarray) -> np.ndarray:
        return self.basis.psi @ a

    def gradient(self, a: np.ndarray, s: float) -> np.ndarray:
        return gradient_coeffs(a, s, self.f, self.basis)

    def hessian(self, a: np.ndarray, s: float) -> np.ndarray:
        return hessian_coeffs(a, s, self.f, self.basis)

    def dg_ds(self, a: np.ndarray, s: float) -> np.ndarray:
        if self.f.linear_in_s:
            return -np.asarray(a, dtype=float)
        return -self.basis.psi.T @ self.f.df_ds(self.u_of(a), s)

    def signature(self, a: np.ndarray, s: float) -> Tuple[int, np.ndarray, float]:
        return signature(self.hessian(a, s), self.cfg.zero_rel_tol)

    def critical_eigenspace(self, a: np.ndarray, s: float) -> CriticalEigenspace:
        """Hessian eigenvectors with |eigenvalue| below the zero tolerance."""

        h = self.hessian(a, s)
        values, vectors = linalg.eigh(h)
        zero_tol = self.cfg.zero_rel_tol * max(1.0, float(np.abs(h).max(initial=0.0)))
        keep = np.abs(values) < zero_tol
        return CriticalEigenspace(vectors=vectors[:, keep], eigenvalues=values[keep])

    def symmetry_of(self, u: np.ndarray) -> int:
        """Index in 𝒢 of sym(u)."""

        group = self.lattice.group
        images = group.act_all(u)
        tol = self.cfg.symmetry_tol * max(1.0, float(np.abs(u).max(initial=0.0)))
        detected = np.all(np.abs(images - u[None, :]) < tol, axis=1)
        return self.lattice.largest_contained(detected)

    def make_point(self, a: np.ndarray, s: float, degenerate: bool = False) -> SolutionPoint:
        a = np.asarray(a, dtype=float).copy()
        u = self.u_of(a)
        mi, _, _ = self.signature(a, s)
        return SolutionPoint(
            a=a,
            s=float(s),
            u=u,
            grad_norm=float(np.abs(self.gradient(a, s)).max(initial=0.0)),
            signature=mi,
            symmetry=self.symmetry_of(u),
            action=action(u, s, self.f, self.lap),
            degenerate=degenerate,
            anomalous_constant=bool(np.abs(u - u.mean()).max(initial=0.0) < 1e-8),
        )

    def _solve(self, matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        chi, *_ = linalg.lstsq(matrix, rhs, cond=self.cfg.lstsq_cond)
        return chi

    # ------------------------------------------------------------------
    # Kernels
    # ------------------------------------------------------------------

    def tgnga(self, p_g: np.ndarray, v: np.ndarray, max_iter: Optional[int] = None) -> NewtonResult:
        """Newton on g = 0 constrained to the hyperplane (p − p_g)·v = 0."""

        max_iter = self.cfg.tgnga_max_iter if max_iter is None else max_iter
        m = self.m
        p_g = np.asarray(p_g, dtype=float)
        v = np.asarray(v, dtype=float)
        p = p_g.copy()
        residuals = []
        for it in range(max_iter + 1):
            a, s = p[:m], p[m]
            g = self.gradient(a, s)
            kappa = float((p - p_g) @ v)
            residuals.append(float(np.abs(g).max(initial=0.0)))
            if residuals[-1] <= self.cfg.newton_tol and abs(kappa) <= 1e-10:
                self.stats.record_tgnga(it, True)
                return NewtonResult(self.make_point(a, s), True, it, residuals=residuals)
            if it == max_iter:
                break
            matrix = np.zeros((m + 1, m + 1))
            matrix[:m, :m] = self.hessian(a, s)
            matrix[:m, m] = self.dg_ds(a, s)
            matrix[m] = v
            chi = self._solve(matrix, np.append(g, kappa))
            if not np.all(np.isfinite(chi)) or np.linalg.norm(chi) > self.cfg.step_max:
                self.stats.record_tgnga(it + 1, False)
                return NewtonResult(None, False, it + 1, "step explosion", residuals)
            p = p - chi
        self.stats.record_tgnga(max_iter, False)
        return NewtonResult(None, False, max_iter, "iteration cap", residuals)

    def _rth_eigenvalue(self, p: np.ndarray, r: int) -> float:
        _, values, _ = signature(self.hessian(p[:self.m], p[self.m]), self.cfg.zero_rel_tol)
        return float(values[r - 1])

    def secant(self, p_o: SolutionPoint, p_c: SolutionPoint) -> NewtonResult:
        """Locate the point between p_o and p_c where the r-th Hessian eigenvalue vanishes.

        With k the smaller and k + d the larger Morse index, r = k + ⌈d/2⌉.
        Iterates stay bracketed; a secant guess outside the bracket falls
        back to bisection.
        """

        self.stats.record_secant()
        k = min(p_o.signature, p_c.signature)
        d = abs(p_c.signature - p_o.signature)
        if d == 0:
            return NewtonResult(None, False, 0, "no index change")
        r = k + math.ceil(d / 2)
        start, end = p_o.p, p_c.p
        chord = end - start
        length = float(np.linalg.norm(chord))
        if length == 0.0:
            return NewtonResult(None, False, 0, "zero-length segment")
        v = chord / length

        bracket = [(0.0, start, self._rth_eigenvalue(start, r)), (length, end, self._rth_eigenvalue(end, r))]
        prev, cur = bracket
        scale = max(1.0, float(np.abs(self.hessian(start[:self.m], start[self.m])).max()))
        zero_tol = self.cfg.secant_tol * scale
        last = None
        for it in range(1, self.cfg.secant_max_iter + 1):
            (ta, pa, ba), (tb, pb, bb) = bracket
            denom = cur[2] - prev[2]
            t_new = None
            if abs(denom) > 1e-300:
                t_new = cur[0] - (cur[0] - prev[0]) * cur[2] / denom
            if t_new is None or not min(ta, tb) < t_new < max(ta, tb):
                t_new = 0.5 * (ta + tb)
            guess = pa + (pb - pa) * (t_new - ta) / (tb - ta)
            result = self.tgnga(guess, v, max_iter=self.cfg.secant_newton_iter)
            if not result.converged:
                return NewtonResult(None, False, it, f"projection failed: {result.reason}")
            p_new = result.point.p
            t_new = float((p_new - start) @ v)
            beta = self._rth_eigenvalue(p_new, r)
            last = (p_new, beta)
            if abs(beta) < zero_tol or abs(tb - ta) < self.cfg.secant_tol * max(1.0, length):
                point = self.make_point(p_new[:self.m], p_new[self.m], degenerate=True)
                return NewtonResult(point, True, it)
            prev, cur = cur, (t_new, p_new, beta)
            if np.sign(beta) == np.sign(ba):
                bracket = [cur, bracket[1]]
            else:
                bracket = [bracket[0], cur]
        if last is not None and abs(last[1]) < self.cfg.zero_rel_tol * scale:
            LOGGER.debug("[BIF] secant stopped at the iteration cap with |beta|=%.2e", abs(last[1]))
            point = self.make_point(last[0][:self.m], last[0][self.m], degenerate=True)
            return NewtonResult(point, True, self.cfg.secant_max_iter)
        return NewtonResult(None, False, self.cfg.secant_max_iter, "iteration cap")

    def cgnga(self, p_star: SolutionPoint, p_g: np.ndarray, subspace: np.ndarray, eps: float) -> NewtonResult:
        """Newton on g = 0 restricted to the cylinder ‖P_E(a − a*)‖ = ε."""

        m = self.m
        proj = subspace @ subspace.T
        a_star = p_star.a
        p = np.asarray(p_g, dtype=float).copy()
        escape = self.cfg.escape_factor * eps
        residuals = []
        for it in range(self.cfg.cgnga_max_iter + 1):
            a, s = p[:m], p[m]
            g = self.gradient(a, s)
            offset = proj @ (a - a_star)
            radius = float(np.linalg.norm(offset))
            kappa = 0.5 * (radius ** 2 - eps ** 2)
            residuals.append(float(np.abs(g).max(initial=0.0)))
            if residuals[-1] <= self.cfg.newton_tol and abs(radius - eps) <= 1e-10:
                self.stats.record_cgnga(it, True)
                return NewtonResult(self.make_point(a, s), True, it, residuals=residuals)
            if it == self.cfg.cgnga_max_iter:
                break
            matrix = np.zeros((m + 1, m + 1))
            matrix[:m, :m] = self.hessian(a, s)
            matrix[:m, m] = self.dg_ds(a, s)
            matrix[m, :m] = offset
            chi = self._solve(matrix, np.append(g, kappa))
            p = p - chi
            if not np.all(np.isfinite(p)) or np.linalg.norm(p - p_star.p) > escape:
                self.stats.record_cgnga(it + 1, False)
                return NewtonResult(None, False, it + 1, "escaped cylinder neighbourhood", residuals)
        self.stats.record_cgnga(self.cfg.cgnga_max_iter, False)
        return NewtonResult(None, False, self.cfg.cgnga_max_iter, "iteration cap", residuals)
