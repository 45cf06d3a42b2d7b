"""Character tables, Frobenius–Schur indicators and real isotypic projections.

Characters are computed numerically over ℂ from the class-sum algebra: the
class multiplication matrices commute, and a random linear combination of
them has the central characters as its eigenvectors.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy import linalg

from .errors import NumericalError
from .groups import SignedGroup, SymmetryGroup
from .models import IsotypicComponent, IsotypicDecomposition

LOGGER = logging.getLogger(__name__)

__all__ = [
    "CharacterTable",
    "character_table",
    "character_table_from_table",
    "frobenius_schur",
    "isotypic_decomposition",
    "local_table",
]


@dataclass
class CharacterTable:
    """Irreducible complex characters of a finite group.

    Attributes:
        table: Local multiplication table, identity at index 0.
        classes: Conjugacy classes as arrays of local indices, identity first.
        class_of: Class id of each local element.
        characters: ``(K, C)`` complex values per class.
        degrees: χ(identity) per character.
        indicators: Frobenius–Schur indicators.
        partner: Index of the complex-conjugate character.
    """

    table: np.ndarray
    classes: List[np.ndarray]
    class_of: np.ndarray
    characters: np.ndarray
    degrees: np.ndarray
    indicators: np.ndarray
    partner: np.ndarray

    @property
    def order(self) -> int:
        return len(self.class_of)

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes])

    def on_elements(self, k: int) -> np.ndarray:
        return self.characters[k][self.class_of]


def local_table(group: SignedGroup, elements: np.ndarray) -> np.ndarray:
    """Multiplication table of a subgroup in local indices."""

    elements = np.asarray(elements)
    pos = np.full(group.order, -1, dtype=int)
    pos[elements] = np.arange(len(elements))
    table = pos[group.table[np.ix_(elements, elements)]]
    if np.any(table < 0):
        raise ValueError("Element set is not a subgroup")
    return table


def _element_orders(table: np.ndarray) -> np.ndarray:
    size = len(table)
    idx = np.arange(size)
    orders = np.zeros(size, dtype=int)
    power = idx.copy()
    k = 1
    while np.any(orders == 0):
        orders[(power == 0) & (orders == 0)] = k
        power = table[power, idx]
        k += 1
    return orders


def _conjugacy_classes(table: np.ndarray) -> List[np.ndarray]:
    size = len(table)
    inverse = np.argmax(table == 0, axis=1)
    orders = _element_orders(table)
    assigned = np.zeros(size, dtype=bool)
    classes = []
    for x in range(size):
        if assigned[x]:
            continue
        conjugates = np.unique(table[table[:, x], inverse])
        assigned[conjugates] = True
        classes.append(conjugates)
    classes.sort(key=lambda c: (orders[c[0]], len(c), int(c.min())))
    return classes


def frobenius_schur(chi: np.ndarray, table: np.ndarray, class_of: np.ndarray) -> int:
    """(1/|Γ|) Σ_g χ(g²), rounded; ``chi`` holds values per class."""

    idx = np.arange(len(table))
    value = chi[class_of[table[idx, idx]]].sum() / len(table)
    nearest = int(np.rint(value.real))
    if abs(value - nearest) >= 1e-6 or nearest not in (-1, 0, 1):
        raise NumericalError(f"Frobenius–Schur sum {value} is not an indicator")
    return nearest


def character_table_from_table(table: np.ndarray, rng: Optional[np.random.Generator] = None,
                               retries: int = 20) -> CharacterTable:
    """Character table of the group with multiplication ``table`` (identity 0)."""

    table = np.asarray(table, dtype=int)
    rng = rng or np.random.default_rng(0)
    size = len(table)
    classes = _conjugacy_classes(table)
    n_classes = len(classes)
    class_of = np.empty(size, dtype=int)
    for c, members in enumerate(classes):
        class_of[members] = c
    sizes = np.array([len(c) for c in classes], dtype=float)

    # counts[r, s, t]: pairs (x, y) in C_r × C_s with xy in C_t
    counts = np.zeros((n_classes, n_classes, n_classes))
    cx = np.repeat(class_of, size)
    cy = np.tile(class_of, size)
    np.add.at(counts, (cx, cy, class_of[table.ravel()]), 1.0)
    structure = counts / sizes[None, None, :]

    for attempt in range(retries):
        weights = rng.normal(size=n_classes)
        combo = np.tensordot(weights, structure, axes=(0, 0))
        values, vectors = linalg.eig(combo)
        gaps = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(gaps, np.inf)
        scale = max(1.0, float(np.abs(values).max()))
        if n_classes > 1 and gaps.min() < 1e-6 * scale:
            LOGGER.debug("[GROUP] class-sum split degenerate on attempt %d; retrying", attempt + 1)
            continue
        omega = vectors / vectors[0:1, :]
        norms = (np.abs(omega) ** 2 / sizes[:, None]).sum(axis=0)
        degrees = np.sqrt(size / norms)
        rounded = np.rint(degrees)
        if np.abs(degrees - rounded).max() > 1e-6:
            continue
        chars = (rounded[None, :] * omega / sizes[:, None]).T
        order = sorted(range(n_classes), key=lambda k: (rounded[k], _value_key(chars[k])))
        chars = chars[order]
        rounded = rounded[order].astype(int)
        _check_orthogonality(chars, sizes, size)
        partner = np.array([
            int(np.argmin(np.abs(chars - np.conj(chars[k])[None, :]).max(axis=1)))
            for k in range(n_classes)
        ])
        indicators = np.array([frobenius_schur(chars[k], table, class_of) for k in range(n_classes)])
        return CharacterTable(
            table=table,
            classes=classes,
            class_of=class_of,
            characters=chars,
            degrees=rounded,
            indicators=indicators,
            partner=partner,
        )
    raise NumericalError(f"Class-sum algebra did not split after {retries} attempts (|Γ| = {size})")


def _value_key(chi: np.ndarray) -> tuple:
    return tuple((-round(float(z.real), 8), -round(float(z.imag), 8)) for z in chi)


def _check_orthogonality(chars: np.ndarray, sizes: np.ndarray, order: int) -> None:
    gram = (chars * sizes[None, :]) @ np.conj(chars).T / order
    err = np.abs(gram - np.eye(len(chars))).max()
    if err > 1e-6:
        raise NumericalError(f"Character orthogonality violated by {err:.2e}")


def character_table(group: SignedGroup, elements: np.ndarray, rng: Optional[np.random.Generator] = None,
                    retries: int = 20) -> CharacterTable:
    return character_table_from_table(local_table(group, elements), rng=rng, retries=retries)


def isotypic_decomposition(group: SignedGroup, sym: SymmetryGroup, table: CharacterTable,
                           tol: float = 1e-8) -> IsotypicDecomposition:
    """Real isotypic components of the action of ``sym`` on ℝⁿ.

    One component per real irreducible (complex pairs merged). Labels start
    at 1; for Γ₀ of an odd problem the components where −1 acts as −I come
    first, otherwise the trivial representation is k = 1 so V^(1) = fix(Γ).
    Remaining components are ordered by real degree, then by character
    values.
    """

    elements = sym.elements
    size = len(elements)
    n = group.n
    minus_local = None
    if group.odd and sym.mask[1]:
        minus_local = int(np.flatnonzero(elements == 1)[0])
    negative_first = sym.index == 0 and minus_local is not None

    entries = []
    for k in range(len(table.characters)):
        if table.partner[k] < k:
            continue
        chi = table.on_elements(k)
        dtil = int(table.degrees[k])
        nu = int(table.indicators[k])
        trivial = dtil == 1 and np.allclose(chi, 1.0)
        negative = minus_local is not None and chi[minus_local].real < 0
        lead = (0 if negative else 1) if negative_first else (0 if trivial else 1)
        real_degree = dtil if nu == 1 else 2 * dtil
        entries.append(((lead, real_degree, _value_key(table.characters[k])), k, chi, dtil, nu, real_degree))
    entries.sort(key=lambda e: e[0])

    components = []
    total = np.zeros((n, n))
    for label, (_, k, chi, dtil, nu, real_degree) in enumerate(entries, start=1):
        q = group.weighted_action_sum(elements, chi * dtil / size)
        proj = 2.0 * q.real if nu == 0 else q.real
        err = max(np.abs(proj @ proj - proj).max(), np.abs(proj - proj.T).max())
        if err > tol:
            raise NumericalError(
                f"Projection for symmetry {sym.index}, k={label} fails idempotency by {err:.2e}"
            )
        evals, evecs = linalg.eigh(proj)
        basis = evecs[:, evals > 0.5]
        proj = basis @ basis.T
        kernel = elements[group.stabilizer_of_vectors(basis, elements, tol=1e-8)]
        components.append(IsotypicComponent(
            k=label,
            complex_degree=dtil,
            real_degree=real_degree,
            indicator=nu,
            character=chi,
            projector=proj,
            basis=basis,
            kernel=kernel,
        ))
        total += proj
    if np.abs(total - np.eye(n)).max() > tol:
        raise NumericalError(f"Isotypic projections of symmetry {sym.index} do not sum to I")
    return IsotypicDecomposition(index=sym.index, components=components)
