"""Resistance distances, computed from the rank-one corrected Laplacian.

For a connected graph on ``n`` vertices, ``Gamma = L + J/n`` is symmetric
positive definite and

    Omega[i, j] = inv(Gamma)[i, i] + inv(Gamma)[j, j] - 2 inv(Gamma)[i, j].

Disconnected graphs are handled component by component, each with its own
``1/n_c`` correction; pairs in different components are infinitely far apart.
That classification lives in :attr:`ResistanceMatrix.finite`; the ``omega``
array carries ``inf`` in those cells only as a sentinel.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import DisconnectedPair, InfiniteEntries, NumericalFailure
from .graph import Graph, connected_components


def laplacian(g: Graph) -> np.ndarray:
    """Dense ``L = D - A``."""
    lap = np.zeros((g.n, g.n))
    for u, v in g.edges:
        lap[u, v] = lap[v, u] = -1.0
    lap[np.diag_indices(g.n)] = g.degrees()
    return lap


def gamma_matrix(lap: np.ndarray) -> np.ndarray:
    n = lap.shape[0]
    return lap + np.full((n, n), 1.0 / n)


def gamma_inverse(lap: np.ndarray) -> np.ndarray:
    """Invert ``Gamma`` for the Laplacian of a connected graph via Cholesky."""
    gamma = gamma_matrix(lap)
    try:
        factor = cho_factor(gamma, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise NumericalFailure(f"Gamma is not positive definite: {exc}") from exc
    inv = cho_solve(factor, np.eye(gamma.shape[0]), check_finite=False)
    return 0.5 * (inv + inv.T)


@dataclass(frozen=True, eq=False)
class ResistanceMatrix:
    omega: np.ndarray
    component_id: np.ndarray
    finite: np.ndarray

    @property
    def n(self) -> int:
        return self.omega.shape[0]

    @property
    def connected(self) -> bool:
        return bool(self.finite.all())

    def __getitem__(self, ij: tuple[int, int]) -> float:
        i, j = ij
        if not self.finite[i, j]:
            return math.inf
        return float(self.omega[i, j])

    def edge_values(self, g: Graph) -> dict[tuple[int, int], float]:
        return {(u, v): self[u, v] for u, v in g.edges}

    def to_csv(self) -> str:
        """Row-major dump, 12 significant digits, ``inf`` across components."""
        buf = io.StringIO()
        for i in range(self.n):
            cells = [
                f"{self.omega[i, j]:.12g}" if self.finite[i, j] else "inf"
                for j in range(self.n)
            ]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def resistance_matrix(g: Graph) -> ResistanceMatrix:
    labels = np.asarray(connected_components(g), dtype=np.int64)
    n = g.n
    omega = np.full((n, n), np.inf)
    lap = laplacian(g)
    for c in range(int(labels.max()) + 1 if n else 0):
        members = np.flatnonzero(labels == c)
        if members.size == 1:
            omega[members[0], members[0]] = 0.0
            continue
        sub = lap[np.ix_(members, members)]
        inv = gamma_inverse(sub)
        d = np.diag(inv)
        block = d[:, None] + d[None, :] - 2.0 * inv
        np.fill_diagonal(block, 0.0)
        # cancellation can leave tiny negatives for near-identical rows
        np.maximum(block, 0.0, out=block)
        omega[np.ix_(members, members)] = block
    finite = labels[:, None] == labels[None, :]
    return ResistanceMatrix(omega=omega, component_id=labels, finite=finite)


def _grounded_system(g: Graph, ground: int) -> tuple[np.ndarray, list[int]]:
    """Kirchhoff matrix of the ground's component with the ground row/column removed."""
    labels = connected_components(g)
    comp = [v for v in range(g.n) if labels[v] == labels[ground] and v != ground]
    pos = np.full(g.n, -1)
    pos[comp] = np.arange(len(comp))
    k = len(comp)
    reduced = np.zeros((k, k))
    for u, v in g.edges:
        pu, pv = pos[u], pos[v]
        if labels[u] != labels[ground]:
            continue
        # every edge touching the component adds to its endpoints' degrees
        if pu >= 0:
            reduced[pu, pu] += 1.0
        if pv >= 0:
            reduced[pv, pv] += 1.0
        if pu >= 0 and pv >= 0:
            reduced[pu, pv] = reduced[pv, pu] = -1.0
    return reduced, comp


def effective_resistance_oracle(g: Graph, i: int, j: int) -> float:
    """Effective resistance by injecting a unit current at ``i``, grounding ``j``.

    Solves the Kirchhoff system ``L phi = e_i - e_j`` with ``phi_j = 0`` (row
    and column ``j`` deleted) on the component holding both vertices, and
    returns ``phi_i``. Shares no code with :func:`resistance_matrix`.
    """
    labels = connected_components(g)
    if labels[i] != labels[j]:
        raise DisconnectedPair(f"vertices {i} and {j} lie in different components")
    if i == j:
        return 0.0
    reduced, comp = _grounded_system(g, j)
    rhs = np.zeros(len(comp))
    k = comp.index(i)
    rhs[k] = 1.0
    return float(np.linalg.solve(reduced, rhs)[k])


def grounded_resistances(g: Graph, ground: int) -> dict[int, float]:
    """Oracle resistances from ``ground`` to every vertex of its component.

    Same current-injection system as :func:`effective_resistance_oracle`,
    solved for all injection points at once.
    """
    reduced, comp = _grounded_system(g, ground)
    out = {ground: 0.0}
    if comp:
        phi = np.linalg.solve(reduced, np.eye(len(comp)))
        out.update((v, float(phi[k, k])) for k, v in enumerate(comp))
    return out


def kirchhoff_index(r: ResistanceMatrix) -> float:
    if not r.connected:
        raise InfiniteEntries("Kirchhoff index is infinite for a disconnected graph")
    return 0.5 * float(r.omega.sum())
