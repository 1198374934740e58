"""Graph families: Flower snarks, their one-edge modification, and oracle graphs.

Flower snark vertex labels: star unit ``i`` (``0 <= i < t``) owns the hub
``4i`` and petals ``u_i = 4i+1``, ``v_i = 4i+2``, ``w_i = 4i+3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidParam
from .graph import Edge, Graph, normalize_edge


def hub(i: int) -> int:
    return 4 * i


def petal_u(i: int) -> int:
    return 4 * i + 1


def petal_v(i: int) -> int:
    return 4 * i + 2


def petal_w(i: int) -> int:
    return 4 * i + 3


def _check_flower_k(k: int) -> None:
    if not isinstance(k, int) or k < 1 or k % 2 == 0:
        raise InvalidParam(f"k must be an odd integer >= 1, got {k!r}")


def flower_snark(k: int) -> Graph:
    """Flower snark of order ``8 + 4k`` built from ``t = k + 2`` star units."""
    _check_flower_k(k)
    t = k + 2
    edges = []
    for i in range(t):
        nxt = (i + 1) % t
        edges += [
            (hub(i), petal_u(i)),
            (hub(i), petal_v(i)),
            (hub(i), petal_w(i)),
            (petal_u(i), petal_u(nxt)),
        ]
        if i < t - 1:
            edges += [(petal_v(i), petal_v(nxt)), (petal_w(i), petal_w(nxt))]
    # the twist: the v- and w-paths swap when closing
    edges += [(petal_v(t - 1), petal_w(0)), (petal_w(t - 1), petal_v(0))]
    return Graph(4 * t, edges)


@dataclass(frozen=True)
class ModifiedFlowerResult:
    graph: Graph
    added_edge: Edge


def modified_flower_snark(k: int) -> ModifiedFlowerResult:
    """Flower snark plus the petal edge ``u_0 - v_0`` inside star unit 0."""
    base = flower_snark(k)
    added = normalize_edge(petal_u(0), petal_v(0))
    return ModifiedFlowerResult(base.with_edge(*added), added)


def read_added_edge(text: str) -> tuple[int, int] | None:
    """Pull the ``# added_edge u v`` sidecar line out of an instance file."""
    for line in text.splitlines():
        parts = line.lstrip("#").split()
        if line.startswith("#") and len(parts) == 3 and parts[0] == "added_edge":
            return int(parts[1]), int(parts[2])
    return None


def path_graph(n: int) -> Graph:
    if n < 2:
        raise InvalidParam("path needs n >= 2")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParam("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParam("complete graph needs n >= 3")
    return Graph(n, combinations(range(n), 2))


def clique_ring(k: int, m: int) -> Graph:
    """``m`` copies of ``K_{k+1}`` minus one edge, joined in a ring.

    Block ``b`` loses its edge ``(entry_b, exit_b)`` and ``exit_b`` is joined to
    ``entry_{b+1}``, giving a ``k``-regular graph of order ``m(k+1)``. Every
    Hamiltonian cycle crosses each block along a Hamiltonian path from entry
    to exit, so the graph has exactly ``((k-1)!)^m`` of them.
    """
    if k < 2 or m < 2:
        raise InvalidParam("clique ring needs k >= 2 and m >= 2")
    size = k + 1
    edges = []
    for b in range(m):
        base = b * size
        entry, exit_ = base, base + 1
        for i, j in combinations(range(base, base + size), 2):
            if (i, j) != (entry, exit_):
                edges.append((i, j))
        edges.append((exit_, ((b + 1) % m) * size))
    return Graph(m * size, edges)


def clique_ring_cycle_count(k: int, m: int) -> int:
    return math.factorial(k - 1) ** m


def minimal_regular_cycle_count(k: int, m: int) -> int:
    """Hamiltonian cycle count ``(k-1)^2 [(k-2)!]^m`` of the minimal ``k``-regular family."""
    if k < 2 or m < 1:
        raise InvalidParam("need k >= 2 and m >= 1")
    return (k - 1) ** 2 * math.factorial(k - 2) ** m
