import math
from collections import deque

import pytest

from hcpres.errors import InvalidParam
from hcpres.generators import (
    clique_ring,
    clique_ring_cycle_count,
    complete_graph,
    cycle_graph,
    flower_snark,
    minimal_regular_cycle_count,
    modified_flower_snark,
    path_graph,
    petal_u,
    petal_v,
    read_added_edge,
)
from hcpres.graph import format_edge_list, is_connected
from hcpres.solver import count_hamiltonian_cycles


def girth(g):
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w], parent[w] = dist[v] + 1, v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9])
def test_flower_structure(k):
    g = flower_snark(k)
    assert g.n == 8 + 4 * k
    assert g.m == 12 + 6 * k
    assert set(g.degrees()) == {3}
    assert is_connected(g)
    if k >= 3:
        assert girth(g) >= 5


@pytest.mark.parametrize("k", [0, 2, -1, 4])
def test_flower_rejects_bad_k(k):
    with pytest.raises(InvalidParam):
        flower_snark(k)
    with pytest.raises(InvalidParam):
        modified_flower_snark(k)


def test_modified_k1():
    mf = modified_flower_snark(1)
    assert (mf.graph.n, mf.graph.m) == (12, 19)
    deg4 = [v for v in range(12) if mf.graph.degree(v) == 4]
    assert deg4 == [petal_u(0), petal_v(0)]
    assert mf.added_edge == (1, 2)


@pytest.mark.parametrize("k", [1, 3, 5])
def test_removing_added_edge_restores_snark(k):
    mf = modified_flower_snark(k)
    assert mf.graph.without_edge(*mf.added_edge) == flower_snark(k)
    assert not flower_snark(k).has_edge(*mf.added_edge)


def test_added_edge_joins_petals_of_one_star():
    mf = modified_flower_snark(3)
    hub0 = 0
    assert all(mf.graph.has_edge(hub0, v) for v in mf.added_edge)


def test_sidecar_round_trip():
    mf = modified_flower_snark(1)
    text = format_edge_list(mf.graph, [f"added_edge {mf.added_edge[0]} {mf.added_edge[1]}"])
    assert read_added_edge(text) == mf.added_edge
    assert read_added_edge(format_edge_list(mf.graph)) is None


def test_oracle_graphs():
    assert cycle_graph(5).m == 5 and set(cycle_graph(5).degrees()) == {2}
    assert complete_graph(4).m == 6
    assert path_graph(3).degrees() == [1, 2, 1]
    for bad in (lambda: path_graph(1), lambda: cycle_graph(2), lambda: complete_graph(2)):
        with pytest.raises(InvalidParam):
            bad()


def test_oracle_graph_cycle_counts():
    assert count_hamiltonian_cycles(cycle_graph(5)).count == 1
    assert count_hamiltonian_cycles(complete_graph(4)).count == math.factorial(3) // 2


@pytest.mark.parametrize("k, m", [(3, 2), (4, 2), (3, 3), (5, 2)])
def test_clique_ring(k, m):
    g = clique_ring(k, m)
    assert g.n == m * (k + 1)
    assert set(g.degrees()) == {k}
    assert count_hamiltonian_cycles(g).count == clique_ring_cycle_count(k, m)


def test_minimal_regular_formula():
    assert minimal_regular_cycle_count(5, 2) == 16 * 36
    assert minimal_regular_cycle_count(10, 3) == 81 * math.factorial(8) ** 3
