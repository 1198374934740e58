import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_graphs
from hcpres.errors import ParseError, WeightOverflow
from hcpres.generators import complete_graph, cycle_graph, path_graph
from hcpres.graph import parse_graph
from hcpres.tsplib import (
    ExportFormat,
    ExportOptions,
    export,
    export_full_matrix,
    export_hcp,
    export_sparse_edges,
    import_hcp,
    import_sparse_edges,
)
from hcpres.weighting import Scheme, WeightedInstance, apply_scheme

UNIT = Scheme.parse("unit")

TRIANGLE_FULL = """NAME: triangle
TYPE: TSP
DIMENSION: 3
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 1 1
1 0 1
1 1 0
EOF
"""


def test_full_matrix_triangle_golden():
    inst = apply_scheme(complete_graph(3), UNIT)
    assert export_full_matrix(inst, ExportOptions(name="triangle")) == TRIANGLE_FULL


def test_full_matrix_big_m_for_non_edges():
    inst = apply_scheme(path_graph(3), UNIT)
    assert inst.big_m == 4
    rows = export_full_matrix(inst).splitlines()[6:9]
    assert rows == ["0 1 4", "1 0 1", "4 1 0"]


def test_full_matrix_explicit_big_m_must_dominate():
    inst = apply_scheme(path_graph(3), UNIT)
    with pytest.raises(ValueError):
        export_full_matrix(inst, ExportOptions(big_m=3))
    assert "0 1 50" in export_full_matrix(inst, ExportOptions(big_m=50))


def test_full_matrix_wraps_rows():
    inst = apply_scheme(cycle_graph(12), UNIT)
    body = export_full_matrix(inst).splitlines()[6:-1]
    assert len(body) == 24
    assert [len(line.split()) for line in body[:2]] == [10, 2]


def test_full_matrix_overflow():
    g = cycle_graph(3)
    inst = WeightedInstance(g, {e: 2**30 for e in g.edges}, UNIT)
    with pytest.raises(WeightOverflow):
        export_full_matrix(inst)


@settings(max_examples=40)
@given(connected_graphs(min_n=3, max_n=12), st.sampled_from(["unit", "resistance", "conductivity"]))
def test_full_matrix_symmetric_with_m_real_entries(g, scheme):
    inst = apply_scheme(g, Scheme.parse(scheme))
    text = export_full_matrix(inst)
    n = g.n
    nums = [int(x) for line in text.splitlines()[6:-1] for x in line.split()]
    mat = [nums[i * n : (i + 1) * n] for i in range(n)]
    assert all(mat[i][j] == mat[j][i] for i in range(n) for j in range(n))
    upper = [mat[i][j] for i in range(n) for j in range(i + 1, n)]
    assert sum(x < inst.big_m for x in upper) == g.m


def test_sparse_triangle():
    inst = apply_scheme(complete_graph(3), UNIT)
    assert export_sparse_edges(inst) == "3 3\n0 1 1\n0 2 1\n1 2 1\n"


def test_sparse_c4_resistance():
    inst = apply_scheme(cycle_graph(4), Scheme.parse("resistance"))
    lines = export_sparse_edges(inst).splitlines()[1:]
    assert len(lines) == 4 and all(line.endswith(" 75") for line in lines)


def test_sparse_body_parses_as_edge_list():
    inst = apply_scheme(cycle_graph(5), UNIT)
    text = export_sparse_edges(inst)
    stripped = "\n".join(" ".join(line.split()[:2]) for line in text.splitlines())
    assert parse_graph(stripped) == inst.graph


@settings(max_examples=40)
@given(connected_graphs(min_n=3, max_n=14), st.integers(0, 1000))
def test_sparse_round_trip(g, seed):
    for scheme in (Scheme.parse("random", seed=seed), Scheme.parse("conductivity")):
        inst = apply_scheme(g, scheme)
        back = import_sparse_edges(export_sparse_edges(inst), scheme)
        assert back.same_as(inst)
        assert export_sparse_edges(back) == export_sparse_edges(inst)


def test_sparse_import_errors():
    with pytest.raises(ParseError):
        import_sparse_edges("3 2\n0 1 1\n", UNIT)
    with pytest.raises(ParseError):
        import_sparse_edges("3 1\n0 1\n", UNIT)
    with pytest.raises(ParseError):
        import_sparse_edges("3 1\n0 1 0\n", UNIT)


def test_export_dispatch():
    inst = apply_scheme(complete_graph(3), UNIT)
    assert export(inst, ExportOptions(ExportFormat.SPARSE_EDGE_LIST)).startswith("3 3\n")
    assert export(inst, ExportOptions(ExportFormat.FULL_MATRIX)).startswith("NAME:")


def test_hcp_import():
    g = import_hcp(export_hcp(cycle_graph(3), "tri"))
    assert g == cycle_graph(3)
    text = export_hcp(cycle_graph(4))
    assert "1 2\n" in text and "0 " not in text.split("EDGE_DATA_SECTION")[1]
    with pytest.raises(ParseError):
        import_hcp(text.replace("-1\n", ""))
