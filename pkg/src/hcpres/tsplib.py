"""Interchange formats for weighted instances.

``export_full_matrix`` writes a TSPLIB ``FULL_MATRIX`` file in which non-edges
cost ``big_m``; ``export_sparse_edges`` writes the ``n m`` / ``u v w`` edge
list. Both are bit-exact: ``\\n`` line endings, plain decimal integers, matrix
rows wrapped at 10 entries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParseError, WeightOverflow
from .graph import Graph, format_hcp, parse_graph
from .weighting import Scheme, WeightedInstance

INT32_MAX = 2**31 - 1
ROW_WRAP = 10


class ExportFormat(enum.Enum):
    FULL_MATRIX = "full"
    SPARSE_EDGE_LIST = "sparse"


@dataclass(frozen=True)
class ExportOptions:
    format: ExportFormat = ExportFormat.FULL_MATRIX
    name: str = "instance"
    big_m: int | None = None  # None: n * w_max + 1


def _resolve_big_m(inst: WeightedInstance, opts: ExportOptions) -> int:
    floor = inst.graph.n * inst.max_weight
    big_m = inst.big_m if opts.big_m is None else opts.big_m
    if big_m <= floor:
        raise ValueError(f"big_m must exceed n * w_max = {floor}, got {big_m}")
    return big_m


def export_full_matrix(inst: WeightedInstance, opts: ExportOptions = ExportOptions()) -> str:
    n = inst.graph.n
    if n < 3:
        raise ValueError("need at least 3 vertices")
    big_m = _resolve_big_m(inst, opts)
    if big_m > INT32_MAX:
        raise WeightOverflow(f"big_m {big_m} exceeds the 32-bit signed range")
    rows = inst.weight_matrix(missing=big_m)
    out = [
        f"NAME: {opts.name}",
        "TYPE: TSP",
        f"DIMENSION: {n}",
        "EDGE_WEIGHT_TYPE: EXPLICIT",
        "EDGE_WEIGHT_FORMAT: FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in rows:
        for k in range(0, n, ROW_WRAP):
            out.append(" ".join(str(x) for x in row[k : k + ROW_WRAP]))
    out.append("EOF")
    return "\n".join(out) + "\n"


def export_sparse_edges(inst: WeightedInstance, opts: ExportOptions | None = None) -> str:
    g = inst.graph
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v} {inst.weights[(u, v)]}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def export(inst: WeightedInstance, opts: ExportOptions) -> str:
    if opts.format is ExportFormat.FULL_MATRIX:
        return export_full_matrix(inst, opts)
    return export_sparse_edges(inst, opts)


def import_sparse_edges(text: str, scheme: Scheme) -> WeightedInstance:
    """Read back an ``export_sparse_edges`` file; ``scheme`` records provenance."""
    rows = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("empty instance", 1)
    no, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", no)
    try:
        n, m = int(head[0]), int(head[1])
        triples = [(no, tuple(int(t) for t in parts)) for no, parts in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from None
    if len(triples) != m:
        raise ParseError(f"header declares {m} edges, found {len(triples)}", no)
    weights = {}
    for no, t in triples:
        if len(t) != 3:
            raise ParseError("edge line must be 'u v w'", no)
        if t[2] < 1:
            raise ParseError("weights must be positive", no)
    g = Graph(n, [t[:2] for _, t in triples])
    for _, (u, v, w) in triples:
        weights[(min(u, v), max(u, v))] = w
    return WeightedInstance(g, weights, scheme)


def import_hcp(text: str) -> Graph:
    return parse_graph(text)


def export_hcp(g: Graph, name: str = "graph") -> str:
    return format_hcp(g, name)
