"""Immutable simple undirected graphs and instance-file ingestion.

Two text formats are understood:

* the canonical edge list: a ``n m`` header followed by exactly ``m`` lines
  ``i j`` (0-indexed), ``#`` comment lines allowed anywhere;
* the HCP interchange format (``NAME:`` / ``TYPE: HCP`` / ``DIMENSION:`` header,
  1-indexed pairs in ``EDGE_DATA_SECTION`` terminated by ``-1``).

:func:`parse_graph` picks the format from the first non-comment line.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import IndexOutOfRange, ParseError, SelfLoop

Edge = tuple[int, int]


def normalize_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; use :meth:`with_edge` / :meth:`without_edge` to
    derive new graphs. Equality compares vertex count and edge set.
    """

    __slots__ = ("_n", "_edges", "_adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen: set[Edge] = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"edge ({i}, {j}) outside 0..{n - 1}")
            if i == j:
                raise SelfLoop(f"self-loop at vertex {i}")
            seen.add(normalize_edge(i, j))
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, j in seen:
            adj[i].append(j)
            adj[j].append(i)
        self._n = n
        self._edges = tuple(sorted(seen))
        self._edge_set = frozenset(seen)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, i: int, j: int) -> bool:
        return normalize_edge(i, j) in self._edge_set

    def non_edges(self) -> list[Edge]:
        return [
            (i, j)
            for i in range(self._n)
            for j in range(i + 1, self._n)
            if (i, j) not in self._edge_set
        ]

    def with_edge(self, i: int, j: int) -> "Graph":
        return Graph(self._n, self._edges + (normalize_edge(i, j),))

    def without_edge(self, i: int, j: int) -> "Graph":
        e = normalize_edge(i, j)
        return Graph(self._n, (f for f in self._edges if f != e))

    def neighbor_masks(self) -> list[int]:
        """Adjacency as one integer bitmask per vertex."""
        masks = []
        for a in self._adj:
            mask = 0
            for j in a:
                mask |= 1 << j
            masks.append(mask)
        return masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def build_graph(n: int, edge_pairs: Iterable[Edge]) -> Graph:
    return Graph(n, edge_pairs)


def permute_vertices(g: Graph, perm) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def connected_components(g: Graph) -> list[int]:
    """Component label per vertex; labels are 0, 1, ... in order of lowest vertex."""
    label = [-1] * g.n
    current = 0
    for s in range(g.n):
        if label[s] != -1:
            continue
        label[s] = current
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if label[w] == -1:
                    label[w] = current
                    queue.append(w)
        current += 1
    return label


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return max(connected_components(g)) == 0


# --------------------------------------------------------------------------
# text formats
# --------------------------------------------------------------------------


def format_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def format_hcp(g: Graph, name: str = "graph") -> str:
    lines = [
        f"NAME: {name}",
        "TYPE: HCP",
        f"DIMENSION: {g.n}",
        "EDGE_DATA_FORMAT: EDGE_LIST",
        "EDGE_DATA_SECTION",
    ]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    lines += ["-1", "EOF"]
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _parse_edge_list(lines: list[tuple[int, str]]) -> Graph:
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", lineno)
    n, m = (_parse_int(p, lineno) for p in parts)
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno)
    body = lines[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise ParseError(f"header declares {m} edges, found {len(body)}", where)
    pairs = []
    for lineno, text in body:
        parts = text.split()
        if len(parts) != 2:
            raise ParseError("edge line must hold exactly two vertices", lineno)
        i, j = (_parse_int(p, lineno) for p in parts)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"line {lineno}: edge ({i}, {j}) outside 0..{n - 1}")
        pairs.append((i, j))
    return Graph(n, pairs)


def _parse_hcp(lines: list[tuple[int, str]]) -> Graph:
    dimension = None
    fmt = None
    idx = 0
    while idx < len(lines):
        lineno, text = lines[idx]
        idx += 1
        key, sep, value = text.partition(":")
        key = key.strip().upper()
        if key == "EDGE_DATA_SECTION":
            break
        if key == "EOF":
            raise ParseError("EOF before EDGE_DATA_SECTION", lineno)
        if not sep:
            raise ParseError(f"unexpected line {text!r}", lineno)
        value = value.strip()
        if key == "DIMENSION":
            dimension = _parse_int(value, lineno)
        elif key == "TYPE" and value.upper() != "HCP":
            raise ParseError(f"unsupported TYPE {value!r}", lineno)
        elif key == "EDGE_DATA_FORMAT":
            fmt = value.upper()
    else:
        raise ParseError("missing EDGE_DATA_SECTION", lines[-1][0])
    if dimension is None:
        raise ParseError("missing DIMENSION", lines[0][0])
    if fmt not in (None, "EDGE_LIST"):
        raise ParseError(f"unsupported EDGE_DATA_FORMAT {fmt!r}", lines[0][0])

    tokens: list[tuple[int, int]] = []
    terminated = False
    for lineno, text in lines[idx:]:
        for tok in text.split():
            value = _parse_int(tok, lineno)
            if value == -1:
                terminated = True
                break
            tokens.append((value, lineno))
        if terminated:
            break
    if not terminated:
        raise ParseError("EDGE_DATA_SECTION not terminated by -1", lines[-1][0])
    if len(tokens) % 2:
        raise ParseError("odd number of vertex ids in EDGE_DATA_SECTION", tokens[-1][1])
    pairs = []
    for (a, lineno), (b, _) in zip(tokens[::2], tokens[1::2]):
        if not (1 <= a <= dimension and 1 <= b <= dimension):
            raise IndexOutOfRange(f"line {lineno}: edge ({a}, {b}) outside 1..{dimension}")
        pairs.append((a - 1, b - 1))
    return Graph(dimension, pairs)


def parse_graph(text: str) -> Graph:
    """Parse an instance file in either supported format."""
    lines = [
        (no, raw.strip())
        for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty instance", 1)
    first = lines[0][1]
    if ":" in first or first.upper().startswith("NAME"):
        return _parse_hcp(lines)
    return _parse_edge_list(lines)


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())
