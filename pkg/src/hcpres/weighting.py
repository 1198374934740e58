"""Edge-weighting schemes that turn an HCP instance into a weighted TSP instance.

``unit``          every edge costs 1
``random``        i.i.d. integers in ``[1, scale]`` from a seeded splitmix64 stream
``resistance``    ``ceil(scale * Omega_uv)``
``conductivity``  ``ceil(scale / Omega_uv)``
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import Disconnected, InvalidParam
from .graph import Edge, Graph, is_connected, normalize_edge
from .resistance import ResistanceMatrix, resistance_matrix

MASK64 = (1 << 64) - 1

# scaled values this close (relative) to an integer count as that integer
INTEGRAL_RTOL = 1e-9


class SchemeTag(enum.Enum):
    UNIT = "unit"
    RANDOM = "random"
    RESISTANCE = "resistance"
    CONDUCTIVITY = "conductivity"

    @property
    def needs_resistance(self) -> bool:
        return self in (SchemeTag.RESISTANCE, SchemeTag.CONDUCTIVITY)


@dataclass(frozen=True)
class Scheme:
    tag: SchemeTag
    seed: int | None = None
    scale: int = 100

    def __post_init__(self):
        if (self.seed is not None) != (self.tag is SchemeTag.RANDOM):
            raise InvalidParam("a seed is given exactly when the scheme is random")
        if self.seed is not None and not 0 <= self.seed <= MASK64:
            raise InvalidParam("seed must fit in 64 unsigned bits")
        if self.scale < 1:
            raise InvalidParam("scale must be a positive integer")

    @classmethod
    def parse(cls, name: str, seed: int | None = None, scale: int = 100) -> "Scheme":
        try:
            tag = SchemeTag(name.lower())
        except ValueError:
            choices = " | ".join(t.value for t in SchemeTag)
            raise InvalidParam(f"unknown scheme {name!r}; expected {choices}") from None
        if tag is SchemeTag.RANDOM:
            seed = 0 if seed is None else seed
        else:
            seed = None
        return cls(tag, seed, scale)

    @property
    def name(self) -> str:
        return self.tag.value


def prng_next(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns ``(value, new_state)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), state


def random_weight(value: int, scale: int = 100) -> int:
    return 1 + value % scale


def ceil_weight(x: float) -> int:
    """Round up, keeping values that are integral up to float noise."""
    nearest = round(x)
    if abs(x - nearest) <= INTEGRAL_RTOL * max(1.0, abs(x)):
        return int(nearest)
    return math.ceil(x)


@dataclass(frozen=True, eq=False)
class WeightedInstance:
    graph: Graph
    weights: dict[Edge, int]
    scheme: Scheme
    omega_source: ResistanceMatrix | None = field(default=None, repr=False)

    def weight(self, i: int, j: int) -> int:
        return self.weights[normalize_edge(i, j)]

    @property
    def max_weight(self) -> int:
        return max(self.weights.values(), default=0)

    @property
    def big_m(self) -> int:
        """Smallest cost that any artificial edge must exceed: ``n * w_max + 1``."""
        return self.graph.n * self.max_weight + 1

    def tour_weight(self, cycle) -> int:
        return sum(self.weight(cycle[k - 1], cycle[k]) for k in range(len(cycle)))

    def weight_matrix(self, missing: int = 0) -> list[list[int]]:
        n = self.graph.n
        rows = [[missing] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 0
        for (u, v), w in self.weights.items():
            rows[u][v] = rows[v][u] = w
        return rows

    def same_as(self, other: "WeightedInstance") -> bool:
        return self.graph == other.graph and self.weights == other.weights


def apply_scheme(
    g: Graph, s: Scheme, omega: ResistanceMatrix | None = None
) -> WeightedInstance:
    """Weight every edge of ``g`` under scheme ``s``.

    ``omega`` may be passed to reuse a resistance matrix across schemes.
    """
    if s.tag is SchemeTag.UNIT:
        return WeightedInstance(g, {e: 1 for e in g.edges}, s)

    if s.tag is SchemeTag.RANDOM:
        state = s.seed
        weights = {}
        for e in g.edges:
            value, state = prng_next(state)
            weights[e] = random_weight(value, s.scale)
        return WeightedInstance(g, weights, s)

    if omega is None:
        if not is_connected(g):
            raise Disconnected(f"scheme {s.name} needs a connected graph")
        omega = resistance_matrix(g)
    elif not omega.connected:
        raise Disconnected(f"scheme {s.name} needs a connected graph")

    weights = {}
    for u, v in g.edges:
        r = float(omega.omega[u, v])
        assert r > 0.0, f"zero resistance on edge ({u}, {v})"
        x = s.scale * r if s.tag is SchemeTag.RESISTANCE else s.scale / r
        weights[(u, v)] = ceil_weight(x)
    return WeightedInstance(g, weights, s, omega)
