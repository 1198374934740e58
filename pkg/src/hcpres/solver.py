"""Hamiltonian cycle search on weighted instances.

Three entry points:

* :func:`solve_exact` - depth-first path extension from vertex 0 that tries
  successors in ascending edge weight, so the weighting scheme steers the
  search. Complete: it can prove non-Hamiltonicity.
* :func:`solve_heuristic` - big-M completion to a full TSP matrix, then
  nearest neighbour + 2-opt + Or-opt. Can only ever find tours.
* :func:`count_hamiltonian_cycles` - plain exhaustive enumeration used as the
  correctness oracle for the other two.

Vertex sets are Python ints used as bitmasks throughout.
"""

from __future__ import annotations

import enum
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParam
from .graph import Graph, is_connected
from .weighting import WeightedInstance


class Status(enum.Enum):
    FOUND = "Found"
    NON_HAMILTONIAN = "NonHamiltonian"
    BUDGET_EXHAUSTED = "BudgetExhausted"


class SolverKind(enum.Enum):
    EXACT = "Exact"
    HEURISTIC = "Heuristic"


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_time: float | None = None  # seconds

    @property
    def bounded(self) -> bool:
        return self.max_nodes is not None or self.max_time is not None


UNLIMITED = Budget()


@dataclass
class SolveResult:
    status: Status
    solver: SolverKind
    cycle: tuple[int, ...] | None = None
    tour_weight: int | None = None
    nodes_expanded: int = 0
    elapsed: float = 0.0  # seconds
    proven_optimal: bool = False

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "tour_weight": self.tour_weight,
            "nodes_expanded": self.nodes_expanded,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "solver": self.solver.value,
        }

    def summary(self) -> str:
        line = f"{self.status.value} nodes={self.nodes_expanded} elapsed_ms={self.elapsed * 1000.0:.1f}"
        if self.cycle is not None:
            line += f" weight={self.tour_weight}\n" + " ".join(map(str, self.cycle))
        return line


def verify_cycle(g: Graph, cycle) -> bool:
    try:
        seq = [int(v) for v in cycle]
    except (TypeError, ValueError):
        return False
    n = g.n
    if len(seq) != n or sorted(seq) != list(range(n)):
        return False
    if n < 3:
        return False
    return all(g.has_edge(seq[k - 1], seq[k]) for k in range(n))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Clock:
    """Budget bookkeeping shared by both solvers."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.t0 = time.perf_counter()
        self.deadline = None if budget.max_time is None else self.t0 + budget.max_time

    def elapsed(self) -> float:
        return time.perf_counter() - self.t0

    def out_of_budget(self, nodes: int) -> bool:
        if self.budget.max_nodes is not None and nodes >= self.budget.max_nodes:
            return True
        return self.deadline is not None and time.perf_counter() >= self.deadline


# --------------------------------------------------------------------------
# exact search
# --------------------------------------------------------------------------


class _ExactSearch:
    START = 0

    def __init__(self, inst: WeightedInstance, budget: Budget, optimal: bool):
        g = inst.graph
        self.n = g.n
        self.nbr = g.neighbor_masks()
        self.w = inst.weight_matrix()
        # successor order: ascending weight, ties by vertex index
        self.order = [
            sorted(g.neighbors(v), key=lambda x, v=v: (self.w[v][x], x)) for v in range(g.n)
        ]
        self.min_w = [min(self.w[v][x] for x in g.neighbors(v)) for v in range(g.n)]
        self.optimal = optimal
        self.clock = _Clock(budget)
        self.nodes = 0
        self.best_cycle: tuple[int, ...] | None = None
        self.best_weight: int | None = None
        self.exhausted = False

    def _candidates(self, t: int, unvisited: int) -> list[int]:
        start = self.START
        ends = unvisited | (1 << t) | (1 << start)
        free = [x for x in self.order[t] if (unvisited >> x) & 1]
        # unvisited vertices down to two usable edges, one of which reaches t
        forced = [x for x in free if (self.nbr[x] & ends).bit_count() == 2]
        if t == start:
            # start still has both cycle edges free: two forced vertices are
            # the two ends of the tour, and either orientation will do
            if len(forced) > 2:
                return []
            return forced[:1] if len(forced) == 2 else free
        if len(forced) > 1:
            return []
        return forced if forced else free

    def _feasible(self, t: int, x: int, unvisited: int) -> bool:
        """Pruning after extending the path ``... t`` by ``x``."""
        nbr = self.nbr
        start = self.START
        if not unvisited:
            return bool((nbr[x] >> start) & 1)
        reach = nbr[x] & unvisited
        if not reach:
            return False
        ends = unvisited | (1 << x) | (1 << start)
        if t != start:
            # t left the endpoint set: its unvisited neighbours lost an edge
            for y in _bits(nbr[t] & unvisited):
                if (nbr[y] & ends).bit_count() < 2:
                    return False
        start_side = nbr[start] & unvisited
        if not start_side:
            return False
        needy = 0
        for y in _bits(start_side):
            if (nbr[y] & ends).bit_count() == 2:
                needy += 1
                if needy > 1:
                    return False
        # every unvisited vertex reachable from x through unvisited vertices
        seen = frontier = reach
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = nbr[low.bit_length() - 1] & unvisited & ~seen
            seen |= new
            frontier |= new
        return seen == unvisited

    def _remaining_bound(self, unvisited: int) -> int:
        return sum(self.min_w[y] for y in _bits(unvisited)) + self.min_w[self.START]

    def run(self) -> None:
        start = self.START
        full = (1 << self.n) - 1
        unvisited = full & ~(1 << start)
        path = [start]
        weight = 0
        stack = [(self._candidates(start, unvisited), 0)]
        clock = self.clock
        while stack:
            cands, idx = stack[-1]
            if idx >= len(cands):
                stack.pop()
                if len(path) > 1:
                    x = path.pop()
                    unvisited |= 1 << x
                    weight -= self.w[path[-1]][x]
                continue
            stack[-1] = (cands, idx + 1)
            t = path[-1]
            x = cands[idx]
            if clock.out_of_budget(self.nodes):
                return
            self.nodes += 1
            rest = unvisited & ~(1 << x)
            step = weight + self.w[t][x]
            if self.best_weight is not None:
                if step + (self._remaining_bound(rest) if rest else self.w[x][start]) >= self.best_weight:
                    continue
            if not self._feasible(t, x, rest):
                continue
            if not rest:
                total = step + self.w[x][start]
                if self.best_weight is None or total < self.best_weight:
                    self.best_cycle = tuple(path) + (x,)
                    self.best_weight = total
                if not self.optimal:
                    return
                continue
            path.append(x)
            unvisited = rest
            weight = step
            stack.append((self._candidates(x, unvisited), 0))
        self.exhausted = True


def solve_exact(
    inst: WeightedInstance, budget: Budget = UNLIMITED, optimal: bool = False
) -> SolveResult:
    """Weight-ordered depth-first search for a Hamiltonian cycle.

    Returns the first cycle found, unless ``optimal`` is set, in which case the
    search continues as branch and bound and ``proven_optimal`` reports whether
    it ran to completion.
    """
    g = inst.graph
    if g.n < 3:
        raise InvalidParam("need at least 3 vertices")
    t0 = time.perf_counter()
    if not is_connected(g) or min(g.degrees()) < 2:
        return SolveResult(
            Status.NON_HAMILTONIAN, SolverKind.EXACT, elapsed=time.perf_counter() - t0
        )
    search = _ExactSearch(inst, budget, optimal)
    search.run()
    elapsed = search.clock.elapsed()
    if search.best_cycle is not None:
        return SolveResult(
            Status.FOUND,
            SolverKind.EXACT,
            cycle=search.best_cycle,
            tour_weight=search.best_weight,
            nodes_expanded=search.nodes,
            elapsed=elapsed,
            proven_optimal=optimal and search.exhausted,
        )
    status = Status.NON_HAMILTONIAN if search.exhausted else Status.BUDGET_EXHAUSTED
    return SolveResult(status, SolverKind.EXACT, nodes_expanded=search.nodes, elapsed=elapsed)


# --------------------------------------------------------------------------
# local search
# --------------------------------------------------------------------------


def completed_matrix(inst: WeightedInstance, big_m: int | None = None) -> np.ndarray:
    big_m = inst.big_m if big_m is None else big_m
    return np.array(inst.weight_matrix(missing=big_m), dtype=np.int64)


def _nearest_neighbor_tour(dist: np.ndarray) -> list[int]:
    n = dist.shape[0]
    tour = [0]
    left = np.ones(n, dtype=bool)
    left[0] = False
    for _ in range(n - 1):
        row = np.where(left, dist[tour[-1]], np.iinfo(np.int64).max)
        nxt = int(np.argmin(row))  # argmin picks the lowest index on ties
        tour.append(nxt)
        left[nxt] = False
    return tour


class _LocalSearch:
    def __init__(self, dist: np.ndarray, clock: _Clock):
        self.dist = dist
        self.clock = clock
        self.moves = 0

    def _spent(self) -> bool:
        return self.clock.out_of_budget(self.moves)

    def two_opt_pass(self, tour: list[int]) -> bool:
        d = self.dist
        n = len(tour)
        improved = False
        for i in range(n - 2):
            if self._spent():
                break
            arr = np.asarray(tour)
            a, b = arr[i], arr[i + 1]
            js = np.arange(i + 2, n - 1 if i == 0 else n)
            if js.size == 0:
                continue
            c = arr[js]
            e = arr[(js + 1) % n]
            delta = d[a, c] + d[b, e] - d[a, b] - d[c, e]
            self.moves += int(js.size)
            k = int(np.argmin(delta))
            if delta[k] < 0:
                j = int(js[k])
                tour[i + 1 : j + 1] = tour[i + 1 : j + 1][::-1]
                improved = True
        return improved

    def or_opt_pass(self, tour: list[int]) -> list[int] | None:
        d = self.dist
        n = len(tour)
        for seg_len in (1, 2, 3):
            if seg_len > n - 3:
                break
            for i in range(n):
                if self._spent():
                    return None
                rot = tour[i:] + tour[:i]
                seg = rot[:seg_len]
                rest = np.asarray(rot[seg_len:])
                p, q = rest[-1], rest[0]
                s0, s1 = seg[0], seg[-1]
                gain = d[p, s0] + d[s1, q] - d[p, q]
                c = rest[:-1]
                e = rest[1:]
                fwd = d[c, s0] + d[s1, e] - d[c, e]
                rev = d[c, s1] + d[s0, e] - d[c, e]
                self.moves += 2 * int(c.size)
                kf, kr = int(np.argmin(fwd)), int(np.argmin(rev))
                if min(fwd[kf], rev[kr]) - gain < 0:
                    if fwd[kf] <= rev[kr]:
                        k, piece = kf, seg
                    else:
                        k, piece = kr, seg[::-1]
                    rest = rest.tolist()
                    return rest[: k + 1] + piece + rest[k + 1 :]
        return None


def _tour_cost(dist: np.ndarray, tour: list[int]) -> int:
    arr = np.asarray(tour)
    return int(dist[arr, np.roll(arr, -1)].sum())


def _rotate_to_zero(tour: list[int]) -> tuple[int, ...]:
    k = tour.index(0)
    return tuple(tour[k:] + tour[:k])


def solve_heuristic(inst: WeightedInstance, budget: Budget = UNLIMITED) -> SolveResult:
    """Local search on the big-M completion; ``Found`` only for genuine tours."""
    g = inst.graph
    if g.n < 3:
        raise InvalidParam("need at least 3 vertices")
    clock = _Clock(budget)
    dist = completed_matrix(inst)
    tour = _nearest_neighbor_tour(dist)
    ls = _LocalSearch(dist, clock)
    while not ls._spent():
        if ls.two_opt_pass(tour):
            continue
        moved = ls.or_opt_pass(tour)
        if moved is None:
            break
        tour = moved
    cycle = _rotate_to_zero(tour)
    genuine = all(g.has_edge(cycle[k - 1], cycle[k]) for k in range(g.n))
    elapsed = clock.elapsed()
    if genuine:
        return SolveResult(
            Status.FOUND,
            SolverKind.HEURISTIC,
            cycle=cycle,
            tour_weight=inst.tour_weight(cycle),
            nodes_expanded=ls.moves,
            elapsed=elapsed,
        )
    return SolveResult(
        Status.BUDGET_EXHAUSTED, SolverKind.HEURISTIC, nodes_expanded=ls.moves, elapsed=elapsed
    )


# --------------------------------------------------------------------------
# enumeration oracle
# --------------------------------------------------------------------------


@dataclass
class CycleCount:
    count: int
    cap_exceeded: bool = False
    cycles: list[tuple[int, ...]] | None = field(default=None, repr=False)


def count_hamiltonian_cycles(
    g: Graph, cap: int | None = None, collect: bool = False
) -> CycleCount:
    """Count undirected Hamiltonian cycles by exhaustive path enumeration.

    Each cycle is counted once, in its canonical orientation: it starts at 0
    and its second vertex is smaller than its last. With ``cap`` set the
    enumeration stops as soon as ``cap`` cycles are seen and the result is
    flagged ``cap_exceeded``. Pruning is limited to two necessary conditions:
    every unvisited vertex keeps two usable neighbours and stays reachable
    from the path's end.
    """
    n = g.n
    result = CycleCount(0, cycles=[] if collect else None)
    if n < 3:
        return result
    nbr = g.neighbor_masks()
    full = (1 << n) - 1
    path = [0]

    def dead(unvisited: int, tail: int) -> bool:
        ends = unvisited | (1 << tail) | 1
        for y in _bits(unvisited):
            if (nbr[y] & ends).bit_count() < 2:
                return True
        # the rest of the path must be able to sweep every unvisited vertex
        reached = 1 << tail
        while True:
            grown = reached
            for y in _bits(reached):
                grown |= nbr[y] & unvisited
            if grown == reached:
                break
            reached = grown
        return (reached & unvisited) != unvisited

    def extend(tail: int, unvisited: int) -> bool:
        if not unvisited:
            if nbr[tail] & 1 and path[1] < tail:
                result.count += 1
                if collect:
                    result.cycles.append(tuple(path))
                if cap is not None and result.count >= cap:
                    result.cap_exceeded = True
                    return True
            return False
        for x in _bits(nbr[tail] & unvisited):
            rest = unvisited & ~(1 << x)
            if dead(rest, x):
                continue
            path.append(x)
            stop = extend(x, rest)
            path.pop()
            if stop:
                return True
        return False

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        extend(0, full & ~1)
    finally:
        sys.setrecursionlimit(limit)
    return result
