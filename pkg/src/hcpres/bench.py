"""Scheme x instance benchmark grids and their reports.

A config names instances (files or generator specs), the schemes to try,
which solver(s) to run, and a per-cell budget. Every cell yields one
:class:`BenchRecord`; failures are recorded in the cell rather than raised.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from . import generators
from .errors import InvalidParam
from .graph import Graph, is_connected, permute_vertices, read_graph
from .resistance import resistance_matrix
from .solver import Budget, SolveResult, solve_exact, solve_heuristic
from .weighting import Scheme, SchemeTag, apply_scheme

CSV_COLUMNS = [
    "family",
    "order",
    "scheme",
    "solver",
    "status",
    "elapsed_ms",
    "nodes_expanded",
    "tour_weight",
    "seed",
]

SOLVED = ("Found", "NonHamiltonian")

_GENERATORS = {
    "flower": lambda p: generators.flower_snark(int(p["k"])),
    "modified_flower": lambda p: generators.modified_flower_snark(int(p["k"])).graph,
    "cycle": lambda p: generators.cycle_graph(int(p["n"])),
    "path": lambda p: generators.path_graph(int(p["n"])),
    "complete": lambda p: generators.complete_graph(int(p["n"])),
    "clique_ring": lambda p: generators.clique_ring(int(p["k"]), int(p["m"])),
}


@dataclass(frozen=True)
class InstanceSpec:
    label: str
    path: str | None = None
    generator: str | None = None
    params: dict = field(default_factory=dict, hash=False)
    relabel_seed: int | None = None

    def load(self) -> Graph:
        if self.path is not None:
            g = read_graph(self.path)
        else:
            try:
                make = _GENERATORS[self.generator]
            except KeyError:
                raise InvalidParam(f"unknown generator {self.generator!r}") from None
            g = make(self.params)
        if self.relabel_seed is not None:
            perm = list(range(g.n))
            random.Random(self.relabel_seed).shuffle(perm)
            g = permute_vertices(g, perm)
        return g

    @classmethod
    def from_dict(cls, d: dict, base_dir: Path | None = None) -> "InstanceSpec":
        d = dict(d)
        label = d.pop("label", None)
        path = d.pop("path", None)
        gen = d.pop("generator", None)
        relabel = d.pop("relabel_seed", None)
        if (path is None) == (gen is None):
            raise InvalidParam("an instance needs exactly one of 'path' or 'generator'")
        if path is not None and base_dir is not None and not os.path.isabs(path):
            path = str(base_dir / path)
        if label is None:
            label = Path(path).stem if path else gen
        params = d.pop("params", d)
        return cls(label, path, gen, params, relabel)


@dataclass
class BenchConfig:
    instances: list[InstanceSpec]
    schemes: list[SchemeTag]
    budget: Budget
    solvers: tuple[str, ...] = ("exact",)
    seed: int = 0
    repetitions: int = 1
    scale: int = 100
    max_exact_order: int = 64
    force_exact: bool = False
    workers: int | None = None

    def __post_init__(self):
        if not self.instances:
            raise InvalidParam("no instances configured")
        if not self.schemes:
            raise InvalidParam("no schemes configured")
        if not self.budget.bounded:
            raise InvalidParam("bench runs need a finite budget")
        if self.repetitions < 1:
            raise InvalidParam("repetitions must be >= 1")
        bad = set(self.solvers) - {"exact", "heuristic"}
        if bad or not self.solvers:
            raise InvalidParam(f"unknown solver(s) {sorted(bad)}")

    @classmethod
    def from_dict(cls, d: dict, base_dir: Path | None = None) -> "BenchConfig":
        solver = d.get("solver", "exact")
        solvers = ("exact", "heuristic") if solver == "both" else (solver,)
        b = d.get("budget", {})
        return cls(
            instances=[InstanceSpec.from_dict(x, base_dir) for x in d.get("instances", [])],
            schemes=[Scheme.parse(s).tag for s in d.get("schemes", [])],
            budget=Budget(b.get("max_nodes"), b.get("max_time")),
            solvers=solvers,
            seed=int(d.get("seed", 0)),
            repetitions=int(d.get("repetitions", 1)),
            scale=int(d.get("scale", 100)),
            max_exact_order=int(d.get("max_exact_order", 64)),
            force_exact=bool(d.get("force_exact", False)),
            workers=d.get("workers"),
        )

    @classmethod
    def load(cls, path) -> "BenchConfig":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text()), base_dir=path.parent)


@dataclass
class BenchRecord:
    family: str
    order: int
    scheme: str
    solver: str
    status: str
    elapsed_ms: float = 0.0
    nodes_expanded: int = 0
    tour_weight: int | None = None
    seed: int | None = None
    error: str | None = None

    def key(self) -> tuple:
        """Everything except timing; equal keys mean equal outcomes."""
        d = asdict(self)
        d.pop("elapsed_ms")
        return tuple(d.values())


def _run_cell(job) -> SolveResult:
    solver, inst, budget = job
    if solver == "exact":
        return solve_exact(inst, budget)
    return solve_heuristic(inst, budget)


def run_benchmark(cfg: BenchConfig) -> list[BenchRecord]:
    records: list[BenchRecord] = []
    jobs = []  # (record index, job tuple)
    for spec in cfg.instances:
        try:
            g = spec.load()
        except Exception as exc:  # noqa: BLE001 - recorded in the cell
            for tag in cfg.schemes:
                for solver in cfg.solvers:
                    for rep in range(cfg.repetitions):
                        records.append(
                            BenchRecord(spec.label, 0, tag.value, solver, "Error", error=str(exc))
                        )
            continue
        omega = None
        if any(t.needs_resistance for t in cfg.schemes) and is_connected(g):
            omega = resistance_matrix(g)
        for tag in cfg.schemes:
            for solver in cfg.solvers:
                for rep in range(cfg.repetitions):
                    seed = cfg.seed + rep if tag is SchemeTag.RANDOM else None
                    rec = BenchRecord(spec.label, g.n, tag.value, solver, "", seed=seed)
                    records.append(rec)
                    if solver == "exact" and g.n > cfg.max_exact_order and not cfg.force_exact:
                        rec.status = "Skipped"
                        continue
                    try:
                        inst = apply_scheme(g, Scheme(tag, seed, cfg.scale), omega)
                    except Exception as exc:  # noqa: BLE001
                        rec.status, rec.error = "Error", str(exc)
                        continue
                    inst = replace(inst, omega_source=None)
                    jobs.append((len(records) - 1, (solver, inst, cfg.budget)))

    workers = cfg.workers or os.cpu_count() or 1
    if workers == 1 or len(jobs) <= 1:
        results = [_run_cell(job) for _, job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, [job for _, job in jobs]))

    for (idx, _), res in zip(jobs, results):
        rec = records[idx]
        rec.status = res.status.value
        rec.elapsed_ms = round(res.elapsed * 1000.0, 3)
        rec.nodes_expanded = res.nodes_expanded
        rec.tour_weight = res.tour_weight
    return records


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def render_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = asdict(r)
        writer.writerow(["" if row[c] is None else row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def _cell(group: list[BenchRecord]) -> tuple[str, tuple | None]:
    """Cell text plus a sort key (None when the cell cannot be 'best')."""
    statuses = {r.status for r in group}
    if "Error" in statuses:
        return "Error", None
    if "Skipped" in statuses:
        return "Skipped", None
    if statuses - set(SOLVED):
        return "Timeout", None
    nodes = statistics.median(r.nodes_expanded for r in group)
    ms = statistics.median(r.elapsed_ms for r in group)
    text = f"{ms:.1f} ms / {nodes:g} nodes"
    if statuses == {"NonHamiltonian"}:
        text += " (non-Ham.)"
    return text, (nodes, ms)


def render_table(records: list[BenchRecord]) -> str:
    """Markdown table: one row per instance (and solver), one column per scheme.

    Repetitions are folded into their median; the row's cheapest solved cell
    (fewest nodes, then time) is bold, unsolved cells read ``Timeout``.
    """
    scheme_order = [t.value for t in SchemeTag if any(r.scheme == t.value for r in records)]
    solvers = list(dict.fromkeys(r.solver for r in records))
    multi = len(solvers) > 1
    rows: dict[tuple, dict[str, list[BenchRecord]]] = {}
    for r in records:
        rows.setdefault((r.family, r.order, r.solver), {}).setdefault(r.scheme, []).append(r)

    head = ["Family", "Order"] + (["Solver"] if multi else []) + scheme_order
    lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---" for _ in head) + "|"]
    for (family, order, solver), cells in rows.items():
        rendered = {s: _cell(cells[s]) for s in scheme_order if s in cells}
        keyed = [(k, s) for s, (_, k) in rendered.items() if k is not None]
        best = min(keyed)[1] if keyed else None
        out = [family, str(order)] + ([solver] if multi else [])
        for s in scheme_order:
            if s not in rendered:
                out.append("")
                continue
            text = rendered[s][0]
            out.append(f"**{text}**" if s == best else text)
        lines.append("| " + " | ".join(out) + " |")
    return "\n".join(lines) + "\n"


def write_report(records: list[BenchRecord], out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    md, cs = out / "report.md", out / "report.csv"
    md.write_text(render_table(records))
    cs.write_text(render_csv(records))
    return md, cs
