"""Benchmark harness: succinct towers against the naive n-ary trie.

For every corpus function, representation and schedule position a fresh
tower is built and every coefficient in the demand set is requested.  Wall
time is the median of ``reps`` timed runs after one discarded warm-up; a
separate counted run records how many coefficients and trie nodes were
built.  Counts are exact and deterministic, timings are not.
"""

import csv
import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .counters import counters_enabled
from .errors import DomainError
from .exprlang import eval_tower, parse
from .multiindex import downward_closure, total_degree
from .oracle import naive_demand, naive_eval, naive_track
from .tower import extract, track

__all__ = [
    "BenchFunction", "Schedule", "BenchRecord", "CORPUS", "BIVARIATE",
    "TRIVARIATE", "REPRESENTATIONS", "CSV_HEADER", "orders_schedule",
    "default_schedule", "naive_node_count", "demand_tower", "build_tower", "run_suite",
    "growth_exponent", "emit_csv", "write_results",
]

log = logging.getLogger(__name__)

REPRESENTATIONS = ("succinct", "naive")

CSV_HEADER = (
    "representation", "function", "step", "total_degree",
    "seconds_median", "coeff_computations", "nodes",
)

DEFAULT_MAX_ORDER = 20

# Naive cells predicted to build more trie nodes than this are skipped.
DEFAULT_MAX_NODES = 20_000


@dataclass(frozen=True)
class BenchFunction:
    label: str
    source: str
    variables: tuple
    point: tuple

    @property
    def arity(self):
        return len(self.variables)

    def expr(self):
        return parse(self.source, self.variables)

    def env(self):
        return dict(zip(self.variables, self.point))


CORPUS = (
    BenchFunction("identity", "x", ("x",), (0.7,)),
    BenchFunction("exp-x", "exp(x)", ("x",), (0.7,)),
    BenchFunction("sin-x-exp-y2", "sin(x)*exp(y^2)", ("x", "y"), (0.7, 0.4)),
    BenchFunction("sin-x-exp-y2-z", "sin(x)*exp(y^2+z)", ("x", "y", "z"), (0.7, 0.4, 0.2)),
)


@dataclass(frozen=True)
class Schedule:
    """Ordered multi-indices; position ``p`` demands every coefficient under
    any of the first ``p + 1`` entries."""

    label: str
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(k) for k in e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len({len(e) for e in entries}) > 1:
            raise ValueError(f"schedule {self.label!r} mixes arities")
        degrees = [total_degree(e) for e in entries]
        if degrees != sorted(degrees):
            raise ValueError(f"schedule {self.label!r} is not sorted by total degree")

    @property
    def arity(self):
        return len(self.entries[0]) if self.entries else 0

    def demand(self, position):
        return downward_closure(self.entries[: position + 1])


def orders_schedule(max_order=DEFAULT_MAX_ORDER):
    return Schedule("order", tuple((k,) for k in range(max_order + 1)))


BIVARIATE = Schedule(
    "total-degree-2",
    ((0, 1), (2, 0), (2, 1), (2, 2), (3, 2), (4, 2), (3, 4), (5, 3), (3, 6), (6, 4)),
)

TRIVARIATE = Schedule(
    "total-degree-3",
    ((0, 0, 1), (1, 0, 1), (0, 1, 2), (1, 2, 1), (0, 3, 2), (2, 2, 2),
     (3, 2, 2), (3, 4, 1), (5, 3, 1), (2, 3, 5), (5, 4, 2), (3, 4, 5)),
)


def default_schedule(arity, max_order=DEFAULT_MAX_ORDER):
    if arity == 1:
        return orders_schedule(max_order)
    if arity == 2:
        return BIVARIATE
    if arity == 3:
        return TRIVARIATE
    raise ValueError(f"no default schedule for arity {arity}")


@dataclass
class BenchRecord:
    representation: str
    function: str
    step: int
    entry: tuple
    demand_size: int
    seconds: float = None
    coeff_computations: int = None
    nodes: int = None
    error: str = field(default=None, compare=False)

    @property
    def total_degree(self):
        return total_degree(self.entry)


def build_tower(fn, representation, expr=None):
    expr = fn.expr() if expr is None else expr
    if representation == "succinct":
        return eval_tower(expr, fn.env())
    if representation == "naive":
        return naive_eval(expr, fn.env())
    raise ValueError(f"unknown representation {representation!r}")


def demand_tower(tower, representation, indices):
    if representation == "succinct":
        for idx in indices:
            extract(tower, idx)
    else:
        naive_demand(tower, indices)


def naive_node_count(indices):
    """Nodes an unpruned trie builds to reach ``indices``: every word whose
    letter counts lie under one of them, i.e. a sum of multinomials."""
    total = 0
    for idx in downward_closure(indices):
        words = math.factorial(sum(idx))
        for k in idx:
            words //= math.factorial(k)
        total += words
    return total


def _measure(fn, representation, indices, reps, count):
    expr = fn.expr()

    def once():
        demand_tower(build_tower(fn, representation, expr), representation, indices)

    once()  # warm-up, discarded
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        once()
        times.append(time.perf_counter() - start)
    seconds = statistics.median(times)
    if not count:
        return seconds, None, None
    tower = build_tower(fn, representation, expr)
    counter = track(tower) if representation == "succinct" else naive_track(tower)
    demand_tower(tower, representation, indices)
    return seconds, counter.computations, counter.nodes


def run_suite(corpus=CORPUS, schedules=None, reps=3, representations=REPRESENTATIONS,
              counters=None, max_order=DEFAULT_MAX_ORDER, max_nodes=DEFAULT_MAX_NODES):
    """Measure every (function, representation, schedule position) cell.

    ``schedules`` maps function labels to :class:`Schedule`; missing labels
    fall back to :func:`default_schedule`.  A domain error aborts only its
    own cell, which is recorded with ``error`` set.  So does a naive cell
    that would exceed ``max_nodes`` trie nodes (``None`` disables the cap).
    """
    if reps < 3:
        raise ValueError(f"need at least 3 repetitions, got {reps}")
    count = counters_enabled() if counters is None else counters
    schedules = schedules or {}
    records = []
    for fn in corpus:
        schedule = schedules.get(fn.label) or default_schedule(fn.arity, max_order)
        if schedule.arity != fn.arity:
            raise ValueError(f"schedule {schedule.label!r} does not fit {fn.label!r}")
        for representation in representations:
            for step, entry in enumerate(schedule.entries):
                indices = schedule.demand(step)
                rec = BenchRecord(representation, fn.label, step, entry, len(indices))
                if (representation == "naive" and max_nodes is not None
                        and naive_node_count(indices) > max_nodes):
                    rec.error = f"skipped: more than {max_nodes} naive nodes"
                    records.append(rec)
                    continue
                try:
                    rec.seconds, rec.coeff_computations, rec.nodes = _measure(
                        fn, representation, indices, reps, count)
                except (DomainError, ArithmeticError) as exc:
                    rec.error = str(exc)
                    log.warning("%s/%s step %d failed: %s", representation, fn.label, step, exc)
                records.append(rec)
    return records


def growth_exponent(records, metric="coeff_computations"):
    """Slope of log(metric) against log(demand size), by least squares."""
    pts = [(r.demand_size, getattr(r, metric)) for r in records
           if r.error is None and getattr(r, metric)]
    if len({x for x, _ in pts}) < 2:
        return math.nan
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _cell(v):
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def emit_csv(records, path):
    path = Path(path)
    order = {r: i for i, r in enumerate(REPRESENTATIONS)}
    rows = sorted(records, key=lambda r: (r.function, order.get(r.representation, 99), r.step))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                w.writerow([
                    r.representation, r.function, r.step, r.total_degree,
                    _cell(r.seconds), _cell(r.coeff_computations), _cell(r.nodes),
                ])
    except OSError as exc:
        raise OSError(f"cannot write benchmark CSV {path}: {exc.strerror or exc}") from exc
    return path


def write_results(records, out_dir):
    """Write ``<out_dir>/multdiffupto-<representation>/<function>.csv`` files."""
    out_dir = Path(out_dir)
    groups = {}
    for r in records:
        groups.setdefault((r.representation, r.function), []).append(r)
    paths = []
    for (representation, function), recs in sorted(groups.items()):
        paths.append(emit_csv(recs, out_dir / f"multdiffupto-{representation}" / f"{function}.csv"))
    return paths
