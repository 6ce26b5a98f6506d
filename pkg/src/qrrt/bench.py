"""Seeded benchmark matrices over (simplification, seed) cells.

A cell is one planner run; a matrix is the cross product of simplification
specs and seeds on one scenario.  Runs are deterministic given the seed, so
a matrix written to CSV twice compares byte-identical except for the wall
clock column.  Unsolved timed runs report the full time budget (censored),
which keeps aggregate statistics well defined.

Cells may run in parallel processes; each cell owns its planner state and
scenarios are shared read-only.  Parallel wall clocks are noisier, so
timing-sensitive comparisons should use the default serial mode.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .geometry import checker_for
from .planner import Ptc, solve_qrrt
from .quotient import build_sequence


def spec_name(spec):
    """Stable CSV token for a simplification spec ("trivial" or "2-3")."""
    return "-".join(str(d) for d in spec) if spec else "trivial"


def parse_spec(token):
    """Inverse of spec_name; accepts "trivial", "", "2", or "2-3"."""
    token = token.strip()
    if token in ("", "trivial"):
        return ()
    try:
        return tuple(int(t) for t in token.split("-"))
    except ValueError:
        raise ValueError(f"bad simplification spec {token!r}") from None


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one planner run (one matrix cell).

    `path` carries the solution states for callers that print or save them;
    it is not part of the CSV contract.
    """

    scenario: str
    spec: tuple[int, ...]
    seed: int
    solved: bool
    time_s: float
    grow_calls: tuple[int, ...]
    nodes: tuple[int, ...]
    path_length: float | None
    censored: bool
    revalidated: bool | None = None
    path: object | None = None


def path_valid(robot, env, path, resolution):
    """Independent revalidation: every consecutive motion of the path is
    collision checked from scratch at the given resolution."""
    chk = checker_for(robot, env)
    states = path.states
    return all(chk.motion_valid(states[i], states[i + 1], resolution)
               for i in range(len(states) - 1))


def run_cell(scenario, spec, seed, time_limit=None, max_grows=None,
             params=None, revalidate=False):
    """Run one (spec, seed) cell on a scenario and record the outcome.

    revalidate=True re-checks any returned path at 10x finer resolution
    than the planner used, filling the record's `revalidated` field.
    """
    base = params if params is not None else scenario.params
    run_params = replace(base, seed=seed)
    sequence = build_sequence(scenario.robot, scenario.env, spec)
    ptc = Ptc(time_limit=time_limit, max_grow_calls=max_grows)
    result = solve_qrrt(sequence, scenario.start, scenario.goal, run_params, ptc)

    censored = not result.solved
    time_s = result.elapsed
    if censored and time_limit is not None:
        time_s = float(time_limit)

    path_length = None
    revalidated = None
    if result.solved:
        path_length = result.path.length(sequence.full_space)
        if revalidate:
            fine = result.levels[-1].resolution / 10.0
            revalidated = path_valid(scenario.robot, scenario.env,
                                     result.path, fine)

    return RunRecord(
        scenario=scenario.name, spec=tuple(spec), seed=seed,
        solved=result.solved, time_s=time_s, grow_calls=result.grow_calls,
        nodes=result.nodes, path_length=path_length, censored=censored,
        revalidated=revalidated, path=result.path,
    )


def _run_cell_args(args):
    return run_cell(*args)


def run_matrix(scenario, specs, seeds, time_limit=None, max_grows=None,
               params=None, revalidate=False, workers=0, progress=None):
    """All (spec, seed) cells; serial by default, processes if workers > 0.

    Records come back sorted by (spec length, spec, seed) regardless of
    execution order.
    """
    cells = [(scenario, tuple(spec), seed, time_limit, max_grows, params,
              revalidate) for spec in specs for seed in seeds]
    if workers and workers > 0:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell_args, cells))
    else:
        records = []
        for cell in cells:
            rec = run_cell(*cell)
            records.append(rec)
            if progress is not None:
                progress(rec)
    records.sort(key=lambda r: (len(r.spec), r.spec, r.seed))
    return records


CSV_COLUMNS = ("scenario", "spec", "seed", "solved", "time_s",
               "grow_calls_total", "nodes_per_level", "path_length")


def write_csv(path, records):
    """Write records with fixed columns and formats.

    Every column except time_s is a deterministic function of the seed, so
    two runs of the same matrix agree byte for byte outside that column.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([
                r.scenario,
                spec_name(r.spec),
                r.seed,
                1 if r.solved else 0,
                f"{r.time_s:.6f}",
                sum(r.grow_calls),
                ";".join(str(n) for n in r.nodes),
                f"{r.path_length:.9g}" if r.path_length is not None else "",
            ])


def read_csv(path):
    """Rows of a benchmark CSV as dicts (strings as written)."""
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@dataclass(frozen=True)
class SpecSummary:
    """Aggregate statistics for one spec within a matrix."""

    scenario: str
    spec: tuple[int, ...]
    runs: int
    solved: int
    mean_s: float
    median_s: float
    min_s: float
    max_s: float

    @property
    def success_rate(self):
        return self.solved / self.runs


def summarize(records):
    """Per-spec aggregates (censored runs count at their budget)."""
    groups = {}
    for r in records:
        groups.setdefault((r.scenario, r.spec), []).append(r)
    out = []
    for (scenario, spec), rows in sorted(groups.items(),
                                         key=lambda kv: (kv[0][0],
                                                         len(kv[0][1]),
                                                         kv[0][1])):
        times = [r.time_s for r in rows]
        out.append(SpecSummary(
            scenario=scenario, spec=spec, runs=len(rows),
            solved=sum(r.solved for r in rows),
            mean_s=statistics.fmean(times),
            median_s=statistics.median(times),
            min_s=min(times), max_s=max(times),
        ))
    return out


def format_summary(summaries):
    lines = [f"{'scenario':<22} {'spec':<10} {'ok':>5} {'mean':>8} "
             f"{'median':>8} {'min':>8} {'max':>8}"]
    for s in summaries:
        lines.append(
            f"{s.scenario:<22} {spec_name(s.spec):<10} "
            f"{s.solved:>2}/{s.runs:<2} {s.mean_s:>8.3f} {s.median_s:>8.3f} "
            f"{s.min_s:>8.3f} {s.max_s:>8.3f}")
    return "\n".join(lines)


def runtime_histogram(summaries, bins=10):
    """How many specs land in each band of mean runtime: (counts, edges).

    Groups simplification sequences with similar runtime, the aggregate view
    of a sequence-enumeration benchmark.  Bins span [min, max] of the mean
    times; a single spec (or all-equal means) yields one occupied bin.
    """
    means = np.array([s.mean_s for s in summaries], dtype=float)
    if means.size == 0:
        raise ValueError("no summaries to histogram")
    counts, edges = np.histogram(means, bins=bins)
    return counts.tolist(), edges.tolist()


def format_histogram(counts, edges):
    lines = ["mean-time histogram (specs per band):"]
    width = max(counts) if counts else 1
    for c, lo, hi in zip(counts, edges, edges[1:]):
        bar = "#" * (0 if width == 0 else round(20 * c / max(width, 1)))
        lines.append(f"  [{lo:8.3f}, {hi:8.3f}) {c:>3} {bar}")
    return "\n".join(lines)
