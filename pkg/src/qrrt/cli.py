"""Command line interface.

Subcommands:

* plan       one planning run, prints the path (or FAILURE)
* bench      a (spec x seed) matrix, writes CSV, prints summary + histogram
* enumerate  list every simplification spec available for a scenario
* verify     grid-certify the quotient guarantees on a small scenario

Benchmarked and planned paths are revalidated at 10x finer resolution
before they are reported or written; a revalidation failure is a failure.

Exit codes: 0 success; 1 planning failed or a certificate found violations;
2 bad configuration (unknown scenario, malformed spec, infeasible query).
"""

from __future__ import annotations

import argparse
import csv
import sys

from .bench import (format_histogram, format_summary, parse_spec, run_cell,
                    run_matrix, runtime_histogram, spec_name, summarize,
                    write_csv)
from .oracle import (grid_oracle, nesting_violations, reachability_violations,
                     write_violations_csv)
from .planner import InfeasibleQueryError, PlannerParams, Ptc, solve_qrrt
from .quotient import (UnsupportedProjectionError, build_sequence,
                       enumerate_sequences, sequence_label, validate_spec)
from .scenarios import ConfigError, resolve_scenario


def _parse_seeds(text):
    """Seed list: "7", "1,2,5", or a half-open range "0:20"."""
    text = text.strip()
    if ":" in text:
        lo, _, hi = text.partition(":")
        lo = int(lo) if lo else 0
        hi = int(hi)
        if hi <= lo:
            raise ConfigError(f"empty seed range {text!r}")
        return list(range(lo, hi))
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise ConfigError(f"bad seed list {text!r}") from None


def _parse_specs(text, scenario):
    """Spec list such as "trivial,2,3,2-3"; "all" expands every subset of
    the scenario's projection dims."""
    if text.strip() == "all":
        return enumerate_sequences(scenario.projection_dims)
    try:
        return [parse_spec(tok) for tok in text.split(",")]
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _params_from_args(scenario, args):
    p = scenario.params
    updates = {}
    if getattr(args, "step", None) is not None:
        updates["step"] = args.step
    if getattr(args, "resolution", None) is not None:
        updates["resolution"] = args.resolution
    if getattr(args, "goal_bias", None) is not None:
        updates["goal_bias"] = args.goal_bias
    if getattr(args, "nn_index", None) is not None:
        updates["nn_index"] = args.nn_index
    if getattr(args, "no_continue_lower", False):
        updates["continue_lower_levels"] = False
    if updates:
        from dataclasses import replace
        p = replace(p, **updates)
    return p


def _ptc_args(args):
    if args.time_limit is None and args.max_grows is None:
        return {"time_limit": 60.0, "max_grows": None}
    return {"time_limit": args.time_limit, "max_grows": args.max_grows}


def _add_common(sub):
    sub.add_argument("--scenario", required=True,
                     help="built-in name (with optional key=value parameters "
                          "after a colon) or a .toml file")
    sub.add_argument("--time-limit", type=float, default=None,
                     help="wall-clock budget per run in seconds")
    sub.add_argument("--max-grows", type=int, default=None,
                     help="grow-call budget per run (deterministic cutoff)")
    sub.add_argument("--step", type=float, default=None,
                     help="steering step (default: 0.2 x space diameter)")
    sub.add_argument("--resolution", type=float, default=None,
                     help="motion check spacing (default: 0.01 x diameter)")
    sub.add_argument("--goal-bias", type=float, default=None)
    sub.add_argument("--nn-index", choices=("linear", "kdtree"), default=None)
    sub.add_argument("--no-continue-lower", action="store_true",
                     help="freeze solved levels instead of growing them on")


def _write_path_file(path_out, rec):
    with open(path_out, "w", newline="") as fh:
        w = csv.writer(fh)
        for state in rec.path.states:
            w.writerow([f"{c:.9g}" for c in state])


def _cmd_plan(args):
    scenario = resolve_scenario(args.scenario)
    spec = parse_spec(args.spec)
    validate_spec(spec, scenario.robot)
    params = _params_from_args(scenario, args)
    rec = run_cell(scenario, spec, args.seed, params=params,
                   revalidate=True, **_ptc_args(args))
    label = sequence_label(spec, scenario.robot.dof)
    print(f"{scenario.name} {label} seed={rec.seed}: "
          f"{rec.time_s:.3f}s grows={sum(rec.grow_calls)} "
          f"nodes={';'.join(str(n) for n in rec.nodes)}")
    if not rec.solved or rec.revalidated is False:
        print("FAILURE" if not rec.solved
              else "FAILURE (path failed revalidation)")
        return 1
    print(f"path: {len(rec.path.states)} states, length {rec.path_length:.4f}")
    for state in rec.path.states:
        print("  " + " ".join(f"{c:.6g}" for c in state))
    if args.path_out:
        _write_path_file(args.path_out, rec)
        print(f"wrote {args.path_out}")
    return 0


def _cmd_bench(args):
    scenario = resolve_scenario(args.scenario)
    specs = _parse_specs(args.specs, scenario)
    for spec in specs:
        validate_spec(spec, scenario.robot)
    seeds = _parse_seeds(args.seeds)
    params = _params_from_args(scenario, args)
    progress = None
    if args.verbose:
        def progress(rec):
            print(f"  {scenario.name} {spec_name(rec.spec):<10} "
                  f"seed={rec.seed:<3} "
                  f"{'ok' if rec.solved else '--'} {rec.time_s:8.3f}s",
                  flush=True)
    workers = 0 if args.serial else args.workers
    records = run_matrix(scenario, specs, seeds, params=params,
                         revalidate=True, workers=workers,
                         progress=progress, **_ptc_args(args))
    if args.out:
        write_csv(args.out, records)
    summaries = summarize(records)
    print(format_summary(summaries))
    if len(summaries) > 1:
        print(format_histogram(*runtime_histogram(summaries)))
    bad = [r for r in records if r.revalidated is False]
    if bad:
        print(f"revalidation FAILED for {len(bad)} paths")
        return 1
    return 0


def _cmd_enumerate(args):
    scenario = resolve_scenario(args.scenario)
    specs = enumerate_sequences(scenario.projection_dims)
    for spec in specs:
        dims = ",".join(str(d) for d in spec) if spec else "trivial"
        print(f"{sequence_label(spec, scenario.robot.dof):<12} [{dims}]")
    print(f"{len(specs)} simplification specs "
          f"({len(scenario.projection_dims)} projection dims)")
    return 0


def _cmd_verify(args):
    scenario = resolve_scenario(args.scenario)
    dof = scenario.robot.dof
    cells = [int(c) for c in args.cells.split(",")]
    if len(cells) == 1:
        cells = cells * dof
    if len(cells) != dof:
        raise ConfigError(f"--cells needs 1 or {dof} values, got {len(cells)}")
    dims = scenario.projection_dims if args.dim is None else (args.dim,)
    goal = scenario.goal
    found = []
    for dim in dims:
        nest = nesting_violations(scenario.robot, scenario.env, dim, cells)
        reach = reachability_violations(scenario.robot, scenario.env, dim,
                                        cells, goal)
        print(f"dim {dim}: {len(nest)} nesting violations, "
              f"{len(reach)} reachability violations")
        found.extend(nest)
        found.extend(reach)
    if args.out and found:
        write_violations_csv(args.out, found)
        print(f"wrote {len(found)} violations to {args.out}")
    oracle = grid_oracle(scenario.robot, scenario.env, cells)
    print(f"full grid: {oracle.free_cell_count} free cells, "
          f"{oracle.n_components} components")
    return 0 if not found else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qrrt",
        description="Multilevel sampling-based motion planning benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="run the planner once")
    _add_common(p)
    p.add_argument("--spec", default="trivial",
                   help='simplification spec, e.g. "trivial" or "2-3"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--path-out", default=None,
                   help="write the solution states to this file (CSV rows)")
    p.set_defaults(fn=_cmd_plan)

    p = sub.add_parser("bench", help="run a (spec x seed) matrix")
    _add_common(p)
    p.add_argument("--specs", default="all",
                   help='comma list of specs ("trivial,2,2-3") or "all"')
    p.add_argument("--seeds", default="0:10", help='"0:20", "1,2,5", or "7"')
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--workers", type=int, default=0,
                   help="worker processes (0 = serial, exact timing)")
    p.add_argument("--serial", action="store_true",
                   help="force serial execution (overrides --workers); "
                        "parallel cells inflate timing variance")
    p.add_argument("--verbose", action="store_true",
                   help="print each cell as it finishes")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("enumerate", help="list simplification specs")
    p.add_argument("--scenario", required=True)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("verify", help="grid-certify quotient guarantees")
    p.add_argument("--scenario", required=True)
    p.add_argument("--cells", default="64",
                   help="grid cells per dimension (one value or dof values)")
    p.add_argument("--dim", type=int, default=None,
                   help="verify a single projection dimension")
    p.add_argument("--out", default=None,
                   help="write any violations to this CSV")
    p.set_defaults(fn=_cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, InfeasibleQueryError, UnsupportedProjectionError,
            ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
