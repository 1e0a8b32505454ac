"""Command-line front end: run scenarios, compare policies, sweep task counts.

Canonical outputs are CSV files in the output directory (``--out`` or the
CLOUDSCHED_OUT environment variable, falling back to the working
directory). Identical config + seed produces byte-identical CSV/TSV
files; "pretty" console tables are formatting only. Wall-clock timings
go to a separate sweep_timing.csv so sweep.csv stays deterministic.
"""

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .engine import execute_plan
from .metrics import PolicyReport, compare, summarize
from .model import POLICIES, Scenario, ValidationError
from .policies import assign
from .workload import (
    BUILTIN_NAMES,
    GeneratorSpec,
    builtin_scenario,
    derive_seed,
    generate,
    load_scenario,
)

FORMATS = ("csv", "tsv", "pretty")


class UsageError(ValueError):
    """Bad flag combination or value; reported on stderr with exit 1."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved command configuration shared by run/compare/sweep."""

    builtins: tuple[str, ...] = ()
    scenario_path: Optional[str] = None
    generate_n: Optional[int] = None
    policies: tuple[str, ...] = ()       # empty = default (all three)
    seed: int = 0
    out_dir: str = "."
    formats: tuple[str, ...] = ("csv",)


# ---------------------------------------------------------------------------
# table formatting

def _t(x: float) -> str:
    return f"{x:.2f}"


def _write_table(out_dir: Path, stem: str, fmt: str,
                 header: list[str], rows: list[list[str]]) -> None:
    delim = "," if fmt == "csv" else "\t"
    lines = [delim.join(header)] + [delim.join(row) for row in rows]
    (out_dir / f"{stem}.{fmt}").write_text("\n".join(lines) + "\n")


def _print_pretty(title: str, header: list[str], rows: list[list[str]]) -> None:
    widths = [len(col) for col in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    print(f"== {title} ==")
    print("  ".join(col.ljust(w) for col, w in zip(header, widths)).rstrip())
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    print()


def _emit(config: RunConfig, stem: str, header: list[str],
          rows: list[list[str]]) -> None:
    out_dir = Path(config.out_dir)
    for fmt in config.formats:
        if fmt == "pretty":
            _print_pretty(stem, header, rows)
        else:
            _write_table(out_dir, stem, fmt, header, rows)


# ---------------------------------------------------------------------------
# scenario resolution

def _resolve_jobs(config: RunConfig) -> list[tuple[str, Scenario]]:
    """Turn the config's source + policy flags into (policy, scenario) runs."""
    picked = sum([bool(config.builtins),
                  config.scenario_path is not None,
                  config.generate_n is not None])
    if picked != 1:
        raise UsageError("choose exactly one of --builtin, --scenario, --generate")

    for policy in config.policies:
        if policy not in POLICIES:
            raise UsageError(f"unknown policy {policy!r} "
                             f"(choose from {', '.join(POLICIES)})")

    if len(config.builtins) > 1:
        # Several builtins: each carries its own policy; --policy would be
        # ambiguous about which scenario it applies to.
        if config.policies:
            raise UsageError("--policy cannot be combined with multiple builtins")
        return [(sc.policy, sc)
                for sc in (builtin_scenario(name) for name in config.builtins)]

    if config.builtins:
        base = builtin_scenario(config.builtins[0])
    elif config.scenario_path is not None:
        base = load_scenario(Path(config.scenario_path))
    else:
        base = generate(GeneratorSpec(n_tasks=config.generate_n, seed=config.seed))

    policies = config.policies or POLICIES
    return [(policy, base.with_policy(policy)) for policy in policies]


def _run_one(policy: str, scenario: Scenario) -> tuple[PolicyReport, list[list[str]]]:
    outcome = assign(scenario)
    result = execute_plan(scenario, outcome.plan, outcome.mode)
    report = summarize(result, policy=policy)
    rows = [[str(r.cloudlet_id), str(r.datacenter_id), str(r.vm_id),
             _t(r.cpu_time), _t(r.start_time), _t(r.finish_time)]
            for r in result.records]
    rows.append(["mean", "", "", _t(report.mean_cpu_time), "", ""])
    return report, rows


_RUN_HEADER = ["cloudlet_id", "datacenter_id", "vm_id", "cpu_time", "start", "finish"]


# ---------------------------------------------------------------------------
# subcommands

def cmd_run(config: RunConfig) -> int:
    """Run each requested policy and write one <policy>.csv per run."""
    try:
        jobs = _resolve_jobs(config)
        names = [policy for policy, _ in jobs]
        if len(set(names)) != len(names):
            raise UsageError("duplicate policies would overwrite each other's files")
        tables = [(policy, _run_one(policy, scenario)[1])
                  for policy, scenario in jobs]
    except (UsageError, ValidationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    try:
        Path(config.out_dir).mkdir(parents=True, exist_ok=True)
        for policy, rows in tables:
            _emit(config, policy, _RUN_HEADER, rows)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


_COMPARE_HEADER = ["policy", "mode", "n_cloudlets", "mean_cpu_time",
                   "mean_completion_time", "headline_mean", "makespan",
                   "mean_utilization", "improvement_pct"]


def cmd_compare(config: RunConfig) -> int:
    """Summarize >= 2 policy runs side by side (compare.csv + compare.dat)."""
    try:
        jobs = _resolve_jobs(config)
        if len(jobs) < 2:
            raise UsageError("need >= 2 policies to compare")
        reports = [_run_one(policy, scenario)[0] for policy, scenario in jobs]
        comparison = compare(reports)
    except (UsageError, ValidationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    rows = [[c["policy"], c["mode"], str(c["n_cloudlets"]),
             _t(c["mean_cpu_time"]), _t(c["mean_completion_time"]),
             _t(c["headline_mean"]), _t(c["makespan"]),
             f"{c['mean_utilization']:.3f}", f"{c['improvement_pct']:.1f}"]
            for c in comparison]

    try:
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        _emit(config, "compare", _COMPARE_HEADER, rows)
        # Plot data for `plot "compare.dat" using 2:xtic(1)` style bar charts.
        dat = ["# policy headline_mean makespan"]
        dat += [f"{c['policy']} {_t(c['headline_mean'])} {_t(c['makespan'])}"
                for c in comparison]
        (out_dir / "compare.dat").write_text("\n".join(dat) + "\n")
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


def cmd_sweep(config: RunConfig, task_counts: tuple[int, ...]) -> int:
    """Generate-and-run every (task count, policy) pair; write sweep.csv.

    Each count gets its own derived seed so adding counts never perturbs
    the others. Timings land in sweep_timing.csv, kept out of sweep.csv
    so the latter is byte-deterministic.
    """
    try:
        if not task_counts:
            raise UsageError("no task counts given")
        if any(n < 1 for n in task_counts):
            raise UsageError("task counts must be >= 1")
        policies = config.policies or POLICIES
        for policy in policies:
            if policy not in POLICIES:
                raise UsageError(f"unknown policy {policy!r} "
                                 f"(choose from {', '.join(POLICIES)})")

        rows, timing_rows = [], []
        for n in task_counts:
            spec = GeneratorSpec(n_tasks=n, seed=derive_seed(config.seed, n))
            scenario = generate(spec)
            for policy in policies:
                started = time.perf_counter()
                report, _ = _run_one(policy, scenario.with_policy(policy))
                elapsed_ms = (time.perf_counter() - started) * 1000.0
                rows.append([str(n), policy, _t(report.mean_cpu_time),
                             _t(report.makespan)])
                timing_rows.append([str(n), policy, f"{elapsed_ms:.3f}"])
    except (UsageError, ValidationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    try:
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        _emit(config, "sweep",
              ["n", "policy", "mean_cpu_time", "makespan"], rows)
        _write_table(out_dir, "sweep_timing", "csv",
                     ["n", "policy", "wall_clock_ms"], timing_rows)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(part for part in text.split(",") if part)


def _add_common(sub: argparse.ArgumentParser, with_source: bool) -> None:
    if with_source:
        sub.add_argument("--builtin", type=_str_list, default=(),
                         metavar="NAME[,NAME...]",
                         help=f"built-in scenario(s): {', '.join(BUILTIN_NAMES)}")
        sub.add_argument("--scenario", metavar="PATH",
                         help="scenario JSON file")
        sub.add_argument("--generate", type=int, metavar="N",
                         help="generate a synthetic scenario with N cloudlets")
    sub.add_argument("--policy", type=_str_list, default=(),
                     metavar="P[,P...]",
                     help="policies to run (default: all of %s)" % ",".join(POLICIES))
    sub.add_argument("--seed", type=int, default=0, metavar="U64",
                     help="workload seed (default 0)")
    sub.add_argument("--out", metavar="DIR",
                     help="output directory (default: $CLOUDSCHED_OUT or .)")
    sub.add_argument("--format", type=_str_list, default=("csv",),
                     metavar="F[,F...]",
                     help="output formats: csv, tsv, pretty (default csv)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cloudsched",
        description="Deterministic cloud task-scheduling simulator "
                    "(fcfs / rr / gpa brokers).")
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="run policies, one table per policy")
    _add_common(run, with_source=True)

    cmp_ = subs.add_parser("compare", help="side-by-side policy summary")
    _add_common(cmp_, with_source=True)

    sweep = subs.add_parser("sweep", help="task-count sweep on generated workloads")
    sweep.add_argument("--counts", type=_int_list, required=True,
                       metavar="N[,N...]", help="task counts, e.g. 100,200,300")
    _add_common(sweep, with_source=False)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if not 0 <= seed < 2 ** 64:
        raise UsageError("--seed must fit in an unsigned 64-bit integer")
    formats = tuple(args.format)
    for fmt in formats:
        if fmt not in FORMATS:
            raise UsageError(f"unknown format {fmt!r} "
                             f"(choose from {', '.join(FORMATS)})")
    generate_n = getattr(args, "generate", None)
    if generate_n is not None and generate_n < 1:
        raise UsageError("--generate needs at least one cloudlet")
    return RunConfig(
        builtins=tuple(getattr(args, "builtin", ())),
        scenario_path=getattr(args, "scenario", None),
        generate_n=generate_n,
        policies=tuple(args.policy),
        seed=seed,
        out_dir=args.out or os.environ.get("CLOUDSCHED_OUT") or ".",
        formats=formats,
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    if args.command == "run":
        return cmd_run(config)
    if args.command == "compare":
        return cmd_compare(config)
    return cmd_sweep(config, args.counts)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
