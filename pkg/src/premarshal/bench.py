"""Benchmark harness: analysis formulas, the suite runner and its CSV."""

from __future__ import annotations

import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import IO

from .generate import GenConfig, generate
from .model import Solution, TimedOut
from .pipeline import solve_instance

CSV_COLUMNS = [
    "bay_layout",
    "warehouse_layout",
    "fill",
    "classes",
    "seed",
    "algo",
    "solved",
    "timed_out",
    "k",
    "total_distance",
    "nodes_evaluated",
    "preprocessing_s",
    "solve_s",
]


class DomainError(ValueError):
    """Argument outside the formula's domain."""


def blockage_likelihood(p_bar: int) -> Fraction:
    """Mean likelihood that a random load placed in front of another blocks it.

    With groups uniform on 1..p_bar, a load in front of group p blocks with
    probability 1 - p/p_bar, so the mean over p is (1/p_bar) *
    sum_{p=1..p_bar} (1 - p/p_bar) = (p_bar - 1) / (2 p_bar), exactly, which
    grows toward 1/2 as the group count grows.
    """
    if p_bar < 1:
        raise DomainError("the group count must be at least 1")
    return Fraction(p_bar - 1, 2 * p_bar)


@dataclass(frozen=True)
class SuiteRun:
    """One (config, seed, algo) cell of a suite."""

    config: GenConfig
    algo: str
    timeout_s: float | None = None


def suite_runs(suite: dict) -> list[SuiteRun]:
    """Expand a suite dict into its deterministic run list.

    Suite schema: {"configs": [{"bay": "3x3", "warehouse": "2x2",
    "fill": 0.6, "classes": 5}], "seeds": [1, 2], "algos": ["astar",
    "exact"], "timeout_s": {"astar": 600, "exact": 3600},
    "unrestricted": false}.  Runs are ordered (config, seed, algo).
    """
    from .files import parse_layout_label

    unrestricted = bool(suite.get("unrestricted", False))
    timeouts = suite.get("timeout_s", {})
    runs = []
    for entry in suite["configs"]:
        for seed in suite["seeds"]:
            for algo in suite["algos"]:
                config = GenConfig(
                    bay=parse_layout_label(entry["bay"]),
                    warehouse=parse_layout_label(entry["warehouse"]),
                    fill=float(entry["fill"]),
                    groups=int(entry["classes"]),
                    seed=int(seed),
                    unrestricted=unrestricted,
                )
                runs.append(
                    SuiteRun(config=config, algo=algo, timeout_s=timeouts.get(algo))
                )
    return runs


def run_one(run: SuiteRun) -> dict:
    """Execute one suite cell; failures become an unsolved row, not an abort."""
    config = run.config
    row = {
        "bay_layout": config.bay_label,
        "warehouse_layout": config.warehouse_label,
        "fill": config.fill,
        "classes": config.groups,
        "seed": config.seed,
        "algo": run.algo,
        "solved": False,
        "timed_out": False,
        "k": "",
        "total_distance": "",
        "nodes_evaluated": "",
        "preprocessing_s": "",
        "solve_s": "",
    }
    try:
        instance = generate(config)
        result, prepared = solve_instance(instance, run.algo, timeout_s=run.timeout_s)
    except Exception as exc:  # noqa: BLE001 - recorded per the suite contract
        print(f"[bench] {row['bay_layout']} seed {config.seed} {run.algo}: {exc}",
              file=sys.stderr)
        return row
    row["preprocessing_s"] = f"{prepared.preprocessing_time:.6f}"
    if isinstance(result, Solution):
        row.update(
            solved=True,
            k=result.k,
            total_distance=result.total_distance,
            nodes_evaluated=result.stats.nodes_evaluated,
            solve_s=f"{result.stats.wall_time:.6f}",
        )
    elif isinstance(result, TimedOut):
        row["timed_out"] = True
        if result.stats is not None:
            row["nodes_evaluated"] = result.stats.nodes_evaluated
            row["solve_s"] = f"{result.stats.wall_time:.6f}"
    return row


def run_suite(suite: dict, jobs: int = 1) -> list[dict]:
    """All rows of a suite, ordered by (config, seed, algo) come what may."""
    runs = suite_runs(suite)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_one, runs))
    else:
        rows = [run_one(run) for run in runs]
    return rows


def write_results_csv(rows: list[dict], fileobj: IO[str]) -> None:
    writer = csv.DictWriter(fileobj, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def aggregate(rows: list[dict]) -> dict:
    """Summary quantities over a result table.

    - solved: per (config, algo) solved counts;
    - agreement: instances where both algorithms solved, split by equal k and
      by equal distance;
    - mean_distance_per_move: per algo, total distance over total moves;
    - relative_gaps: (d_astar - d_exact) / d_exact per disagreeing instance.
    """
    solved: dict = {}
    per_algo: dict = {}
    by_cell: dict = {}
    for row in rows:
        cell = (row["bay_layout"], row["warehouse_layout"], row["fill"],
                row["classes"])
        key = cell + (row["algo"],)
        solved.setdefault(key, [0, 0])
        solved[key][1] += 1
        if row["solved"] in (True, "True"):
            solved[key][0] += 1
            stats = per_algo.setdefault(row["algo"], [0, 0])
            stats[0] += int(row["total_distance"])
            stats[1] += int(row["k"])
            by_cell.setdefault(cell + (row["seed"],), {})[row["algo"]] = (
                int(row["k"]),
                int(row["total_distance"]),
            )
    agreement = {"both_solved": 0, "same_k": 0, "same_distance": 0}
    gaps = []
    for algos in by_cell.values():
        if "astar" in algos and "exact" in algos:
            agreement["both_solved"] += 1
            (ka, da), (ke, de) = algos["astar"], algos["exact"]
            if ka == ke:
                agreement["same_k"] += 1
            if da == de:
                agreement["same_distance"] += 1
            elif de > 0:
                gaps.append((da - de) / de)
    return {
        "solved": {"/".join(map(str, k)): f"{v[0]}/{v[1]}" for k, v in solved.items()},
        "agreement": agreement,
        "mean_distance_per_move": {
            algo: (dist / moves if moves else 0.0)
            for algo, (dist, moves) in per_algo.items()
        },
        "relative_gaps": gaps,
    }
