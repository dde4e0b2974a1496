import io
from fractions import Fraction

import pytest

import oracles
from premarshal import bench


def test_blockage_likelihood_known_values():
    assert bench.blockage_likelihood(5) == Fraction(2, 5)
    assert float(bench.blockage_likelihood(5)) == 0.40
    assert float(bench.blockage_likelihood(10)) == 0.45
    assert bench.blockage_likelihood(1) == 0
    assert bench.blockage_likelihood(2) == Fraction(1, 4)


def test_blockage_likelihood_matches_sum_and_limit():
    for p_bar in range(1, 61):
        assert bench.blockage_likelihood(p_bar) == oracles.likelihood_by_sum(p_bar)
    assert bench.blockage_likelihood(10_000) < Fraction(1, 2)
    assert Fraction(1, 2) - bench.blockage_likelihood(10_000) < Fraction(1, 10_000)


def test_blockage_likelihood_domain():
    for bad in (0, -1):
        with pytest.raises(bench.DomainError):
            bench.blockage_likelihood(bad)


SUITE = {
    "configs": [
        {"bay": "3x3", "warehouse": "2x2", "fill": 0.6, "classes": 5},
        {"bay": "4x4", "warehouse": "2x2", "fill": 0.8, "classes": 10},
    ],
    "seeds": [2, 3],
    "algos": ["astar", "exact"],
    "timeout_s": {"exact": 120},
}


def test_suite_runs_expand_in_config_seed_algo_order():
    runs = bench.suite_runs(SUITE)
    assert [(r.config.bay_label, r.config.seed, r.algo) for r in runs] == [
        ("3x3", 2, "astar"), ("3x3", 2, "exact"),
        ("3x3", 3, "astar"), ("3x3", 3, "exact"),
        ("4x4", 2, "astar"), ("4x4", 2, "exact"),
        ("4x4", 3, "astar"), ("4x4", 3, "exact"),
    ]
    assert [r.timeout_s for r in runs[:2]] == [None, 120]
    assert runs[0].config.fill == 0.6 and runs[4].config.groups == 10


def test_suite_runs_respect_the_benchmark_grid():
    off_grid = {
        "configs": [{"bay": "2x2", "warehouse": "1x1", "fill": 0.3, "classes": 3}],
        "seeds": [1],
        "algos": ["astar"],
    }
    with pytest.raises(ValueError):
        bench.suite_runs(off_grid)
    runs = bench.suite_runs({**off_grid, "unrestricted": True})
    assert len(runs) == 1 and runs[0].config.unrestricted


def _strip_timing(rows):
    return [
        {k: v for k, v in row.items() if k not in ("preprocessing_s", "solve_s")}
        for row in rows
    ]


def test_run_suite_rows_and_determinism():
    first = bench.run_suite(SUITE)
    second = bench.run_suite(SUITE)
    assert len(first) == 8
    assert _strip_timing(first) == _strip_timing(second)
    for row in first:
        assert row["solved"] is True and row["timed_out"] is False
    by_key = {(r["bay_layout"], r["seed"], r["algo"]): r for r in first}
    for bay_layout in ("3x3", "4x4"):
        for seed in (2, 3):
            astar_row = by_key[(bay_layout, seed, "astar")]
            exact_row = by_key[(bay_layout, seed, "exact")]
            assert exact_row["k"] <= astar_row["k"]
            assert exact_row["total_distance"] <= astar_row["total_distance"]


def test_run_suite_parallel_matches_serial():
    suite = {
        "configs": [{"bay": "3x3", "warehouse": "2x2", "fill": 0.4, "classes": 5}],
        "seeds": [1, 2],
        "algos": ["astar"],
    }
    serial = bench.run_suite(suite, jobs=1)
    parallel = bench.run_suite(suite, jobs=2)
    assert _strip_timing(serial) == _strip_timing(parallel)


def test_run_one_timeout_row():
    run = bench.SuiteRun(
        config=bench.GenConfig(
            bay=(4, 4), warehouse=(2, 2), fill=0.8, groups=10, seed=2
        ),
        algo="exact",
        timeout_s=0.0,
    )
    row = bench.run_one(run)
    assert row["timed_out"] is True and row["solved"] is False
    assert row["k"] == "" and row["nodes_evaluated"] != ""


def test_run_one_records_failures_instead_of_raising(monkeypatch, capsys):
    def boom(config):
        raise RuntimeError("forced failure")

    monkeypatch.setattr(bench, "generate", boom)
    run = bench.suite_runs(SUITE)[0]
    row = bench.run_one(run)
    assert row["solved"] is False and row["timed_out"] is False
    assert row["k"] == "" and row["total_distance"] == ""
    assert "forced failure" in capsys.readouterr().err


def test_csv_columns_are_frozen():
    assert bench.CSV_COLUMNS == [
        "bay_layout", "warehouse_layout", "fill", "classes", "seed", "algo",
        "solved", "timed_out", "k", "total_distance", "nodes_evaluated",
        "preprocessing_s", "solve_s",
    ]
    rows = [
        {col: "" for col in bench.CSV_COLUMNS},
    ]
    out = io.StringIO()
    bench.write_results_csv(rows, out)
    header, blank, trailer = out.getvalue().split("\r\n")
    assert header == ",".join(bench.CSV_COLUMNS)
    assert blank == "," * (len(bench.CSV_COLUMNS) - 1)
    assert trailer == ""


def _row(seed, algo, solved=True, k="", distance="", layout="3x3"):
    return {
        "bay_layout": layout, "warehouse_layout": "2x2", "fill": 0.6,
        "classes": 5, "seed": seed, "algo": algo, "solved": solved,
        "timed_out": not solved, "k": k, "total_distance": distance,
        "nodes_evaluated": 1, "preprocessing_s": "0", "solve_s": "0",
    }


def test_aggregate_counts_agreement_and_gaps():
    rows = [
        _row(1, "astar", k=2, distance=7),
        _row(1, "exact", k=2, distance=2),
        _row(2, "astar", solved="True", k=0, distance=0),  # CSV string form
        _row(2, "exact", k=0, distance=0),
        _row(3, "astar", k=1, distance=3),
        _row(3, "exact", solved=False),
    ]
    summary = bench.aggregate(rows)
    assert summary["solved"]["3x3/2x2/0.6/5/astar"] == "3/3"
    assert summary["solved"]["3x3/2x2/0.6/5/exact"] == "2/3"
    assert summary["agreement"] == {
        "both_solved": 2, "same_k": 2, "same_distance": 1,
    }
    assert summary["relative_gaps"] == [(7 - 2) / 2]
    assert summary["mean_distance_per_move"]["astar"] == (7 + 0 + 3) / (2 + 0 + 1)
    assert summary["mean_distance_per_move"]["exact"] == 2 / 2
