"""Independent validation: a move-plan replayer and a brute-force oracle.

Neither function shares code with the solvers beyond the core move
semantics, so they can serve as differential-test references.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fixing import AccessAssignment, to_virtual_lanes
from .layout import all_pairs_distances, build_layout
from .model import Solution, WarehouseInstance, apply_move, legal_moves, state_key


class NoSolutionWithin(Exception):
    """The brute-force oracle exhausted its depth budget."""

    def __init__(self, max_k: int):
        super().__init__(f"no solution within {max_k} moves")
        self.max_k = max_k


@dataclass
class ValidationReport:
    """Outcome of replaying a claimed solution; empty violations = valid."""

    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def flag(self, code: str, detail: str, move_index: int | None = None) -> None:
        entry: dict = {"code": code, "detail": detail}
        if move_index is not None:
            entry["move_index"] = move_index
        self.violations.append(entry)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def _solution_fields(solution) -> tuple[int, int, list[dict]]:
    """Accept a Solution or its JSON dict; return claimed k, distance, moves."""
    if isinstance(solution, Solution):
        moves = [
            {
                "from_lane": m.from_lane,
                "to_lane": m.to_lane,
                "distance": m.distance,
            }
            for m in solution.moves
        ]
        return solution.k, solution.total_distance, moves
    return (
        int(solution["k"]),
        int(solution["total_distance"]),
        list(solution["moves"]),
    )


def replay(
    instance: WarehouseInstance,
    assignments: list[AccessAssignment],
    solution,
    depth_correction: bool = False,
) -> ValidationReport:
    """Re-derive lanes, apply each claimed move, and audit every number.

    ``solution`` may be a Solution object or the parsed solution JSON;
    violations become report entries, never exceptions.
    """
    report = ValidationReport()
    try:
        layout = build_layout(instance)
        dmat = all_pairs_distances(layout)
        config, bindings = to_virtual_lanes(instance, assignments, layout)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        report.flag("setup", f"could not rebuild lanes: {exc}")
        return report
    points = {b.lane_id: b.access_point for b in bindings}

    claimed_k, claimed_total, claimed_moves = _solution_fields(solution)
    total = 0
    for idx, entry in enumerate(claimed_moves):
        legal = {
            (m.from_lane, m.to_lane): m
            for m in legal_moves(config, dmat, depth_correction)
        }
        pair = (entry["from_lane"], entry["to_lane"])
        move = legal.get(pair)
        if move is None:
            report.flag(
                "illegal-move",
                f"no legal move from lane {pair[0]} to lane {pair[1]}",
                idx,
            )
            return report  # the rest of the plan is not replayable
        if entry.get("distance") != move.distance:
            report.flag(
                "distance-mismatch",
                f"claimed {entry.get('distance')}, recomputed {move.distance}",
                idx,
            )
        for side, lane_key in (("from", pair[0]), ("to", pair[1])):
            claimed_point = entry.get(f"{side}_access_point")
            if claimed_point is not None and claimed_point != points[lane_key]:
                report.flag(
                    "access-point-mismatch",
                    f"{side} lane {lane_key} uses point {points[lane_key]}, "
                    f"claimed {claimed_point}",
                    idx,
                )
        total += move.distance
        config = apply_move(config, move)

    if config.blocking_total != 0:
        report.flag("not-sorted", f"{config.blocking_total} blocking loads remain")
    if claimed_k != len(claimed_moves):
        report.flag("k-mismatch", f"claimed k={claimed_k} for {len(claimed_moves)} moves")
    if claimed_total != total:
        report.flag("total-mismatch", f"claimed {claimed_total}, recomputed {total}")
    return report


def brute_force_optimum(
    config,
    dmat,
    max_k: int,
    depth_correction: bool = False,
) -> tuple[int, int]:
    """Least move count k* and cheapest distance among k*-move plans.

    Iterative-deepening DFS over all legal move sequences.  The only pruning
    is the depth budget and skipping states already seen in this iteration
    at equal-or-worse (moves, distance) — revisiting such a state cannot
    produce anything new.  Raises NoSolutionWithin past the budget.
    """
    for depth in range(max_k + 1):
        best: list[int | None] = [None]
        memo: dict[tuple, list[tuple[int, int]]] = {}

        def dfs(cfg, g: int, dist: int) -> None:
            if cfg.blocking_total == 0:
                if best[0] is None or dist < best[0]:
                    best[0] = dist
                return
            if g == depth:
                return
            key = state_key(cfg)
            seen = memo.setdefault(key, [])
            for sg, sd in seen:
                if sg <= g and sd <= dist:
                    return
            seen[:] = [(sg, sd) for sg, sd in seen if not (g <= sg and dist <= sd)]
            seen.append((g, dist))
            for move in legal_moves(cfg, dmat, depth_correction):
                dfs(apply_move(cfg, move), g + 1, dist + move.distance)

        dfs(config, 0, 0)
        if best[0] is not None:
            return depth, best[0]
    raise NoSolutionWithin(max_k)
