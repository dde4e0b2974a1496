"""Instance and solution JSON: schema, readers, writers.

Instance files: {"meta": {seed, fill, classes, bay_layout, warehouse_layout,
generator}, "bays": [{I, J, T, G, access_sides, loads: [{i, j, t, g}]}]}
with 1-based cell indices.  Solution files: {"algo", "k", "total_distance",
"moves": [{from_lane, to_lane, from_access_point, to_access_point,
distance}], "stats", "assignments"} where assignments hold each bay's
direction grid as row strings.  Writers emit sorted keys so identical data
produces identical bytes.
"""

from __future__ import annotations

import json
from typing import IO

from .fixing import AccessAssignment, misplaced_count
from .model import SIDES, BaySpec, LaneConfiguration, Solution, WarehouseInstance


def _ordered_sides(sides) -> list[str]:
    return [s for s in SIDES if s in sides]


def instance_to_json(instance: WarehouseInstance) -> dict:
    bays = []
    for bay in instance.bays:
        loads = [
            {"i": i, "j": j, "t": t, "g": g}
            for (i, j, t), g in sorted(bay.occupancy.items())
        ]
        bays.append(
            {
                "I": bay.I,
                "J": bay.J,
                "T": bay.T,
                "G": bay.G,
                "access_sides": _ordered_sides(bay.access_sides),
                "loads": loads,
            }
        )
    return {"meta": dict(instance.meta), "bays": bays}


def instance_from_json(data: dict) -> WarehouseInstance:
    meta = data.get("meta", {})
    layout_label = meta.get("warehouse_layout")
    if not layout_label:
        raise ValueError("instance meta must carry warehouse_layout (e.g. '2x2')")
    rows, cols = parse_layout_label(layout_label)
    bays = []
    for entry in data["bays"]:
        occupancy = {
            (load["i"], load["j"], load["t"]): load["g"] for load in entry["loads"]
        }
        bays.append(
            BaySpec(
                I=entry["I"],
                J=entry["J"],
                T=entry["T"],
                G=entry["G"],
                occupancy=occupancy,
                access_sides=frozenset(entry["access_sides"]),
            )
        )
    return WarehouseInstance(
        bays=bays, warehouse_rows=rows, warehouse_cols=cols, meta=meta
    )


def parse_layout_label(label: str) -> tuple[int, int]:
    """'3x4' -> (3, 4); raises ValueError on anything else."""
    parts = str(label).lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"layout label {label!r} is not of the form RxC")
    rows, cols = (int(p) for p in parts)
    if rows < 1 or cols < 1:
        raise ValueError(f"layout label {label!r} must be positive")
    return rows, cols


def assignments_to_json(assignments: list[AccessAssignment]) -> list[dict]:
    return [
        {"bay": b, "rows": list(a.rows)} for b, a in enumerate(assignments)
    ]


def assignments_from_json(data: list[dict], instance: WarehouseInstance) -> list[AccessAssignment]:
    """Rebuild assignments; the misplaced count is recomputed when possible."""
    by_bay = {entry["bay"]: tuple(entry["rows"]) for entry in data}
    out = []
    for b, bay in enumerate(instance.bays):
        if b not in by_bay:
            raise ValueError(f"solution carries no assignment for bay {b}")
        assignment = AccessAssignment(rows=by_bay[b], misplaced=0)
        try:
            assignment = AccessAssignment(
                rows=assignment.rows,
                misplaced=misplaced_count(bay, assignment),
            )
        except ValueError:
            pass  # structurally invalid; replay will report it
        out.append(assignment)
    return out


def solution_to_json(solution: Solution, initial: LaneConfiguration) -> dict:
    """Serialize; the initial configuration supplies lane -> access point ids."""
    moves = [
        {
            "from_lane": m.from_lane,
            "to_lane": m.to_lane,
            "from_access_point": initial.lane(m.from_lane).access_point,
            "to_access_point": initial.lane(m.to_lane).access_point,
            "distance": m.distance,
        }
        for m in solution.moves
    ]
    stats = {
        "nodes_evaluated": solution.stats.nodes_evaluated,
        "wall_time": solution.stats.wall_time,
        "preprocessing_time": solution.stats.preprocessing_time,
        "optimal_moves": solution.stats.optimal_moves,
        "optimal_distance": solution.stats.optimal_distance,
    }
    data = {
        "algo": solution.algo,
        "k": solution.k,
        "total_distance": solution.total_distance,
        "moves": moves,
        "stats": stats,
    }
    if solution.assignments is not None:
        data["assignments"] = assignments_to_json(solution.assignments)
    return data


def dump(data: dict, fileobj: IO[str]) -> None:
    json.dump(data, fileobj, indent=2, sort_keys=True)
    fileobj.write("\n")


def write_instance(instance: WarehouseInstance, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        dump(instance_to_json(instance), f)


def read_instance(path) -> WarehouseInstance:
    with open(path, encoding="utf-8") as f:
        return instance_from_json(json.load(f))


def write_solution(solution: Solution, initial: LaneConfiguration, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        dump(solution_to_json(solution, initial), f)


def read_solution(path) -> dict:
    """Solutions are read as raw dicts so tampered files still reach replay."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict) or "moves" not in data:
        raise ValueError(f"{path} does not look like a solution file")
    return data
