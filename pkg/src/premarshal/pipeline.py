"""End-to-end orchestration: preprocessing, then one of the two solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import astar, exact, fixing
from .fixing import AccessAssignment, LaneBinding
from .layout import DistanceMatrix, GridLayout, all_pairs_distances, build_layout
from .model import Infeasible, LaneConfiguration, Solution, TimedOut, WarehouseInstance

ASSIGNMENT_CANDIDATES = 10


@dataclass
class Prepared:
    """Everything the solvers need, plus how long it took to build."""

    layout: GridLayout
    dmat: DistanceMatrix
    assignments: list[AccessAssignment]
    config: LaneConfiguration
    bindings: list[LaneBinding]
    preprocessing_time: float


def prepare(instance: WarehouseInstance) -> Prepared:
    """Access fixing, layout and the distance matrix for one instance."""
    started = time.perf_counter()
    layout = build_layout(instance)
    dmat = all_pairs_distances(layout)
    assignments = []
    for bay in instance.bays:
        candidates = fixing.optimal_assignments(bay, limit=ASSIGNMENT_CANDIDATES)
        assignments.append(fixing.select_assignment(candidates, bay))
    config, bindings = fixing.to_virtual_lanes(instance, assignments, layout)
    return Prepared(
        layout=layout,
        dmat=dmat,
        assignments=assignments,
        config=config,
        bindings=bindings,
        preprocessing_time=time.perf_counter() - started,
    )


def solve_instance(
    instance: WarehouseInstance,
    algo: str,
    timeout_s: float | None = None,
    depth_correction: bool = False,
    prepared: Prepared | None = None,
    ub_solution=None,
):
    """Solve with 'astar' or 'exact'; returns (result, prepared).

    The exact solver needs a move-optimal solution for its bounds; when
    ``ub_solution`` is absent, a standard A* run supplies it first.  The
    result is a Solution, TimedOut or Infeasible; solutions carry the
    selected assignments and the preprocessing time.
    """
    if prepared is None:
        prepared = prepare(instance)
    if algo == "astar":
        result = astar.solve_astar(
            prepared.config,
            prepared.dmat,
            timeout_s if timeout_s is not None else astar.DEFAULT_TIMEOUT_S,
            depth_correction,
        )
    elif algo == "exact":
        ub = ub_solution
        if ub is None:
            ub = astar.solve_astar(
                prepared.config, prepared.dmat, astar.DEFAULT_TIMEOUT_S, depth_correction
            )
            if not isinstance(ub, Solution):
                _attach(ub, prepared)
                return ub, prepared
        result = exact.solve_exact(
            prepared.config,
            prepared.dmat,
            ub,
            timeout_s if timeout_s is not None else exact.DEFAULT_TIMEOUT_S,
            depth_correction,
        )
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    _attach(result, prepared)
    return result, prepared


def _attach(result, prepared: Prepared) -> None:
    if isinstance(result, Solution):
        result.stats.preprocessing_time = prepared.preprocessing_time
        result.assignments = prepared.assignments
    elif isinstance(result, (TimedOut, Infeasible)) and result.stats is not None:
        result.stats.preprocessing_time = prepared.preprocessing_time
