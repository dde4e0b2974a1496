"""Seeded instance generator over the benchmark configuration grid.

Occupancy is built per bay by boundary-anchored lane growth: every allowed
side contributes one frontier per row or column, and each step claims the
next inward cell of a uniformly random still-extendable frontier.  Growth
can finish in a shape no hole-free assignment covers (frontiers of different
sides can interleave), so each bay is checked with the access-fixing search
and regrown from a derived sub-seed when the check fails or growth
deadlocks.

Priority groups are drawn only after a bay's shape is final, in canonical
cell order, so two configs differing only in the group count produce
identical occupied positions for the same seed.  The RNG is the named
mt19937 generator (Python's random.Random), recorded in the metadata.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .fixing import has_hole_free_assignment
from .model import SIDES, BaySpec, WarehouseInstance

FILLS = (0.40, 0.60, 0.80, 0.90)
GROUP_COUNTS = (5, 10)
# Populated cells of the benchmark grid: square bay size -> allowed square
# warehouse side lengths.
WAREHOUSE_RANGE = {3: range(2, 13), 4: range(2, 9), 5: range(2, 7), 6: range(2, 7)}
MAX_BAY_RETRIES = 100
GENERATOR_NAME = "mt19937"


class GenerationFailed(Exception):
    """A bay could not be grown into an assignable shape within the retry budget."""


@dataclass(frozen=True)
class GenConfig:
    """One generator configuration; restricted to the benchmark grid by default."""

    bay: tuple[int, int]
    warehouse: tuple[int, int]
    fill: float
    groups: int
    seed: int
    access_sides: frozenset[str] = frozenset(SIDES)
    tiers: int = 1
    unrestricted: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "access_sides", frozenset(self.access_sides))
        bi, bj = self.bay
        wr, wc = self.warehouse
        if min(bi, bj, wr, wc) < 1:
            raise ValueError("bay and warehouse dimensions must be positive")
        if not 0.0 <= self.fill <= 1.0:
            raise ValueError("fill must lie in [0, 1]")
        if self.groups < 1:
            raise ValueError("need at least one priority group")
        if self.tiers != 1:
            raise ValueError("only single-tier instances can be generated")
        if not self.access_sides or not self.access_sides <= set(SIDES):
            raise ValueError("access_sides must be a non-empty subset of NESW")
        if self.unrestricted:
            return
        if bi != bj or bi not in WAREHOUSE_RANGE:
            raise ValueError(f"bay layout {bi}x{bj} outside the benchmark grid")
        if wr != wc or wr not in WAREHOUSE_RANGE[bi]:
            raise ValueError(
                f"warehouse layout {wr}x{wc} not paired with {bi}x{bj} bays"
            )
        if not any(math.isclose(self.fill, f) for f in FILLS):
            raise ValueError(f"fill {self.fill} not one of {FILLS}")
        if self.groups not in GROUP_COUNTS:
            raise ValueError(f"group count {self.groups} not one of {GROUP_COUNTS}")
        if self.access_sides != set(SIDES):
            raise ValueError("benchmark instances use all four access sides")

    @property
    def bay_label(self) -> str:
        return f"{self.bay[0]}x{self.bay[1]}"

    @property
    def warehouse_label(self) -> str:
        return f"{self.warehouse[0]}x{self.warehouse[1]}"


def slot_count(config: GenConfig) -> int:
    bi, bj = config.bay
    wr, wc = config.warehouse
    return bi * bj * config.tiers * wr * wc


def target_loads(fill: float, slots: int) -> int:
    """Half-up rounding, spelled out because round() rounds half to even."""
    return math.floor(fill * slots + 0.5)


@dataclass
class _Frontier:
    side: str
    line: int  # row for E/W, column for N/S
    depth: int = 0

    def limit(self, I: int, J: int) -> int:
        return J if self.side in ("N", "S") else I

    def next_cell(self, I: int, J: int) -> tuple[int, int]:
        d = self.depth
        if self.side == "N":
            return (self.line, d + 1)
        if self.side == "S":
            return (self.line, J - d)
        if self.side == "E":
            return (I - d, self.line)
        return (d + 1, self.line)


def _grow(rng: random.Random, I, J, sides, target) -> set[tuple[int, int]] | None:
    """One growth run; None when it deadlocks before reaching the target."""
    frontiers: list[_Frontier] = []
    for side in SIDES:  # fixed N, E, S, W order keeps runs reproducible
        if side not in sides:
            continue
        lines = range(1, I + 1) if side in ("N", "S") else range(1, J + 1)
        frontiers.extend(_Frontier(side, line) for line in lines)
    occupied: set[tuple[int, int]] = set()
    while len(occupied) < target:
        extendable = [
            f
            for f in frontiers
            if f.depth < f.limit(I, J) and f.next_cell(I, J) not in occupied
        ]
        if not extendable:
            return None
        chosen = extendable[rng.randrange(len(extendable))]
        occupied.add(chosen.next_cell(I, J))
        chosen.depth += 1
    return occupied


def _generate_bay(bay_seed: int, I, J, sides, groups, target) -> BaySpec:
    for attempt in range(MAX_BAY_RETRIES):
        rng = random.Random(bay_seed + attempt)
        cells = _grow(rng, I, J, sides, target)
        if cells is None:
            continue
        # Groups are drawn after the shape is settled, in canonical order,
        # so occupied positions do not depend on the group count.
        occupancy = {
            (i, j, 1): rng.randint(1, groups) for (i, j) in sorted(cells)
        }
        bay = BaySpec(I=I, J=J, T=1, G=groups, occupancy=occupancy, access_sides=sides)
        if has_hole_free_assignment(bay):
            return bay
    raise GenerationFailed(
        f"no assignable {I}x{J} bay with {target} loads after "
        f"{MAX_BAY_RETRIES} attempts (seed {bay_seed})"
    )


def generate(config: GenConfig) -> WarehouseInstance:
    """Deterministic instance for the config; identical seeds, identical bytes."""
    I, J = config.bay
    rows, cols = config.warehouse
    target = target_loads(config.fill, I * J)
    main = random.Random(config.seed)
    bays = []
    for _ in range(rows * cols):
        bay_seed = main.getrandbits(64)
        bays.append(
            _generate_bay(bay_seed, I, J, config.access_sides, config.groups, target)
        )
    meta = {
        "seed": config.seed,
        "fill": config.fill,
        "classes": config.groups,
        "bay_layout": config.bay_label,
        "warehouse_layout": config.warehouse_label,
        "generator": GENERATOR_NAME,
    }
    return WarehouseInstance(
        bays=bays, warehouse_rows=rows, warehouse_cols=cols, meta=meta
    )
