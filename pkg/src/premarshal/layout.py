"""Global tile layout and the all-pairs access-point distance matrix.

Geometry convention (this artifact's, documented so distances are
reproducible): bays are placed on a ``warehouse_rows x warehouse_cols``
grid with a one-tile aisle ring around every bay; aisles between adjacent
bays are shared (width 1).  With uniform I x J bays the footprint is
``warehouse_cols*(I+1)+1`` by ``warehouse_rows*(J+1)+1`` tiles.  Every
boundary stack of a bay gets one access point per allowed side, placed on
the orthogonally adjacent aisle tile.  Access points of facing bays may
share a tile (distance 0).

Access-point ids are 0-based and enumerated bay by bay, sides in N, E, S, W
order, stacks by ascending index within a side.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass

from .model import WarehouseInstance


class LayoutError(Exception):
    """The instance cannot be laid out (overlap, or broken aisle graph)."""


class DisconnectedError(LayoutError):
    """Some access-point pairs are mutually unreachable over the aisles."""

    def __init__(self, pairs):
        self.pairs = pairs
        preview = ", ".join(f"{p}-{q}" for p, q in pairs[:5])
        super().__init__(f"{len(pairs)} unreachable access-point pairs ({preview} ...)")


@dataclass(frozen=True)
class AccessPoint:
    point_id: int
    tile: tuple[int, int]
    bay: int
    stack: tuple[int, int]
    side: str


@dataclass
class GridLayout:
    width: int
    length: int
    aisles: frozenset[tuple[int, int]]
    storage: dict[tuple[int, int], tuple[int, int, int]]
    access_points: list[AccessPoint]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of shortest aisle distances between access points."""

    n: int
    d: tuple[tuple[int, ...], ...]

    def between(self, p: int, q: int) -> int:
        return self.d[p][q]


def build_layout(instance: WarehouseInstance) -> GridLayout:
    """Place the bays and derive aisle tiles and access points."""
    sizes = {(bay.I, bay.J) for bay in instance.bays}
    if len(sizes) > 1:
        raise LayoutError("bays of mixed footprint cannot share the bay grid")
    I, J = sizes.pop()
    rows, cols = instance.warehouse_rows, instance.warehouse_cols
    width = cols * (I + 1) + 1
    length = rows * (J + 1) + 1

    storage: dict[tuple[int, int], tuple[int, int, int]] = {}
    for b, bay in enumerate(instance.bays):
        r, c = divmod(b, cols)
        for i in range(1, I + 1):
            for j in range(1, J + 1):
                tile = (c * (I + 1) + i, r * (J + 1) + j)
                if tile in storage:
                    raise LayoutError(f"bays overlap at tile {tile}")
                storage[tile] = (b, i, j)

    aisles = frozenset(
        (x, y) for x in range(width) for y in range(length) if (x, y) not in storage
    )

    access_points: list[AccessPoint] = []
    for b, bay in enumerate(instance.bays):
        r, c = divmod(b, cols)
        x0, y0 = c * (I + 1), r * (J + 1)
        for side in ("N", "E", "S", "W"):
            if side not in bay.access_sides:
                continue
            if side == "N":
                spots = [((i, 1), (x0 + i, y0)) for i in range(1, I + 1)]
            elif side == "E":
                spots = [((I, j), (x0 + I + 1, y0 + j)) for j in range(1, J + 1)]
            elif side == "S":
                spots = [((i, J), (x0 + i, y0 + J + 1)) for i in range(1, I + 1)]
            else:
                spots = [((1, j), (x0, y0 + j)) for j in range(1, J + 1)]
            for stack, tile in spots:
                access_points.append(AccessPoint(len(access_points), tile, b, stack, side))

    layout = GridLayout(width, length, aisles, storage, access_points)
    _check_connected(layout)
    return layout


def _check_connected(layout: GridLayout) -> None:
    if not layout.aisles:
        raise LayoutError("layout has no aisle tiles")
    start = next(iter(layout.aisles))
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for nxt in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nxt in layout.aisles and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if len(seen) != len(layout.aisles):
        raise LayoutError("aisle tiles do not form a single connected component")


def _bfs(layout: GridLayout, source: tuple[int, int]) -> dict[tuple[int, int], int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        tile = queue.popleft()
        base = dist[tile]
        x, y = tile
        for nxt in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nxt in layout.aisles and nxt not in dist:
                dist[nxt] = base + 1
                queue.append(nxt)
    return dist


def all_pairs_distances(layout: GridLayout) -> DistanceMatrix:
    """Shortest 4-connected paths over aisle tiles between all access points.

    Storage tiles are never traversed; shortcuts through storage space are
    deliberately not considered.
    """
    points = layout.access_points
    n = len(points)
    tiles = sorted({p.tile for p in points})
    by_tile = {}
    for tile in tiles:
        by_tile[tile] = _bfs(layout, tile)

    unreachable = []
    rows = []
    for p in points:
        dist = by_tile[p.tile]
        row = []
        for q in points:
            if q.tile in dist:
                row.append(dist[q.tile])
            else:
                row.append(-1)
                if p.point_id < q.point_id:
                    unreachable.append((p.point_id, q.point_id))
        rows.append(tuple(row))
    if unreachable:
        raise DisconnectedError(unreachable)
    return DistanceMatrix(n=n, d=tuple(rows))


def write_distances_csv(matrix: DistanceMatrix, fileobj) -> None:
    """Dump the matrix with access-point ids as row/column headers."""
    writer = csv.writer(fileobj)
    writer.writerow(["ap"] + list(range(matrix.n)))
    for p in range(matrix.n):
        writer.writerow([p] + list(matrix.d[p]))
