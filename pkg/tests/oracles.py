"""Independent reference implementations used to freeze expected test values.

Everything here is deliberately naive: straight simulations and exhaustive
enumerations with no shared code or data structures from the package under
test (only plain tuples/dicts in, numbers out).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def blocking_by_rules(contents):
    """Count blocking loads in a lane by the forward propagation rules.

    ``contents`` is deep-to-front, position 1 first.  A load is blocking when
    it sits in front of a lower-group load, or in front of a load that is
    itself blocking; position 1 is never blocking; empties are never blocking.
    """
    flags = []
    for t, g in enumerate(contents):
        if g is None:
            flags.append(False)
        elif t == 0:
            flags.append(False)
        else:
            behind = contents[t - 1]
            flags.append(flags[t - 1] or (behind is not None and g > behind))
    return sum(flags)


def floyd_warshall(n, edges):
    """All-pairs shortest paths over unit-weight undirected edges."""
    inf = math.inf
    d = [[0 if a == b else inf for b in range(n)] for a in range(n)]
    for a, b in edges:
        d[a][b] = d[b][a] = 1
    for m in range(n):
        dm = d[m]
        for a in range(n):
            dam = d[a][m]
            if dam == inf:
                continue
            da = d[a]
            for b in range(n):
                alt = dam + dm[b]
                if alt < da[b]:
                    da[b] = alt
    return d


def likelihood_by_sum(p_bar):
    """Literal mean of 1 - p/p_bar over p = 1..p_bar, as an exact fraction."""
    total = sum(Fraction(p_bar - p, p_bar) for p in range(1, p_bar + 1))
    return total / p_bar


# --- exhaustive access-fixing oracles -------------------------------------

def _segment_cells(side, line, count, I, J):
    # deep-to-front cell lists, mirroring nothing: rederived from the lane
    # definition (front cell touches the boundary on `side`).
    if side == "W":
        return [(count - d, line) for d in range(count)]
    if side == "E":
        return [(I - count + 1 + d, line) for d in range(count)]
    if side == "N":
        return [(line, count - d) for d in range(count)]
    return [(line, J - count + 1 + d) for d in range(count)]


def _lane_ok(occ, cells):
    """Loads must form a contiguous run at the deep end (no holes)."""
    seen_empty = False
    for cell in cells:  # deep to front
        filled = cell in occ
        if filled and seen_empty:
            return False  # occupied in front of an empty slot: hole behind it
        if not filled:
            seen_empty = True
    return True


def enumerate_fixings(I, J, occ, sides):
    """Yield (misplaced, lanes) for every valid hole-free lane partition.

    Partitions are enumerated structurally: each row j contributes a west
    prefix of length a and an east suffix of length e (a + e <= I); whatever
    column cells remain must decompose into a north prefix plus a south
    suffix.  Every candidate lane is checked for hole-freeness and side
    permission; scoring uses blocking_by_rules.
    """
    row_opts = []
    for _j in range(1, J + 1):
        opts = [(a, e) for a in range(I + 1) for e in range(I + 1 - a)]
        row_opts.append(opts)

    for combo in itertools.product(*row_opts):
        vertical = {}  # column -> sorted list of rows left to vertical lanes
        ok = True
        lanes = []
        for j, (a, e) in enumerate(combo, start=1):
            if a and ("W" not in sides):
                ok = False
                break
            if e and ("E" not in sides):
                ok = False
                break
            if a:
                cells = _segment_cells("W", j, a, I, J)
                if not _lane_ok(occ, cells):
                    ok = False
                    break
                lanes.append(cells)
            if e:
                cells = _segment_cells("E", j, e, I, J)
                if not _lane_ok(occ, cells):
                    ok = False
                    break
                lanes.append(cells)
            for i in range(a + 1, I - e + 1):
                vertical.setdefault(i, []).append(j)
        if not ok:
            continue

        col_splits = []
        for i in range(1, I + 1):
            rows = vertical.get(i, [])
            if not rows:
                col_splits.append([(0, 0)])
                continue
            splits = []
            for north in range(len(rows) + 1):
                n_rows, s_rows = rows[:north], rows[north:]
                # north part must be a prefix 1..n, south a suffix ..J
                if n_rows and n_rows != list(range(1, north + 1)):
                    continue
                if s_rows and s_rows != list(range(J - len(s_rows) + 1, J + 1)):
                    continue
                n_cells = _segment_cells("N", i, len(n_rows), I, J) if n_rows else None
                s_cells = _segment_cells("S", i, len(s_rows), I, J) if s_rows else None
                if n_cells and (("N" not in sides) or not _lane_ok(occ, n_cells)):
                    continue
                if s_cells and (("S" not in sides) or not _lane_ok(occ, s_cells)):
                    continue
                splits.append((len(n_rows), len(s_rows)))
            if not splits:
                break
            col_splits.append(splits)
        if len(col_splits) != I:
            continue

        for split_combo in itertools.product(*col_splits):
            all_lanes = list(lanes)
            for i, (n_len, s_len) in enumerate(split_combo, start=1):
                if n_len:
                    all_lanes.append(_segment_cells("N", i, n_len, I, J))
                if s_len:
                    all_lanes.append(_segment_cells("S", i, s_len, I, J))
            score = 0
            for cells in all_lanes:
                contents = [occ.get(c) for c in cells]
                score += blocking_by_rules(contents)
            yield score, all_lanes


def best_fixing_score(I, J, occ, sides=frozenset("NESW")):
    """Minimum misplaced count over all valid partitions, or None."""
    best = None
    for score, _lanes in enumerate_fixings(I, J, occ, sides):
        if best is None or score < best:
            best = score
            if best == 0:
                break
    return best


def brute_fixings_by_direction_grid(I, J, occ, sides=frozenset("NESW")):
    """Fully independent cross-check: try all 4^(I*J) direction grids.

    Validity is judged from scratch: same-direction runs per row/column must
    be anchored at their boundary, cover every cell, and be hole-free.  Only
    usable for tiny grids.
    """
    cells = [(i, j) for j in range(1, J + 1) for i in range(1, I + 1)]
    best = None
    for dirs in itertools.product("NESW", repeat=len(cells)):
        grid = dict(zip(cells, dirs))
        if any(grid[c] not in sides for c in cells):
            continue
        lanes = []
        valid = True
        for j in range(1, J + 1):
            w = [i for i in range(1, I + 1) if grid[(i, j)] == "W"]
            e = [i for i in range(1, I + 1) if grid[(i, j)] == "E"]
            if w != list(range(1, len(w) + 1)):
                valid = False
                break
            if e != list(range(I - len(e) + 1, I + 1)):
                valid = False
                break
            if w:
                lanes.append(_segment_cells("W", j, len(w), I, J))
            if e:
                lanes.append(_segment_cells("E", j, len(e), I, J))
        if not valid:
            continue
        for i in range(1, I + 1):
            n = [j for j in range(1, J + 1) if grid[(i, j)] == "N"]
            s = [j for j in range(1, J + 1) if grid[(i, j)] == "S"]
            if n != list(range(1, len(n) + 1)):
                valid = False
                break
            if s != list(range(J - len(s) + 1, J + 1)):
                valid = False
                break
            if n:
                lanes.append(_segment_cells("N", i, len(n), I, J))
            if s:
                lanes.append(_segment_cells("S", i, len(s), I, J))
        if not valid:
            continue
        if any(not _lane_ok(occ, cells_) for cells_ in lanes):
            continue
        score = sum(blocking_by_rules([occ.get(c) for c in cells_]) for cells_ in lanes)
        if best is None or score < best:
            best = score
    return best


# --- plain search oracles ---------------------------------------------------

def plain_optimum(lanes, distance, max_k):
    """Lexicographic (moves, distance) optimum by unpruned depth-first search.

    ``lanes``: list of (capacity, contents tuple deep-to-front);
    ``distance``: function (source index, target index) -> int.
    Exponential; only for the tiniest states.
    """
    def sorted_all(state):
        return all(blocking_by_rules(c) == 0 for _cap, c in state)

    def walk(state, depth, dist, best):
        if sorted_all(state):
            if best is None or (depth, dist) < best:
                best = (depth, dist)
            return best
        if depth == max_k:
            return best
        for s, (scap, sc) in enumerate(state):
            if not sc:
                continue
            for t, (tcap, tc) in enumerate(state):
                if s == t or len(tc) >= tcap:
                    continue
                nxt = list(state)
                nxt[s] = (scap, sc[:-1])
                nxt[t] = (tcap, tc + (sc[-1],))
                best = walk(tuple(nxt), depth + 1, dist + distance(s, t), best)
        return best

    state = tuple((cap, tuple(contents)) for cap, contents in lanes)
    return walk(state, 0, 0, None)


def staged_optimum(lanes, distance, k_bar, c_ub):
    """Min distance over plans of exactly k_bar moves, no relayed loads.

    Mirrors the staged model semantics: a load placed at stage k may not be
    the load removed at stage k + 1; the final state must be fully sorted and
    the total distance must not exceed c_ub.  Returns None when no plan
    qualifies.
    """
    def walk(state, stage, dist, last_target):
        if stage == k_bar:
            ok = all(blocking_by_rules(c) == 0 for _cap, c in state)
            return dist if ok and dist <= c_ub else None
        best = None
        for s, (scap, sc) in enumerate(state):
            if not sc or s == last_target:
                continue
            for t, (tcap, tc) in enumerate(state):
                if s == t or len(tc) >= tcap:
                    continue
                nxt = list(state)
                nxt[s] = (scap, sc[:-1])
                nxt[t] = (tcap, tc + (sc[-1],))
                got = walk(tuple(nxt), stage + 1, dist + distance(s, t), t)
                if got is not None and (best is None or got < best):
                    best = got
        return best

    state = tuple((cap, tuple(contents)) for cap, contents in lanes)
    return walk(state, 0, 0, None)
