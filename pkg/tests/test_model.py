import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import FakeDmat, make_config
from premarshal.model import (
    IllegalMove,
    LaneConfiguration,
    Move,
    Solution,
    SolveStats,
    VirtualLane,
    apply_move,
    blocking_count,
    blocking_of,
    census_of,
    legal_moves,
    non_increasing_prefix_len,
    state_blocking,
    state_key,
)

DMAT = FakeDmat()

contents_strategy = st.lists(st.integers(min_value=1, max_value=9), max_size=6)


def test_blocking_frozen_values():
    assert blocking_of([5, 3, 1]) == 0
    assert blocking_of([]) == 0
    assert blocking_of([2, 5, 1]) == 2
    # two lanes [1,3] and [4,2]: only the 3 in front of the 1 blocks
    assert blocking_of([1, 3]) + blocking_of([4, 2]) == 1


def test_prefix_len():
    assert non_increasing_prefix_len([]) == 0
    assert non_increasing_prefix_len([4]) == 1
    assert non_increasing_prefix_len([4, 4, 2, 3]) == 3
    assert non_increasing_prefix_len([1, 2, 3]) == 1


@given(contents_strategy)
def test_blocking_matches_rules_oracle(contents):
    assert blocking_of(contents) == oracles.blocking_by_rules(contents)


def test_lane_validation():
    with pytest.raises(ValueError):
        VirtualLane(lane_id=1, access_point=0, capacity=0)
    with pytest.raises(ValueError):
        VirtualLane(lane_id=1, access_point=0, capacity=1, contents=(1, 2))
    lane = VirtualLane(lane_id=1, access_point=3, capacity=2, contents=(4,))
    assert lane.front == 4 and lane.fill == 1
    assert not lane.is_full and not lane.is_empty


def test_config_build_rejects_bad_ids_and_groups():
    with pytest.raises(ValueError):
        LaneConfiguration.build(
            [VirtualLane(lane_id=2, access_point=0, capacity=1)], groups=3
        )
    with pytest.raises(ValueError):
        make_config([(2, (7,), 0)], groups=3)


def test_state_blocking_sums_lanes():
    config = make_config([(3, (2, 5, 1), 0), (3, (), 1), (2, (), 2)], groups=5)
    assert state_blocking(config) == 2
    assert config.blocking_total == 2
    assert not config.is_sorted


def test_legal_moves_frozen():
    single = make_config([(2, (1,), 0), (2, (), 1)], groups=1)
    assert len(legal_moves(single, DMAT)) == 1

    three_open = make_config([(2, (1,), 0), (2, (3,), 1), (2, (5,), 2)], groups=5)
    assert len(legal_moves(three_open, DMAT)) == 6

    # lane 1 is full, lane 3 is empty: only 1->2, 1->3, 2->3 remain
    config = make_config([(2, (1, 2), 0), (2, (3,), 1), (2, (), 2)], groups=3)
    moves = legal_moves(config, DMAT)
    assert [(m.from_lane, m.to_lane) for m in moves] == [(1, 2), (1, 3), (2, 3)]


def test_legal_moves_positions_and_order():
    config = make_config([(3, (4, 2), 0), (3, (1,), 5), (2, (), 9)], groups=4)
    moves = legal_moves(config, DMAT)
    pairs = [(m.from_lane, m.to_lane) for m in moves]
    assert pairs == sorted(pairs)
    first = moves[0]
    assert first.from_pos == 2 and first.to_pos == 2
    assert first.distance == DMAT.between(0, 5)


def test_apply_move_frozen():
    config = make_config([(2, (2, 5), 0), (2, (), 1)], groups=5)
    assert config.blocking_total == 1
    move = legal_moves(config, DMAT)[0]
    after = apply_move(config, move)
    assert after.lane(1).contents == (2,)
    assert after.lane(2).contents == (5,)
    assert after.blocking_total == 0
    assert after.group_census == config.group_census


def test_apply_move_rejects_stale_positions():
    config = make_config([(2, (1,), 0), (2, (), 1)], groups=1)
    bad = Move(from_lane=1, to_lane=2, from_pos=2, to_pos=1, distance=0)
    with pytest.raises(IllegalMove):
        apply_move(config, bad)
    with pytest.raises(IllegalMove):
        apply_move(config, Move(from_lane=2, to_lane=1, from_pos=1, to_pos=2, distance=0))


def test_state_key_distinguishes_lanes():
    a = make_config([(2, (1,), 0), (2, (2,), 1)], groups=2)
    b = make_config([(2, (2,), 0), (2, (1,), 1)], groups=2)
    assert state_key(a) != state_key(b)
    assert state_key(a) == state_key(make_config([(2, (1,), 0), (2, (2,), 1)], groups=2))


def test_apply_then_inverse_restores_key():
    config = make_config([(3, (3, 1), 0), (3, (2,), 1)], groups=3)
    key = state_key(config)
    fwd = next(m for m in legal_moves(config, DMAT) if (m.from_lane, m.to_lane) == (1, 2))
    mid = apply_move(config, fwd)
    back = next(m for m in legal_moves(mid, DMAT) if (m.from_lane, m.to_lane) == (2, 1))
    assert state_key(apply_move(mid, back)) == key


@given(
    st.lists(st.lists(st.integers(min_value=1, max_value=4), max_size=3), min_size=2, max_size=4),
    st.lists(st.integers(min_value=0, max_value=100), max_size=12),
)
def test_random_walk_conserves_census_and_no_holes(lanes_contents, picks):
    lanes = [(4, tuple(c), idx) for idx, c in enumerate(lanes_contents)]
    config = make_config(lanes, groups=4)
    census = config.group_census
    for pick in picks:
        moves = legal_moves(config, DMAT)
        if not moves:
            break
        config = apply_move(config, moves[pick % len(moves)])
        assert config.group_census == census
        assert census_of(config.lanes, config.groups) == census
        assert config.blocking_total == state_blocking(config)
        for lane in config.lanes:
            assert len(lane.contents) <= lane.capacity


def test_solution_consistency_checks():
    stats = SolveStats()
    move = Move(from_lane=1, to_lane=2, from_pos=1, to_pos=1, distance=4)
    sol = Solution(algo="astar", moves=(move,), k=1, total_distance=4, stats=stats)
    assert sol.k == 1
    with pytest.raises(ValueError):
        Solution(algo="astar", moves=(move,), k=2, total_distance=4, stats=stats)
    with pytest.raises(ValueError):
        Solution(algo="astar", moves=(move,), k=1, total_distance=5, stats=stats)
