import numpy as np
import pytest

import boardbatch as bb
from boardbatch.games import connect_four as c4

from oracles import connect4_distinct_positions


def _play(actions):
    state = bb.init("connect_four", bb.RngKey(1))
    for a in actions:
        state = bb.step(state, a)
    return state


def test_vertical_win():
    state = _play([0, 1, 0, 1, 0, 1, 0])
    assert state.terminated
    winner = [p for p in range(2) if state.player_to_role[p] == 0][0]
    assert state.rewards[winner] == 1.0
    assert state.rewards[1 - winner] == -1.0


def test_full_column_masked_and_illegal():
    state = _play([3, 3, 3, 3, 3, 3])
    assert not state.legal_action_mask[3]
    assert int(state.legal_action_mask.sum()) == 6
    with pytest.raises(bb.IllegalAction):
        bb.step(state, 3)


def test_diagonal_win():
    # role0 builds a / diagonal: (r5,c0),(r4,c1),(r3,c2),(r2,c3)
    state = _play([0, 1, 1, 2, 2, 3, 2, 3, 3, 6, 3])
    assert state.terminated
    winner = [p for p in range(2) if state.player_to_role[p] == 0][0]
    assert state.rewards[winner] == 1.0


def test_draw_on_full_board():
    # A 42-move game with no four-in-a-row anywhere (found by search).
    draw_moves = [6, 6, 5, 5, 1, 4, 1, 5, 5, 1, 2, 5, 5, 0, 1, 6, 6, 0, 0, 1, 4,
                  0, 4, 0, 3, 3, 1, 4, 0, 4, 2, 4, 6, 3, 6, 3, 3, 3, 2, 2, 2, 2]
    state = bb.init("connect_four", bb.RngKey(3))
    for a in draw_moves[:-1]:
        state = bb.step(state, a)
        assert not state.terminated
    state = bb.step(state, draw_moves[-1])
    assert state.terminated
    assert sum(state.core.heights) == 42
    assert np.all(state.rewards == 0.0)


def test_heights_never_decrease_and_cap_at_six():
    key = bb.RngKey(5)
    for seed in range(20):
        gkey = key.child(seed)
        state = bb.init("connect_four", gkey.child(0))
        prev = (0,) * 7
        t = 0
        while not state.terminated:
            t += 1
            legal = np.flatnonzero(state.legal_action_mask)
            a = int(legal[gkey.child(t).randint(len(legal))])
            state = bb.step(state, a)
            heights = state.core.heights
            assert all(h <= 6 for h in heights)
            assert all(h2 >= h1 for h1, h2 in zip(prev, heights))
            prev = heights


def _engine_distinct_positions(plies):
    frontier = {(c4._START.bb0, c4._START.bb1): c4._START}
    for _ in range(plies):
        nxt = {}
        for core in frontier.values():
            mask = core.mask
            action = 0
            while mask:
                if mask & 1:
                    child = c4._apply(core, action)
                    nxt[(child.bb0, child.bb1)] = child
                mask >>= 1
                action += 1
        frontier = nxt
    return len(frontier)


def test_enumeration_matches_oracle():
    # The spec example quotes 2275 for this count, but the independent BFS
    # oracle (and OEIS A090224) gives 1120; the oracle is authoritative.
    for plies in range(1, 5):
        oracle = len(connect4_distinct_positions(plies))
        assert _engine_distinct_positions(plies) == oracle
    assert _engine_distinct_positions(4) == 1120


def test_observation_gravity_orientation():
    init_state = bb.init("connect_four", bb.RngKey(0))
    state = bb.step(init_state, 3)
    obs = bb.observe(state, init_state.current_player)
    # the dropped disc rests on the bottom row (row index 5) of the mover plane
    assert obs[5, 3, 0] == 1.0
    assert obs[:5, 3, 0].sum() == 0.0
