import numpy as np
import pytest

import boardbatch as bb
from boardbatch.games import othello as oth

from oracles import othello_moves

PASS = 64


def _board_lists(core):
    out = [[0] * 8 for _ in range(8)]
    for r in range(8):
        for c in range(8):
            bit = 1 << (r * 8 + c)
            if core.bb0 & bit:
                out[r][c] = 1
            elif core.bb1 & bit:
                out[r][c] = 2
    return out


def _core_from_lists(board, role_to_move, pass_count=0):
    bb0 = bb1 = 0
    for r in range(8):
        for c in range(8):
            if board[r][c] == 1:
                bb0 |= 1 << (r * 8 + c)
            elif board[r][c] == 2:
                bb1 |= 1 << (r * 8 + c)
    mine, theirs = (bb0, bb1) if role_to_move == 0 else (bb1, bb0)
    return oth.Core(bb0, bb1, pass_count, role_to_move, False, (0.0, 0.0),
                    oth._mask_for(mine, theirs))


def test_opening_has_four_placements():
    state = bb.init("othello", bb.RngKey(0))
    assert int(state.legal_action_mask.sum()) == 4
    assert not state.legal_action_mask[PASS]
    # each player's plane shows exactly the two starting discs
    for p in range(2):
        obs = bb.observe(state, p)
        assert obs[:, :, 0].sum() == 2.0
        assert obs[:, :, 1].sum() == 2.0


def test_masks_match_flip_oracle_along_random_games():
    key = bb.RngKey(11)
    for g in range(25):
        gkey = key.child(g)
        state = bb.init("othello", gkey.child(0))
        t = 0
        while not state.terminated:
            core = state.core
            oracle = othello_moves(_board_lists(core), core.role_to_move + 1)
            expected = {r * 8 + c for (r, c) in oracle}
            engine = set(np.flatnonzero(state.legal_action_mask))
            if expected:
                assert engine == expected
            else:
                assert engine == {PASS}
            t += 1
            legal = sorted(engine)
            a = legal[gkey.child(t).randint(len(legal))]
            state = bb.step(state, a)


def test_flips_match_oracle():
    key = bb.RngKey(21)
    state = bb.init("othello", key.child(0))
    for t in range(1, 30):
        if state.terminated:
            break
        core = state.core
        board = _board_lists(core)
        mover = core.role_to_move + 1
        oracle = othello_moves(board, mover)
        legal = np.flatnonzero(state.legal_action_mask)
        a = int(legal[key.child(t).randint(len(legal))])
        nxt = bb.step(state, a)
        if a != PASS:
            r, c = divmod(a, 8)
            expected = [row[:] for row in board]
            expected[r][c] = mover
            for (fr, fc) in oracle[(r, c)]:
                expected[fr][fc] = mover
            assert _board_lists(nxt.core) == expected
        state = nxt


def test_every_placement_flips_and_discs_nondecreasing():
    key = bb.RngKey(31)
    for g in range(10):
        gkey = key.child(g)
        state = bb.init("othello", gkey.child(0))
        t = 0
        prev_discs = 4
        while not state.terminated:
            t += 1
            legal = np.flatnonzero(state.legal_action_mask)
            a = int(legal[gkey.child(t).randint(len(legal))])
            before = bin(state.core.bb0 | state.core.bb1).count("1")
            state = bb.step(state, a)
            after = bin(state.core.bb0 | state.core.bb1).count("1")
            assert after >= before >= prev_discs
            if a != PASS:
                mover_bb = state.core.bb0 if state.core.role_to_move == 1 else state.core.bb1
                assert after == before + 1
            prev_discs = before


def test_pass_only_when_no_placement():
    # Pass is never offered alongside placements.
    key = bb.RngKey(41)
    for g in range(10):
        gkey = key.child(g)
        state = bb.init("othello", gkey.child(0))
        t = 0
        while not state.terminated:
            mask = state.legal_action_mask
            if mask[PASS]:
                assert int(mask.sum()) == 1
            t += 1
            legal = np.flatnonzero(mask)
            state = bb.step(state, int(legal[gkey.child(t).randint(len(legal))]))


def test_double_pass_majority_wins():
    # One empty corner on an otherwise all-black board: neither side can
    # flip anything, so the game ends by consecutive passes and black's
    # majority decides.
    board = [[1] * 8 for _ in range(8)]
    board[7][7] = 0
    core = _core_from_lists(board, 0)
    assert core.mask == 1 << PASS
    after_one = oth._apply(core, PASS)
    assert not after_one.terminal
    assert after_one.mask == 1 << PASS
    final = oth._apply(after_one, PASS)
    assert final.terminal
    assert final.rewards == (1.0, -1.0)


def test_equal_discs_draw():
    board = [[1] * 8 for _ in range(4)] + [[2] * 8 for _ in range(4)]
    core = _core_from_lists(board, 0)
    final = oth._apply(oth._apply(core, PASS), PASS)
    assert final.terminal
    assert final.rewards == (0.0, 0.0)


def test_pass_while_placement_exists_is_illegal():
    state = bb.init("othello", bb.RngKey(2))
    with pytest.raises(bb.IllegalAction):
        bb.step(state, PASS)
