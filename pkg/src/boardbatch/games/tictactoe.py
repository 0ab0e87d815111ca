"""Tic-tac-toe engine: 3x3 grid, 9 cell actions.

Also provides the vectorized batch kernel used as the fast path for large
batches; its results are bit-identical to the per-slot engine.
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec, EnvState, IllegalAction, mask_array
from ..rng import RngKey, child_states, child_states_at

_LINES = ((0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8), (0, 4, 8), (2, 4, 6))
_LINES_AT = tuple(tuple(line for line in _LINES if cell in line) for cell in range(9))
_FULL_MASK = (1 << 9) - 1
_LINES_ARR = np.array(_LINES, dtype=np.int64)


class Core:
    __slots__ = ("board", "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, board: bytes, role_to_move: int, terminal: bool, rewards, mask: int):
        self.board = board
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return self.board + bytes([self.role_to_move])


_EMPTY = Core(bytes(9), 0, False, (0.0, 0.0), _FULL_MASK)


def _init_core(key: RngKey) -> Core:
    return _EMPTY


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    mark = mover + 1
    board = bytearray(core.board)
    board[action] = mark
    win = any(board[i] == board[j] == board[k] == mark for i, j, k in _LINES_AT[action])
    board = bytes(board)
    if win:
        rewards = (1.0, -1.0) if mover == 0 else (-1.0, 1.0)
        return Core(board, 1 - mover, True, rewards, 0)
    if 0 not in board:
        return Core(board, 1 - mover, True, (0.0, 0.0), 0)
    return Core(board, 1 - mover, False, (0.0, 0.0), core.mask & ~(1 << action))


def _observe(core: Core, role: int) -> np.ndarray:
    cells = np.frombuffer(core.board, dtype=np.uint8).reshape(3, 3)
    mine = cells == role + 1
    theirs = cells == 2 - role
    return np.stack([mine, theirs], axis=-1).astype(np.float32)


def _render(core: Core) -> str:
    glyphs = ".XO"
    rows = []
    for r in range(3):
        rows.append("".join(glyphs[core.board[3 * r + c]] for c in range(3)))
    return "\n".join(rows)


class _Kernel:
    """Struct-of-arrays executor; mirrors the scalar engine exactly."""

    class V:
        __slots__ = (
            "boards", "role_to_move", "role_rewards",
            "current_player", "legal_action_mask", "rewards",
            "terminated", "truncated", "step_count", "player_to_role",
        )

    def _fresh(self, n: int, perm_swap: np.ndarray) -> "V":
        v = self.V()
        v.boards = np.zeros((n, 9), dtype=np.int8)
        v.role_to_move = np.zeros(n, dtype=np.int8)
        v.role_rewards = np.zeros((n, 2), dtype=np.float32)
        v.current_player = perm_swap.astype(np.int32)
        v.legal_action_mask = np.ones((n, 9), dtype=bool)
        v.rewards = np.zeros((n, 2), dtype=np.float32)
        v.terminated = np.zeros(n, dtype=bool)
        v.truncated = np.zeros(n, dtype=bool)
        v.step_count = np.zeros(n, dtype=np.int32)
        p2r = np.empty((n, 2), dtype=np.int8)
        p2r[:, 0] = perm_swap
        p2r[:, 1] = 1 - perm_swap
        v.player_to_role = p2r
        return v

    def init(self, gdef: GameDef, key: RngKey, n: int, limit: int) -> "V":
        slots = child_states(key.state, n)
        # Matches RngKey.child(0).permutation(2): Lehmer code = state % 2.
        swap = (child_states_at(slots, 0) % np.uint64(2)).astype(np.int8)
        return self._fresh(n, swap)

    def step(self, gdef: GameDef, v: "V", actions: np.ndarray, key: RngKey, limit: int) -> "V":
        n = v.boards.shape[0]
        slots = child_states(key.state, n)
        resets = v.terminated | v.truncated
        live = ~resets
        acts = actions.astype(np.int64)

        if live.any():
            bad = live & ((acts < 0) | (acts >= 9))
            safe = np.clip(acts, 0, 8)
            bad |= live & ~v.legal_action_mask[np.arange(n), safe]
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise IllegalAction(
                    f"slot {i}: illegal action {int(acts[i])} in {gdef.game_id}",
                    action=int(acts[i]),
                    slot=i,
                )

        out = self.V()
        rows = np.arange(n)
        boards = v.boards.copy()
        marks = (v.role_to_move + 1).astype(np.int8)
        boards[live, acts[live]] = marks[live]

        line_vals = boards[:, _LINES_ARR]                      # (n, 8, 3)
        win = (line_vals == marks[:, None, None]).all(axis=2).any(axis=1) & live
        filled = (boards != 0).all(axis=1) & live
        terminal = win | filled

        role_rewards = np.zeros((n, 2), dtype=np.float32)
        mover = v.role_to_move.astype(np.int64)
        role_rewards[rows[win], mover[win]] = 1.0
        role_rewards[rows[win], 1 - mover[win]] = -1.0

        step_count = v.step_count + 1
        truncated = live & ~terminal & (step_count >= limit)
        mask = (boards == 0) & ~(terminal | truncated)[:, None]

        out.boards = boards
        out.role_to_move = np.where(live, 1 - v.role_to_move, v.role_to_move).astype(np.int8)
        out.role_rewards = role_rewards
        out.terminated = terminal
        out.truncated = truncated
        out.step_count = step_count
        out.player_to_role = v.player_to_role.copy()
        out.legal_action_mask = mask

        if resets.any():
            swap = (child_states_at(slots[resets], 0) % np.uint64(2)).astype(np.int8)
            out.boards[resets] = 0
            out.role_to_move[resets] = 0
            out.role_rewards[resets] = 0.0
            out.terminated[resets] = False
            out.truncated[resets] = False
            out.step_count[resets] = 0
            p2r = out.player_to_role
            p2r[resets, 0] = swap
            p2r[resets, 1] = 1 - swap
            out.legal_action_mask[resets] = True

        # Player-indexed views derived from role-indexed data.
        p2r64 = out.player_to_role.astype(np.int64)
        out.rewards = out.role_rewards[rows[:, None], p2r64]
        out.current_player = p2r64[rows, out.role_to_move.astype(np.int64)].astype(np.int32)
        return out

    def state_at(self, gdef: GameDef, v: "V", i: int, limit: int) -> EnvState:
        terminal = bool(v.terminated[i])
        # Core masks track empty cells even on truncated slots, matching the
        # scalar engine; the exposed state mask is zeroed separately.
        mask_bits = 0 if terminal else int.from_bytes(
            np.packbits(v.boards[i] == 0, bitorder="little").tobytes(), "little"
        )
        core = Core(
            v.boards[i].astype(np.uint8).tobytes(),
            int(v.role_to_move[i]),
            terminal,
            (float(v.role_rewards[i, 0]), float(v.role_rewards[i, 1])),
            mask_bits,
        )
        rewards = v.rewards[i].copy()
        rewards.flags.writeable = False
        return EnvState(
            current_player=int(v.current_player[i]),
            legal_action_mask=mask_array(mask_bits, 9) if not (terminal or v.truncated[i]) else np.zeros(9, dtype=bool),
            rewards=rewards,
            terminated=terminal,
            truncated=bool(v.truncated[i]),
            step_count=int(v.step_count[i]),
            player_to_role=(int(v.player_to_role[i, 0]), int(v.player_to_role[i, 1])),
            core=core,
            game=gdef,
            max_steps=limit,
        )


GAME = GameDef(
    spec=GameSpec("tic_tac_toe", 2, (3, 3, 2), 9),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
    batch_kernel=_Kernel(),
)
