"""Hex engine: 11x11 rhombus, 121 cell actions plus swap (121).

Role 0 connects top to bottom, role 1 left to right. The swap action is
legal only on the second turn and mirrors the first stone across the main
diagonal while recoloring it (pie rule).
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

N = 11
_CELLS = N * N
_SWAP = _CELLS
_FULL = (1 << _CELLS) - 1

_COL0 = sum(1 << (r * N) for r in range(N))
_COL_LAST = sum(1 << (r * N + N - 1) for r in range(N))
_ROW0 = (1 << N) - 1
_ROW_LAST = _ROW0 << ((N - 1) * N)


def _neighbors(x: int) -> int:
    """Union of hex-adjacent cells of a cell set."""
    out = x >> N                      # (r-1, c)
    out |= (x & ~_COL_LAST) >> (N - 1)  # (r-1, c+1)
    out |= (x & ~_COL0) >> 1          # (r, c-1)
    out |= (x & ~_COL_LAST) << 1      # (r, c+1)
    out |= (x & ~_COL0) << (N - 1)    # (r+1, c-1)
    out |= x << N                     # (r+1, c)
    return out & _FULL


def _connected(stones: int, start_edge: int, goal_edge: int) -> bool:
    frontier = stones & start_edge
    if not frontier:
        return False
    while True:
        grown = (frontier | _neighbors(frontier)) & stones
        if grown == frontier:
            return False
        if grown & goal_edge:
            return True
        frontier = grown


class Core:
    __slots__ = ("bb0", "bb1", "move_number", "swapped", "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, bb0, bb1, move_number, swapped, role_to_move, terminal, rewards, mask):
        self.bb0 = bb0
        self.bb1 = bb1
        self.move_number = move_number
        self.swapped = swapped
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return (
            self.bb0.to_bytes(16, "little")
            + self.bb1.to_bytes(16, "little")
            + bytes([self.role_to_move, self.move_number & 0xFF, self.swapped])
        )


_START = Core(0, 0, 0, False, 0, False, (0.0, 0.0), _FULL)


def _init_core(key: RngKey) -> Core:
    return _START


def _placement_mask(bb0: int, bb1: int, move_number: int) -> int:
    mask = _FULL & ~(bb0 | bb1)
    if move_number == 1:
        mask |= 1 << _SWAP
    return mask


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    move_number = core.move_number + 1
    if action == _SWAP:
        idx = core.bb0.bit_length() - 1
        r, c = divmod(idx, N)
        bb0 = 0
        bb1 = 1 << (c * N + r)
        mask = _placement_mask(bb0, bb1, move_number)
        return Core(bb0, bb1, move_number, True, 1 - mover, False, (0.0, 0.0), mask)
    bit = 1 << action
    bb0, bb1 = core.bb0, core.bb1
    if mover == 0:
        bb0 |= bit
        won = _connected(bb0, _ROW0, _ROW_LAST)
    else:
        bb1 |= bit
        won = _connected(bb1, _COL0, _COL_LAST)
    if won:
        rewards = (1.0, -1.0) if mover == 0 else (-1.0, 1.0)
        return Core(bb0, bb1, move_number, core.swapped, 1 - mover, True, rewards, 0)
    mask = _placement_mask(bb0, bb1, move_number)
    return Core(bb0, bb1, move_number, core.swapped, 1 - mover, False, (0.0, 0.0), mask)


def _plane(bb: int) -> np.ndarray:
    bits = np.unpackbits(
        np.frombuffer(bb.to_bytes(16, "little"), dtype=np.uint8), bitorder="little", count=_CELLS
    )
    return bits.reshape(N, N)


def _observe(core: Core, role: int) -> np.ndarray:
    mine = _plane(core.bb0 if role == 0 else core.bb1)
    theirs = _plane(core.bb1 if role == 0 else core.bb0)
    color = np.full((N, N), float(role), dtype=np.float32)
    swap_legal = float(not core.terminal and core.move_number == 1)
    swap = np.full((N, N), swap_legal, dtype=np.float32)
    return np.stack([mine.astype(np.float32), theirs.astype(np.float32), color, swap], axis=-1)


def _render(core: Core) -> str:
    p0 = _plane(core.bb0)
    p1 = _plane(core.bb1)
    rows = []
    for r in range(N):
        cells = "".join("X" if p0[r, c] else "O" if p1[r, c] else "." for c in range(N))
        rows.append(" " * r + cells)
    return "\n".join(rows)


GAME = GameDef(
    spec=GameSpec("hex", 2, (11, 11, 4), 122),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
)
