"""Connect Four engine: 6x7 grid, gravity drops, 7 column actions.

Bitboard layout: bit = column * 7 + row with row 0 at the bottom; the
seventh bit of each column is a spare that keeps shift-based win checks
from wrapping between columns.
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

_FULL_MASK = (1 << 7) - 1
_ALL_CELLS = 42


def _has_line(bb: int) -> bool:
    for shift in (1, 7, 6, 8):
        m = bb & (bb >> shift)
        if m & (m >> (2 * shift)):
            return True
    return False


class Core:
    __slots__ = ("bb0", "bb1", "heights", "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, bb0, bb1, heights, role_to_move, terminal, rewards, mask):
        self.bb0 = bb0
        self.bb1 = bb1
        self.heights = heights
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return (
            self.bb0.to_bytes(7, "little")
            + self.bb1.to_bytes(7, "little")
            + bytes([self.role_to_move])
        )


_START = Core(0, 0, (0,) * 7, 0, False, (0.0, 0.0), _FULL_MASK)


def _init_core(key: RngKey) -> Core:
    return _START


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    row = core.heights[action]
    bit = 1 << (action * 7 + row)
    bb0, bb1 = core.bb0, core.bb1
    if mover == 0:
        bb0 |= bit
        won = _has_line(bb0)
    else:
        bb1 |= bit
        won = _has_line(bb1)
    heights = core.heights[:action] + (row + 1,) + core.heights[action + 1:]
    if won:
        rewards = (1.0, -1.0) if mover == 0 else (-1.0, 1.0)
        return Core(bb0, bb1, heights, 1 - mover, True, rewards, 0)
    if sum(heights) == _ALL_CELLS:
        return Core(bb0, bb1, heights, 1 - mover, True, (0.0, 0.0), 0)
    mask = core.mask if row + 1 < 6 else core.mask & ~(1 << action)
    return Core(bb0, bb1, heights, 1 - mover, False, (0.0, 0.0), mask)


def _plane(bb: int) -> np.ndarray:
    bits = np.unpackbits(
        np.frombuffer(bb.to_bytes(7, "little"), dtype=np.uint8), bitorder="little", count=49
    )
    cols = bits.reshape(7, 7)[:, :6]          # (col, row) with row 0 at the bottom
    return cols.T[::-1]                        # (row, col) with row 0 at the top


def _observe(core: Core, role: int) -> np.ndarray:
    mine = _plane(core.bb0 if role == 0 else core.bb1)
    theirs = _plane(core.bb1 if role == 0 else core.bb0)
    return np.stack([mine, theirs], axis=-1).astype(np.float32)


def _render(core: Core) -> str:
    p0 = _plane(core.bb0)
    p1 = _plane(core.bb1)
    rows = []
    for r in range(6):
        rows.append("".join("X" if p0[r, c] else "O" if p1[r, c] else "." for c in range(7)))
    return "\n".join(rows)


GAME = GameDef(
    spec=GameSpec("connect_four", 2, (6, 7, 2), 7),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
)
