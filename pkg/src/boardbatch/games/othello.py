"""Othello engine: 8x8 grid, 64 placement actions plus pass (64).

Pass is in the legal mask only when no placement flips anything; two
consecutive passes or a full board end the game and the majority holder
wins.
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

_FULL = (1 << 64) - 1
_NOT_A = 0xFEFEFEFEFEFEFEFE  # excludes column 0 (targets after an eastward shift)
_NOT_H = 0x7F7F7F7F7F7F7F7F
_PASS = 64


def _shift_e(x):
    return (x << 1) & _NOT_A & _FULL


def _shift_w(x):
    return (x >> 1) & _NOT_H


def _shift_s(x):
    return (x << 8) & _FULL


def _shift_n(x):
    return x >> 8


def _shift_se(x):
    return (x << 9) & _NOT_A & _FULL


def _shift_sw(x):
    return (x << 7) & _NOT_H & _FULL


def _shift_ne(x):
    return (x >> 7) & _NOT_A


def _shift_nw(x):
    return (x >> 9) & _NOT_H


_SHIFTS = (_shift_e, _shift_w, _shift_s, _shift_n, _shift_se, _shift_sw, _shift_ne, _shift_nw)


def _legal_moves(mine: int, theirs: int) -> int:
    empty = ~(mine | theirs) & _FULL
    moves = 0
    for s in _SHIFTS:
        # up to six opponent discs can sit between an own disc and the target
        t = s(mine) & theirs
        t |= s(t) & theirs
        t |= s(t) & theirs
        t |= s(t) & theirs
        t |= s(t) & theirs
        t |= s(t) & theirs
        moves |= s(t) & empty
    return moves


def _flips_for(bit: int, mine: int, theirs: int) -> int:
    flips = 0
    for s in _SHIFTS:
        ray = 0
        cur = s(bit)
        while cur & theirs:
            ray |= cur
            cur = s(cur)
        if cur & mine:
            flips |= ray
    return flips


class Core:
    __slots__ = ("bb0", "bb1", "pass_count", "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, bb0, bb1, pass_count, role_to_move, terminal, rewards, mask):
        self.bb0 = bb0
        self.bb1 = bb1
        self.pass_count = pass_count
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return (
            self.bb0.to_bytes(8, "little")
            + self.bb1.to_bytes(8, "little")
            + bytes([self.role_to_move, self.pass_count])
        )


def _mask_for(mine: int, theirs: int) -> int:
    moves = _legal_moves(mine, theirs)
    return moves if moves else 1 << _PASS


# Standard opening: black (role 0) on d5/e4, white on d4/e5; black moves first.
_B0 = (1 << 28) | (1 << 35)
_B1 = (1 << 27) | (1 << 36)
_START = Core(_B0, _B1, 0, 0, False, (0.0, 0.0), _mask_for(_B0, _B1))


def _init_core(key: RngKey) -> Core:
    return _START


def _final_rewards(bb0: int, bb1: int) -> tuple[float, float]:
    d0 = bin(bb0).count("1")
    d1 = bin(bb1).count("1")
    if d0 > d1:
        return (1.0, -1.0)
    if d1 > d0:
        return (-1.0, 1.0)
    return (0.0, 0.0)


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    mine, theirs = (core.bb0, core.bb1) if mover == 0 else (core.bb1, core.bb0)
    if action == _PASS:
        pass_count = core.pass_count + 1
        if pass_count == 2:
            return Core(core.bb0, core.bb1, 2, 1 - mover, True, _final_rewards(core.bb0, core.bb1), 0)
        mask = _mask_for(theirs, mine)
        return Core(core.bb0, core.bb1, pass_count, 1 - mover, False, (0.0, 0.0), mask)
    bit = 1 << action
    flips = _flips_for(bit, mine, theirs)
    mine |= bit | flips
    theirs &= ~flips
    bb0, bb1 = (mine, theirs) if mover == 0 else (theirs, mine)
    if (bb0 | bb1) == _FULL:
        return Core(bb0, bb1, 0, 1 - mover, True, _final_rewards(bb0, bb1), 0)
    mask = _mask_for(theirs, mine)
    return Core(bb0, bb1, 0, 1 - mover, False, (0.0, 0.0), mask)


def _plane(bb: int) -> np.ndarray:
    bits = np.unpackbits(
        np.frombuffer(bb.to_bytes(8, "little"), dtype=np.uint8), bitorder="little"
    )
    return bits.reshape(8, 8)


def _observe(core: Core, role: int) -> np.ndarray:
    mine = _plane(core.bb0 if role == 0 else core.bb1)
    theirs = _plane(core.bb1 if role == 0 else core.bb0)
    return np.stack([mine, theirs], axis=-1).astype(np.float32)


def _render(core: Core) -> str:
    p0 = _plane(core.bb0)
    p1 = _plane(core.bb1)
    rows = []
    for r in range(8):
        rows.append("".join("X" if p0[r, c] else "O" if p1[r, c] else "." for c in range(8)))
    return "\n".join(rows)


GAME = GameDef(
    spec=GameSpec("othello", 2, (8, 8, 2), 65),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
)
