"""2048 engine: 4x4 board of tile exponents, actions left/up/right/down.

Tiles pair up from the movement side and each merged tile is inert for the
rest of the slide. The transition reward is the sum of merged tile values;
afterwards one tile spawns in a uniformly random empty cell (value 2 with
probability 0.9, else 4). A direction is legal only if it changes the
board; the game ends when none does.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

LEFT, UP, RIGHT, DOWN = 0, 1, 2, 3

# Cell indices per direction, one tuple of 4 lines, each ordered with the
# movement side first.
_ROWS = tuple(tuple(4 * r + c for c in range(4)) for r in range(4))
_COLS = tuple(tuple(4 * r + c for r in range(4)) for c in range(4))
_LINES = {
    LEFT: _ROWS,
    RIGHT: tuple(line[::-1] for line in _ROWS),
    UP: _COLS,
    DOWN: tuple(line[::-1] for line in _COLS),
}


@lru_cache(maxsize=1 << 17)
def _slide_line(vals: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    out: list[int] = []
    reward = 0
    open_slot = -1  # index in out that may still merge
    for v in vals:
        if v == 0:
            continue
        if open_slot >= 0 and out[open_slot] == v:
            out[open_slot] = v + 1
            reward += 1 << (v + 1)
            open_slot = -1
        else:
            out.append(v)
            open_slot = len(out) - 1
    out.extend([0] * (4 - len(out)))
    return tuple(out), reward


def slide(board: tuple[int, ...], direction: int) -> tuple[tuple[int, ...], int]:
    """Slide without spawning. Returns (new board, merged-tile sum)."""
    out = [0] * 16
    reward = 0
    for line in _LINES[direction]:
        vals, r = _slide_line(tuple(board[i] for i in line))
        reward += r
        for idx, v in zip(line, vals):
            out[idx] = v
    return tuple(out), reward


def _spawn(board: tuple[int, ...], key: RngKey) -> tuple[int, ...]:
    empties = [i for i, v in enumerate(board) if v == 0]
    cell = empties[key.child(0).randint(len(empties))]
    exponent = 2 if key.child(1).randint(10) == 9 else 1
    out = list(board)
    out[cell] = exponent
    return tuple(out)


class Core:
    __slots__ = ("board", "score", "terminal", "rewards", "mask", "slides")

    role_to_move = 0

    def __init__(self, board, score, terminal, rewards, mask, slides):
        self.board = board
        self.score = score
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask
        self.slides = slides

    def encode(self) -> bytes:
        return bytes(self.board) + int(self.score).to_bytes(8, "little")


def _finish(board: tuple[int, ...], score: int, reward: int) -> Core:
    slides = tuple(slide(board, d) for d in range(4))
    mask = 0
    for d in range(4):
        if slides[d][0] != board:
            mask |= 1 << d
    terminal = mask == 0
    return Core(board, score, terminal, (float(reward),), mask, slides)


def _init_core(key: RngKey) -> Core:
    board = _spawn((0,) * 16, key.child(0))
    board = _spawn(board, key.child(1))
    return _finish(board, 0, 0)


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    slid, reward = core.slides[action]
    board = _spawn(slid, key)
    return _finish(board, core.score + reward, reward)


def _observe(core: Core, role: int) -> np.ndarray:
    cells = np.asarray(core.board, dtype=np.int32).reshape(4, 4)
    return (cells[:, :, None] == np.arange(1, 32)).astype(np.float32)


def _render(core: Core) -> str:
    rows = []
    for r in range(4):
        rows.append(
            " ".join(f"{(1 << v) if v else 0:5d}" for v in core.board[4 * r: 4 * r + 4])
        )
    return "\n".join(rows)


GAME = GameDef(
    spec=GameSpec("2048", 1, (4, 4, 31), 4),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
    chance_in_step=True,
)
