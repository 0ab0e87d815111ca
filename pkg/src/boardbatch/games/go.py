"""Go engine: Tromp-Taylor rules on a parameterized board (9x9 registered).

Scoring is stones plus single-color empty regions, with komi added to
white. Positional superko is enforced through a zobrist hash history of
grid colorings. Self-capture is forbidden by default; ``make_game`` exposes
a switch that permits it (Tromp-Taylor allows it, masks here follow the
common engine practice).
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey, mix64

_HISTORY_PLANES = 8


def _zobrist(size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cells = size * size
    base = 0x60D0_0D60_C0FF_EE00 + size
    black = tuple(mix64(base + 2 * i) for i in range(cells))
    white = tuple(mix64(base + 2 * i + 1) for i in range(cells))
    return black, white


def _neighbor_table(size: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for r in range(size):
        for c in range(size):
            adj = []
            if r > 0:
                adj.append((r - 1) * size + c)
            if r < size - 1:
                adj.append((r + 1) * size + c)
            if c > 0:
                adj.append(r * size + c - 1)
            if c < size - 1:
                adj.append(r * size + c + 1)
            out.append(tuple(adj))
    return tuple(out)


def _analyse(board: bytes, nbrs, zob):
    """Groups, distinct-liberty counts, stone lists, and per-group hash xors."""
    cells = len(board)
    group_of = [-1] * cells
    libs: list[int] = []
    stones_by_group: list[list[int]] = []
    gxor: list[int] = []
    lib_stamp = [-1] * cells
    for i in range(cells):
        color = board[i]
        if color == 0 or group_of[i] >= 0:
            continue
        gid = len(libs)
        zcol = zob[color - 1]
        stack = [i]
        group_of[i] = gid
        stones: list[int] = []
        libc = 0
        x = 0
        while stack:
            p = stack.pop()
            stones.append(p)
            x ^= zcol[p]
            for q in nbrs[p]:
                v = board[q]
                if v == 0:
                    if lib_stamp[q] != gid:
                        lib_stamp[q] = gid
                        libc += 1
                elif v == color and group_of[q] < 0:
                    group_of[q] = gid
                    stack.append(q)
        libs.append(libc)
        stones_by_group.append(stones)
        gxor.append(x)
    return group_of, libs, stones_by_group, gxor


class Core:
    __slots__ = (
        "board", "role_to_move", "terminal", "rewards", "mask",
        "pass_count", "hash", "hist_xor", "history", "boards_hist", "an",
    )

    def __init__(self, board, role_to_move, terminal, rewards, mask,
                 pass_count, hash_, hist_xor, history, boards_hist, an):
        self.board = board
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask
        self.pass_count = pass_count
        self.hash = hash_
        self.hist_xor = hist_xor
        self.history = history
        self.boards_hist = boards_hist
        self.an = an

    def encode(self) -> bytes:
        return (
            self.board
            + bytes([self.role_to_move, self.pass_count])
            + self.hash.to_bytes(8, "little")
            + self.hist_xor.to_bytes(8, "little")
            + len(self.history).to_bytes(2, "little")
            + b"".join(self.boards_hist)
        )


def make_game(size: int = 9, komi: float = 6.5, allow_self_capture: bool = False) -> GameDef:
    cells = size * size
    pass_action = cells
    pass_bit = 1 << pass_action
    nbrs = _neighbor_table(size)
    zob = _zobrist(size)

    def legal_mask(board, an, color, h, history):
        group_of, libs, _, gxor = an
        zc = zob[color - 1]
        mask = pass_bit
        for p in range(cells):
            if board[p]:
                continue
            empty_nbr = False
            helped = False
            caps = None
            for q in nbrs[p]:
                v = board[q]
                if v == 0:
                    empty_nbr = True
                elif v == color:
                    if libs[group_of[q]] >= 2:
                        helped = True
                else:
                    g = group_of[q]
                    if libs[g] == 1:
                        if caps is None:
                            caps = [g]
                        elif g not in caps:
                            caps.append(g)
            if caps is not None:
                h2 = h ^ zc[p]
                for g in caps:
                    h2 ^= gxor[g]
                if h2 not in history:
                    mask |= 1 << p
            elif empty_nbr or helped:
                h2 = h ^ zc[p]
                if h2 not in history:
                    mask |= 1 << p
            elif allow_self_capture:
                # Every adjacent own group has p as its sole liberty, so the
                # whole merged group dies; the placed stone cancels itself in
                # the hash. A lone-stone suicide recreates the current
                # position and superko rejects it.
                h2 = h
                own = None
                for q in nbrs[p]:
                    if board[q] == color:
                        g = group_of[q]
                        if own is None:
                            own = [g]
                        elif g not in own:
                            own.append(g)
                if own:
                    for g in own:
                        h2 ^= gxor[g]
                if h2 not in history:
                    mask |= 1 << p
        return mask

    def score_rewards(board) -> tuple[float, float]:
        black = white = 0.0
        for v in board:
            if v == 1:
                black += 1
            elif v == 2:
                white += 1
        seen = bytearray(cells)
        for i in range(cells):
            if board[i] == 0 and not seen[i]:
                seen[i] = 1
                stack = [i]
                region = 1
                borders = 0
                while stack:
                    p = stack.pop()
                    for q in nbrs[p]:
                        v = board[q]
                        if v == 0:
                            if not seen[q]:
                                seen[q] = 1
                                region += 1
                                stack.append(q)
                        else:
                            borders |= v
                if borders == 1:
                    black += region
                elif borders == 2:
                    white += region
        white += komi
        if black > white:
            return (1.0, -1.0)
        if white > black:
            return (-1.0, 1.0)
        return (0.0, 0.0)

    def init_core(key: RngKey) -> Core:
        board = bytes(cells)
        an = _analyse(board, nbrs, zob)
        history = frozenset((0,))
        mask = legal_mask(board, an, 1, 0, history)
        return Core(board, 0, False, (0.0, 0.0), mask, 0, 0, 0, history, (board,), an)

    def apply(core: Core, action: int, key: RngKey | None = None) -> Core:
        mover = core.role_to_move
        color = mover + 1
        if action == pass_action:
            pass_count = core.pass_count + 1
            boards_hist = (core.board,) + core.boards_hist[: _HISTORY_PLANES - 1]
            if pass_count == 2:
                return Core(core.board, 1 - mover, True, score_rewards(core.board), 0,
                            pass_count, core.hash, core.hist_xor, core.history, boards_hist, core.an)
            mask = legal_mask(core.board, core.an, 3 - color, core.hash, core.history)
            return Core(core.board, 1 - mover, False, (0.0, 0.0), mask,
                        pass_count, core.hash, core.hist_xor, core.history, boards_hist, core.an)

        group_of, libs, stones_by_group, gxor = core.an
        zc = zob[color - 1]
        enemy = 3 - color
        board = bytearray(core.board)
        h2 = core.hash ^ zc[action]
        captured_any = False
        seen_groups: list[int] = []
        for q in nbrs[action]:
            if board[q] == enemy:
                g = group_of[q]
                if libs[g] == 1 and g not in seen_groups:
                    seen_groups.append(g)
                    captured_any = True
                    h2 ^= gxor[g]
                    for s in stones_by_group[g]:
                        board[s] = 0
        board[action] = color
        if allow_self_capture and not captured_any:
            group, has_lib = _flood_group(board, action, nbrs)
            if not has_lib:
                zcol = zob[color - 1]
                for s in group:
                    board[s] = 0
                    h2 ^= zcol[s]
        new_board = bytes(board)
        history = core.history | {h2}
        an = _analyse(new_board, nbrs, zob)
        mask = legal_mask(new_board, an, enemy, h2, history)
        boards_hist = (new_board,) + core.boards_hist[: _HISTORY_PLANES - 1]
        return Core(new_board, 1 - mover, False, (0.0, 0.0), mask,
                    0, h2, core.hist_xor ^ h2, history, boards_hist, an)

    def observe(core: Core, role: int) -> np.ndarray:
        out = np.zeros((size, size, 2 * _HISTORY_PLANES + 1), dtype=np.float32)
        mine = role + 1
        theirs = 2 - role
        for t, snapshot in enumerate(core.boards_hist):
            arr = np.frombuffer(snapshot, dtype=np.uint8).reshape(size, size)
            out[:, :, 2 * t] = arr == mine
            out[:, :, 2 * t + 1] = arr == theirs
        out[:, :, 2 * _HISTORY_PLANES] = float(role)
        return out

    def render(core: Core) -> str:
        glyphs = ".XO"
        rows = []
        for r in range(size):
            rows.append("".join(glyphs[core.board[r * size + c]] for c in range(size)))
        return "\n".join(rows)

    game_id = f"go_{size}x{size}"
    return GameDef(
        spec=GameSpec(game_id, 2, (size, size, 2 * _HISTORY_PLANES + 1), cells + 1),
        max_steps=512,
        init_core=init_core,
        apply=apply,
        observe=observe,
        render=render,
    )


def _flood_group(board, start: int, nbrs) -> tuple[list[int], bool]:
    color = board[start]
    group = [start]
    member = {start}
    stack = [start]
    has_lib = False
    while stack:
        p = stack.pop()
        for q in nbrs[p]:
            v = board[q]
            if v == 0:
                has_lib = True
            elif v == color and q not in member:
                member.add(q)
                group.append(q)
                stack.append(q)
    return group, has_lib


GAME = make_game(9)
