"""Backgammon engine with micro-move actions.

An action encodes (source, die): ``action = src * 6 + (die - 1)`` with 26
sources. Source 0 is a no-op, legal only when nothing can move (it forfeits
the rest of the turn); source 1 is the bar; sources 2..25 are the mover's
points 1..24 counted from their bear-off side. Each step plays one die;
when the turn's dice run out the opponent's dice are rolled inside the same
step. Wins score 1, gammon 2 (loser bore off nothing), backgammon 3 (gammon
with loser checkers on the bar or in the winner's home board).
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

_NOOP = 0


def _abs_point(role: int, pip: int) -> int:
    """Absolute board index of the mover's pip (1..24, home is 1..6)."""
    return 24 - pip if role == 0 else pip - 1


def _signed(points: tuple[int, ...], role: int, a: int) -> int:
    """Checker count at absolute point a, positive for the given role."""
    return points[a] if role == 0 else -points[a]


def _rearmost(points: tuple[int, ...], role: int) -> int:
    rear = 0
    for a in range(24):
        if _signed(points, role, a) > 0:
            pip = 24 - a if role == 0 else a + 1
            if pip > rear:
                rear = pip
    return rear


def _move_legal(points, bar, role: int, src: int, die: int) -> bool:
    if src == 1:
        if bar[role] == 0:
            return False
        dest = _abs_point(role, 25 - die)
        return _signed(points, role, dest) >= -1
    if bar[role] > 0:
        return False
    pip = src - 1
    if _signed(points, role, _abs_point(role, pip)) < 1:
        return False
    target = pip - die
    if target >= 1:
        return _signed(points, role, _abs_point(role, target)) >= -1
    rear = _rearmost(points, role)
    if rear > 6:
        return False
    return die == pip or pip == rear


def _legal_mask(points, bar, role: int, remaining) -> int:
    sign = 1 if role == 0 else -1
    mask = 0
    if bar[role] > 0:
        for die in set(remaining):
            dest = 24 - (25 - die) if role == 0 else (25 - die) - 1
            if points[dest] * sign >= -1:
                mask |= 1 << (6 + die - 1)
        return mask if mask else 1 << _NOOP

    rear = 0
    for a in range(24):
        if points[a] * sign > 0:
            pip = 24 - a if role == 0 else a + 1
            if pip > rear:
                rear = pip
    can_bear_off = rear <= 6

    for die in set(remaining):
        bit = die - 1
        for pip in range(1, 25):
            src_abs = 24 - pip if role == 0 else pip - 1
            if points[src_abs] * sign < 1:
                continue
            target = pip - die
            if target >= 1:
                dest = 24 - target if role == 0 else target - 1
                if points[dest] * sign >= -1:
                    mask |= 1 << ((pip + 1) * 6 + bit)
            elif can_bear_off and (die == pip or pip == rear):
                mask |= 1 << ((pip + 1) * 6 + bit)
    if mask == 0:
        mask = 1 << _NOOP
    return mask


class Core:
    __slots__ = ("points", "bar", "off", "role_to_move", "dice", "remaining",
                 "terminal", "rewards", "mask")

    def __init__(self, points, bar, off, role_to_move, dice, remaining, terminal, rewards, mask):
        self.points = points
        self.bar = bar
        self.off = off
        self.role_to_move = role_to_move
        self.dice = dice
        self.remaining = remaining
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        pts = bytes((v + 16) & 0xFF for v in self.points)
        rem = tuple(self.remaining) + (0,) * (4 - len(self.remaining))
        return pts + bytes(
            (self.bar[0], self.bar[1], self.off[0], self.off[1], self.role_to_move,
             self.dice[0], self.dice[1]) + rem
        )


_START_POINTS = (2, 0, 0, 0, 0, -5, 0, -3, 0, 0, 0, 5, -5, 0, 0, 0, 3, 0, 5, 0, 0, 0, 0, -2)


def _roll(points, bar, off, role: int, key: RngKey) -> Core:
    d1 = key.child(0).randint(6) + 1
    d2 = key.child(1).randint(6) + 1
    remaining = (d1,) * 4 if d1 == d2 else (d1, d2)
    mask = _legal_mask(points, bar, role, remaining)
    return Core(points, bar, off, role, (d1, d2), remaining, False, (0.0, 0.0), mask)


def _init_core(key: RngKey) -> Core:
    return _roll(_START_POINTS, (0, 0), (0, 0), 0, key)


def _final(points, bar, off, winner: int) -> Core:
    loser = 1 - winner
    value = 1.0
    if off[loser] == 0:
        value = 2.0
        home = range(18, 24) if winner == 0 else range(0, 6)
        in_home = any(_signed(points, loser, a) > 0 for a in home)
        if bar[loser] > 0 or in_home:
            value = 3.0
    rewards = (value, -value) if winner == 0 else (-value, value)
    return Core(points, bar, off, loser, (0, 0), (), True, rewards, 0)


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    role = core.role_to_move
    src, die_bit = divmod(action, 6)
    die = die_bit + 1
    if src == _NOOP:
        return _roll(core.points, core.bar, core.off, 1 - role, key)

    points = list(core.points)
    bar = list(core.bar)
    off = list(core.off)
    delta = 1 if role == 0 else -1

    if src == 1:
        bar[role] -= 1
        target = 25 - die
    else:
        pip = src - 1
        points[_abs_point(role, pip)] -= delta
        target = pip - die

    if src != 1 and target < 1:
        off[role] += 1
    else:
        a = _abs_point(role, target)
        if _signed(tuple(points), role, a) == -1:
            points[a] = delta          # hit: lone opposing checker to the bar
            bar[1 - role] += 1
        else:
            points[a] += delta

    points = tuple(points)
    bar = tuple(bar)
    off = tuple(off)

    if off[role] == 15:
        return _final(points, bar, off, role)

    remaining = list(core.remaining)
    remaining.remove(die)
    if not remaining:
        return _roll(points, bar, off, 1 - role, key)
    remaining = tuple(remaining)
    mask = _legal_mask(points, bar, role, remaining)
    return Core(points, bar, off, role, core.dice, remaining, False, (0.0, 0.0), mask)


def _observe(core: Core, role: int) -> np.ndarray:
    obs = np.zeros(34, dtype=np.float32)
    for pip in range(1, 25):
        obs[pip - 1] = _signed(core.points, role, _abs_point(role, pip))
    obs[24] = core.bar[role]
    obs[25] = core.bar[1 - role]
    obs[26] = core.off[role]
    obs[27] = core.off[1 - role]
    for die in core.remaining:
        obs[27 + die] += 1
    return obs


def _render(core: Core) -> str:
    def fmt(a: int) -> str:
        v = core.points[a]
        if v == 0:
            return " ."
        return f"{'X' if v > 0 else 'O'}{abs(v)}"

    top = " ".join(fmt(a) for a in range(12, 24))
    bottom = " ".join(fmt(a) for a in range(11, -1, -1))
    info = (
        f"bar X={core.bar[0]} O={core.bar[1]}  off X={core.off[0]} O={core.off[1]}"
        f"  dice {core.dice[0]}{core.dice[1]} left {list(core.remaining)}"
    )
    return f"{top}\n{bottom}\n{info}"


GAME = GameDef(
    spec=GameSpec("backgammon", 2, (34,), 156),
    max_steps=1024,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
    chance_in_step=True,
)
