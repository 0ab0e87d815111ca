"""Kuhn poker engine: 3-card deck, actions call/bet/fold/check.

Payoffs follow the five classic scenarios; both players ante one chip, a
bet adds one more, and showdowns go to the higher card.
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

CALL, BET, FOLD, CHECK = 0, 1, 2, 3

_OPEN_MASK = (1 << BET) | (1 << CHECK)
_FACING_BET_MASK = (1 << CALL) | (1 << FOLD)
_CARDS = "JQK"


class Core:
    __slots__ = ("hands", "history", "extra", "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, hands, history, extra, role_to_move, terminal, rewards, mask):
        self.hands = hands
        self.history = history
        self.extra = extra          # chips beyond the ante, per role
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return bytes(self.hands) + bytes(self.history) + b"\xff" + bytes(self.extra)


def _init_core(key: RngKey) -> Core:
    deal = key.permutation(3)
    return Core((deal[0], deal[1]), (), (0, 0), 0, False, (0.0, 0.0), _OPEN_MASK)


def _showdown(hands, stake: float) -> tuple[float, float]:
    return (stake, -stake) if hands[0] > hands[1] else (-stake, stake)


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    history = core.history + (action,)
    extra = list(core.extra)
    if action == BET:
        extra[mover] = 1
        return Core(core.hands, history, tuple(extra), 1 - mover, False, (0.0, 0.0), _FACING_BET_MASK)
    if action == CHECK:
        if core.history == (CHECK,):
            return Core(core.hands, history, tuple(extra), 1 - mover, True, _showdown(core.hands, 1.0), 0)
        return Core(core.hands, history, tuple(extra), 1 - mover, False, (0.0, 0.0), _OPEN_MASK)
    if action == CALL:
        extra[mover] = 1
        return Core(core.hands, history, tuple(extra), 1 - mover, True, _showdown(core.hands, 2.0), 0)
    # fold: the bettor collects the antes
    rewards = (-1.0, 1.0) if mover == 0 else (1.0, -1.0)
    return Core(core.hands, history, tuple(extra), 1 - mover, True, rewards, 0)


def _observe(core: Core, role: int) -> np.ndarray:
    obs = np.zeros(7, dtype=np.float32)
    obs[core.hands[role]] = 1.0
    obs[3 + core.extra[role]] = 1.0
    obs[5 + core.extra[1 - role]] = 1.0
    return obs


def _render(core: Core) -> str:
    names = {CALL: "call", BET: "bet", FOLD: "fold", CHECK: "check"}
    hist = " ".join(names[a] for a in core.history) or "(opening)"
    pot = 2 + sum(core.extra)
    return (
        f"hands: A={_CARDS[core.hands[0]]} B={_CARDS[core.hands[1]]}\n"
        f"history: {hist}\n"
        f"pot: {pot}"
    )


GAME = GameDef(
    spec=GameSpec("kuhn_poker", 2, (7,), 4),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
    perfect_information=False,
)
