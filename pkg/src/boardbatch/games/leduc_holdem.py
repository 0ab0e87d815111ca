"""Leduc hold'em engine: 6-card deck (JJQQKK), actions call/raise/fold.

Two betting rounds with a 1-chip ante; raises are worth 2 chips in round
one and 4 in round two, at most two raises per round, so each player
commits at most 13 chips. The public card is drawn when round one closes.
A hand pairing the public card wins the showdown, otherwise the higher
rank; equal ranks split the pot.
"""

from __future__ import annotations

import numpy as np

from ..core import GameDef, GameSpec
from ..rng import RngKey

CALL, RAISE, FOLD = 0, 1, 2

_DECK = (0, 0, 1, 1, 2, 2)
_NO_RAISE_MASK = (1 << CALL) | (1 << FOLD)
_FULL_MASK = (1 << CALL) | (1 << RAISE) | (1 << FOLD)
_CARDS = "JQK"


class Core:
    __slots__ = ("hands", "public", "round", "raises", "committed", "acted",
                 "role_to_move", "terminal", "rewards", "mask")

    def __init__(self, hands, public, round_, raises, committed, acted,
                 role_to_move, terminal, rewards, mask):
        self.hands = hands
        self.public = public        # -1 until revealed
        self.round = round_
        self.raises = raises
        self.committed = committed  # chips including the ante, per role
        self.acted = acted          # actions taken this round
        self.role_to_move = role_to_move
        self.terminal = terminal
        self.rewards = rewards
        self.mask = mask

    def encode(self) -> bytes:
        return bytes(
            (
                self.hands[0], self.hands[1], self.public + 1, self.round,
                self.raises, self.committed[0], self.committed[1], self.acted,
                self.role_to_move,
            )
        )


def _init_core(key: RngKey) -> Core:
    deal = key.permutation(6)
    hands = (_DECK[deal[0]], _DECK[deal[1]])
    return Core(hands, -1, 1, 0, (1, 1), 0, 0, False, (0.0, 0.0), _FULL_MASK)


def _fold_out(core: Core, folder: int) -> Core:
    winner = 1 - folder
    stake = float(core.committed[folder])
    rewards = (stake, -stake) if winner == 0 else (-stake, stake)
    return Core(core.hands, core.public, core.round, core.raises, core.committed,
                core.acted, 1 - core.role_to_move, True, rewards, 0)


def _showdown(core: Core, committed) -> Core:
    h0, h1 = core.hands
    if h0 == core.public:
        winner = 0
    elif h1 == core.public:
        winner = 1
    elif h0 != h1:
        winner = 0 if h0 > h1 else 1
    else:
        winner = -1
    if winner < 0:
        rewards = (0.0, 0.0)
    else:
        stake = float(committed[1 - winner])
        rewards = (stake, -stake) if winner == 0 else (-stake, stake)
    return Core(core.hands, core.public, core.round, core.raises, committed,
                core.acted, 1 - core.role_to_move, True, rewards, 0)


def _remaining_deck(hands) -> list[int]:
    deck = list(_DECK)
    deck.remove(hands[0])
    deck.remove(hands[1])
    return deck


def _apply(core: Core, action: int, key: RngKey | None = None) -> Core:
    mover = core.role_to_move
    if action == FOLD:
        return _fold_out(core, mover)

    committed = list(core.committed)
    if action == CALL:
        committed[mover] = max(committed)
        committed = tuple(committed)
        if core.acted >= 1:
            if core.round == 2:
                return _showdown(core, committed)
            public = _remaining_deck(core.hands)[key.randint(4)]
            return Core(core.hands, public, 2, 0, committed, 0, 0, False,
                        (0.0, 0.0), _FULL_MASK)
        return Core(core.hands, core.public, core.round, core.raises, committed,
                    1, 1 - mover, False, (0.0, 0.0),
                    _FULL_MASK if core.raises < 2 else _NO_RAISE_MASK)

    amount = 2 if core.round == 1 else 4
    committed[mover] = max(committed) + amount
    raises = core.raises + 1
    mask = _FULL_MASK if raises < 2 else _NO_RAISE_MASK
    return Core(core.hands, core.public, core.round, raises, tuple(committed),
                core.acted + 1, 1 - mover, False, (0.0, 0.0), mask)


def _observe(core: Core, role: int) -> np.ndarray:
    obs = np.zeros(34, dtype=np.float32)
    obs[core.hands[role]] = 1.0
    if core.public >= 0:
        obs[3 + core.public] = 1.0
    obs[6 + core.committed[role]] = 1.0
    obs[20 + core.committed[1 - role]] = 1.0
    return obs


def _render(core: Core) -> str:
    public = _CARDS[core.public] if core.public >= 0 else "-"
    return (
        f"hands: A={_CARDS[core.hands[0]]} B={_CARDS[core.hands[1]]} public={public}\n"
        f"round {core.round}, raises {core.raises}\n"
        f"pot: {sum(core.committed)} (A={core.committed[0]} B={core.committed[1]})"
    )


GAME = GameDef(
    spec=GameSpec("leduc_holdem", 2, (34,), 3),
    max_steps=256,
    init_core=_init_core,
    apply=_apply,
    observe=_observe,
    render=_render,
    chance_in_step=True,
    perfect_information=False,
)
