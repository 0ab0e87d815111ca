"""Game engines and the game registry contents."""

from ..core import GameSpec, register, reserve
from . import (
    backgammon,
    connect_four,
    go,
    hexgame,
    kuhn_poker,
    leduc_holdem,
    othello,
    play2048,
    tictactoe,
)

for _mod in (tictactoe, connect_four, othello, hexgame, go, play2048, backgammon, kuhn_poker, leduc_holdem):
    register(_mod.GAME)

# Registry-reserved games: known metadata, no engine yet.
_RESERVED = (
    GameSpec("animal_shogi", 2, (4, 3, 194), 132),
    GameSpec("bridge_bidding", 4, (480,), 38),
    GameSpec("chess", 2, (8, 8, 119), 4672),
    GameSpec("gardner_chess", 2, (5, 5, 115), 1225),
    GameSpec("go_19x19", 2, (19, 19, 17), 362),
    GameSpec("minatar_asterix", 1, (10, 10, 4), 5),
    GameSpec("minatar_breakout", 1, (10, 10, 4), 3),
    GameSpec("minatar_freeway", 1, (10, 10, 7), 3),
    GameSpec("minatar_seaquest", 1, (10, 10, 10), 6),
    GameSpec("minatar_space_invaders", 1, (10, 10, 6), 4),
    GameSpec("shogi", 2, (9, 9, 119), 2187),
    GameSpec("sparrow_mahjong", 3, (11, 15), 11),
)

for _spec in _RESERVED:
    reserve(_spec)
