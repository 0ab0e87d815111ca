"""Hidden information in the card games.

Kuhn poker observations encode only what the observing player can see:
their own card and the public chip counts. The opponent's card never
leaks, which is what makes the games imperfect-information.
"""

import numpy as np

import boardbatch as bb

CARDS = "JQK"

state = bb.init("kuhn_poker", bb.RngKey(11))
hands = state.core.hands
print("dealt hands by role:", {f"role{r}": CARDS[c] for r, c in enumerate(hands)})

for player in range(2):
    obs = bb.observe(state, player)
    role = state.player_to_role[player]
    print(f"player {player} (role {role}) observes hand bits {obs[:3]} -> {CARDS[int(np.argmax(obs[:3]))]}")

# The two observations differ only in the private hand bits.
o0, o1 = bb.observe(state, 0), bb.observe(state, 1)
print("chip features identical:", np.array_equal(o0[3:], o1[3:]))
print("hand features differ:   ", not np.array_equal(o0[:3], o1[:3]))

# Play a hand: first player bets, second folds.
state = bb.step(state, 1)  # bet
state = bb.step(state, 2)  # fold
print()
print(bb.render_text(state))
print("rewards by player:", state.rewards)
