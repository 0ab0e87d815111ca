"""A single environment from init to termination.

Shows the core loop: init draws a random player-to-role assignment, step
applies one legal action, observe returns the player-relative tensor, and
render_text prints the position.
"""

import numpy as np

import boardbatch as bb

key = bb.RngKey(seed=7)
state = bb.init("connect_four", key.child(0))
print(bb.render_text(state))
print()

t = 0
while not (state.terminated or state.truncated):
    t += 1
    # pick uniformly among the mask-true actions
    action = bb.random_agent(state, key.child(2 * t - 1))
    state = bb.step(state, action, key.child(2 * t))

print(bb.render_text(state))
print()
print("episode length:", state.step_count)
print("final rewards by player:", state.rewards)

# observations are player-relative: plane 0 is "my discs" for that player
obs0 = bb.observe(state, 0)
obs1 = bb.observe(state, 1)
print("observation shape:", obs0.shape)
print("plane swap between the two players:", np.array_equal(obs0[:, :, 0], obs1[:, :, 1]))
