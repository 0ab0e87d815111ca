"""Agent evaluation: round-robin matches and anchored Elo.

Pits UCT search (32 simulations per move, random rollouts) against the
uniform-random baseline on connect four, then fits Elo ratings by maximum
likelihood with the random agent anchored at 1000.
"""

import boardbatch as bb
from boardbatch.agents import mcts_policy, random_policy, run_matches

agents = [random_policy(), mcts_policy(32), mcts_policy(128)]
results = run_matches("connect_four", agents, games_per_pair=40, key=bb.RngKey(1))

for r in results:
    print(f"{r.agent_a:8s} vs {r.agent_b:8s}: {r.wins_a:3d} / {r.wins_b:3d} / {r.draws} (w/l/d)")

table = bb.fit_elo(results, anchor_id="random", anchor_value=1000.0)
print("\nanchored ratings:")
for name, rating in sorted(table.ratings.items(), key=lambda kv: -kv[1]):
    print(f"  {name:8s} {rating:7.1f}")

print("\nimplied win probability of mcts128 over random:",
      f"{bb.expected_score(table['mcts128'], table['random']):.3f}")
