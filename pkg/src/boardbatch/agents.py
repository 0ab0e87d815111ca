"""Baseline agents and the round-robin match runner."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    EnvState,
    GameDef,
    TerminalStep,
    UnsupportedGame,
    init,
    resolve,
    step,
)
from .elo import MatchResult
from .rng import RngKey, child_states


def random_agent(state: EnvState, key: RngKey) -> int:
    """Uniform draw over the mask-true actions."""
    if state.terminated or state.truncated:
        raise TerminalStep("cannot pick an action in a finished state")
    legal = np.flatnonzero(state.legal_action_mask)
    return int(legal[key.randint(len(legal))])


def random_actions(batch, key: RngKey) -> np.ndarray:
    """Per-slot uniform legal actions, one draw per split child of ``key``.

    Slot i receives exactly ``random_agent(states[i], key.child(i))``;
    finished slots get action 0, which batch_step ignores on reset.
    """
    n = batch.size
    mask = batch.legal_action_mask
    counts = mask.sum(axis=1).astype(np.uint64)
    draws = child_states(key.state, n) % np.maximum(counts, 1)
    cum = np.cumsum(mask, axis=1, dtype=np.int64)
    actions = (cum <= draws[:, None].astype(np.int64)).sum(axis=1)
    actions[counts == 0] = 0
    return actions.astype(np.int64)


class _Node:
    __slots__ = ("state", "action", "children", "untried", "visits", "value_sum")

    def __init__(self, state: EnvState):
        self.state = state
        self.action = -1
        self.children: list[_Node] = []
        self.untried = list(np.flatnonzero(state.legal_action_mask)) if not (
            state.terminated or state.truncated
        ) else []
        self.visits = 0
        self.value_sum = 0.0


def mcts_agent(
    state: EnvState,
    key: RngKey,
    simulations: int = 32,
    *,
    exploration: float = math.sqrt(2.0),
    value_transform: tuple[float, float] = (1.0, 0.0),
) -> int:
    """UCT search with uniform-random rollouts.

    Supports two-player perfect-information games without chance events.
    Returns the root child with the highest visit count, ties broken by
    the lowest action index. ``value_transform=(a, b)`` applies ``a*x + b``
    to every rollout payoff and scales the exploration bonus by ``a``; the
    chosen action is invariant to any such positive affine transform.
    """
    gdef = state.game
    if gdef.chance_in_step or not gdef.perfect_information or gdef.spec.num_players != 2:
        raise UnsupportedGame(f"mcts_agent does not support {gdef.game_id}")
    if state.terminated or state.truncated:
        raise TerminalStep("cannot search from a finished state")
    scale, offset = value_transform
    c = exploration * scale
    rng = random.Random(key.state)

    root = _Node(state)
    for _ in range(max(1, simulations)):
        node = root
        path = [root]
        # Selection: descend fully expanded nodes by UCB.
        while not node.untried and node.children:
            log_n = math.log(node.visits)
            best = None
            best_score = -math.inf
            for ch in node.children:
                score = ch.value_sum / ch.visits + c * math.sqrt(log_n / ch.visits)
                if score > best_score:
                    best_score = score
                    best = ch
            node = best
            path.append(node)
        # Expansion: one child, picked at random among untried actions.
        if node.untried:
            action = node.untried.pop(rng.randrange(len(node.untried)))
            child = _Node(step(node.state, int(action)))
            child.action = int(action)
            node.children.append(child)
            node = child
            path.append(node)
        # Rollout: uniform random play to the end of the episode.
        cur = node.state
        while not (cur.terminated or cur.truncated):
            legal = np.flatnonzero(cur.legal_action_mask)
            cur = step(cur, int(legal[rng.randrange(len(legal))]))
        role_rewards = _role_rewards(cur)
        # Backup: each edge is credited from the mover's perspective.
        for parent, child in zip(path[:-1], path[1:]):
            mover_role = parent.state.player_to_role[parent.state.current_player]
            child.visits += 1
            child.value_sum += scale * role_rewards[mover_role] + offset
        root.visits += 1

    best_action = -1
    best_visits = -1
    for ch in root.children:
        if ch.visits > best_visits or (ch.visits == best_visits and ch.action < best_action):
            best_visits = ch.visits
            best_action = ch.action
    return best_action


def _role_rewards(state: EnvState) -> tuple[float, float]:
    p2r = state.player_to_role
    out = [0.0, 0.0]
    for p, role in enumerate(p2r):
        out[role] = float(state.rewards[p])
    return tuple(out)


@dataclass(frozen=True)
class AgentPolicy:
    """A named decision function from (state, key) to a legal action."""

    name: str
    fn: Callable[[EnvState, RngKey], int]
    requires_perfect_information: bool = False

    def __call__(self, state: EnvState, key: RngKey) -> int:
        return self.fn(state, key)


def random_policy() -> AgentPolicy:
    return AgentPolicy("random", random_agent)


def mcts_policy(simulations: int = 32) -> AgentPolicy:
    def fn(state: EnvState, key: RngKey) -> int:
        return mcts_agent(state, key, simulations)

    return AgentPolicy(f"mcts{simulations}", fn, requires_perfect_information=True)


def play_game(gdef: GameDef, players: tuple[AgentPolicy, AgentPolicy], key: RngKey) -> EnvState:
    """One episode; players[p] controls player index p. Returns the final state."""
    state = init(gdef, key.child(0))
    t = 0
    while not (state.terminated or state.truncated):
        t += 1
        agent = players[state.current_player]
        action = agent(state, key.child(2 * t - 1))
        state = step(state, action, key.child(2 * t))
    return state


def run_matches(
    game,
    agents: list[AgentPolicy],
    games_per_pair: int,
    key: RngKey,
) -> list[MatchResult]:
    """Round-robin pairwise matches; roles rotate via init's random permutation."""
    gdef = resolve(game)
    if len(agents) < 2:
        raise ValueError("run_matches needs at least two agents")
    chance_or_hidden = gdef.chance_in_step or not gdef.perfect_information
    for agent in agents:
        if agent.requires_perfect_information and (chance_or_hidden or gdef.spec.num_players != 2):
            raise UnsupportedGame(f"{agent.name} does not support {gdef.game_id}")
    if gdef.spec.num_players != 2:
        raise UnsupportedGame(f"run_matches supports 2-player games, not {gdef.game_id}")
    if games_per_pair == 0:
        return []

    results = []
    pair_index = 0
    for i in range(len(agents)):
        for j in range(i + 1, len(agents)):
            pair_key = key.child(pair_index)
            pair_index += 1
            wins_a = wins_b = draws = 0
            for g in range(games_per_pair):
                final = play_game(gdef, (agents[i], agents[j]), pair_key.child(g))
                r0 = float(final.rewards[0])
                if r0 > 0:
                    wins_a += 1
                elif r0 < 0:
                    wins_b += 1
                else:
                    draws += 1
            results.append(
                MatchResult(gdef.game_id, agents[i].name, agents[j].name, wins_a, wins_b, draws)
            )
    return results
