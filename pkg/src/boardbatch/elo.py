"""Anchored Elo estimation from pairwise match results.

Fits the logistic model P(a beats b) = 1 / (1 + 10^((R_b - R_a)/400)) by
maximum likelihood, counting draws as half a win for each side, then
translates all ratings so the anchor sits exactly at the anchor value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import DisconnectedRatingGraph

_GRAD_TOL = 1e-9
_MAX_ITERS = 100_000
_SCALE = 400.0 / np.log(10.0)


@dataclass(frozen=True)
class MatchResult:
    """Aggregate outcome of one pairing."""

    game_id: str
    agent_a: str
    agent_b: str
    wins_a: int
    wins_b: int
    draws: int

    @property
    def total(self) -> int:
        return self.wins_a + self.wins_b + self.draws


@dataclass(frozen=True)
class RatingTable:
    """Fitted Elo ratings with rating[anchor_id] == anchor_value exactly."""

    ratings: dict[str, float] = field(default_factory=dict)
    anchor_id: str = ""
    anchor_value: float = 1000.0

    def __getitem__(self, agent_id: str) -> float:
        return self.ratings[agent_id]

    def gap(self, agent_id: str, other_id: str) -> float:
        return self.ratings[agent_id] - self.ratings[other_id]


def fit_elo(
    results: list[MatchResult],
    anchor_id: str,
    anchor_value: float = 1000.0,
) -> RatingTable:
    """Maximum-likelihood Elo fit anchored at ``anchor_id``.

    Iterates Bradley-Terry minorization updates until the log-likelihood
    gradient norm drops below 1e-9 or 1e5 iterations pass (whichever comes
    first; the cap covers degenerate data such as shut-out pairings whose
    MLE diverges).
    """
    agents = sorted({r.agent_a for r in results} | {r.agent_b for r in results} | {anchor_id})
    index = {a: i for i, a in enumerate(agents)}
    n = len(agents)

    wins = np.zeros((n, n), dtype=np.float64)  # wins[i, j]: i's wins over j, draws count half
    for r in results:
        i, j = index[r.agent_a], index[r.agent_b]
        wins[i, j] += r.wins_a + 0.5 * r.draws
        wins[j, i] += r.wins_b + 0.5 * r.draws

    games = wins + wins.T
    _check_connected(games, index[anchor_id], agents)

    if n == 1:
        return RatingTable({anchor_id: anchor_value}, anchor_id, anchor_value)

    strengths = np.ones(n, dtype=np.float64)
    win_totals = wins.sum(axis=1)
    for _ in range(_MAX_ITERS):
        pair_sum = strengths[:, None] + strengths[None, :]
        expected = games * (strengths[:, None] / pair_sum)
        np.fill_diagonal(expected, 0.0)
        grad = win_totals - expected.sum(axis=1)
        if float(np.linalg.norm(grad)) < _GRAD_TOL:
            break
        denom = (games / pair_sum).sum(axis=1)
        strengths = np.clip(win_totals / np.maximum(denom, 1e-300), 1e-30, 1e30)
        strengths /= np.exp(np.mean(np.log(strengths)))

    ratings_raw = _SCALE * np.log(strengths)
    shift = anchor_value - ratings_raw[index[anchor_id]]
    table = {a: float(ratings_raw[index[a]] + shift) for a in agents}
    table[anchor_id] = float(anchor_value)
    return RatingTable(table, anchor_id, anchor_value)


def _check_connected(games: np.ndarray, anchor: int, agents: list[str]) -> None:
    n = games.shape[0]
    seen = [False] * n
    seen[anchor] = True
    queue = deque([anchor])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if games[i, j] > 0 and not seen[j]:
                seen[j] = True
                queue.append(j)
    missing = [agents[i] for i in range(n) if not seen[i]]
    if missing:
        raise DisconnectedRatingGraph(
            f"no path of games connects {missing} to the anchor {agents[anchor]!r}"
        )


def expected_score(rating_a: float, rating_b: float) -> float:
    """Win probability of a versus b under the logistic Elo model."""
    return 1.0 / (1.0 + 10.0 ** ((rating_b - rating_a) / 400.0))
