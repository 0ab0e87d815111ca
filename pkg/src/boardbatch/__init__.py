"""Deterministic batch-vectorized board game environments.

Uniform init/step/observe API over nine games, a batched executor with
auto-reset, baseline agents with Elo rating, and a throughput benchmark.
"""

from .core import (
    Batch,
    DisconnectedRatingGraph,
    EmptyBatch,
    EngineError,
    EnvState,
    GameDef,
    GameSpec,
    IllegalAction,
    InvalidPlayer,
    ShapeMismatch,
    TerminalStep,
    UnsupportedGame,
    available_games,
    batch_fingerprint,
    batch_init,
    batch_step,
    game_spec,
    init,
    known_games,
    observe,
    state_fingerprint,
    step,
)
from .rng import RngKey
from . import games as _games  # noqa: F401  (populates the registry)
from .agents import (
    AgentPolicy,
    mcts_agent,
    mcts_policy,
    play_game,
    random_actions,
    random_agent,
    random_policy,
    run_matches,
)
from .elo import MatchResult, RatingTable, expected_score, fit_elo
from .bench import (
    BatchSession,
    BenchConfig,
    BenchResult,
    IoError,
    batch_outputs,
    bench_run,
    render_text,
    write_results,
    write_results_long,
)

__all__ = [
    "AgentPolicy",
    "Batch",
    "BatchSession",
    "BenchConfig",
    "BenchResult",
    "DisconnectedRatingGraph",
    "EmptyBatch",
    "EngineError",
    "EnvState",
    "GameDef",
    "GameSpec",
    "IllegalAction",
    "InvalidPlayer",
    "IoError",
    "MatchResult",
    "RatingTable",
    "RngKey",
    "ShapeMismatch",
    "TerminalStep",
    "UnsupportedGame",
    "available_games",
    "batch_fingerprint",
    "batch_init",
    "batch_outputs",
    "batch_step",
    "bench_run",
    "expected_score",
    "fit_elo",
    "game_spec",
    "init",
    "known_games",
    "mcts_agent",
    "mcts_policy",
    "observe",
    "play_game",
    "random_actions",
    "random_agent",
    "random_policy",
    "render_text",
    "run_matches",
    "state_fingerprint",
    "step",
    "write_results",
    "write_results_long",
]

__version__ = "0.1.0"
