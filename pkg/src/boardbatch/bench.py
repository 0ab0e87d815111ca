"""Random-policy throughput benchmark, text rendering, and CSV output."""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .agents import random_actions
from .core import (
    Batch,
    EngineError,
    EnvState,
    batch_init,
    batch_step,
    observe,
    resolve,
    _executor,
)
from .elo import MatchResult
from .rng import RngKey


class IoError(EngineError):
    """Output path cannot be written."""


@dataclass(frozen=True)
class BenchConfig:
    game_id: str
    batch_size: int
    total_steps: int
    seed: int = 0
    worker_threads: int | str = 1  # worker count or "auto"
    output_path: str | None = None


@dataclass(frozen=True)
class BenchResult:
    game_id: str
    batch_size: int
    total_steps: int
    seed: int
    threads: int
    wall_seconds: float
    samples_per_second: float
    episodes_completed: int


class BatchSession:
    """A batched environment driven from one root seed.

    Key schedule: init uses ``root.child(0)``; step t (1-based) uses
    ``root.child(2t)``; engine-chosen random actions before step t use
    ``root.child(2t - 1)``. Every consumer of this schedule (benchmark,
    trajectory dumps, the binding server) replays identically from the
    same seed.
    """

    def __init__(self, game, batch_size: int, seed: int, *, max_steps: int | None = None,
                 workers: int = 1):
        self.gdef = resolve(game)
        self.root = RngKey(seed)
        self.workers = workers
        self.batch: Batch = batch_init(self.gdef, self.root.child(0), batch_size,
                                       max_steps=max_steps)
        self.t = 0

    def sample_random_actions(self) -> np.ndarray:
        return random_actions(self.batch, self.root.child(2 * self.t + 1))

    def step(self, actions) -> Batch:
        # Advance the schedule only on success so a rejected step leaves the
        # session (and its key stream) untouched.
        batch = batch_step(self.batch, actions, self.root.child(2 * (self.t + 1)),
                           workers=self.workers)
        self.t += 1
        self.batch = batch
        return batch


def batch_outputs(batch: Batch) -> dict[str, np.ndarray]:
    """Contiguous per-field arrays, observations taken for each slot's current player."""
    states = batch.states
    obs = np.stack([observe(s, s.current_player) for s in states])
    return {
        "observations": obs,
        "rewards": batch.rewards,
        "terminated": batch.terminated,
        "truncated": batch.truncated,
        "current_player": batch.current_player,
        "legal_action_mask": batch.legal_action_mask,
    }


def resolve_threads(worker_threads: int | str) -> int:
    if worker_threads == "auto":
        return os.cpu_count() or 1
    threads = int(worker_threads)
    if threads < 1:
        raise ValueError("worker_threads must be >= 1 or 'auto'")
    return threads


def bench_run(config: BenchConfig) -> BenchResult:
    """Random-policy batched stepping with auto-reset.

    Wall time covers the step loop only; batch construction and worker-pool
    spin-up happen before the clock starts. Trajectory content (and so
    episodes_completed) is deterministic in the seed.
    """
    if config.batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    if config.total_steps < 1:
        raise ValueError("total_steps must be >= 1")
    threads = resolve_threads(config.worker_threads)
    session = BatchSession(config.game_id, config.batch_size, config.seed, workers=threads)
    if threads > 1:
        _executor(threads)
    episodes = 0
    t0 = time.perf_counter()
    for _ in range(config.total_steps):
        actions = session.sample_random_actions()
        batch = session.step(actions)
        episodes += int((batch.terminated | batch.truncated).sum())
    wall = time.perf_counter() - t0
    samples = config.batch_size * config.total_steps
    return BenchResult(
        game_id=session.gdef.game_id,
        batch_size=config.batch_size,
        total_steps=config.total_steps,
        seed=config.seed,
        threads=threads,
        wall_seconds=wall,
        samples_per_second=samples / max(wall, 1e-9),
        episodes_completed=episodes,
    )


def render_text(state: EnvState) -> str:
    """Human-readable rendering: board/track/hands first, status footer last."""
    body = state.game.render(state.core)
    rewards = [float(x) for x in state.rewards]
    if state.terminated:
        footer = f"terminated rewards={rewards}"
    elif state.truncated:
        footer = f"truncated rewards={rewards}"
    else:
        role = state.player_to_role[state.current_player]
        footer = f"to move: player {state.current_player} (role {role}), step {state.step_count}"
    return f"{body}\n{footer}"


_BENCH_FIELDS = (
    "game_id", "batch_size", "total_steps", "seed", "threads",
    "wall_seconds", "samples_per_second", "episodes_completed",
)
_MATCH_FIELDS = ("game_id", "agent_a", "agent_b", "wins_a", "wins_b", "draws")


def write_results(results: Iterable[BenchResult | MatchResult], path, kind: str | None = None) -> None:
    """CSV with a fixed header; floats use full-precision repr so they round-trip."""
    rows = list(results)
    if kind is None:
        kind = "matches" if rows and isinstance(rows[0], MatchResult) else "bench"
    fields = _MATCH_FIELDS if kind == "matches" else _BENCH_FIELDS
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(fields)
            for row in rows:
                writer.writerow([repr(v) if isinstance(v, float) else v
                                 for v in (getattr(row, f) for f in fields)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_results_long(results: Iterable[BenchResult], path) -> None:
    """Long-format table (one metric per row) for plotting tools."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("game_id", "batch_size", "seed", "threads", "metric", "value"))
            for row in results:
                base = (row.game_id, row.batch_size, row.seed, row.threads)
                for metric in ("total_steps", "wall_seconds", "samples_per_second", "episodes_completed"):
                    value = getattr(row, metric)
                    writer.writerow(base + (metric, repr(value) if isinstance(value, float) else value))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
