"""Game-agnostic environment core.

Defines the registry of games, the single-instance init/step/observe API,
and the batched executor with auto-reset. States are immutable values;
``step`` and ``batch_step`` are pure functions of ``(state, action, key)``,
which is what makes trajectories reproducible across runs, batch sizes,
and worker counts.
"""

from __future__ import annotations

import hashlib
import struct
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .rng import RngKey


class EngineError(Exception):
    """Base class for engine errors."""


class UnsupportedGame(EngineError):
    """Unknown game id, or a registry-reserved game without an engine."""


class IllegalAction(EngineError):
    """Action outside the current legal-action mask. The state is unchanged."""

    def __init__(self, message: str, action: int | None = None, slot: int | None = None):
        super().__init__(message)
        self.action = action
        self.slot = slot


class TerminalStep(EngineError):
    """Attempt to step or query a policy on a terminated/truncated state."""


class InvalidPlayer(EngineError):
    """Player index outside [0, num_players)."""


class EmptyBatch(EngineError):
    """Batch size must be at least 1."""


class ShapeMismatch(EngineError):
    """Action vector length does not match the batch size."""


class DisconnectedRatingGraph(EngineError):
    """Match graph does not connect every agent to the anchor."""


@dataclass(frozen=True)
class GameSpec:
    """Static per-game metadata."""

    game_id: str
    num_players: int
    observation_shape: tuple[int, ...]
    num_actions: int


@dataclass(frozen=True)
class GameDef:
    """A registered game engine.

    Game cores are opaque immutable values exposing ``role_to_move``,
    ``terminal``, ``rewards`` (per role, for the latest transition),
    ``mask`` (legal actions as an int bitmask) and ``encode()``.
    """

    spec: GameSpec
    max_steps: int
    init_core: Callable[[RngKey], Any]
    apply: Callable[[Any, int, RngKey | None], Any]
    observe: Callable[[Any, int], np.ndarray]
    render: Callable[[Any], str]
    chance_in_step: bool = False
    perfect_information: bool = True
    batch_kernel: Any = None

    @property
    def game_id(self) -> str:
        return self.spec.game_id


@dataclass(eq=False)
class EnvState:
    """One environment instance.

    ``rewards`` holds the reward of the most recent transition, indexed by
    player (not role). ``player_to_role`` is the per-episode permutation
    drawn at init; it stays fixed until the next reset.
    """

    current_player: int
    legal_action_mask: np.ndarray
    rewards: np.ndarray
    terminated: bool
    truncated: bool
    step_count: int
    player_to_role: tuple[int, ...]
    core: Any
    game: GameDef = field(repr=False)
    max_steps: int = 0

    @property
    def game_id(self) -> str:
        return self.game.spec.game_id


# Registry: every known game id maps to its spec; implemented games also
# carry a GameDef. Reserved ids raise UnsupportedGame on use.
_SPECS: dict[str, GameSpec] = {}
_ENGINES: dict[str, GameDef] = {}


def register(gdef: GameDef) -> None:
    _SPECS[gdef.spec.game_id] = gdef.spec
    _ENGINES[gdef.spec.game_id] = gdef


def reserve(spec: GameSpec) -> None:
    _SPECS[spec.game_id] = spec


def available_games() -> tuple[str, ...]:
    """Ids of games with an implemented engine."""
    return tuple(sorted(_ENGINES))


def known_games() -> tuple[str, ...]:
    """All registered ids, including reserved ones without an engine."""
    return tuple(sorted(_SPECS))


def game_spec(game_id: str) -> GameSpec:
    spec = _SPECS.get(game_id)
    if spec is None:
        raise UnsupportedGame(f"unknown game id: {game_id!r}")
    return spec


def resolve(game: str | GameSpec | GameDef) -> GameDef:
    if isinstance(game, GameDef):
        return game
    game_id = game.game_id if isinstance(game, GameSpec) else game
    gdef = _ENGINES.get(game_id)
    if gdef is None:
        if game_id in _SPECS:
            raise UnsupportedGame(f"game {game_id!r} is registry-reserved but not implemented")
        raise UnsupportedGame(f"unknown game id: {game_id!r}")
    return gdef


_ZERO_REWARDS: dict[int, np.ndarray] = {}
_EMPTY_MASKS: dict[int, np.ndarray] = {}


def _zero_rewards(num_players: int) -> np.ndarray:
    arr = _ZERO_REWARDS.get(num_players)
    if arr is None:
        arr = np.zeros(num_players, dtype=np.float32)
        arr.flags.writeable = False
        _ZERO_REWARDS[num_players] = arr
    return arr


def _empty_mask(num_actions: int) -> np.ndarray:
    arr = _EMPTY_MASKS.get(num_actions)
    if arr is None:
        arr = np.zeros(num_actions, dtype=bool)
        arr.flags.writeable = False
        _EMPTY_MASKS[num_actions] = arr
    return arr


def mask_array(mask_bits: int, num_actions: int) -> np.ndarray:
    """Expand an int bitmask into a boolean action-mask vector."""
    raw = np.frombuffer(mask_bits.to_bytes((num_actions + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, count=num_actions, bitorder="little").view(np.bool_)


def _make_state(gdef: GameDef, core: Any, perm: tuple[int, ...], step_count: int, limit: int) -> EnvState:
    spec = gdef.spec
    num_players = spec.num_players
    terminated = core.terminal
    truncated = not terminated and step_count >= limit
    if truncated:
        rewards = _zero_rewards(num_players)
    else:
        role_rewards = core.rewards
        if any(role_rewards):
            rewards = np.array([role_rewards[perm[p]] for p in range(num_players)], dtype=np.float32)
        else:
            rewards = _zero_rewards(num_players)
    if terminated or truncated:
        mask = _empty_mask(spec.num_actions)
    else:
        mask = mask_array(core.mask, spec.num_actions)
    return EnvState(
        current_player=perm.index(core.role_to_move),
        legal_action_mask=mask,
        rewards=rewards,
        terminated=terminated,
        truncated=truncated,
        step_count=step_count,
        player_to_role=perm,
        core=core,
        game=gdef,
        max_steps=limit,
    )


def init(game: str | GameSpec | GameDef, key: RngKey, *, max_steps: int | None = None) -> EnvState:
    """Initial state with a uniformly random player-to-role permutation."""
    gdef = resolve(game)
    limit = gdef.max_steps if max_steps is None else max_steps
    perm = key.child(0).permutation(gdef.spec.num_players)
    core = gdef.init_core(key.child(1))
    return _make_state(gdef, core, perm, 0, limit)


def step(state: EnvState, action: int, key: RngKey | None = None) -> EnvState:
    """Apply one action. Chance events (dice, spawns, deals) draw from ``key``."""
    if state.terminated or state.truncated:
        raise TerminalStep(f"cannot step a finished {state.game_id} state")
    gdef = state.game
    a = int(action)
    if a < 0 or a >= gdef.spec.num_actions or not (state.core.mask >> a) & 1:
        raise IllegalAction(f"illegal action {a} in {state.game_id}", action=a)
    if gdef.chance_in_step and key is None:
        raise ValueError(f"{state.game_id} resolves chance events inside step; an RngKey is required")
    core = gdef.apply(state.core, a, key)
    return _make_state(gdef, core, state.player_to_role, state.step_count + 1, state.max_steps)


def observe(state: EnvState, player: int) -> np.ndarray:
    """Player-relative observation tensor of shape GameSpec.observation_shape."""
    num_players = state.game.spec.num_players
    if not 0 <= int(player) < num_players:
        raise InvalidPlayer(f"player {player} out of range for {state.game_id}")
    return state.game.observe(state.core, state.player_to_role[int(player)])


class Batch:
    """Fixed-size collection of same-game states advanced in lockstep.

    Exposes per-field column views that agree element-wise with the
    individual states. Backed either by a tuple of EnvStates or, for games
    with a vectorized kernel, by a struct-of-arrays core.
    """

    __slots__ = ("game", "size", "max_steps", "_states", "_v", "_cols")

    def __init__(self, game: GameDef, size: int, max_steps: int, states=None, vstate=None):
        self.game = game
        self.size = size
        self.max_steps = max_steps
        self._states = states
        self._v = vstate
        self._cols: dict[str, np.ndarray] = {}

    def __len__(self) -> int:
        return self.size

    @property
    def states(self) -> tuple[EnvState, ...]:
        if self._states is None:
            kern = self.game.batch_kernel
            self._states = tuple(
                kern.state_at(self.game, self._v, i, self.max_steps) for i in range(self.size)
            )
        return self._states

    def _column(self, name: str, build: Callable[[], np.ndarray]) -> np.ndarray:
        col = self._cols.get(name)
        if col is None:
            if self._v is not None:
                col = getattr(self._v, name)
            else:
                col = build()
            self._cols[name] = col
        return col

    @property
    def current_player(self) -> np.ndarray:
        return self._column(
            "current_player",
            lambda: np.fromiter((s.current_player for s in self.states), np.int32, self.size),
        )

    @property
    def legal_action_mask(self) -> np.ndarray:
        return self._column(
            "legal_action_mask", lambda: np.stack([s.legal_action_mask for s in self.states])
        )

    @property
    def rewards(self) -> np.ndarray:
        return self._column("rewards", lambda: np.stack([s.rewards for s in self.states]))

    @property
    def terminated(self) -> np.ndarray:
        return self._column(
            "terminated",
            lambda: np.fromiter((s.terminated for s in self.states), bool, self.size),
        )

    @property
    def truncated(self) -> np.ndarray:
        return self._column(
            "truncated",
            lambda: np.fromiter((s.truncated for s in self.states), bool, self.size),
        )

    @property
    def step_count(self) -> np.ndarray:
        return self._column(
            "step_count",
            lambda: np.fromiter((s.step_count for s in self.states), np.int32, self.size),
        )

    @property
    def player_to_role(self) -> np.ndarray:
        return self._column(
            "player_to_role",
            lambda: np.array([s.player_to_role for s in self.states], dtype=np.int8),
        )


def batch_init(game: str | GameSpec | GameDef, key: RngKey, n: int, *, max_steps: int | None = None) -> Batch:
    """n independent initial states from the n split children of ``key``."""
    gdef = resolve(game)
    if n < 1:
        raise EmptyBatch(f"batch size must be >= 1, got {n}")
    limit = gdef.max_steps if max_steps is None else max_steps
    if gdef.batch_kernel is not None:
        vstate = gdef.batch_kernel.init(gdef, key, n, limit)
        return Batch(gdef, n, limit, vstate=vstate)
    states = tuple(init(gdef, key.child(i), max_steps=limit) for i in range(n))
    return Batch(gdef, n, limit, states=states)


def batch_step(batch: Batch, actions, key: RngKey, *, workers: int | None = None) -> Batch:
    """Advance every slot one step; finished slots are replaced by fresh inits.

    Semantically a per-slot loop over split keys: slot i uses ``key.child(i)``
    for its chance events (or for its reset when the incoming state is
    terminal). Results are bit-identical for any worker count.
    """
    acts = np.asarray(actions)
    if acts.ndim != 1 or acts.shape[0] != batch.size:
        raise ShapeMismatch(
            f"expected {batch.size} actions, got shape {acts.shape}"
        )
    gdef = batch.game
    if gdef.batch_kernel is not None and batch._v is not None:
        vstate = gdef.batch_kernel.step(gdef, batch._v, acts, key, batch.max_steps)
        return Batch(gdef, batch.size, batch.max_steps, vstate=vstate)

    states = batch.states

    def _advance(i: int) -> EnvState:
        s = states[i]
        k = key.child(i)
        if s.terminated or s.truncated:
            return init(gdef, k, max_steps=batch.max_steps)
        try:
            return step(s, int(acts[i]), k)
        except IllegalAction as exc:
            raise IllegalAction(f"slot {i}: {exc}", action=exc.action, slot=i) from exc

    if workers and workers > 1:
        new_states = _parallel_map(_advance, batch.size, workers)
    else:
        new_states = [_advance(i) for i in range(batch.size)]
    return Batch(gdef, batch.size, batch.max_steps, states=tuple(new_states))


_EXEC_LOCK = threading.Lock()
_EXECUTORS: dict[int, ThreadPoolExecutor] = {}


def _executor(workers: int) -> ThreadPoolExecutor:
    with _EXEC_LOCK:
        ex = _EXECUTORS.get(workers)
        if ex is None:
            ex = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="boardbatch")
            _EXECUTORS[workers] = ex
        return ex


def _parallel_map(fn: Callable[[int], Any], n: int, workers: int) -> list:
    ex = _executor(workers)
    bounds = np.linspace(0, n, workers + 1).astype(int)
    chunks = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]

    def run_chunk(lo: int, hi: int) -> list:
        return [fn(i) for i in range(lo, hi)]

    futures = [ex.submit(run_chunk, lo, hi) for lo, hi in chunks]
    out: list = []
    for fut in futures:
        out.extend(fut.result())
    return out


def state_fingerprint(state: EnvState) -> bytes:
    """Canonical digest of every observable state field, for exact comparisons."""
    h = hashlib.blake2b(digest_size=16)
    h.update(state.game_id.encode())
    h.update(
        struct.pack(
            "<iiBB",
            state.current_player,
            state.step_count,
            state.terminated,
            state.truncated,
        )
    )
    h.update(bytes(state.player_to_role))
    h.update(state.rewards.tobytes())
    h.update(np.packbits(state.legal_action_mask).tobytes())
    h.update(state.core.encode())
    return h.digest()


def batch_fingerprint(batch: Batch) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    for s in batch.states:
        h.update(state_fingerprint(s))
    return h.digest()
