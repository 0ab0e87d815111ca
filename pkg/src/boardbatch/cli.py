"""Command-line harness.

Subcommands: ``bench`` (random-policy throughput), ``play`` (agent
round-robin with CSV results), ``render`` (text rendering of a random
trajectory's final state), plus ``trace`` and ``serve`` which expose batch
trajectories over JSON for out-of-process bindings.

Exit codes: 0 success, 2 usage error, 3 unsupported game, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .agents import AgentPolicy, mcts_policy, random_agent, random_policy, run_matches
from .bench import (
    BatchSession,
    BenchConfig,
    IoError,
    batch_outputs,
    bench_run,
    render_text,
    write_results,
    write_results_long,
)
from .core import UnsupportedGame, game_spec, init, observe, resolve, step
from .rng import RngKey

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boardbatch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="random-policy throughput benchmark")
    p.add_argument("--game", required=True)
    p.add_argument("--batch", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", default="1", help="worker count or 'auto'")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--long", action="store_true", help="write a long-format table instead")

    p = sub.add_parser("play", help="round-robin matches between agents")
    p.add_argument("--game", required=True)
    p.add_argument("--agents", required=True, help="comma list: random, mcts, mcts:<sims>")
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV output path")

    p = sub.add_parser("render", help="render the state after N random steps")
    p.add_argument("--game", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=0)

    p = sub.add_parser("trace", help="dump a random batched trajectory as JSON")
    p.add_argument("--game", required=True)
    p.add_argument("--batch", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    sub.add_parser("serve", help="JSON-line batch environment server on stdio")
    return parser


def _parse_agent(label: str) -> AgentPolicy:
    label = label.strip()
    if label == "random":
        return random_policy()
    if label == "mcts":
        return mcts_policy()
    if label.startswith("mcts:"):
        return mcts_policy(int(label.split(":", 1)[1]))
    raise ValueError(f"unknown agent {label!r} (expected random, mcts, or mcts:<sims>)")


def _cmd_bench(args) -> int:
    config = BenchConfig(
        game_id=args.game,
        batch_size=args.batch,
        total_steps=args.steps,
        seed=args.seed,
        worker_threads="auto" if args.threads == "auto" else int(args.threads),
        output_path=args.out,
    )
    result = bench_run(config)
    print(
        f"{result.game_id}: batch={result.batch_size} steps={result.total_steps} "
        f"threads={result.threads} wall={result.wall_seconds:.3f}s "
        f"samples/s={result.samples_per_second:,.0f} episodes={result.episodes_completed}"
    )
    if args.out:
        if args.long:
            write_results_long([result], args.out)
        else:
            write_results([result], args.out, kind="bench")
    return EXIT_OK


def _cmd_play(args) -> int:
    agents = [_parse_agent(a) for a in args.agents.split(",")]
    results = run_matches(args.game, agents, args.games, RngKey(args.seed))
    for r in results:
        print(
            f"{r.game_id}: {r.agent_a} vs {r.agent_b} -> "
            f"{r.wins_a}/{r.wins_b}/{r.draws} (wins_a/wins_b/draws)"
        )
    if args.out:
        write_results(results, args.out, kind="matches")
    return EXIT_OK


def _cmd_render(args) -> int:
    gdef = resolve(args.game)
    root = RngKey(args.seed)
    state = init(gdef, root.child(0))
    for t in range(1, args.steps + 1):
        if state.terminated or state.truncated:
            break
        action = random_agent(state, root.child(2 * t - 1))
        state = step(state, action, root.child(2 * t))
    print(render_text(state))
    return EXIT_OK


def _json_outputs(outputs: dict) -> dict:
    return {name: arr.tolist() for name, arr in outputs.items()}


def _cmd_trace(args) -> int:
    session = BatchSession(args.game, args.batch, args.seed)
    spec = session.gdef.spec
    doc = {
        "game_id": spec.game_id,
        "batch_size": args.batch,
        "seed": args.seed,
        "spec": {
            "game_id": spec.game_id,
            "num_players": spec.num_players,
            "observation_shape": list(spec.observation_shape),
            "num_actions": spec.num_actions,
        },
        "initial": _json_outputs(batch_outputs(session.batch)),
        "steps": [],
    }
    for _ in range(args.steps):
        actions = session.sample_random_actions()
        batch = session.step(actions)
        doc["steps"].append(
            {"actions": actions.tolist(), "outputs": _json_outputs(batch_outputs(batch))}
        )
    try:
        with open(args.out, "w") as fh:
            json.dump(doc, fh)
    except OSError as exc:
        raise IoError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {args.steps}-step trace for {spec.game_id} to {args.out}")
    return EXIT_OK


def _cmd_serve(_args) -> int:
    sessions: dict[int, BatchSession] = {}
    next_handle = 1
    out = sys.stdout
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            req = json.loads(line)
            op = req["op"]
            if op == "shutdown":
                out.write(json.dumps({"ok": True}) + "\n")
                out.flush()
                break
            if op == "spec":
                spec = game_spec(req["game_id"])
                resp = {
                    "ok": True,
                    "spec": {
                        "game_id": spec.game_id,
                        "num_players": spec.num_players,
                        "observation_shape": list(spec.observation_shape),
                        "num_actions": spec.num_actions,
                    },
                }
            elif op == "make":
                session = BatchSession(req["game_id"], int(req["batch_size"]), int(req["seed"]))
                handle = next_handle
                next_handle += 1
                sessions[handle] = session
                spec = session.gdef.spec
                resp = {
                    "ok": True,
                    "handle": handle,
                    "spec": {
                        "game_id": spec.game_id,
                        "num_players": spec.num_players,
                        "observation_shape": list(spec.observation_shape),
                        "num_actions": spec.num_actions,
                    },
                    "outputs": _json_outputs(batch_outputs(session.batch)),
                }
            elif op == "step":
                session = sessions[req["handle"]]
                actions = np.asarray(req["actions"], dtype=np.int64)
                batch = session.step(actions)
                resp = {"ok": True, "outputs": _json_outputs(batch_outputs(batch))}
            elif op == "observe":
                session = sessions[req["handle"]]
                player = int(req["player"])
                obs = np.stack([observe(s, player) for s in session.batch.states])
                resp = {"ok": True, "observations": obs.tolist()}
            elif op == "close":
                sessions.pop(req["handle"], None)
                resp = {"ok": True}
            else:
                resp = {"ok": False, "error": "UsageError", "message": f"unknown op {op!r}"}
        except Exception as exc:  # report over the wire, keep serving
            resp = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
        out.write(json.dumps(resp) + "\n")
        out.flush()
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bench": _cmd_bench,
        "play": _cmd_play,
        "render": _cmd_render,
        "trace": _cmd_trace,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except UnsupportedGame as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (IoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
