import csv
import os

import numpy as np
import pytest

import boardbatch as bb
from boardbatch.bench import (
    BatchSession,
    BenchConfig,
    IoError,
    batch_outputs,
    bench_run,
    render_text,
    write_results,
    write_results_long,
)
from boardbatch.elo import MatchResult


def test_sample_accounting_identity():
    result = bench_run(BenchConfig("tic_tac_toe", 32, 50, seed=1))
    assert result.total_steps == 50
    assert result.batch_size == 32
    assert result.samples_per_second == pytest.approx(32 * 50 / result.wall_seconds)
    assert result.episodes_completed > 0


def test_episodes_deterministic_across_runs_and_threads():
    a = bench_run(BenchConfig("connect_four", 16, 120, seed=7, worker_threads=1))
    b = bench_run(BenchConfig("connect_four", 16, 120, seed=7, worker_threads=1))
    c = bench_run(BenchConfig("connect_four", 16, 120, seed=7, worker_threads=4))
    assert a.episodes_completed == b.episodes_completed == c.episodes_completed


def test_bench_validates_config():
    with pytest.raises(ValueError):
        bench_run(BenchConfig("tic_tac_toe", 0, 10))
    with pytest.raises(ValueError):
        bench_run(BenchConfig("tic_tac_toe", 10, 0))
    with pytest.raises(bb.UnsupportedGame):
        bench_run(BenchConfig("chess", 2, 2))


def test_session_trajectories_replayable():
    def run():
        session = BatchSession("2048", 8, 123)
        prints = []
        for _ in range(40):
            session.step(session.sample_random_actions())
            prints.append(bb.batch_fingerprint(session.batch))
        return prints

    assert run() == run()


def test_batch_outputs_shapes():
    session = BatchSession("go_9x9", 4, 0)
    out = batch_outputs(session.batch)
    assert out["observations"].shape == (4, 9, 9, 17)
    assert out["legal_action_mask"].shape == (4, 82)
    assert out["rewards"].shape == (4, 2)
    assert out["terminated"].shape == (4,)
    assert out["current_player"].shape == (4,)


def test_render_text_contracts():
    state = bb.init("tic_tac_toe", bb.RngKey(0))
    state = bb.step(state, 0)
    text = render_text(state)
    assert text[0] == "X"
    assert "to move" in text

    go_state = bb.init("go_9x9", bb.RngKey(1))
    go_text = render_text(go_state).splitlines()
    grid = "".join(go_text[:9])
    assert len(grid) == 81 and set(grid) == {"."}

    k = bb.init("kuhn_poker", bb.RngKey(2))
    k = bb.step(k, 1)
    k = bb.step(k, 2)
    final = render_text(k)
    assert "terminated" in final.splitlines()[-1]
    assert "pot" in final


def test_write_results_bench_roundtrip(tmp_path):
    path = tmp_path / "bench.csv"
    result = bench_run(BenchConfig("tic_tac_toe", 4, 10, seed=3))
    write_results([result], path, kind="bench")
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    row = rows[0]
    assert row["game_id"] == "tic_tac_toe"
    assert int(row["batch_size"]) == 4
    assert float(row["wall_seconds"]) == result.wall_seconds
    assert float(row["samples_per_second"]) == result.samples_per_second
    assert int(row["episodes_completed"]) == result.episodes_completed
    header = open(path).readline().strip()
    assert header == "game_id,batch_size,total_steps,seed,threads,wall_seconds,samples_per_second,episodes_completed"


def test_write_results_matches_schema(tmp_path):
    path = tmp_path / "matches.csv"
    results = [MatchResult("hex", "mcts32", "random", 9, 1, 0)]
    write_results(results, path)
    lines = open(path).read().splitlines()
    assert lines[0] == "game_id,agent_a,agent_b,wins_a,wins_b,draws"
    assert lines[1] == "hex,mcts32,random,9,1,0"


def test_write_results_empty_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_results([], path, kind="bench")
    lines = open(path).read().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("game_id,")


def test_write_results_unwritable_raises():
    result = bench_run(BenchConfig("tic_tac_toe", 2, 2))
    with pytest.raises(IoError):
        write_results([result], "/nonexistent_dir_xyz/out.csv")


def test_long_format(tmp_path):
    path = tmp_path / "long.csv"
    result = bench_run(BenchConfig("tic_tac_toe", 4, 5, seed=0))
    write_results_long([result], path)
    rows = list(csv.DictReader(open(path)))
    metrics = {r["metric"] for r in rows}
    assert metrics == {"total_steps", "wall_seconds", "samples_per_second", "episodes_completed"}
    assert all(r["game_id"] == "tic_tac_toe" for r in rows)
