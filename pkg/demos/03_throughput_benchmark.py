"""Random-policy throughput across batch sizes.

Reproduces the benchmark methodology at desk scale: random legal actions,
auto-reset on termination, samples/sec = batch_size * steps / wall time.
Larger batches amortize per-step overhead (and tic-tac-toe runs a fully
vectorized kernel), so throughput grows with batch size.
"""

import boardbatch as bb

GAME = "tic_tac_toe"

results = []
for batch_size in (1, 8, 64, 512, 1024):
    steps = max(50, 60_000 // batch_size)
    config = bb.BenchConfig(GAME, batch_size, steps, seed=0, worker_threads=1)
    result = bb.bench_run(config)
    results.append(result)
    print(
        f"batch {batch_size:5d}: {result.samples_per_second:12,.0f} samples/s "
        f"({result.episodes_completed} episodes in {result.wall_seconds:.2f}s)"
    )

ratio = results[-1].samples_per_second / results[0].samples_per_second
print(f"\nbatch-1024 vs batch-1 speedup: {ratio:.1f}x")

bb.write_results(results, "/tmp/boardbatch_bench.csv", kind="bench")
print("wrote /tmp/boardbatch_bench.csv")
