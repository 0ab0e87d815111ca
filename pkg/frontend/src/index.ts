/**
 * Typed-array bindings to the boardbatch engine.
 *
 * The engine runs out of process (`boardbatch serve`) speaking
 * line-delimited JSON on stdio. `make()` allocates one set of contiguous
 * buffers per environment; every `step()` refills them in place, so the
 * views handed back stay valid until the next call and no per-step
 * buffers are allocated on this side of the wire.
 */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, type Interface } from "node:readline";

export interface GameSpec {
  gameId: string;
  numPlayers: number;
  observationShape: number[];
  numActions: number;
}

export interface StepOutputs {
  /** Flat row-major (batch, ...observationShape), current player's view per slot. */
  observations: Float32Array;
  /** Flat (batch, numPlayers). */
  rewards: Float32Array;
  terminated: Uint8Array;
  truncated: Uint8Array;
  currentPlayer: Int32Array;
  /** Flat (batch, numActions), 0/1. */
  legalActionMask: Uint8Array;
}

export class EngineError extends Error {
  constructor(public readonly kind: string, message: string) {
    super(message);
    this.name = kind;
  }
}

interface Pending {
  resolve: (value: any) => void;
  reject: (err: Error) => void;
}

/** One serve process; requests are answered strictly in order. */
class Wire {
  private proc: ChildProcessWithoutNullStreams;
  private lines: Interface;
  private pending: Pending[] = [];
  private closed = false;

  constructor(command: string, args: string[]) {
    this.proc = spawn(command, args, { stdio: ["pipe", "pipe", "pipe"] });
    this.lines = createInterface({ input: this.proc.stdout });
    this.lines.on("line", (line) => {
      const waiter = this.pending.shift();
      if (!waiter) return;
      let parsed: any;
      try {
        parsed = JSON.parse(line);
      } catch (err) {
        waiter.reject(new EngineError("ProtocolError", `bad reply: ${line}`));
        return;
      }
      if (parsed.ok) {
        waiter.resolve(parsed);
      } else {
        waiter.reject(new EngineError(parsed.error ?? "EngineError", parsed.message ?? ""));
      }
    });
    this.proc.on("exit", () => {
      this.closed = true;
      for (const waiter of this.pending.splice(0)) {
        waiter.reject(new EngineError("ProcessExited", "engine process exited"));
      }
    });
  }

  request(payload: Record<string, unknown>): Promise<any> {
    if (this.closed) {
      return Promise.reject(new EngineError("ProcessExited", "engine process exited"));
    }
    return new Promise((resolve, reject) => {
      this.pending.push({ resolve, reject });
      this.proc.stdin.write(JSON.stringify(payload) + "\n");
    });
  }

  async close(): Promise<void> {
    if (this.closed) return;
    try {
      await this.request({ op: "shutdown" });
    } catch {
      // the process may already be gone
    }
    this.proc.stdin.end();
  }
}

/** Recursively copy nested JSON number/bool arrays into a flat typed array. */
function fillFlat(
  target: Float32Array | Int32Array | Uint8Array,
  nested: unknown,
  offset: number,
): number {
  if (Array.isArray(nested)) {
    for (const item of nested) offset = fillFlat(target, item, offset);
    return offset;
  }
  if (typeof nested === "boolean") {
    target[offset] = nested ? 1 : 0;
  } else {
    target[offset] = nested as number;
  }
  return offset + 1;
}

function product(xs: number[]): number {
  return xs.reduce((a, b) => a * b, 1);
}

function parseSpec(raw: any): GameSpec {
  return {
    gameId: raw.game_id,
    numPlayers: raw.num_players,
    observationShape: raw.observation_shape,
    numActions: raw.num_actions,
  };
}

export class BoundBatchEnv {
  readonly spec: GameSpec;
  readonly batchSize: number;
  /** Batch-prefixed shapes of the exposed buffers. */
  readonly observationShape: number[];
  readonly maskShape: number[];
  readonly rewardsShape: number[];

  private readonly buffers: StepOutputs;
  private readonly observeBuffer: Float32Array;
  private closed = false;

  constructor(
    private readonly wire: Wire,
    private readonly handle: number,
    spec: GameSpec,
    batchSize: number,
    initialOutputs: any,
  ) {
    this.spec = spec;
    this.batchSize = batchSize;
    this.observationShape = [batchSize, ...spec.observationShape];
    this.maskShape = [batchSize, spec.numActions];
    this.rewardsShape = [batchSize, spec.numPlayers];
    const obsLen = batchSize * product(spec.observationShape);
    this.buffers = {
      observations: new Float32Array(obsLen),
      rewards: new Float32Array(batchSize * spec.numPlayers),
      terminated: new Uint8Array(batchSize),
      truncated: new Uint8Array(batchSize),
      currentPlayer: new Int32Array(batchSize),
      legalActionMask: new Uint8Array(batchSize * spec.numActions),
    };
    this.observeBuffer = new Float32Array(obsLen);
    this.refill(initialOutputs);
  }

  private refill(outputs: any): void {
    fillFlat(this.buffers.observations, outputs.observations, 0);
    fillFlat(this.buffers.rewards, outputs.rewards, 0);
    fillFlat(this.buffers.terminated, outputs.terminated, 0);
    fillFlat(this.buffers.truncated, outputs.truncated, 0);
    fillFlat(this.buffers.currentPlayer, outputs.current_player, 0);
    fillFlat(this.buffers.legalActionMask, outputs.legal_action_mask, 0);
  }

  /** Current outputs (views of the reused buffers; valid until the next step). */
  outputs(): StepOutputs {
    return this.buffers;
  }

  /**
   * Advance every slot one step with auto-reset, exactly the engine-native
   * batch_step semantics. Rejects (leaving the buffers untouched) on a
   * shape mismatch or an illegal action, which the engine reports with the
   * offending slot index.
   */
  async step(actions: ArrayLike<number>): Promise<StepOutputs> {
    this.assertOpen();
    const reply = await this.wire.request({
      op: "step",
      handle: this.handle,
      actions: Array.from(actions),
    });
    this.refill(reply.outputs);
    return this.buffers;
  }

  /** Observation of a fixed player index for every slot. */
  async observe(player: number): Promise<Float32Array> {
    this.assertOpen();
    const reply = await this.wire.request({
      op: "observe",
      handle: this.handle,
      player,
    });
    fillFlat(this.observeBuffer, reply.observations, 0);
    return this.observeBuffer;
  }

  async close(): Promise<void> {
    if (this.closed) return;
    this.closed = true;
    await this.wire.request({ op: "close", handle: this.handle });
  }

  private assertOpen(): void {
    if (this.closed) throw new EngineError("ClosedEnv", "environment is closed");
  }
}

export class Engine {
  private wire: Wire;

  constructor(command?: string, args?: string[]) {
    const cmd = command ?? process.env.BOARDBATCH_CMD ?? "boardbatch";
    this.wire = new Wire(cmd, args ?? ["serve"]);
  }

  async spec(gameId: string): Promise<GameSpec> {
    const reply = await this.wire.request({ op: "spec", game_id: gameId });
    return parseSpec(reply.spec);
  }

  /** Engine-side batch_init with the session key schedule derived from seed. */
  async make(gameId: string, batchSize: number, seed: number): Promise<BoundBatchEnv> {
    const reply = await this.wire.request({
      op: "make",
      game_id: gameId,
      batch_size: batchSize,
      seed,
    });
    return new BoundBatchEnv(this.wire, reply.handle, parseSpec(reply.spec), batchSize, reply.outputs);
  }

  async shutdown(): Promise<void> {
    await this.wire.close();
  }
}
