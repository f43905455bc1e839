/**
 * End-to-end checks against a live service process. Spawns
 * `python3 -m gameofcycles.cli serve` on a side port, then drives real
 * HTTP through the same client and session code the page uses.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { setTimeout as sleep } from "node:timers/promises";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { chooseReply } from "../src/engine.js";
import { GameSession } from "../src/game.js";
import {
  emptyPosition,
  sameMove,
  type GraphJson,
  type MoveJson,
  type PositionJson,
} from "../src/types.js";

const PORT = 18731;
const api = new ApiClient(`http://127.0.0.1:${PORT}`);
let service: ChildProcess;

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "gameofcycles.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  for (let attempt = 0; ; attempt++) {
    try {
      const health = await api.health();
      expect(health.status).toBe("ok");
      return;
    } catch {
      if (attempt >= 120 || service.exitCode !== null) {
        throw new Error("service did not come up");
      }
      await sleep(250);
    }
  }
}, 60_000);

afterAll(() => {
  service?.kill();
});

describe("service basics", () => {
  it("lists families and builds the special triangle", async () => {
    const families = await api.families();
    expect(families.map((f) => f.name)).toContain("cycle_with_special");
    const graph = await api.family("cycle_with_special", { n: 3 });
    expect(graph.vertices).toHaveLength(3);
    expect(graph.edges).toHaveLength(3);
    expect(graph.special).toHaveLength(1);
    expect(graph.cells).toHaveLength(1);
  });

  it("rejects unknown families with 404", async () => {
    await expect(api.family("moebius")).rejects.toMatchObject({
      status: 404,
    });
  });

  it("answers 409 for a position with a pending cell", async () => {
    const graph = await api.family("cycle_with_special", { n: 3 });
    const position = emptyPosition(graph);
    // two consistent arrows around a triangle leave its cell pending,
    // which legal play can never produce
    position.orientation[graph.edges[0].id] = "uv";
    position.orientation[graph.edges[1].id] = "uv";
    await expect(api.analyze(position)).rejects.toMatchObject({
      status: 409,
      reason: "pending-cell",
    });
  });

  it("refuses moves with the reason the report promised", async () => {
    const graph = await api.family("cycle_with_special", { n: 3 });
    const report = await api.analyze(graph);
    const opening = report.moves.find((m) => !m.winning)!;
    const after = await api.move(emptyPosition(graph), opening);
    const refusals = (await api.analyze(after)).illegal;
    const reasons = new Set(refusals.map((r) => r.reason));
    expect(reasons).toContain("death-move");
    expect(reasons).toContain("sink-source");
    for (const refusal of refusals) {
      await expect(
        api.move(after, { edge: refusal.edge, dir: refusal.dir }),
      ).rejects.toMatchObject({ status: 422, reason: refusal.reason });
    }
  });

  it("flags the pendant-tail lollipop opening the report way", async () => {
    const graph = await api.family("lollipop");
    const report = await api.analyze(graph);

    const winning = report.moves.filter((m) => m.winning);
    expect(winning.length).toBeGreaterThan(0);
    const winningEdges = new Set(winning.map((m) => m.edge));
    expect(winningEdges.size).toBe(1);

    // the winning edge is the triangle edge away from the tail: it
    // touches neither the degree-3 joint nor the pendant tip
    const degree = new Map<string, number>();
    for (const edge of graph.edges) {
      degree.set(edge.u, (degree.get(edge.u) ?? 0) + 1);
      degree.set(edge.v, (degree.get(edge.v) ?? 0) + 1);
    }
    const joint = graph.vertices.find((v) => degree.get(v) === 3)!;
    const [edgeId] = winningEdges;
    const winningEdge = graph.edges.find((e) => e.id === edgeId)!;
    expect([winningEdge.u, winningEdge.v]).not.toContain(joint);

    // the tail edge itself is never playable: both directions are
    // refused for the sink or source they would create at the tip
    const tip = graph.vertices.find((v) => degree.get(v) === 1)!;
    const tail = graph.edges.find((e) => e.u === tip || e.v === tip)!;
    const tailOptions = report.illegal.filter((r) => r.edge === tail.id);
    expect(tailOptions).toHaveLength(2);
    for (const option of tailOptions) {
      expect(option.reason).toBe("sink-source");
    }
    expect(report.moves.some((m) => m.edge === tail.id)).toBe(false);
  });
});

describe("explorer round-trip on the special triangle", () => {
  let graph: GraphJson;

  beforeAll(async () => {
    graph = await api.family("cycle_with_special", { n: 3 });
  });

  it("scripts a losing opening into a full engine win", async () => {
    const session = new GameSession(api);
    await session.load(graph);
    expect(session.report?.grundy).toBe(2);

    const losing = session.report!.moves.find((m) => !m.winning)!;
    await session.humanMove({ edge: losing.edge, dir: losing.dir });

    // driving to a loss here takes a single reply; play any remaining
    // turns just in case the engine ever leaves one
    while (!session.over) {
      const next = session.report!.moves[0];
      await session.humanMove({ edge: next.edge, dir: next.dir });
    }
    expect(session.winnerRole).toBe("engine");
    expect(session.toMove).toBe("human");
    expect(sameMove(session.playedMoves[0], losing)).toBe(true);
    // after e01 uv the lone legal reply closes the game
    expect(session.playedMoves[1]).toEqual({ edge: "e03", dir: "vu" });
  });

  it("loses for the human in every continuation of every bad opening", async () => {
    const opening = await api.analyze(graph);
    expect(opening.grundy).toBe(2);
    const losers = opening.moves.filter((m) => !m.winning);
    expect(losers.length).toBeGreaterThan(0);

    let states = 0;

    /**
     * Exhaustive game tree below a position, engine playing its fixed
     * policy, the human trying everything. Every reached state is built
     * by /api/move and re-validated by /api/analyze, and each parent's
     * claimed childGrundy must equal the child's own analyzed grundy:
     * that is exactly what the overlay displays.
     */
    async function crush(
      position: PositionJson,
      toMove: "human" | "engine",
    ): Promise<void> {
      states += 1;
      const report = await api.analyze(position);
      if (report.moves.length === 0) {
        expect(toMove).toBe("human"); // the human is the one stuck
        return;
      }
      const tryMove = async (move: MoveJson, claimed: number) => {
        const next = await api.move(position, move);
        expect((await api.analyze(next)).grundy).toBe(claimed);
        await crush(next, toMove === "human" ? "engine" : "human");
      };
      if (toMove === "engine") {
        const reply = chooseReply(report)!;
        const claim = report.moves.find((m) => sameMove(m, reply))!;
        await tryMove(reply, claim.childGrundy);
      } else {
        for (const move of report.moves) {
          await tryMove(move, move.childGrundy);
        }
      }
    }

    for (const loser of losers) {
      const start = await api.move(emptyPosition(graph), loser);
      await crush(start, "engine");
    }
    expect(states).toBeGreaterThanOrEqual(losers.length * 2);
  }, 60_000);

  it("keeps the session position identical to the service's JSON", async () => {
    const session = new GameSession(api);
    await session.load(graph);
    const losing = session.report!.moves.find((m) => !m.winning)!;
    await session.humanMove({ edge: losing.edge, dir: losing.dir });

    let replayed: PositionJson | GraphJson = emptyPosition(graph);
    for (const move of session.playedMoves) {
      replayed = await api.move(replayed, move);
    }
    expect(session.position).toEqual(replayed);
  });
});
