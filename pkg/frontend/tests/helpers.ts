/** Replay of recorded service traffic (see scripts/build_ui_fixtures.py). */

import { ApiError } from "../src/api.js";
import type { EngineApi } from "../src/game.js";
import type {
  AnalysisReport,
  Direction,
  GraphJson,
  MoveJson,
  PositionJson,
} from "../src/types.js";

export interface FixtureOutcome {
  status: number;
  next?: string;
  reason?: string;
  detail?: string;
}

export interface FixturePosition {
  orientation: Record<string, Direction | null>;
  report: AnalysisReport;
  moves: Record<string, FixtureOutcome>;
}

export interface Fixture {
  graph: GraphJson;
  start: string;
  positions: Record<string, FixturePosition>;
}

/**
 * Serves recorded /api/analyze and /api/move bodies keyed by position.
 * Refusals replay the recorded status and reason as ApiError, exactly
 * as the real client raises them.
 */
export class FakeApi implements EngineApi {
  calls = { analyze: 0, move: 0 };

  constructor(private readonly fixture: Fixture) {}

  get graph(): GraphJson {
    return structuredClone(this.fixture.graph);
  }

  async analyze(position: PositionJson | GraphJson): Promise<AnalysisReport> {
    this.calls.analyze += 1;
    return structuredClone(this.lookup(position).report);
  }

  async move(
    position: PositionJson | GraphJson,
    move: MoveJson,
  ): Promise<PositionJson> {
    this.calls.move += 1;
    const entry = this.lookup(position);
    const outcome = entry.moves[`${move.edge}:${move.dir}`];
    if (!outcome) {
      throw new ApiError(422, `unknown edge ${move.edge}`, "unknown-edge");
    }
    if (outcome.status !== 200) {
      throw new ApiError(outcome.status, outcome.detail ?? "", outcome.reason);
    }
    const next = this.fixture.positions[outcome.next as string];
    return structuredClone({
      ...this.fixture.graph,
      orientation: next.orientation,
    });
  }

  private lookup(position: PositionJson | GraphJson): FixturePosition {
    const orientation =
      "orientation" in position
        ? position.orientation
        : Object.fromEntries(position.edges.map((e) => [e.id, null]));
    const key = this.fixture.graph.edges
      .map((e) => `${e.id}=${orientation[e.id] ?? "-"}`)
      .join("|");
    const entry = this.fixture.positions[key];
    if (!entry) throw new Error(`position not in fixture: ${key}`);
    return entry;
  }
}
