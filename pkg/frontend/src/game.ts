/** One human-versus-engine game, held entirely in service-issued state. */

import { SingleFlight } from "./api.js";
import { chooseReply } from "./engine.js";
import { MoveHistory } from "./history.js";
import {
  emptyPosition,
  type AnalysisReport,
  type GraphJson,
  type MoveJson,
  type PositionJson,
} from "./types.js";

export type Turn = "human" | "engine";

/** The slice of the service the session talks to. */
export interface EngineApi {
  analyze(
    position: PositionJson | GraphJson,
    signal?: AbortSignal,
  ): Promise<AnalysisReport>;
  move(
    position: PositionJson | GraphJson,
    move: MoveJson,
  ): Promise<PositionJson>;
}

/**
 * Game state machine. Every position after the first comes verbatim from
 * /api/move and every displayed Grundy number comes verbatim from
 * /api/analyze, so the session can never drift from the service's view
 * of the game. Reports are cached per position, which makes undo/redo
 * instant and keeps the overlay stable offline once a position has been
 * analyzed.
 */
export class GameSession {
  private history: MoveHistory | null = null;
  private reports = new Map<string, AnalysisReport>();
  private flight = new SingleFlight();
  private firstMover: Turn = "human";
  private busy = false;

  /** Fired after every state change, including mid-pipeline ones. */
  onUpdate?: () => void;

  constructor(private readonly api: EngineApi) {}

  get loaded(): boolean {
    return this.history !== null;
  }

  get position(): PositionJson {
    return this.entries.current.position;
  }

  /** Analyze report for the current position, if already fetched. */
  get report(): AnalysisReport | null {
    return this.reports.get(positionKey(this.position)) ?? null;
  }

  get toMove(): Turn {
    const even = this.entries.depth % 2 === 0;
    return even === (this.firstMover === "human") ? "human" : "engine";
  }

  get over(): boolean {
    const report = this.report;
    return report !== null && report.moves.length === 0;
  }

  /** The player who made the last move wins under normal play. */
  get winnerRole(): Turn | null {
    if (!this.over) return null;
    return this.toMove === "human" ? "engine" : "human";
  }

  get lastMove(): MoveJson | null {
    return this.entries.current.move;
  }

  get playedMoves(): MoveJson[] {
    return this.entries.moves;
  }

  get canUndo(): boolean {
    return this.loaded && this.entries.canUndo && !this.busy;
  }

  get canRedo(): boolean {
    return this.loaded && this.entries.canRedo && !this.busy;
  }

  get pending(): boolean {
    return this.busy;
  }

  private get entries(): MoveHistory {
    if (!this.history) throw new Error("no board loaded");
    return this.history;
  }

  async load(graph: GraphJson): Promise<void> {
    this.history = new MoveHistory(emptyPosition(graph));
    this.reports.clear();
    this.firstMover = "human";
    this.busy = false;
    this.notify();
    await this.ensureReport();
  }

  /**
   * Applies the human's move, then lets the engine answer. Throws the
   * service's ApiError untouched when the move is illegal; the session
   * state is unchanged in that case.
   */
  async humanMove(move: MoveJson): Promise<void> {
    this.expectTurn("human");
    this.busy = true;
    try {
      const next = await this.api.move(this.position, move);
      this.entries.push(next, move, "human");
      this.notify();
      const report = await this.ensureReport();
      if (report === null || report.moves.length === 0) return;
      await this.replyOnce(report);
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  /**
   * One engine ply. Used for "engine starts" on a fresh board and for
   * resuming after an undo landed on the engine's turn; humanMove drives
   * it automatically otherwise.
   */
  async engineMove(): Promise<void> {
    this.expectTurn("engine");
    this.busy = true;
    try {
      const report = await this.ensureReport();
      if (report === null || report.moves.length === 0) return;
      await this.replyOnce(report);
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  /** On a fresh board, hands the first move to the engine and plays it. */
  async engineStarts(): Promise<void> {
    if (this.entries.depth !== 0) throw new Error("game already under way");
    this.firstMover = "engine";
    await this.engineMove();
  }

  async undo(): Promise<void> {
    if (this.canUndo) {
      this.entries.undo();
      this.notify();
      await this.ensureReport();
    }
  }

  async redo(): Promise<void> {
    if (this.canRedo) {
      this.entries.redo();
      this.notify();
      await this.ensureReport();
    }
  }

  /** Re-requests the current report after connectivity returns. */
  async refresh(): Promise<void> {
    await this.ensureReport();
  }

  private async replyOnce(report: AnalysisReport): Promise<void> {
    const reply = chooseReply(report);
    if (reply === null) return;
    const next = await this.api.move(this.position, reply);
    this.entries.push(next, reply, "engine");
    this.notify();
    await this.ensureReport();
  }

  private async ensureReport(): Promise<AnalysisReport | null> {
    const position = this.position;
    const key = positionKey(position);
    const cached = this.reports.get(key);
    if (cached) return cached;
    const report = await this.flight.run((signal) =>
      this.api.analyze(position, signal),
    );
    if (report === null) return null; // superseded by a newer request
    this.reports.set(key, report);
    this.notify();
    return report;
  }

  private expectTurn(turn: Turn): void {
    if (!this.loaded) throw new Error("no board loaded");
    if (this.busy) throw new Error("a move is already pending");
    if (this.over) throw new Error("the game is over");
    if (this.toMove !== turn) throw new Error(`not the ${turn}'s turn`);
  }

  private notify(): void {
    this.onUpdate?.();
  }
}

function positionKey(position: PositionJson): string {
  return position.edges
    .map((e) => `${e.id}=${position.orientation[e.id] ?? "-"}`)
    .join("|");
}
