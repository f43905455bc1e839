/** Undo/redo over the move history of one game. */

import type { MoveJson, PositionJson } from "./types.js";

export interface HistoryEntry {
  position: PositionJson;
  /** Move that produced this position; null for the starting entry. */
  move: MoveJson | null;
  by: "human" | "engine" | null;
}

/**
 * A cursor over past positions. Every entry stores the exact position
 * JSON the service returned, so undo and redo never recompute anything:
 * stepping around the history just re-selects stored states.
 */
export class MoveHistory {
  private entries: HistoryEntry[];
  private cursor = 0;

  constructor(start: PositionJson) {
    this.entries = [{ position: start, move: null, by: null }];
  }

  get current(): HistoryEntry {
    return this.entries[this.cursor];
  }

  /** Number of moves played up to the cursor. */
  get depth(): number {
    return this.cursor;
  }

  /** Moves from the start up to the cursor, in play order. */
  get moves(): MoveJson[] {
    return this.entries
      .slice(1, this.cursor + 1)
      .map((entry) => entry.move as MoveJson);
  }

  get canUndo(): boolean {
    return this.cursor > 0;
  }

  get canRedo(): boolean {
    return this.cursor < this.entries.length - 1;
  }

  /** Appends a played move, dropping any redo tail. */
  push(position: PositionJson, move: MoveJson, by: "human" | "engine"): void {
    this.entries.length = this.cursor + 1;
    this.entries.push({ position, move, by });
    this.cursor += 1;
  }

  undo(): boolean {
    if (!this.canUndo) return false;
    this.cursor -= 1;
    return true;
  }

  redo(): boolean {
    if (!this.canRedo) return false;
    this.cursor += 1;
    return true;
  }
}
