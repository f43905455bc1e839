/** Perfect-play move selection from an analyze report. */

import type { AnalysisReport, MoveJson } from "./types.js";

/**
 * The engine's reply: the first winning move in the report, else the move
 * with the smallest child Grundy value. The service lists moves sorted by
 * edge id then direction, so ties always break the same way and games
 * against the engine are reproducible.
 *
 * Returns null on a terminal report (no legal moves).
 */
export function chooseReply(report: AnalysisReport): MoveJson | null {
  let best: MoveJson | null = null;
  let bestGrundy = Infinity;
  for (const move of report.moves) {
    if (move.winning) return { edge: move.edge, dir: move.dir };
    if (move.childGrundy < bestGrundy) {
      best = { edge: move.edge, dir: move.dir };
      bestGrundy = move.childGrundy;
    }
  }
  return best;
}
