/** JSON shapes spoken by the analysis service. */

export type Direction = "uv" | "vu";

export interface EdgeJson {
  id: string;
  u: string;
  v: string;
}

export interface GraphJson {
  vertices: string[];
  edges: EdgeJson[];
  cells: string[][];
  special: string[];
  /** Optional drawing coordinates; the solver ignores them. */
  layout?: Record<string, [number, number]>;
}

/** A graph plus one direction (or null) per edge. */
export interface PositionJson extends GraphJson {
  orientation: Record<string, Direction | null>;
}

export interface MoveJson {
  edge: string;
  dir: Direction;
}

export interface MoveReport extends MoveJson {
  childGrundy: number;
  winning: boolean;
}

export interface IllegalOption extends MoveJson {
  reason: string;
}

export interface AnalysisReport {
  grundy: number;
  winner: "first" | "second";
  moves: MoveReport[];
  illegal: IllegalOption[];
  nodes: number;
  millis: number;
}

export interface FamilyInfo {
  name: string;
  /** Parameter name to human description, as served by /api/families. */
  params: Record<string, string>;
}

export interface HealthInfo {
  status: string;
  version: string;
}

/**
 * The start-of-game position. Every later position comes back verbatim
 * from /api/move; this is the only one the client builds itself.
 */
export function emptyPosition(graph: GraphJson): PositionJson {
  const orientation: Record<string, Direction | null> = {};
  for (const edge of graph.edges) orientation[edge.id] = null;
  return { ...graph, orientation };
}

export function moveKey(move: MoveJson): string {
  return `${move.edge}:${move.dir}`;
}

export function sameMove(a: MoveJson, b: MoveJson): boolean {
  return a.edge === b.edge && a.dir === b.dir;
}
