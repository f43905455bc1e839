/** Vertex coordinates for the SVG board. */

import type { GraphJson } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface BoardLayout {
  points: Map<string, Point>;
  width: number;
  height: number;
  /** Whether coordinates came from the graph JSON or the force fallback. */
  source: "given" | "force";
}

const WIDTH = 640;
const HEIGHT = 520;
const MARGIN = 56;

/**
 * Coordinates from the graph's layout block when it covers every vertex,
 * else a force-directed placement. Either way the result is scaled to
 * fit the fixed viewBox with a margin, preserving aspect ratio.
 */
export function layoutGraph(graph: GraphJson): BoardLayout {
  const given = graph.layout;
  if (given && graph.vertices.every((v) => v in given)) {
    const points = new Map(
      graph.vertices.map((v) => [v, { x: given[v][0], y: given[v][1] }]),
    );
    return finish(points, "given");
  }
  return finish(forcePlace(graph), "force");
}

/**
 * Plain Fruchterman-Reingold with a cooling schedule. Vertices start on
 * a circle in vertex order, so the result is deterministic and cycles
 * come out already round.
 */
function forcePlace(graph: GraphJson): Map<string, Point> {
  const ids = graph.vertices;
  const n = ids.length;
  const index = new Map(ids.map((v, i) => [v, i]));
  const xs = new Array<number>(n);
  const ys = new Array<number>(n);
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    xs[i] = Math.cos(angle);
    ys[i] = Math.sin(angle);
  }
  if (n > 2) {
    const k = Math.sqrt(4 / n); // ideal edge length in a 2x2 area
    const edges = graph.edges.map(
      (e) => [index.get(e.u) as number, index.get(e.v) as number] as const,
    );
    let heat = 0.5;
    for (let round = 0; round < 300; round++) {
      const dx = new Array<number>(n).fill(0);
      const dy = new Array<number>(n).fill(0);
      for (let i = 0; i < n; i++) {
        for (let j = i + 1; j < n; j++) {
          let vx = xs[i] - xs[j];
          let vy = ys[i] - ys[j];
          let dist = Math.hypot(vx, vy);
          if (dist < 1e-9) {
            // identical points repel along a stable, index-derived direction
            vx = Math.cos(i + 7 * j);
            vy = Math.sin(i + 7 * j);
            dist = 1e-9;
          }
          const push = (k * k) / dist;
          dx[i] += (vx / dist) * push;
          dy[i] += (vy / dist) * push;
          dx[j] -= (vx / dist) * push;
          dy[j] -= (vy / dist) * push;
        }
      }
      for (const [i, j] of edges) {
        const vx = xs[i] - xs[j];
        const vy = ys[i] - ys[j];
        const dist = Math.max(Math.hypot(vx, vy), 1e-9);
        const pull = (dist * dist) / k;
        dx[i] -= (vx / dist) * pull;
        dy[i] -= (vy / dist) * pull;
        dx[j] += (vx / dist) * pull;
        dy[j] += (vy / dist) * pull;
      }
      for (let i = 0; i < n; i++) {
        const step = Math.hypot(dx[i], dy[i]);
        if (step > 1e-9) {
          const clamped = Math.min(step, heat);
          xs[i] += (dx[i] / step) * clamped;
          ys[i] += (dy[i] / step) * clamped;
        }
      }
      heat *= 0.985;
    }
  }
  return new Map(ids.map((v, i) => [v, { x: xs[i], y: ys[i] }]));
}

function finish(
  points: Map<string, Point>,
  source: "given" | "force",
): BoardLayout {
  const all = [...points.values()];
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const p of all) {
    minX = Math.min(minX, p.x);
    minY = Math.min(minY, p.y);
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const span = Math.max(spanX, spanY, 1e-9);
  const scale = Math.min(WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN) / span;
  const offsetX = (WIDTH - spanX * scale) / 2;
  const offsetY = (HEIGHT - spanY * scale) / 2;
  const fitted = new Map<string, Point>();
  for (const [id, p] of points) {
    fitted.set(id, {
      x: offsetX + (p.x - minX) * scale,
      y: offsetY + (p.y - minY) * scale,
    });
  }
  return { points: fitted, width: WIDTH, height: HEIGHT, source };
}
