import { describe, expect, it } from "vitest";

import triangle from "./fixtures/triangle-special.json" with { type: "json" };
import { layoutGraph } from "../src/layout.js";
import type { GraphJson } from "../src/types.js";

function cycleGraph(n: number): GraphJson {
  const vertices = Array.from({ length: n }, (_, i) => `v${i}`);
  return {
    vertices,
    edges: vertices.map((v, i) => ({
      id: `e${i}`,
      u: v,
      v: vertices[(i + 1) % n],
    })),
    cells: [vertices],
    special: [],
  };
}

function dist(a: { x: number; y: number }, b: { x: number; y: number }) {
  return Math.hypot(a.x - b.x, a.y - b.y);
}

describe("layoutGraph", () => {
  it("adopts coordinates from the graph's layout block", () => {
    const layout = layoutGraph(triangle.graph as GraphJson);
    expect(layout.source).toBe("given");
    expect(layout.points.size).toBe(3);
    // the recorded triangle is equilateral; scaling must keep it so
    const [a, b, c] = [...layout.points.values()];
    expect(dist(a, b)).toBeCloseTo(dist(b, c), 6);
    expect(dist(b, c)).toBeCloseTo(dist(c, a), 6);
  });

  it("keeps every vertex inside the viewBox", () => {
    for (const graph of [triangle.graph as GraphJson, cycleGraph(7)]) {
      const layout = layoutGraph(graph);
      for (const p of layout.points.values()) {
        expect(p.x).toBeGreaterThanOrEqual(0);
        expect(p.x).toBeLessThanOrEqual(layout.width);
        expect(p.y).toBeGreaterThanOrEqual(0);
        expect(p.y).toBeLessThanOrEqual(layout.height);
      }
    }
  });

  it("falls back to a deterministic force placement", () => {
    const graph = cycleGraph(6);
    const first = layoutGraph(graph);
    const second = layoutGraph(graph);
    expect(first.source).toBe("force");
    expect([...first.points.entries()]).toEqual([...second.points.entries()]);
  });

  it("separates the vertices it places", () => {
    const layout = layoutGraph(cycleGraph(8));
    const points = [...layout.points.values()];
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        expect(dist(points[i], points[j])).toBeGreaterThan(20);
      }
    }
  });

  it("spreads the drawing over a useful share of the box", () => {
    const layout = layoutGraph(cycleGraph(5));
    const xs = [...layout.points.values()].map((p) => p.x);
    const ys = [...layout.points.values()].map((p) => p.y);
    const span = Math.max(
      Math.max(...xs) - Math.min(...xs),
      Math.max(...ys) - Math.min(...ys),
    );
    expect(span).toBeGreaterThan(layout.height / 2);
  });

  it("handles one- and two-vertex graphs without collapsing", () => {
    const lone: GraphJson = {
      vertices: ["a"],
      edges: [],
      cells: [],
      special: [],
    };
    expect(layoutGraph(lone).points.size).toBe(1);

    const pair: GraphJson = {
      vertices: ["a", "b"],
      edges: [{ id: "e1", u: "a", v: "b" }],
      cells: [],
      special: ["a"],
    };
    const layout = layoutGraph(pair);
    const [a, b] = [...layout.points.values()];
    expect(dist(a, b)).toBeGreaterThan(50);
  });
});
