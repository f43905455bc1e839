import { describe, expect, it } from "vitest";

import { MoveHistory } from "../src/history.js";
import { emptyPosition, type GraphJson, type PositionJson } from "../src/types.js";

const graph: GraphJson = {
  vertices: ["a", "b", "c"],
  edges: [
    { id: "e1", u: "a", v: "b" },
    { id: "e2", u: "b", v: "c" },
  ],
  cells: [],
  special: ["a", "c"],
};

function after(edge: string, dir: "uv" | "vu", base?: PositionJson): PositionJson {
  const position = structuredClone(base ?? emptyPosition(graph));
  position.orientation[edge] = dir;
  return position;
}

describe("MoveHistory", () => {
  it("starts at the given position with nothing to step", () => {
    const history = new MoveHistory(emptyPosition(graph));
    expect(history.depth).toBe(0);
    expect(history.current.move).toBeNull();
    expect(history.canUndo).toBe(false);
    expect(history.canRedo).toBe(false);
    expect(history.moves).toEqual([]);
  });

  it("walks back and forth over stored positions unchanged", () => {
    const start = emptyPosition(graph);
    const p1 = after("e1", "uv");
    const p2 = after("e2", "vu", p1);
    const history = new MoveHistory(start);
    history.push(p1, { edge: "e1", dir: "uv" }, "human");
    history.push(p2, { edge: "e2", dir: "vu" }, "engine");

    expect(history.depth).toBe(2);
    expect(history.moves).toEqual([
      { edge: "e1", dir: "uv" },
      { edge: "e2", dir: "vu" },
    ]);

    expect(history.undo()).toBe(true);
    expect(history.current.position).toEqual(p1);
    expect(history.current.by).toBe("human");
    expect(history.undo()).toBe(true);
    expect(history.current.position).toEqual(start);
    expect(history.undo()).toBe(false);

    expect(history.redo()).toBe(true);
    expect(history.redo()).toBe(true);
    expect(history.current.position).toEqual(p2);
    expect(history.redo()).toBe(false);
  });

  it("drops the redo tail when a new move is pushed", () => {
    const history = new MoveHistory(emptyPosition(graph));
    const p1 = after("e1", "uv");
    const p2 = after("e2", "uv", p1);
    history.push(p1, { edge: "e1", dir: "uv" }, "human");
    history.push(p2, { edge: "e2", dir: "uv" }, "engine");
    history.undo();
    history.undo();

    const p1b = after("e1", "vu");
    history.push(p1b, { edge: "e1", dir: "vu" }, "human");
    expect(history.canRedo).toBe(false);
    expect(history.depth).toBe(1);
    expect(history.current.position).toEqual(p1b);
    expect(history.moves).toEqual([{ edge: "e1", dir: "vu" }]);
  });
});
