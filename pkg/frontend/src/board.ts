/** SVG rendering of a position, with clickable direction handles. */

import { layoutGraph, type BoardLayout, type Point } from "./layout.js";
import {
  moveKey,
  type AnalysisReport,
  type Direction,
  type IllegalOption,
  type MoveJson,
  type MoveReport,
  type PositionJson,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VERTEX_RADIUS = 9;

export interface RenderOptions {
  /** Show per-direction child Grundy values and winning-move accents. */
  overlay: boolean;
  lastMove: MoveJson | null;
}

/**
 * Stateless redraw of the whole board on every render call; positions
 * have at most a few dozen elements, so there is nothing to diff.
 *
 * Every undirected edge carries two arrowhead handles, one per
 * direction, each pointing at the endpoint the arrow would reach. Legal
 * handles play the move on click; illegal ones are greyed out and carry
 * the service's refusal reason as a tooltip.
 */
export class BoardView {
  private layoutKey = "";
  private layout: BoardLayout | null = null;

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly onPick: (move: MoveJson) => void,
    private readonly onBlocked: (option: IllegalOption) => void,
  ) {}

  render(
    position: PositionJson,
    report: AnalysisReport | null,
    options: RenderOptions,
  ): void {
    const layout = this.layoutFor(position);
    this.svg.setAttribute(
      "viewBox",
      `0 0 ${layout.width} ${layout.height}`,
    );
    this.svg.replaceChildren(defs());

    const at = (vertex: string) => layout.points.get(vertex) as Point;
    const legal = new Map<string, MoveReport>();
    const blocked = new Map<string, IllegalOption>();
    if (report) {
      for (const m of report.moves) legal.set(moveKey(m), m);
      for (const m of report.illegal) blocked.set(moveKey(m), m);
    }

    // shaded cells only when the drawing came with real coordinates;
    // force-placed cells are not reliably convex or even non-crossing
    if (layout.source === "given") {
      for (const cell of position.cells) {
        const polygon = el("polygon", {
          class: "cell",
          points: cell.map((v) => `${at(v).x},${at(v).y}`).join(" "),
        });
        this.svg.appendChild(polygon);
      }
    }

    for (const edge of position.edges) {
      const direction = position.orientation[edge.id];
      if (direction === null) {
        this.drawOpenEdge(edge.id, at(edge.u), at(edge.v), legal, blocked, options);
      } else {
        const [tail, head] =
          direction === "uv" ? [at(edge.u), at(edge.v)] : [at(edge.v), at(edge.u)];
        const isLast =
          options.lastMove !== null && options.lastMove.edge === edge.id;
        this.drawArrow(edge.id, tail, head, isLast);
      }
    }

    for (const vertex of position.vertices) {
      const p = at(vertex);
      const special = position.special.includes(vertex);
      const node = special
        ? el("rect", {
            class: "vertex special",
            x: String(p.x - VERTEX_RADIUS),
            y: String(p.y - VERTEX_RADIUS),
            width: String(2 * VERTEX_RADIUS),
            height: String(2 * VERTEX_RADIUS),
            transform: `rotate(45 ${p.x} ${p.y})`,
          })
        : el("circle", {
            class: "vertex",
            cx: String(p.x),
            cy: String(p.y),
            r: String(VERTEX_RADIUS),
          });
      node.appendChild(title(special ? `${vertex} (special)` : vertex));
      this.svg.appendChild(node);
    }
  }

  private drawOpenEdge(
    edgeId: string,
    u: Point,
    v: Point,
    legal: Map<string, MoveReport>,
    blocked: Map<string, IllegalOption>,
    options: RenderOptions,
  ): void {
    this.svg.appendChild(
      el("line", {
        class: "edge open",
        x1: String(u.x),
        y1: String(u.y),
        x2: String(v.x),
        y2: String(v.y),
      }),
    );
    // handle near v points at v ("uv"); handle near u points at u ("vu")
    this.drawHandle(edgeId, "uv", u, v, legal, blocked, options);
    this.drawHandle(edgeId, "vu", v, u, legal, blocked, options);
  }

  /** Arrowhead handle on the u-to-v line at 70% of the way to `toward`. */
  private drawHandle(
    edgeId: string,
    direction: Direction,
    from: Point,
    toward: Point,
    legal: Map<string, MoveReport>,
    blocked: Map<string, IllegalOption>,
    options: RenderOptions,
  ): void {
    const move: MoveJson = { edge: edgeId, dir: direction };
    const verdict = legal.get(moveKey(move)) ?? null;
    const refusal = blocked.get(moveKey(move)) ?? null;

    const tip = along(from, toward, 0.7);
    const angle =
      (Math.atan2(toward.y - from.y, toward.x - from.x) * 180) / Math.PI;
    const classes = ["handle"];
    if (refusal) classes.push("illegal");
    else if (verdict === null) classes.push("unknown");
    else if (options.overlay && verdict.winning) classes.push("winning");

    const handle = el("polygon", {
      class: classes.join(" "),
      points: "-7,-7 9,0 -7,7",
      transform: `translate(${tip.x} ${tip.y}) rotate(${angle})`,
    });
    if (refusal) {
      handle.appendChild(title(`${edgeId} ${direction}: ${refusal.reason}`));
      handle.addEventListener("click", () => this.onBlocked(refusal));
    } else if (verdict !== null) {
      handle.appendChild(title(`${edgeId} ${direction}`));
      handle.addEventListener("click", () => this.onPick(move));
    } else {
      handle.appendChild(title(`${edgeId} ${direction}: waiting for analysis`));
    }
    this.svg.appendChild(handle);

    if (options.overlay && verdict !== null) {
      const side = perpendicular(from, toward);
      const label = el("text", {
        class: verdict.winning ? "grundy winning" : "grundy",
        x: String(tip.x + 14 * side.x),
        y: String(tip.y + 14 * side.y + 4),
      });
      label.textContent = String(verdict.childGrundy);
      this.svg.appendChild(label);
    }
  }

  private drawArrow(
    edgeId: string,
    tail: Point,
    head: Point,
    isLast: boolean,
  ): void {
    // stop short of the head vertex so the marker stays visible
    const trimmed = along(head, tail, (VERTEX_RADIUS + 6) / distance(tail, head));
    const line = el("line", {
      class: isLast ? "edge directed last" : "edge directed",
      x1: String(tail.x),
      y1: String(tail.y),
      x2: String(trimmed.x),
      y2: String(trimmed.y),
      "marker-end": isLast ? "url(#arrow-last)" : "url(#arrow)",
    });
    line.appendChild(title(edgeId));
    this.svg.appendChild(line);
  }

  private layoutFor(position: PositionJson): BoardLayout {
    const key = JSON.stringify([
      position.vertices,
      position.edges,
      position.layout ?? null,
    ]);
    if (this.layout === null || key !== this.layoutKey) {
      this.layout = layoutGraph(position);
      this.layoutKey = key;
    }
    return this.layout;
  }
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function title(text: string): SVGElement {
  const node = document.createElementNS(SVG_NS, "title");
  node.textContent = text;
  return node;
}

function along(from: Point, to: Point, t: number): Point {
  return { x: from.x + (to.x - from.x) * t, y: from.y + (to.y - from.y) * t };
}

function distance(a: Point, b: Point): number {
  return Math.max(Math.hypot(b.x - a.x, b.y - a.y), 1e-9);
}

function perpendicular(from: Point, to: Point): Point {
  const d = distance(from, to);
  return { x: -(to.y - from.y) / d, y: (to.x - from.x) / d };
}

function defs(): SVGElement {
  const container = el("defs", {});
  for (const [id, cls] of [
    ["arrow", "arrowhead"],
    ["arrow-last", "arrowhead last"],
  ] as const) {
    const marker = el("marker", {
      id,
      viewBox: "0 0 10 10",
      refX: "8",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", class: cls }));
    container.appendChild(marker);
  }
  return container;
}
