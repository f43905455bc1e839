/** Wires the board, the session and the controls into the page. */

import { ApiClient, ApiError } from "./api.js";
import { BoardView } from "./board.js";
import { GameSession } from "./game.js";
import type { FamilyInfo, GraphJson } from "./types.js";

/**
 * The service normally runs on its own port, so default to the usual
 * localhost address; `?api=http://host:port` overrides it.
 */
function apiBase(): string {
  const override = new URLSearchParams(location.search).get("api");
  return (override ?? "http://localhost:8000").replace(/\/$/, "");
}

function mustFind<T extends Element>(selector: string): T {
  const node = document.querySelector<T>(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node;
}

class ExplorerApp {
  private readonly api = new ApiClient(apiBase());
  private readonly session = new GameSession(this.api);
  private readonly board: BoardView;

  private readonly familySelect = mustFind<HTMLSelectElement>("#family");
  private readonly paramBox = mustFind<HTMLSpanElement>("#params");
  private readonly pasteBox = mustFind<HTMLTextAreaElement>("#graph-json");
  private readonly overlayToggle = mustFind<HTMLInputElement>("#overlay");
  private readonly engineButton = mustFind<HTMLButtonElement>("#engine-move");
  private readonly undoButton = mustFind<HTMLButtonElement>("#undo");
  private readonly redoButton = mustFind<HTMLButtonElement>("#redo");
  private readonly statusLine = mustFind<HTMLElement>("#status");
  private readonly banner = mustFind<HTMLElement>("#banner");
  private readonly offlineBar = mustFind<HTMLElement>("#offline");
  private readonly toastBox = mustFind<HTMLElement>("#toast");

  private families: FamilyInfo[] = [];
  private toastTimer: number | undefined;

  constructor() {
    this.board = new BoardView(
      mustFind<SVGSVGElement>("#board"),
      (move) => void this.guard(this.session.humanMove(move)),
      (option) => this.toast(`${option.edge} ${option.dir} is illegal: ${option.reason}`),
    );
    this.session.onUpdate = () => this.render();

    this.familySelect.addEventListener("change", () => this.renderParams());
    mustFind<HTMLButtonElement>("#load").addEventListener("click", () =>
      void this.loadFamily(),
    );
    mustFind<HTMLButtonElement>("#load-json").addEventListener("click", () =>
      void this.loadPasted(),
    );
    this.engineButton.addEventListener("click", () => void this.engineTurn());
    this.undoButton.addEventListener("click", () =>
      void this.guard(this.session.undo()),
    );
    this.redoButton.addEventListener("click", () =>
      void this.guard(this.session.redo()),
    );
    this.overlayToggle.addEventListener("change", () => this.render());
    mustFind<HTMLButtonElement>("#retry").addEventListener("click", () =>
      void this.reconnect(),
    );
  }

  async start(): Promise<void> {
    await this.reconnect();
  }

  /** Health probe plus whatever state the session is missing. */
  private async reconnect(): Promise<void> {
    try {
      await this.api.health();
      if (this.families.length === 0) {
        this.families = await this.api.families();
        this.renderFamilies();
      }
      this.setOffline(false);
      if (this.session.loaded) {
        await this.session.refresh();
      } else {
        await this.loadFamily();
      }
    } catch {
      this.setOffline(true);
    }
  }

  private async loadFamily(): Promise<void> {
    const name = this.familySelect.value;
    const params: Record<string, string> = {};
    for (const input of this.paramBox.querySelectorAll("input")) {
      if (input.value.trim() !== "") params[input.name] = input.value.trim();
    }
    await this.guard(
      this.api.family(name, params).then((graph) => this.session.load(graph)),
    );
  }

  private async loadPasted(): Promise<void> {
    let graph: GraphJson;
    try {
      graph = JSON.parse(this.pasteBox.value);
    } catch {
      this.toast("the pasted text is not valid JSON");
      return;
    }
    // validate against the service before adopting the board
    await this.guard(
      this.api.analyze(graph).then(() => this.session.load(graph)),
    );
  }

  private async engineTurn(): Promise<void> {
    const fresh = this.session.playedMoves.length === 0;
    await this.guard(
      fresh ? this.session.engineStarts() : this.session.engineMove(),
    );
  }

  /** Routes failures to the right surface: toast for the service's
   *  refusals, the offline banner for transport errors. */
  private async guard(work: Promise<void>): Promise<void> {
    try {
      await work;
      this.setOffline(false);
    } catch (err) {
      if (err instanceof ApiError) {
        this.toast(err.reason ? `${err.reason}: ${err.message}` : err.message);
      } else if (err instanceof Error && err.message.includes("turn")) {
        this.toast(err.message);
      } else {
        this.setOffline(true);
      }
    }
    this.render();
  }

  private render(): void {
    const session = this.session;
    if (!session.loaded) return;
    this.board.render(session.position, session.report, {
      overlay: this.overlayToggle.checked,
      lastMove: session.lastMove,
    });

    this.undoButton.disabled = !session.canUndo;
    this.redoButton.disabled = !session.canRedo;
    // active on a fresh board (engine may open) or when an undo left
    // the engine on the clock
    const fresh = session.playedMoves.length === 0;
    const engineTurn = session.toMove === "engine";
    this.engineButton.disabled =
      session.pending || session.over || !(fresh || engineTurn);
    this.engineButton.textContent = fresh ? "engine starts" : "engine move";

    const report = session.report;
    if (session.pending) {
      this.statusLine.textContent = "thinking...";
    } else if (report === null) {
      this.statusLine.textContent = "waiting for analysis";
    } else {
      const youWin = (report.winner === "first") === (session.toMove === "human");
      this.statusLine.textContent =
        `Grundy ${report.grundy} · ` +
        (session.over
          ? "no moves remain"
          : `${session.toMove === "human" ? "your move" : "engine to move"} · ` +
            (youWin ? "you can force a win" : "engine has the win"));
    }

    if (session.over) {
      this.banner.textContent =
        session.winnerRole === "human"
          ? "You win: the engine has no move."
          : "Engine wins: you have no move.";
      this.banner.hidden = false;
    } else {
      this.banner.hidden = true;
    }
  }

  private renderFamilies(): void {
    this.familySelect.replaceChildren(
      ...this.families.map((family) => {
        const option = document.createElement("option");
        option.value = family.name;
        option.textContent = family.name;
        return option;
      }),
    );
    this.familySelect.value = "cycle_with_special";
    this.renderParams();
  }

  private renderParams(): void {
    const family = this.families.find((f) => f.name === this.familySelect.value);
    this.paramBox.replaceChildren(
      ...Object.entries(family?.params ?? {}).map(([name, description]) => {
        const input = document.createElement("input");
        input.name = name;
        input.placeholder = name;
        input.title = description;
        input.size = 6;
        return input;
      }),
    );
  }

  private setOffline(offline: boolean): void {
    this.offlineBar.hidden = !offline;
  }

  private toast(message: string): void {
    this.toastBox.textContent = message;
    this.toastBox.hidden = false;
    clearTimeout(this.toastTimer);
    this.toastTimer = setTimeout(() => {
      this.toastBox.hidden = true;
    }, 4000) as unknown as number;
  }
}

addEventListener("DOMContentLoaded", () => {
  void new ExplorerApp().start();
});
