// Game controller: owns the UI state (snapshot, selection, suggestion,
// pending flag) and renders the board into a root element. Every state
// transition round-trips through the service; the client never mutates
// defect values itself. One mutation may be in flight at a time.

import { ApiClient, ApiError } from "./api.js";
import type { GameConfig, MoveTarget, Plaquette, Snapshot, Suggestion } from "./types.js";
import { buildBoard, describeRationale, isAdjacent, offSideFor } from "./viewmodel.js";

interface Banner {
  kind: "info" | "error";
  text: string;
  retry: (() => Promise<void>) | null;
}

export class GameController {
  snapshot: Snapshot | null = null;
  selected: Plaquette | null = null;
  suggestion: Suggestion | null = null;
  hintsEnabled = true;
  busy = false;
  banner: Banner | null = null;
  lastSavedText: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
    private readonly doc: Document = document,
  ) {}

  get gameId(): string {
    if (!this.snapshot) throw new Error("no game yet");
    return this.snapshot.id;
  }

  async newGame(config: GameConfig): Promise<void> {
    await this.run(async () => {
      const created = await this.api.createGame(config);
      this.snapshot = created.snapshot;
      this.selected = null;
      await this.refreshSuggestion();
    });
  }

  async refreshSuggestion(): Promise<void> {
    if (!this.snapshot || !this.hintsEnabled || this.snapshot.status !== "running") {
      this.suggestion = null;
      return;
    }
    this.suggestion = await this.api.getSuggestion(this.snapshot.id);
  }

  async toggleHints(): Promise<void> {
    this.hintsEnabled = !this.hintsEnabled;
    await this.refreshSuggestion();
    this.render();
  }

  defectAt(cell: Plaquette): boolean {
    return !!this.snapshot?.defects.some(
      (d) => d.position[0] === cell[0] && d.position[1] === cell[1],
    );
  }

  /** Click-select then click-target; clicking a second defect reselects. */
  async handleCellClick(cell: Plaquette): Promise<void> {
    if (!this.snapshot || this.busy || this.snapshot.status !== "running") return;
    if (this.selected === null) {
      if (this.defectAt(cell)) {
        this.selected = cell;
        this.banner = null;
      }
      this.render();
      return;
    }
    const from = this.selected;
    if (from[0] === cell[0] && from[1] === cell[1]) {
      this.selected = null;
      this.render();
      return;
    }
    if (isAdjacent(from, cell)) {
      await this.submitMove(from, cell);
      return;
    }
    if (this.defectAt(cell)) {
      this.selected = cell;
      this.render();
      return;
    }
    // rejected locally: the service would 422 anyway
    this.banner = { kind: "error", text: "target must be an adjacent square", retry: null };
    this.render();
  }

  async handleOffClick(side: "OFF:left" | "OFF:right"): Promise<void> {
    if (!this.snapshot || this.busy || this.selected === null) return;
    if (offSideFor(this.selected, this.snapshot.width) !== side) {
      this.banner = { kind: "error", text: "that defect is not on this boundary", retry: null };
      this.render();
      return;
    }
    await this.submitMove(this.selected, side);
  }

  /** Drop handler for drag moves; adjacency is prechecked locally. */
  async handleDrop(from: Plaquette, to: MoveTarget): Promise<void> {
    if (!this.snapshot || this.busy) return;
    if (typeof to !== "string" && !isAdjacent(from, to)) {
      this.banner = { kind: "error", text: "target must be an adjacent square", retry: null };
      this.render();
      return;
    }
    if (typeof to === "string" && offSideFor(from, this.snapshot.width) !== to) {
      this.banner = { kind: "error", text: "that defect is not on this boundary", retry: null };
      this.render();
      return;
    }
    await this.submitMove(from, to);
  }

  async submitMove(from: Plaquette, to: MoveTarget): Promise<void> {
    await this.run(async () => {
      this.snapshot = await this.api.postMove(this.gameId, { from, to });
      this.selected = null;
      await this.refreshSuggestion();
    });
  }

  async followSuggestion(): Promise<void> {
    const s = this.suggestion;
    if (!s) return;
    await this.submitMove(s.move.from, s.move.to);
  }

  async annotate(text: string): Promise<boolean> {
    const trimmed = text.trim();
    if (!trimmed || !this.snapshot) return false; // empty annotations are ignored
    let stored = false;
    await this.run(async () => {
      stored = (await this.api.postAnnotation(this.gameId, trimmed)).stored;
    });
    return stored;
  }

  /** Fetches the save text, triggers a browser download, and returns it. */
  async downloadSave(): Promise<string> {
    const text = await this.api.getSavefile(this.gameId);
    this.lastSavedText = text;
    const urlApi = (globalThis as { URL?: typeof URL }).URL;
    if (urlApi && typeof urlApi.createObjectURL === "function") {
      const anchor = this.doc.createElement("a");
      anchor.href = urlApi.createObjectURL(new Blob([text], { type: "text/plain" }));
      anchor.download = `decodoku-${this.gameId}.save`;
      // target keeps headless DOMs from navigating the page to the blob
      anchor.target = "_blank";
      anchor.click();
      urlApi.revokeObjectURL(anchor.href);
    }
    return text;
  }

  /** Serializes an async UI action: disables input, reports errors. */
  private async run(action: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.render();
    try {
      await action();
      this.banner = null;
    } catch (err) {
      if (err instanceof ApiError) {
        const text = err.status === 409 ? `game over: ${err.message}` : err.message;
        this.banner = { kind: "error", text, retry: null };
      } else {
        // network trouble: state untouched, offer a retry
        this.banner = {
          kind: "error",
          text: "network error, nothing was changed",
          retry: () => this.run(action),
        };
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  render(): void {
    const doc = this.doc;
    this.root.textContent = "";
    if (!this.snapshot) return;
    const vm = buildBoard(this.snapshot, this.selected, this.suggestion);

    const status = doc.createElement("div");
    status.className = "status-bar";
    status.dataset.status = vm.status;
    const scoreSpan = doc.createElement("span");
    scoreSpan.id = "score";
    scoreSpan.textContent = String(vm.score);
    status.append(
      `${vm.mode} game, `,
      vm.status === "over" ? "finished, final score " : "score ",
      scoreSpan,
    );
    this.root.appendChild(status);

    if (this.banner) {
      const banner = doc.createElement("div");
      banner.className = `banner banner-${this.banner.kind}`;
      banner.textContent = this.banner.text;
      if (this.banner.retry) {
        const retry = doc.createElement("button");
        retry.textContent = "retry";
        retry.className = "retry";
        const action = this.banner.retry;
        retry.addEventListener("click", () => void action());
        banner.appendChild(retry);
      }
      this.root.appendChild(banner);
    }

    const frame = doc.createElement("div");
    frame.className = "board-frame";
    frame.appendChild(this.offZone("OFF:left", vm.offLeftActive));

    const grid = doc.createElement("div");
    grid.className = "grid";
    grid.style.gridTemplateColumns = `repeat(${vm.width}, var(--cell))`;
    if (this.busy) grid.classList.add("busy");
    for (const row of vm.cells) {
      for (const cell of row) {
        const el = doc.createElement("div");
        el.className = "cell";
        el.dataset.row = String(cell.row);
        el.dataset.col = String(cell.col);
        if (cell.value !== null) {
          el.classList.add("defect");
          el.style.background = cell.color ?? "";
          const value = doc.createElement("span");
          value.className = "value";
          value.textContent = String(cell.value);
          const symbol = doc.createElement("span");
          symbol.className = "symbol";
          symbol.textContent = cell.symbol ?? "";
          el.append(value, symbol);
          el.draggable = true;
          el.addEventListener("dragstart", (ev) => {
            (ev as DragEvent).dataTransfer?.setData("text/plain", `${cell.row},${cell.col}`);
          });
        }
        if (cell.selected) el.classList.add("selected");
        if (cell.suggestionSource) el.classList.add("suggest-source");
        if (cell.suggestionTarget) el.classList.add("suggest-target");
        el.addEventListener("click", () => void this.handleCellClick([cell.row, cell.col]));
        el.addEventListener("dragover", (ev) => ev.preventDefault());
        el.addEventListener("drop", (ev) => {
          ev.preventDefault();
          const data = (ev as DragEvent).dataTransfer?.getData("text/plain");
          if (!data) return;
          const [r, c] = data.split(",").map(Number);
          void this.handleDrop([r, c], [cell.row, cell.col]);
        });
        grid.appendChild(el);
      }
    }
    if (vm.suggestion) grid.appendChild(this.arrowOverlay(vm.suggestion, vm.width));
    frame.appendChild(grid);
    frame.appendChild(this.offZone("OFF:right", vm.offRightActive));
    this.root.appendChild(frame);

    if (vm.suggestion) {
      const hint = doc.createElement("div");
      hint.className = "hint";
      hint.id = "hint";
      hint.textContent = `suggested: ${this.describeMove(vm.suggestion)} (${describeRationale(vm.suggestion)})`;
      this.root.appendChild(hint);
    }
  }

  private describeMove(s: Suggestion): string {
    const [r, c] = s.move.from;
    const to = s.move.to;
    return typeof to === "string" ? `${r},${c} -> ${to}` : `${r},${c} -> ${to[0]},${to[1]}`;
  }

  private offZone(side: "OFF:left" | "OFF:right", active: boolean): HTMLElement {
    const zone = this.doc.createElement("div");
    zone.className = "off-zone";
    zone.dataset.side = side;
    if (active) zone.classList.add("active");
    zone.textContent = side === "OFF:left" ? "⇠ off" : "off ⇢";
    zone.addEventListener("click", () => void this.handleOffClick(side));
    zone.addEventListener("dragover", (ev) => ev.preventDefault());
    zone.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const data = (ev as DragEvent).dataTransfer?.getData("text/plain");
      if (!data) return;
      const [r, c] = data.split(",").map(Number);
      void this.handleDrop([r, c], side);
    });
    return zone;
  }

  /** Arrow from suggestion source to target, positioned from grid
      coordinates so it works without layout measurement. */
  private arrowOverlay(s: Suggestion, width: number): SVGElement {
    const svgNS = "http://www.w3.org/2000/svg";
    const svg = this.doc.createElementNS(svgNS, "svg") as SVGElement;
    svg.setAttribute("class", "suggestion-arrow");
    const [fr, fc] = s.move.from;
    const to = s.move.to;
    let tr = fr;
    let tc = typeof to === "string" ? (to === "OFF:left" ? fc - 1 : fc + 1) : to[1];
    if (typeof to !== "string") tr = to[0];
    const cx = (col: number) => col * 52 + 26;
    const cy = (row: number) => row * 52 + 26;
    const line = this.doc.createElementNS(svgNS, "line");
    line.setAttribute("x1", String(cx(fc)));
    line.setAttribute("y1", String(cy(fr)));
    line.setAttribute("x2", String(cx(tc)));
    line.setAttribute("y2", String(cy(tr)));
    line.setAttribute("marker-end", "url(#arrowhead)");
    const defs = this.doc.createElementNS(svgNS, "defs");
    const marker = this.doc.createElementNS(svgNS, "marker");
    marker.setAttribute("id", "arrowhead");
    marker.setAttribute("markerWidth", "8");
    marker.setAttribute("markerHeight", "8");
    marker.setAttribute("refX", "6");
    marker.setAttribute("refY", "3");
    marker.setAttribute("orient", "auto");
    const tip = this.doc.createElementNS(svgNS, "path");
    tip.setAttribute("d", "M0,0 L6,3 L0,6 Z");
    marker.appendChild(tip);
    defs.appendChild(marker);
    svg.append(defs, line);
    return svg;
  }
}
