import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { GameController } from "../src/app.js";
import type { MoveBody, Snapshot } from "../src/types.js";

function snapshot(partial: Partial<Snapshot> = {}): Snapshot {
  return {
    id: "g1",
    width: 8,
    height: 8,
    d: 10,
    mode: "dynamic",
    status: "running",
    score: 0,
    moves_made: 0,
    defects: [
      { position: [0, 0], value: 3, cluster: 0 },
      { position: [0, 1], value: 7, cluster: 0 },
      { position: [5, 0], value: 4, cluster: 1 },
    ],
    ...partial,
  };
}

class StubApi {
  moves: MoveBody[] = [];
  annotations: string[] = [];
  failNextMove: Error | null = null;
  nextSnapshot: Snapshot = snapshot({ score: 1, moves_made: 1 });

  async createGame() {
    return { id: "g1", snapshot: snapshot() };
  }

  async getGame() {
    return snapshot();
  }

  async postMove(_id: string, move: MoveBody): Promise<Snapshot> {
    if (this.failNextMove) {
      const err = this.failNextMove;
      this.failNextMove = null;
      throw err;
    }
    this.moves.push(move);
    return this.nextSnapshot;
  }

  async getSuggestion() {
    return { move: { from: [0, 0] as [number, number], to: [0, 1] as [number, number] }, rationale: null };
  }

  async postAnnotation(_id: string, text: string) {
    this.annotations.push(text);
    return { stored: true, tick: 0 };
  }

  async getSavefile() {
    return "DECODOKU-SAVE v1\n...\n";
  }
}

function makeController(): { controller: GameController; api: StubApi; root: HTMLElement } {
  const api = new StubApi();
  const root = document.createElement("div");
  document.body.appendChild(root);
  const controller = new GameController(api as unknown as ApiClient, root, document);
  return { controller, api, root };
}

describe("GameController", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders the snapshot into a grid of cells", async () => {
    const { controller, root } = makeController();
    await controller.newGame({ mode: "dynamic" });
    expect(root.querySelectorAll(".cell")).toHaveLength(64);
    expect(root.querySelectorAll(".cell.defect")).toHaveLength(3);
    expect(root.querySelector("#score")?.textContent).toBe("0");
    expect(root.querySelector(".suggestion-arrow")).not.toBeNull();
  });

  it("click-select then adjacent click posts exactly one move", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    await controller.handleCellClick([0, 0]);
    expect(controller.selected).toEqual([0, 0]);
    await controller.handleCellClick([0, 1]);
    expect(api.moves).toEqual([{ from: [0, 0], to: [0, 1] }]);
    expect(controller.snapshot?.moves_made).toBe(1);
    expect(controller.selected).toBeNull();
  });

  it("rejects a non-adjacent target locally without posting", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    await controller.handleCellClick([0, 0]);
    await controller.handleCellClick([4, 4]);
    expect(api.moves).toEqual([]);
    expect(controller.banner?.text).toContain("adjacent");
  });

  it("drag-drop uses the same legality precheck", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    await controller.handleDrop([0, 0], [3, 3]);
    expect(api.moves).toEqual([]);
    await controller.handleDrop([0, 0], [0, 1]);
    expect(api.moves).toHaveLength(1);
  });

  it("boundary push requires the matching column", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    await controller.handleCellClick([0, 1]);
    await controller.handleOffClick("OFF:left");
    expect(api.moves).toEqual([]);
    expect(controller.banner?.text).toContain("boundary");
    await controller.handleCellClick([0, 1]); // deselect
    await controller.handleCellClick([5, 0]);
    await controller.handleOffClick("OFF:left");
    expect(api.moves).toEqual([{ from: [5, 0], to: "OFF:left" }]);
  });

  it("surfaces server rejections as banners", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    api.failNextMove = new ApiError(422, "empty source (0, 0)");
    await controller.handleCellClick([0, 0]);
    await controller.handleCellClick([0, 1]);
    expect(controller.banner?.text).toContain("empty source");
    expect(controller.banner?.retry).toBeNull();
  });

  it("offers a retry after a network failure and keeps state", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    const before = controller.snapshot;
    api.failNextMove = new TypeError("fetch failed");
    await controller.submitMove([0, 0], [0, 1]);
    expect(controller.snapshot).toBe(before);
    expect(controller.banner?.retry).not.toBeNull();
    await controller.banner!.retry!();
    expect(api.moves).toHaveLength(1);
    expect(controller.snapshot?.moves_made).toBe(1);
  });

  it("ignores empty annotations", async () => {
    const { controller, api } = makeController();
    await controller.newGame({});
    expect(await controller.annotate("   ")).toBe(false);
    expect(api.annotations).toEqual([]);
    expect(await controller.annotate("note")).toBe(true);
    expect(api.annotations).toEqual(["note"]);
  });

  it("never mutates defect values locally", async () => {
    const { controller } = makeController();
    await controller.newGame({});
    const defectsBefore = JSON.stringify(controller.snapshot?.defects);
    await controller.handleCellClick([0, 0]);
    await controller.handleCellClick([0, 0]); // select + deselect
    await controller.handleCellClick([7, 7]); // empty cell, no defect
    expect(JSON.stringify(controller.snapshot?.defects)).toBe(defectsBefore);
  });

  it("downloadSave returns the save text verbatim", async () => {
    const { controller } = makeController();
    await controller.newGame({});
    const text = await controller.downloadSave();
    expect(text.startsWith("DECODOKU-SAVE v1")).toBe(true);
    expect(controller.lastSavedText).toBe(text);
  });
});

describe("single in-flight mutation", () => {
  it("drops a second submit while one is pending", async () => {
    const api = new StubApi();
    let release: (snap: Snapshot) => void = () => {};
    const gate = new Promise<Snapshot>((resolve) => {
      release = resolve;
    });
    const slowApi = {
      ...api,
      createGame: api.createGame.bind(api),
      getSuggestion: api.getSuggestion.bind(api),
      postMove: async (_id: string, move: MoveBody) => {
        api.moves.push(move);
        return gate;
      },
    };
    const root = document.createElement("div");
    document.body.appendChild(root);
    const controller = new GameController(slowApi as unknown as ApiClient, root, document);
    await controller.newGame({});

    const first = controller.submitMove([0, 0], [0, 1]);
    expect(controller.busy).toBe(true);
    expect(root.querySelector(".grid")?.classList.contains("busy")).toBe(true);
    const second = controller.submitMove([0, 1], [0, 2]);
    release(snapshot({ score: 1, moves_made: 1 }));
    await Promise.all([first, second]);
    expect(api.moves).toEqual([{ from: [0, 0], to: [0, 1] }]);
    expect(controller.busy).toBe(false);
  });
});
