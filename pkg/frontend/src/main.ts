import { ApiClient } from "./api.js";
import { GameController } from "./app.js";
import type { GameConfig } from "./types.js";

function intOrUndefined(value: string): number | undefined {
  const n = Number.parseInt(value, 10);
  return Number.isFinite(n) ? n : undefined;
}

function start(): void {
  const root = document.getElementById("board-root");
  const form = document.getElementById("new-game-form") as HTMLFormElement | null;
  if (!root || !form) return;
  const controller = new GameController(new ApiClient(""), root, document);
  (window as unknown as { decodoku: GameController }).decodoku = controller;

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const data = new FormData(form);
    const config: GameConfig = {
      mode: data.get("mode") === "puzzle" ? "puzzle" : "dynamic",
      seed: intOrUndefined(String(data.get("seed") ?? "")),
      p: data.get("mode") === "puzzle" ? Number(data.get("p") ?? 0.1) : 0,
    };
    void controller.newGame(config);
  });

  const hintToggle = document.getElementById("hint-toggle");
  hintToggle?.addEventListener("click", () => void controller.toggleHints());
  const follow = document.getElementById("follow-suggestion");
  follow?.addEventListener("click", () => void controller.followSuggestion());

  const annotateForm = document.getElementById("annotate-form") as HTMLFormElement | null;
  annotateForm?.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const input = document.getElementById("annotation-text") as HTMLInputElement | null;
    if (!input) return;
    void controller.annotate(input.value).then((stored) => {
      if (stored) input.value = "";
    });
  });

  const download = document.getElementById("download-save");
  download?.addEventListener("click", () => void controller.downloadSave());
}

document.addEventListener("DOMContentLoaded", start);
