// Pure presentation logic: snapshot + UI selection -> cell grid. All game
// rules stay on the server; the only local judgement is the adjacency
// precheck that saves a doomed request.

import type { MoveTarget, OffSide, Plaquette, Snapshot, Suggestion } from "./types.js";

// ten distinguishable hues and symbols; clusters map through id mod 10
export const CLUSTER_COLORS = [
  "#e6194b",
  "#3cb44b",
  "#4363d8",
  "#f58231",
  "#911eb4",
  "#46f0f0",
  "#f032e6",
  "#bcf60c",
  "#008080",
  "#9a6324",
] as const;

export const CLUSTER_SYMBOLS = ["●", "■", "▲", "◆", "★", "✚", "✖", "◗", "⬟", "⬢"] as const;

export function clusterStyle(cluster: number): { color: string; symbol: string } {
  const i = ((cluster % 10) + 10) % 10;
  return { color: CLUSTER_COLORS[i], symbol: CLUSTER_SYMBOLS[i] };
}

export function isAdjacent(a: Plaquette, b: Plaquette): boolean {
  return Math.abs(a[0] - b[0]) + Math.abs(a[1] - b[1]) === 1;
}

/** The boundary push available from a cell, if any. */
export function offSideFor(cell: Plaquette, width: number): OffSide | null {
  if (cell[1] === 0) return "OFF:left";
  if (cell[1] === width - 1) return "OFF:right";
  return null;
}

export function sameTarget(a: MoveTarget, b: MoveTarget): boolean {
  if (typeof a === "string" || typeof b === "string") return a === b;
  return a[0] === b[0] && a[1] === b[1];
}

export interface CellView {
  row: number;
  col: number;
  value: number | null;
  cluster: number | null;
  color: string | null;
  symbol: string | null;
  selected: boolean;
  suggestionSource: boolean;
  suggestionTarget: boolean;
}

export interface BoardViewModel {
  width: number;
  height: number;
  cells: CellView[][];
  score: number;
  movesMade: number;
  status: "running" | "over";
  mode: string;
  selected: Plaquette | null;
  suggestion: Suggestion | null;
  // OFF zones light up when the selected defect sits in a boundary column,
  // or when the suggestion itself is a push
  offLeftActive: boolean;
  offRightActive: boolean;
}

export function buildBoard(
  snapshot: Snapshot,
  selected: Plaquette | null,
  suggestion: Suggestion | null,
): BoardViewModel {
  const cells: CellView[][] = [];
  for (let r = 0; r < snapshot.height; r++) {
    const row: CellView[] = [];
    for (let c = 0; c < snapshot.width; c++) {
      row.push({
        row: r,
        col: c,
        value: null,
        cluster: null,
        color: null,
        symbol: null,
        selected: selected !== null && selected[0] === r && selected[1] === c,
        suggestionSource: false,
        suggestionTarget: false,
      });
    }
    cells.push(row);
  }
  for (const defect of snapshot.defects) {
    const [r, c] = defect.position;
    const style = clusterStyle(defect.cluster);
    const cell = cells[r][c];
    cell.value = defect.value;
    cell.cluster = defect.cluster;
    cell.color = style.color;
    cell.symbol = style.symbol;
  }
  let offLeftActive = false;
  let offRightActive = false;
  if (suggestion) {
    const [sr, sc] = suggestion.move.from;
    cells[sr][sc].suggestionSource = true;
    const to = suggestion.move.to;
    if (typeof to === "string") {
      offLeftActive = offLeftActive || to === "OFF:left";
      offRightActive = offRightActive || to === "OFF:right";
    } else {
      cells[to[0]][to[1]].suggestionTarget = true;
    }
  }
  if (selected) {
    const side = offSideFor(selected, snapshot.width);
    offLeftActive = offLeftActive || side === "OFF:left";
    offRightActive = offRightActive || side === "OFF:right";
  }
  return {
    width: snapshot.width,
    height: snapshot.height,
    cells,
    score: snapshot.score,
    movesMade: snapshot.moves_made,
    status: snapshot.status,
    mode: snapshot.mode,
    selected,
    suggestion,
    offLeftActive,
    offRightActive,
  };
}

export function describeRationale(suggestion: Suggestion): string {
  const r = suggestion.rationale;
  if (!r) return "lone defect: walk it to the nearest boundary";
  const parts = [
    r.same_cluster ? "same cluster" : "different clusters",
    `distance ${r.distance}`,
    r.annihilates ? "annihilates" : `annihilates: no (helpful neighbours ${r.helpful_neighbours})`,
  ];
  return `pair ${r.a.value}+${r.b.value}: ` + parts.join(", ");
}
