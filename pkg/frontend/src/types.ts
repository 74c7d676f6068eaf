// Wire types for the game service. The client renders these verbatim and
// never derives game state on its own.

export type Plaquette = [number, number];
export type OffSide = "OFF:left" | "OFF:right";
export type MoveTarget = Plaquette | OffSide;

export interface Defect {
  position: Plaquette;
  value: number;
  cluster: number;
}

export interface Snapshot {
  id: string;
  width: number;
  height: number;
  d: number;
  mode: "dynamic" | "puzzle";
  status: "running" | "over";
  score: number;
  moves_made: number;
  defects: Defect[];
}

export interface MoveBody {
  from: Plaquette;
  to: MoveTarget;
}

export interface PairRationale {
  a: { position: Plaquette; value: number };
  b: { position: Plaquette; value: number };
  distance: number;
  same_cluster: boolean;
  via_centre: number;
  annihilates: boolean;
  helpful_neighbours: number;
  a_neighbours: number;
  b_neighbours: number;
}

export interface Suggestion {
  move: MoveBody;
  rationale: PairRationale | null;
}

export interface GameConfig {
  mode?: "dynamic" | "puzzle";
  width?: number;
  height?: number;
  d?: number;
  seed?: number;
  p?: number;
  spawn_period?: number;
  warmup?: number;
}
