"""HTTP service around the game engine: create games, submit moves, fetch
suggestions and snapshots, post annotations, download save files.

State lives in an in-memory store; mutations to one game are serialized by
a per-game lock while different games proceed concurrently. Snapshots are
pure projections, GET never mutates. When a save directory is configured,
finished games are written through to disk.
"""

from __future__ import annotations

import os
import threading
import uuid
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Response
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import savefile
from .engine import (
    DYNAMIC,
    GameState,
    OVER,
    PUZZLE,
    add_annotation,
    apply_player_move,
    new_game,
    suggest_move,
)
from .errors import GameOverError, IllegalMoveError
from .lattice import LatticeSpec, OFF_LEFT, OFF_RIGHT
from .noise import NoiseSpec
from .pairrank import Move, PairFeatures

DEFAULT_STATIC_DIR = Path(__file__).resolve().parents[2] / "frontend" / "dist"


class GameStore:
    def __init__(self) -> None:
        self._games: dict[str, GameState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def create(self, game: GameState) -> str:
        game_id = uuid.uuid4().hex[:12]
        with self._registry_lock:
            self._games[game_id] = game
            self._locks[game_id] = threading.Lock()
        return game_id

    def get(self, game_id: str) -> GameState:
        game = self._games.get(game_id)
        if game is None:
            raise HTTPException(status_code=404, detail=f"no game {game_id}")
        return game

    def lock(self, game_id: str) -> threading.Lock:
        if game_id not in self._locks:
            raise HTTPException(status_code=404, detail=f"no game {game_id}")
        return self._locks[game_id]


def snapshot(game_id: str, g: GameState) -> dict:
    clusters = g.tracker.clusters(g.syndrome, g.spec.d)
    defect_rows = []
    for cl in clusters:
        for (r, c), v in cl.members:
            defect_rows.append({"position": [r, c], "value": v, "cluster": cl.id})
    defect_rows.sort(key=lambda row: row["position"])
    return {
        "id": game_id,
        "width": g.spec.width,
        "height": g.spec.height,
        "d": g.spec.d,
        "mode": g.mode,
        "status": g.status,
        "score": g.score,
        "moves_made": g.moves_made,
        "defects": defect_rows,
    }


def _config_error(msg: str) -> HTTPException:
    return HTTPException(status_code=400, detail=msg)


def _get_int(body: dict, key: str, default: int) -> int:
    v = body.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise _config_error(f"{key} must be an integer")
    return v


def _parse_game_config(body: object) -> tuple[LatticeSpec, NoiseSpec, str, int]:
    if not isinstance(body, dict):
        raise _config_error("config must be a JSON object")
    mode = body.get("mode", DYNAMIC)
    if mode not in (DYNAMIC, PUZZLE):
        raise _config_error(f"mode must be '{DYNAMIC}' or '{PUZZLE}'")
    seed = body.get("seed")
    if seed is None:
        seed = uuid.uuid4().int % (2**31)
    elif not isinstance(seed, int) or isinstance(seed, bool):
        raise _config_error("seed must be an integer")
    p = body.get("p", 0.1 if mode == PUZZLE else 0.0)
    if not isinstance(p, (int, float)) or isinstance(p, bool):
        raise _config_error("p must be a number")
    try:
        spec = LatticeSpec(
            width=_get_int(body, "width", 8),
            height=_get_int(body, "height", 8),
            d=_get_int(body, "d", 10),
        )
        noise = NoiseSpec(p=float(p), spawn_period=_get_int(body, "spawn_period", 1), seed=seed)
    except ValueError as exc:
        raise _config_error(str(exc)) from None
    return spec, noise, mode, _get_int(body, "warmup", 3)


def _parse_move(body: object) -> Move:
    if not isinstance(body, dict):
        raise HTTPException(status_code=422, detail="move must be a JSON object")

    def plaquette(v: object, name: str) -> tuple[int, int]:
        if (
            isinstance(v, (list, tuple))
            and len(v) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
        ):
            return (v[0], v[1])
        raise HTTPException(status_code=422, detail=f"{name} must be [row, col]")

    if "from" not in body or "to" not in body:
        raise HTTPException(status_code=422, detail="move needs 'from' and 'to'")
    source = plaquette(body["from"], "from")
    to = body["to"]
    if to in (OFF_LEFT, OFF_RIGHT):
        return Move(source, to)
    return Move(source, plaquette(to, "to"))


def _rationale(pair: PairFeatures | None) -> dict | None:
    if pair is None:
        return None
    return {
        "a": {"position": list(pair.a.position), "value": pair.a.value},
        "b": {"position": list(pair.b.position), "value": pair.b.value},
        "distance": pair.distance,
        "same_cluster": pair.same_cluster,
        "via_centre": pair.via_centre,
        "annihilates": pair.annihilates,
        "helpful_neighbours": pair.helpful_neighbours,
        "a_neighbours": pair.a_neighbours,
        "b_neighbours": pair.b_neighbours,
    }


def _move_json(move: Move) -> dict:
    target = list(move.target) if isinstance(move.target, tuple) else move.target
    return {"from": list(move.source), "to": target}


def create_app(save_dir: Path | None = None, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="decodoku")
    store = GameStore()
    if save_dir is None and os.environ.get("DECODOKU_SAVE_DIR"):
        save_dir = Path(os.environ["DECODOKU_SAVE_DIR"])

    def _write_through(game_id: str, g: GameState) -> None:
        if save_dir is not None and g.status == OVER:
            save_dir.mkdir(parents=True, exist_ok=True)
            (save_dir / f"{game_id}.save").write_text(savefile.serialize(g))

    @app.post("/games", status_code=201)
    def create_game(body: dict = Body(default={})) -> dict:
        spec, noise, mode, warmup = _parse_game_config(body)
        game = new_game(spec, noise, mode, warmup)
        game_id = store.create(game)
        _write_through(game_id, game)  # a huge warmup can end the game at birth
        return {"id": game_id, "snapshot": snapshot(game_id, game)}

    @app.get("/games/{game_id}")
    def get_game(game_id: str) -> dict:
        return snapshot(game_id, store.get(game_id))

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, body: dict = Body(...)) -> dict:
        move = _parse_move(body)
        with store.lock(game_id):
            g = store.get(game_id)
            try:
                apply_player_move(g, move)
            except GameOverError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from None
            except IllegalMoveError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
            _write_through(game_id, g)
            return snapshot(game_id, g)

    @app.get("/games/{game_id}/suggestion")
    def get_suggestion(game_id: str):
        g = store.get(game_id)
        action = suggest_move(g)
        if action is None:
            return Response(status_code=204)
        return {"move": _move_json(action.move), "rationale": _rationale(action.top_pair)}

    @app.post("/games/{game_id}/annotations")
    def post_annotation(game_id: str, body: dict = Body(...)) -> dict:
        text = body.get("text") if isinstance(body, dict) else None
        if not isinstance(text, str):
            raise HTTPException(status_code=422, detail="annotation needs a 'text' string")
        text = " ".join(text.splitlines()).strip()
        with store.lock(game_id):
            g = store.get(game_id)
            if not text:
                return {"stored": False}
            return {"stored": True, "tick": add_annotation(g, text)}

    @app.get("/games/{game_id}/savefile", response_class=PlainTextResponse)
    def get_savefile(game_id: str) -> str:
        return savefile.serialize(store.get(game_id))

    if static_dir is None:
        static_dir = Path(os.environ.get("DECODOKU_STATIC", DEFAULT_STATIC_DIR))
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    return app
