"""Game engine for dynamic (arcade) and static (puzzle) play.

A move takes the whole charge at one plaquette and adds it to an adjacent
plaquette mod d, or pushes it off an absorbing boundary; each move is one
qudit correction and is written to the ledger. In dynamic mode a new error
spawns after every ``spawn_period`` moves, so the board decays under the
player. The game ends when defects occupy more than half the plaquettes;
the score is the number of moves survived.
"""

from __future__ import annotations

import copy
import math
import random
from dataclasses import dataclass, field

from .clusters import ProvenanceTracker
from .errors import ConfigurationError, GameOverError, IllegalMoveError
from .lattice import (
    OFF_LEFT,
    OFF_RIGHT,
    CorrectionLedger,
    ErrorEvent,
    LatticeSpec,
    Plaquette,
    SyndromeState,
    apply_shift,
    bordering_plaquettes,
    boundary_qudit,
    cut_flux,
    qudit_between,
    sign_on,
)
from .noise import NoiseSpec, generate_instance, rng_stream, sample_spawn
from .pairrank import BotAction, Move, select_action

DYNAMIC = "dynamic"
PUZZLE = "puzzle"

RUNNING = "running"
OVER = "over"

DEFAULT_WARMUP = 3


@dataclass
class MoveRecord:
    """One recorded player move. ``target`` is a plaquette or OFF marker."""

    source: Plaquette
    target: Plaquette | str
    tick: int = 0
    annotation: str | None = None


@dataclass
class GameState:
    spec: LatticeSpec
    noise: NoiseSpec
    mode: str
    syndrome: SyndromeState = field(default_factory=SyndromeState)
    tracker: ProvenanceTracker = field(default_factory=ProvenanceTracker)
    ledger: CorrectionLedger = field(default_factory=CorrectionLedger)
    error_log: list[tuple[int, ErrorEvent]] = field(default_factory=list)
    move_log: list[MoveRecord] = field(default_factory=list)
    annotations: list[tuple[int, str]] = field(default_factory=list)
    moves_made: int = 0
    status: str = RUNNING
    score: int = 0
    rng: random.Random = field(default_factory=random.Random)
    next_event_id: int = 0

    def copy(self) -> "GameState":
        return copy.deepcopy(self)


def defect_count(g: GameState) -> int:
    return len(g.syndrome.values)


def loss_threshold(spec: LatticeSpec) -> int:
    return math.ceil(0.5 * spec.width * spec.height)


def new_game(
    spec: LatticeSpec,
    noise: NoiseSpec,
    mode: str,
    warmup: int = DEFAULT_WARMUP,
) -> GameState:
    """Start a game. Puzzle mode draws one static instance and never spawns
    again; dynamic mode opens with ``warmup`` spawned errors."""
    if mode not in (DYNAMIC, PUZZLE):
        raise ConfigurationError(f"unknown mode {mode!r}")
    if warmup < 0:
        raise ConfigurationError(f"warmup must be >= 0, got {warmup}")
    g = GameState(spec=spec, noise=noise, mode=mode, rng=rng_stream(noise.seed, "spawn"))
    if mode == PUZZLE:
        for e in generate_instance(spec, noise, rng_stream(noise.seed, "instance")):
            apply_recorded_error(g, e, tick=0)
    else:
        for _ in range(warmup):
            _spawn(g, tick=0)
    is_game_over(g)
    return g


def apply_recorded_error(g: GameState, e: ErrorEvent, tick: int) -> None:
    """Apply an error event exactly as given (used for openings, spawns,
    and replay)."""
    apply_shift(g.syndrome, e.qudit, e.magnitude, g.spec)
    g.tracker.record_error(e, [p for p, _ in bordering_plaquettes(e.qudit, g.spec)])
    g.error_log.append((tick, e))
    g.next_event_id = max(g.next_event_id, e.event_id + 1)


def _spawn(g: GameState, tick: int) -> ErrorEvent:
    e = sample_spawn(g.spec, g.noise, g.rng, event_id=g.next_event_id)
    apply_recorded_error(g, e, tick)
    return e


def _validate_move(g: GameState, source: Plaquette, target: Plaquette | str) -> None:
    if g.status == OVER:
        raise GameOverError("game is over")
    if not g.spec.contains_plaquette(source):
        raise IllegalMoveError(f"source {source} outside the grid")
    if g.syndrome.value(source) == 0:
        raise IllegalMoveError(f"empty source {source}")
    if isinstance(target, tuple):
        if not g.spec.contains_plaquette(target):
            raise IllegalMoveError(f"target {target} outside the grid")
        if abs(source[0] - target[0]) + abs(source[1] - target[1]) != 1:
            raise IllegalMoveError(f"target {target} not adjacent to {source}")
    elif target == OFF_LEFT:
        if source[1] != 0:
            raise IllegalMoveError(f"left push requires column 0, got {source}")
    elif target == OFF_RIGHT:
        if source[1] != g.spec.width - 1:
            raise IllegalMoveError(f"right push requires column {g.spec.width - 1}, got {source}")
    else:
        raise IllegalMoveError(f"unknown target {target!r}")


def apply_recorded_move(g: GameState, move: Move | MoveRecord) -> MoveRecord:
    """Apply one move without spawning (replay path)."""
    source, target = move.source, move.target
    _validate_move(g, source, target)
    g.tracker.record_move(source, target, g.syndrome)
    v = g.syndrome.value(source)
    if isinstance(target, tuple):
        q = qudit_between(source, target)
    else:
        q = boundary_qudit(source, target, g.spec)
    k = (-v * sign_on(q, source, g.spec)) % g.spec.d
    apply_shift(g.syndrome, q, k, g.spec)
    g.ledger.add(q, k, g.spec.d)
    g.moves_made += 1
    g.score = g.moves_made
    record = MoveRecord(
        source=source,
        target=target,
        tick=g.moves_made,
        annotation=getattr(move, "annotation", None),
    )
    g.move_log.append(record)
    return record


def apply_player_move(g: GameState, move: Move | MoveRecord) -> GameState:
    """Apply a live player move: correction, tracker update, spawn cycle in
    dynamic mode, then the game-over check."""
    apply_recorded_move(g, move)
    if g.mode == DYNAMIC and g.moves_made % g.noise.spawn_period == 0:
        _spawn(g, tick=g.moves_made)
    is_game_over(g)
    return g


def is_game_over(g: GameState) -> bool:
    """True iff defects occupy more than half the plaquettes. Flips the
    status and freezes the score on first detection."""
    over = defect_count(g) > loss_threshold(g.spec)
    if over and g.status == RUNNING:
        g.status = OVER
        g.score = g.moves_made
    return g.status == OVER


def suggest_move(g: GameState) -> BotAction | None:
    """Bot suggestion for the current board with the pair that justified it,
    or None when there is nothing to suggest."""
    if g.status != RUNNING:
        return None
    return select_action(g.syndrome, g.tracker, g.spec)


def add_annotation(g: GameState, text: str) -> int:
    """Attach free text at the current tick; returns the tick."""
    g.annotations.append((g.moves_made, text))
    return g.moves_made


SOLVED = "solved"
LOGICAL_FAILURE = "logical_failure"
INCOMPLETE = "incomplete"


def solve_puzzle_check(g: GameState, moves: list[Move | MoveRecord]) -> str:
    """Apply a candidate solution to a copy of a puzzle and judge it.

    Solved means the syndrome cleared with zero flux through every cut;
    cleared with nonzero flux somewhere is a logical failure.
    """
    if g.mode != PUZZLE:
        raise ConfigurationError("solution checking only applies to puzzle mode")
    trial = g.copy()
    for i, m in enumerate(moves):
        try:
            apply_recorded_move(trial, m)
        except IllegalMoveError as exc:
            raise IllegalMoveError(f"move {i}: {exc}") from exc
    if trial.syndrome.values:
        return INCOMPLETE
    errors = [e for _, e in trial.error_log]
    for cut in range(g.spec.width + 1):
        if cut_flux(errors, trial.ledger, cut, g.spec) != 0:
            return LOGICAL_FAILURE
    return SOLVED


def legal_moves(g: GameState) -> list[Move]:
    """Every legal single move on the current board, row-major."""
    moves = []
    for (r, c) in sorted(g.syndrome.values):
        for target in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if g.spec.contains_plaquette(target):
                moves.append(Move((r, c), target))
        if c == 0:
            moves.append(Move((r, c), OFF_LEFT))
        if c == g.spec.width - 1:
            moves.append(Move((r, c), OFF_RIGHT))
    return moves


def random_policy(g: GameState, rng: random.Random) -> Move | None:
    """Uniformly random legal move, the baseline the bot is measured against."""
    options = legal_moves(g)
    return rng.choice(options) if options else None
