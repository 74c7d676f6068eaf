"""Text save files: serialization, strict parsing, and deterministic replay.

The format is newline-delimited ASCII, one record per line:

    DECODOKU-SAVE v1
    variant=Z10 grid=8x8 d=10 seed=12345 mode=dynamic spawn_period=1 p=0.0
    E H 2 2 3
    M 2,1 -> 2,2
    B 3,0 -> OFF:left
    # free-text annotation
    END score=17 status=over

``E`` lines record errors as resolved events (edge plus magnitude), never
RNG state, so a file is self-contained evidence of a game: replay applies
the recorded events instead of re-sampling. ``M`` is a move between
adjacent plaquettes, ``B`` a boundary push, ``#`` a player annotation at
the tick of the preceding move.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .engine import (
    DYNAMIC,
    GameState,
    MoveRecord,
    PUZZLE,
    add_annotation,
    apply_recorded_error,
    apply_recorded_move,
    is_game_over,
)
from .errors import (
    GameOverError,
    IllegalMoveError,
    InvalidCoordinateError,
    ReplayError,
    SaveParseError,
)
from .lattice import (
    OFF_LEFT,
    OFF_RIGHT,
    ErrorEvent,
    LatticeSpec,
    Plaquette,
    QuditId,
    bordering_plaquettes,
)
from .noise import NoiseSpec, rng_stream

MAGIC = "DECODOKU-SAVE v1"

_HEADER_RE = re.compile(
    r"^variant=(?P<variant>\S+) grid=(?P<w>\d+)x(?P<h>\d+) d=(?P<d>\d+) "
    r"seed=(?P<seed>-?\d+) mode=(?P<mode>\S+) spawn_period=(?P<sp>\d+) p=(?P<p>\S+)$"
)
_PLAQ = r"(-?\d+),(-?\d+)"
_E_RE = re.compile(r"^E (H|V) (-?\d+) (-?\d+) (-?\d+)$")
_M_RE = re.compile(rf"^M {_PLAQ} -> {_PLAQ}$")
_B_RE = re.compile(rf"^B {_PLAQ} -> (OFF:left|OFF:right)$")
_END_RE = re.compile(r"^END score=(\d+) status=(running|over)$")


@dataclass(frozen=True)
class ErrorLine:
    qudit: QuditId
    magnitude: int


@dataclass(frozen=True)
class MoveLine:
    source: Plaquette
    target: Plaquette | str


@dataclass(frozen=True)
class AnnotationLine:
    text: str


BodyLine = ErrorLine | MoveLine | AnnotationLine


@dataclass(frozen=True)
class SaveHeader:
    width: int
    height: int
    d: int
    seed: int
    mode: str
    spawn_period: int
    p: float

    @property
    def variant(self) -> str:
        return f"Z{self.d}"


@dataclass
class SaveDocument:
    header: SaveHeader
    body: list[BodyLine] = field(default_factory=list)
    score: int = 0
    status: str = "running"


def _clean_annotation(text: str) -> str:
    return " ".join(text.splitlines()).strip()


def build_document(g: GameState, annotations: list[tuple[int, str]] | None = None) -> SaveDocument:
    """Assemble the save document for a game, interleaving annotations at
    their recorded ticks (right after that tick's move line)."""
    if annotations is None:
        annotations = g.annotations
    notes: dict[int, list[str]] = {}
    for tick, text in annotations:
        text = _clean_annotation(text)
        if text:
            notes.setdefault(tick, []).append(text)
    errors_at: dict[int, list[ErrorEvent]] = {}
    for tick, e in g.error_log:
        errors_at.setdefault(tick, []).append(e)

    body: list[BodyLine] = []
    body += [ErrorLine(e.qudit, e.magnitude) for e in errors_at.get(0, [])]
    body += [AnnotationLine(t) for t in notes.get(0, [])]
    for move in g.move_log:
        body.append(MoveLine(move.source, move.target))
        body += [AnnotationLine(t) for t in notes.get(move.tick, [])]
        body += [ErrorLine(e.qudit, e.magnitude) for e in errors_at.get(move.tick, [])]
    return SaveDocument(
        header=SaveHeader(
            width=g.spec.width,
            height=g.spec.height,
            d=g.spec.d,
            seed=g.noise.seed,
            mode=g.mode,
            spawn_period=g.noise.spawn_period,
            p=g.noise.p,
        ),
        body=body,
        score=g.score,
        status=g.status,
    )


def render(doc: SaveDocument) -> str:
    """Canonical text for a document; ends with a newline."""
    h = doc.header
    lines = [
        MAGIC,
        f"variant={h.variant} grid={h.width}x{h.height} d={h.d} seed={h.seed} "
        f"mode={h.mode} spawn_period={h.spawn_period} p={h.p!r}",
    ]
    for line in doc.body:
        if isinstance(line, ErrorLine):
            q = line.qudit
            lines.append(f"E {q.orientation} {q.row} {q.col} {line.magnitude}")
        elif isinstance(line, MoveLine):
            src = f"{line.source[0]},{line.source[1]}"
            if isinstance(line.target, tuple):
                lines.append(f"M {src} -> {line.target[0]},{line.target[1]}")
            else:
                lines.append(f"B {src} -> {line.target}")
        else:
            lines.append(f"# {line.text}")
    lines.append(f"END score={doc.score} status={doc.status}")
    return "\n".join(lines) + "\n"


def serialize(g: GameState, annotations: list[tuple[int, str]] | None = None) -> str:
    """Save text for a game."""
    return render(build_document(g, annotations))


def _parse_header(line: str, line_no: int) -> SaveHeader:
    m = _HEADER_RE.match(line)
    if not m:
        raise SaveParseError(line_no, f"malformed header: {line!r}")
    try:
        p = float(m["p"])
    except ValueError:
        raise SaveParseError(line_no, f"bad probability {m['p']!r}") from None
    header = SaveHeader(
        width=int(m["w"]),
        height=int(m["h"]),
        d=int(m["d"]),
        seed=int(m["seed"]),
        mode=m["mode"],
        spawn_period=int(m["sp"]),
        p=p,
    )
    if m["variant"] != header.variant:
        raise SaveParseError(line_no, f"variant {m['variant']} does not match d={header.d}")
    if header.mode not in (DYNAMIC, PUZZLE):
        raise SaveParseError(line_no, f"unknown mode {header.mode!r}")
    if header.width < 2 or header.height < 2 or header.d < 2:
        raise SaveParseError(line_no, "grid must be at least 2x2 with d >= 2")
    if header.spawn_period < 1:
        raise SaveParseError(line_no, "spawn_period must be >= 1")
    if not 0.0 <= header.p <= 1.0:
        raise SaveParseError(line_no, "p must be in [0, 1]")
    return header


def parse(text: str) -> SaveDocument:
    """Parse save text, validating every line. Raises SaveParseError with
    the offending 1-based line number."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise SaveParseError(1, f"missing magic {MAGIC!r}")
    if len(lines) < 2:
        raise SaveParseError(2, "missing header line")
    header = _parse_header(lines[1], 2)
    spec = LatticeSpec(header.width, header.height, header.d)

    body: list[BodyLine] = []
    ended = False
    score, status = 0, "running"
    for idx, line in enumerate(lines[2:], start=3):
        if ended:
            raise SaveParseError(idx, "content after END line")
        if line.startswith("#"):
            body.append(AnnotationLine(line[2:] if line.startswith("# ") else line[1:]))
            continue
        if line.startswith("E "):
            m = _E_RE.match(line)
            if not m:
                raise SaveParseError(idx, f"malformed error line: {line!r}")
            q = QuditId(m[1], int(m[2]), int(m[3]))
            try:
                bordering_plaquettes(q, spec)
            except InvalidCoordinateError as exc:
                raise SaveParseError(idx, str(exc)) from None
            k = int(m[4])
            if not 1 <= k <= header.d - 1:
                raise SaveParseError(idx, f"magnitude {k} outside 1..{header.d - 1}")
            body.append(ErrorLine(q, k))
            continue
        if line.startswith("M "):
            m = _M_RE.match(line)
            if not m:
                raise SaveParseError(idx, f"malformed move line: {line!r}")
            src = (int(m[1]), int(m[2]))
            dst = (int(m[3]), int(m[4]))
            if not (spec.contains_plaquette(src) and spec.contains_plaquette(dst)):
                raise SaveParseError(idx, f"move coordinates outside {spec.width}x{spec.height}")
            if abs(src[0] - dst[0]) + abs(src[1] - dst[1]) != 1:
                raise SaveParseError(idx, f"move {src} -> {dst} is not between adjacent plaquettes")
            body.append(MoveLine(src, dst))
            continue
        if line.startswith("B "):
            m = _B_RE.match(line)
            if not m:
                raise SaveParseError(idx, f"malformed boundary push line: {line!r}")
            src = (int(m[1]), int(m[2]))
            side = m[3]
            if not spec.contains_plaquette(src):
                raise SaveParseError(idx, f"push source outside {spec.width}x{spec.height}")
            want_col = 0 if side == OFF_LEFT else spec.width - 1
            if src[1] != want_col:
                raise SaveParseError(idx, f"{side} push must start in column {want_col}")
            body.append(MoveLine(src, side))
            continue
        m = _END_RE.match(line)
        if m:
            score, status = int(m[1]), m[2]
            ended = True
            continue
        raise SaveParseError(idx, f"unknown line tag: {line!r}")
    if not ended:
        raise SaveParseError(len(lines) + 1, "missing END line")
    return SaveDocument(header=header, body=body, score=score, status=status)


def replay(doc: SaveDocument) -> GameState:
    """Reconstruct the final game state by applying the recorded lines.

    Errors are applied exactly as written, never re-sampled, so replay
    verifies a file independently of the RNG.
    """
    header = doc.header
    spec = LatticeSpec(header.width, header.height, header.d)
    noise = NoiseSpec(p=header.p, spawn_period=header.spawn_period, seed=header.seed)
    g = GameState(spec=spec, noise=noise, mode=header.mode, rng=rng_stream(header.seed, "spawn"))
    for i, line in enumerate(doc.body):
        try:
            if isinstance(line, ErrorLine):
                e = ErrorEvent(line.qudit, line.magnitude, g.next_event_id)
                apply_recorded_error(g, e, tick=g.moves_made)
            elif isinstance(line, MoveLine):
                apply_recorded_move(g, MoveRecord(line.source, line.target))
            else:
                add_annotation(g, line.text)
        except (IllegalMoveError, GameOverError, InvalidCoordinateError) as exc:
            raise ReplayError(f"body line {i + 1}: {exc}") from exc
        is_game_over(g)
    return g


def replay_text(text: str) -> GameState:
    return replay(parse(text))
