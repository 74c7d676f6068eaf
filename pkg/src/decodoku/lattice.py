"""Planar Z_d code lattice: syndrome state, charge shifts, and the flux check.

The board is an H x W grid of plaquettes. Qudits sit on the edges between
column-adjacent plaquettes (horizontal edges) and row-adjacent plaquettes
(vertical edges). Each row additionally has one absorbing edge at the left
boundary (column 0) and one at the right (column W), where charge can leave
the board. Top and bottom are closed: vertical edges never touch a boundary.

A shift of magnitude k on a qudit adds +k to one bordering plaquette and -k
to the other (mod d). For absorbing edges the missing partner charge is
booked against the matching absorbed total, so total charge is conserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import InvalidCoordinateError

Plaquette = tuple[int, int]

HORIZONTAL = "H"
VERTICAL = "V"

OFF_LEFT = "OFF:left"
OFF_RIGHT = "OFF:right"


@dataclass(frozen=True)
class LatticeSpec:
    """Grid dimensions and qudit dimension. Boundary rule is fixed:
    left/right absorbing, top/bottom closed."""

    width: int = 8
    height: int = 8
    d: int = 10

    def __post_init__(self) -> None:
        if self.width < 2 or self.height < 2:
            raise ValueError(f"lattice must be at least 2x2, got {self.width}x{self.height}")
        if self.d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.d}")

    def plaquettes(self) -> Iterator[Plaquette]:
        for r in range(self.height):
            for c in range(self.width):
                yield (r, c)

    def contains_plaquette(self, p: Plaquette) -> bool:
        r, c = p
        return 0 <= r < self.height and 0 <= c < self.width


@dataclass(frozen=True, order=True)
class QuditId:
    """A qudit location: horizontal edge (r, c) sits between plaquettes
    (r, c-1) and (r, c); vertical edge (r, c) between (r-1, c) and (r, c)."""

    orientation: str
    row: int
    col: int

    def is_absorbing(self, spec: LatticeSpec) -> bool:
        return self.orientation == HORIZONTAL and self.col in (0, spec.width)


@lru_cache(maxsize=None)
def all_qudits(spec: LatticeSpec) -> tuple[QuditId, ...]:
    """Every qudit of the lattice in a fixed row-major order."""
    qudits = [
        QuditId(HORIZONTAL, r, c)
        for r in range(spec.height)
        for c in range(spec.width + 1)
    ]
    qudits += [
        QuditId(VERTICAL, r, c)
        for r in range(1, spec.height)
        for c in range(spec.width)
    ]
    return tuple(qudits)


def _check_qudit(q: QuditId, spec: LatticeSpec) -> None:
    if q.orientation == HORIZONTAL:
        if 0 <= q.row < spec.height and 0 <= q.col <= spec.width:
            return
    elif q.orientation == VERTICAL:
        if 1 <= q.row < spec.height and 0 <= q.col < spec.width:
            return
    else:
        raise InvalidCoordinateError(f"unknown orientation {q.orientation!r}")
    raise InvalidCoordinateError(f"qudit {q} out of range for {spec.width}x{spec.height}")


def bordering_plaquettes(q: QuditId, spec: LatticeSpec) -> list[tuple[Plaquette, int]]:
    """Plaquettes touched by a shift on qudit ``q`` with their signs.

    Interior edges return two entries, + on the lower-index plaquette.
    Absorbing edges return a single entry: + for left edges, - for right.
    """
    _check_qudit(q, spec)
    r, c = q.row, q.col
    if q.orientation == VERTICAL:
        return [((r - 1, c), +1), ((r, c), -1)]
    if c == 0:
        return [((r, 0), +1)]
    if c == spec.width:
        return [((r, spec.width - 1), -1)]
    return [((r, c - 1), +1), ((r, c), -1)]


def qudit_between(a: Plaquette, b: Plaquette) -> QuditId:
    """The qudit shared by two orthogonally adjacent plaquettes."""
    (ra, ca), (rb, cb) = a, b
    if ra == rb and abs(ca - cb) == 1:
        return QuditId(HORIZONTAL, ra, max(ca, cb))
    if ca == cb and abs(ra - rb) == 1:
        return QuditId(VERTICAL, max(ra, rb), ca)
    raise InvalidCoordinateError(f"plaquettes {a} and {b} are not adjacent")


def boundary_qudit(p: Plaquette, side: str, spec: LatticeSpec) -> QuditId:
    """The absorbing edge used to push the charge at ``p`` off the board."""
    r, c = p
    if side == OFF_LEFT and c == 0:
        return QuditId(HORIZONTAL, r, 0)
    if side == OFF_RIGHT and c == spec.width - 1:
        return QuditId(HORIZONTAL, r, spec.width)
    raise InvalidCoordinateError(f"no {side} push from plaquette {p}")


def sign_on(q: QuditId, p: Plaquette, spec: LatticeSpec) -> int:
    for plaq, sign in bordering_plaquettes(q, spec):
        if plaq == p:
            return sign
    raise InvalidCoordinateError(f"plaquette {p} does not border qudit {q}")


@dataclass(frozen=True)
class ErrorEvent:
    """One qudit shift of magnitude 1..d-1, the unit of both noise and play."""

    qudit: QuditId
    magnitude: int
    event_id: int

    def __post_init__(self) -> None:
        if self.magnitude < 1:
            raise ValueError(f"error magnitude must be positive, got {self.magnitude}")


@dataclass
class SyndromeState:
    """Sparse per-plaquette charges plus the accumulated boundary charge.

    Invariant: (sum of values + absorbed_left + absorbed_right) % d == 0
    after any sequence of shifts.
    """

    values: dict[Plaquette, int] = field(default_factory=dict)
    absorbed_left: int = 0
    absorbed_right: int = 0

    def value(self, p: Plaquette) -> int:
        return self.values.get(p, 0)

    def copy(self) -> "SyndromeState":
        return SyndromeState(dict(self.values), self.absorbed_left, self.absorbed_right)

    def total_charge(self, d: int) -> int:
        return (sum(self.values.values()) + self.absorbed_left + self.absorbed_right) % d


def apply_shift(s: SyndromeState, q: QuditId, k: int, spec: LatticeSpec) -> SyndromeState:
    """Apply a magnitude-k shift on qudit ``q``, updating ``s`` in place."""
    d = spec.d
    if not 1 <= k <= d - 1:
        raise ValueError(f"magnitude must be in 1..{d - 1}, got {k}")
    borders = bordering_plaquettes(q, spec)
    for p, sign in borders:
        v = (s.values.get(p, 0) + sign * k) % d
        if v:
            s.values[p] = v
        else:
            s.values.pop(p, None)
    if len(borders) == 1:
        # Absorbing edge: book the missing partner charge so the total stays 0.
        partner = (-borders[0][1] * k) % d
        if q.col == 0:
            s.absorbed_left = (s.absorbed_left + partner) % d
        else:
            s.absorbed_right = (s.absorbed_right + partner) % d
    return s


def defects(s: SyndromeState) -> list[tuple[Plaquette, int]]:
    """Plaquettes with nonzero charge, row-major."""
    return sorted(s.values.items())


@dataclass
class CorrectionLedger:
    """Net mod-d shift per qudit from all corrections applied so far."""

    net_shift: dict[QuditId, int] = field(default_factory=dict)

    def add(self, q: QuditId, k: int, d: int) -> None:
        v = (self.net_shift.get(q, 0) + k) % d
        if v:
            self.net_shift[q] = v
        else:
            self.net_shift.pop(q, None)

    def copy(self) -> "CorrectionLedger":
        return CorrectionLedger(dict(self.net_shift))


def cut_flux(
    errors: list[ErrorEvent],
    ledger: CorrectionLedger,
    cut: int,
    spec: LatticeSpec,
) -> int:
    """Mod-d sum of signed net shifts (error plus correction) crossing a cut.

    The cut at column index ``cut`` (0..W) collects all horizontal edges in
    that column. Orientation: interior columns count +k per shift, the two
    absorbing columns -k; with that convention a cleared syndrome makes every
    cut read the same residue, and residue 0 on all cuts means no net charge
    was carried between the boundaries (no logical failure).
    """
    if not 0 <= cut <= spec.width:
        raise InvalidCoordinateError(f"cut {cut} out of range 0..{spec.width}")
    sign = -1 if cut in (0, spec.width) else +1
    total = 0
    for e in errors:
        if e.qudit.orientation == HORIZONTAL and e.qudit.col == cut:
            total += e.magnitude
    for q, k in ledger.net_shift.items():
        if q.orientation == HORIZONTAL and q.col == cut:
            total += k
    return (sign * total) % spec.d


def all_cut_fluxes(
    errors: list[ErrorEvent],
    ledger: CorrectionLedger,
    spec: LatticeSpec,
) -> list[int]:
    """cut_flux for every cut 0..W in one pass over the shifts."""
    totals = [0] * (spec.width + 1)
    for e in errors:
        if e.qudit.orientation == HORIZONTAL:
            totals[e.qudit.col] += e.magnitude
    for q, k in ledger.net_shift.items():
        if q.orientation == HORIZONTAL:
            totals[q.col] += k
    d = spec.d
    out = [(-totals[0]) % d]
    out += [totals[c] % d for c in range(1, spec.width)]
    out.append((-totals[spec.width]) % d)
    return out
