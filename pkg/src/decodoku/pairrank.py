"""The player-derived bot: per-defect and per-pair features, lexicographic
pair ranking, and single-step move selection.

Ranking rules, earlier rules beating later ones:

1. pairs in the same cluster first;
2. pairs closer than 4 next, smaller distance better;
3. among pairs at distance 4 or more, larger distance better (long-range
   strays must not be forgotten);
4. larger distance via the cluster centres better;
5. pairs where exactly one defect has neighbours, then where neither has,
   then where both have.

Annihilation and helpful-neighbour counts are computed and exposed, but the
default comparator ignores them since rules 1-5 never consume them. Passing
``prefer_annihilating=True`` inserts both right after rule 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clusters import ProvenanceTracker
from .lattice import (
    OFF_LEFT,
    OFF_RIGHT,
    LatticeSpec,
    Plaquette,
    SyndromeState,
)


@dataclass(frozen=True)
class Move:
    """One elementary step: a defect hops to an adjacent plaquette or is
    pushed off an absorbing boundary (target OFF:left / OFF:right)."""

    source: Plaquette
    target: Plaquette | str


@dataclass(frozen=True)
class DefectFeatures:
    position: Plaquette
    value: int
    cluster_id: int
    cluster_size: int
    cluster_centre: Plaquette
    neighbour_count: int


@dataclass(frozen=True)
class PairFeatures:
    a: DefectFeatures
    b: DefectFeatures
    distance: int
    same_cluster: bool
    via_centre: int
    annihilates: bool
    helpful_neighbours: int
    a_neighbours: int
    b_neighbours: int


@dataclass(frozen=True)
class BotAction:
    move: Move
    top_pair: PairFeatures | None


def manhattan(p: Plaquette, q: Plaquette) -> int:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def defect_features(s: SyndromeState, tracker: ProvenanceTracker, d: int) -> list[DefectFeatures]:
    """Per-defect quantities: cluster id, size and centre, neighbour count.

    A neighbour is a defect at Manhattan distance exactly 1.
    """
    out = []
    positions = sorted(s.values)
    for cl in tracker.clusters(s, d):
        for p, v in cl.members:
            out.append(
                DefectFeatures(
                    position=p,
                    value=v,
                    cluster_id=cl.id,
                    cluster_size=len(cl.members),
                    cluster_centre=cl.centre,
                    neighbour_count=sum(1 for q in positions if manhattan(p, q) == 1),
                )
            )
    out.sort(key=lambda f: f.position)
    return out


def pair_features(
    fa: DefectFeatures,
    fb: DefectFeatures,
    all_defects: list[DefectFeatures],
    d: int,
) -> PairFeatures:
    """All pair quantities. Normalized so ``a`` is the row-major smaller
    position. Helpful neighbours are other defects adjacent to either end
    that would complete an annihilating triplet; only evaluated when the
    pair itself does not annihilate."""
    if fb.position < fa.position:
        fa, fb = fb, fa
    distance = manhattan(fa.position, fb.position)
    annihilates = (fa.value + fb.value) % d == 0
    helpful = 0
    if not annihilates:
        for f in all_defects:
            if f.position in (fa.position, fb.position):
                continue
            adjacent = (
                manhattan(f.position, fa.position) == 1
                or manhattan(f.position, fb.position) == 1
            )
            if adjacent and (fa.value + fb.value + f.value) % d == 0:
                helpful += 1
    partner_adjacent = 1 if distance == 1 else 0
    return PairFeatures(
        a=fa,
        b=fb,
        distance=distance,
        same_cluster=fa.cluster_id == fb.cluster_id,
        via_centre=manhattan(fa.position, fa.cluster_centre)
        + manhattan(fb.position, fb.cluster_centre),
        annihilates=annihilates,
        helpful_neighbours=helpful,
        a_neighbours=fa.neighbour_count - partner_adjacent,
        b_neighbours=fb.neighbour_count - partner_adjacent,
    )


def all_pairs(s: SyndromeState, tracker: ProvenanceTracker, d: int) -> list[PairFeatures]:
    """Pair features for every unordered defect pair."""
    feats = defect_features(s, tracker, d)
    return [
        pair_features(feats[i], feats[j], feats, d)
        for i in range(len(feats))
        for j in range(i + 1, len(feats))
    ]


NEAR_LIMIT = 4


def _neighbour_category(pf: PairFeatures) -> int:
    # exactly one has neighbours (0) beats neither (1) beats both (2)
    has_a, has_b = pf.a_neighbours > 0, pf.b_neighbours > 0
    if has_a != has_b:
        return 0
    return 2 if has_a else 1


def rank_key(pf: PairFeatures, prefer_annihilating: bool = False) -> tuple:
    """Sort key embodying the ranking rules; smaller sorts first."""
    if pf.distance < NEAR_LIMIT:
        bucket = (0, pf.distance)
    else:
        bucket = (1, -pf.distance)
    key = [0 if pf.same_cluster else 1]
    if prefer_annihilating:
        key += [0 if pf.annihilates else 1, -pf.helpful_neighbours]
    key += [bucket, -pf.via_centre, _neighbour_category(pf), (pf.a.position, pf.b.position)]
    return tuple(key)


def rank_pairs(pairs: list[PairFeatures], prefer_annihilating: bool = False) -> list[PairFeatures]:
    """Pairs ordered best first. The final key component is the normalized
    position pair, so the order is total and permutation-independent."""
    return sorted(pairs, key=lambda pf: rank_key(pf, prefer_annihilating))


def _step_toward(src: Plaquette, dst: Plaquette) -> Plaquette:
    # row distance first, then column
    r, c = src
    if r != dst[0]:
        return (r + (1 if dst[0] > r else -1), c)
    return (r, c + (1 if dst[1] > c else -1))


def _lone_defect_move(p: Plaquette, spec: LatticeSpec) -> Move:
    r, c = p
    left, right = c + 1, spec.width - c
    if left <= right:
        return Move(p, OFF_LEFT if c == 0 else (r, c - 1))
    return Move(p, OFF_RIGHT if c == spec.width - 1 else (r, c + 1))


def select_action(
    s: SyndromeState,
    tracker: ProvenanceTracker,
    spec: LatticeSpec,
    prefer_annihilating: bool = False,
) -> BotAction | None:
    """The bot's move for the current board, or None when nothing to do.

    The mover is the defect of the best pair with fewer neighbours (tie:
    row-major smaller position); it steps one plaquette toward its partner.
    A lone defect is walked to the nearer absorbing boundary instead.
    """
    live = sorted(s.values)
    if not live:
        return None
    if len(live) == 1:
        return BotAction(_lone_defect_move(live[0], spec), None)
    top = rank_pairs(all_pairs(s, tracker, spec.d), prefer_annihilating)[0]
    if top.b_neighbours < top.a_neighbours:
        mover, partner = top.b, top.a
    else:
        mover, partner = top.a, top.b
    return BotAction(Move(mover.position, _step_toward(mover.position, partner.position)), top)
