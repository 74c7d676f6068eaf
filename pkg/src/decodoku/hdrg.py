"""Neutral-cluster hard-decision renormalization-group decoder.

Outline:

1. every defect starts as its own non-neutral cluster;
2. every non-neutral cluster merges with its nearest cluster, all merges in
   a round applied simultaneously;
3. a cluster whose charges would annihilate if combined is relabelled
   neutral (a cluster touching an absorbing boundary is always neutral);
4. rounds repeat until everything is neutral, then each cluster's charges
   are walked together and annihilated.

Neutral clusters stop seeking merges but stay on the board: a non-neutral
cluster whose nearest neighbour is neutral still merges with it. The two
virtual boundary clusters are permanently neutral and absorb any charge.

The cluster count strictly decreases every round that has a non-neutral
cluster, so the loop finishes in at most the initial defect count rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clusters import UnionFind, centroid
from .lattice import (
    OFF_LEFT,
    OFF_RIGHT,
    CorrectionLedger,
    LatticeSpec,
    Plaquette,
    SyndromeState,
    boundary_qudit,
    qudit_between,
    sign_on,
)


@dataclass
class HdrgCluster:
    id: int
    members: list[tuple[Plaquette, int]]
    boundaries: frozenset[str]
    neutral: bool


@dataclass
class ClusterState:
    spec: LatticeSpec
    clusters: dict[int, HdrgCluster]

    def non_neutral_ids(self) -> list[int]:
        return sorted(cid for cid, cl in self.clusters.items() if not cl.neutral)


def initial_clusters(s: SyndromeState, spec: LatticeSpec) -> ClusterState:
    """One singleton non-neutral cluster per defect, plus the two boundaries."""
    clusters: dict[int, HdrgCluster] = {}
    cid = 0
    for p, v in sorted(s.values.items()):
        clusters[cid] = HdrgCluster(cid, [(p, v)], frozenset(), neutral=False)
        cid += 1
    clusters[cid] = HdrgCluster(cid, [], frozenset({"left"}), neutral=True)
    clusters[cid + 1] = HdrgCluster(cid + 1, [], frozenset({"right"}), neutral=True)
    return ClusterState(spec, clusters)


def _distance(a: HdrgCluster, b: HdrgCluster, width: int) -> int:
    """Min Manhattan distance between the clusters' defects, counting a
    contained boundary as one more step than reaching its edge column."""
    best = None
    for (ra, ca), _ in a.members:
        for (rb, cb), _ in b.members:
            dist = abs(ra - rb) + abs(ca - cb)
            if best is None or dist < best:
                best = dist
        if "left" in b.boundaries:
            dist = ca + 1
            if best is None or dist < best:
                best = dist
        if "right" in b.boundaries:
            dist = width - ca
            if best is None or dist < best:
                best = dist
    return best if best is not None else width + 1


def merge_round(cs: ClusterState) -> ClusterState:
    """One round: every non-neutral cluster links to its nearest cluster,
    all links are unioned simultaneously, neutrality is recomputed.

    Nearest ties prefer clusters without a boundary, then the smaller id.
    """
    width = cs.spec.width
    d = cs.spec.d
    links = []
    for cid in cs.non_neutral_ids():
        cluster = cs.clusters[cid]
        best = None
        for other_id in sorted(cs.clusters):
            if other_id == cid:
                continue
            other = cs.clusters[other_id]
            key = (_distance(cluster, other, width), 1 if other.boundaries else 0, other_id)
            if best is None or key < best[0]:
                best = (key, other_id)
        if best is not None:
            links.append((cid, best[1]))
    if not links:
        return cs

    uf = UnionFind()
    for cid in cs.clusters:
        uf.find(cid)
    for a, b in links:
        uf.union(a, b)

    groups: dict[object, list[int]] = {}
    for cid in cs.clusters:
        groups.setdefault(uf.find(cid), []).append(cid)

    merged: dict[int, HdrgCluster] = {}
    for ids in groups.values():
        new_id = min(ids)
        members: list[tuple[Plaquette, int]] = []
        boundaries: set[str] = set()
        for cid in sorted(ids):
            members.extend(cs.clusters[cid].members)
            boundaries.update(cs.clusters[cid].boundaries)
        members.sort(key=lambda m: m[0])
        neutral = bool(boundaries) or sum(v for _, v in members) % d == 0
        merged[new_id] = HdrgCluster(new_id, members, frozenset(boundaries), neutral)
    return ClusterState(cs.spec, merged)


@dataclass
class HdrgResult:
    ledger: CorrectionLedger
    rounds: int
    final: ClusterState


def _route(ledger: CorrectionLedger, frm: Plaquette, to: Plaquette, v: int, spec: LatticeSpec) -> None:
    """Record the shifts that carry charge v from ``frm`` to ``to``,
    row distance first."""
    d = spec.d
    pos = frm
    while pos != to:
        r, c = pos
        if r != to[0]:
            nxt = (r + (1 if to[0] > r else -1), c)
        else:
            nxt = (r, c + (1 if to[1] > c else -1))
        q = qudit_between(pos, nxt)
        ledger.add(q, (-v * sign_on(q, pos, spec)) % d, d)
        pos = nxt


def _push_off(ledger: CorrectionLedger, p: Plaquette, v: int, side: str, spec: LatticeSpec) -> None:
    """Record the shifts that push charge v at ``p`` off an absorbing edge."""
    r, _ = p
    edge_col = 0 if side == OFF_LEFT else spec.width - 1
    _route(ledger, p, (r, edge_col), v, spec)
    q = boundary_qudit((r, edge_col), side, spec)
    ledger.add(q, (-v * sign_on(q, (r, edge_col), spec)) % spec.d, spec.d)


def _exit_side(c: int, boundaries: frozenset[str], width: int) -> str:
    if boundaries == frozenset({"left"}):
        return OFF_LEFT
    if boundaries == frozenset({"right"}):
        return OFF_RIGHT
    return OFF_LEFT if c + 1 <= width - c else OFF_RIGHT


def hdrg_decode_detailed(s: SyndromeState, spec: LatticeSpec) -> HdrgResult:
    """Full decode with round count and final clusters exposed."""
    cs = initial_clusters(s, spec)
    rounds = 0
    while cs.non_neutral_ids():
        cs = merge_round(cs)
        rounds += 1
    ledger = CorrectionLedger()
    for cid in sorted(cs.clusters):
        cluster = cs.clusters[cid]
        if not cluster.members:
            continue
        if cluster.boundaries:
            for (r, c), v in cluster.members:
                _push_off(ledger, (r, c), v, _exit_side(c, cluster.boundaries, spec.width), spec)
        else:
            target = centroid(p for p, _ in cluster.members)
            for p, v in cluster.members:
                _route(ledger, p, target, v, spec)
    return HdrgResult(ledger, rounds, cs)


def hdrg_decode(s: SyndromeState, spec: LatticeSpec) -> CorrectionLedger:
    """Correction ledger that clears the syndrome. Deterministic."""
    return hdrg_decode_detailed(s, spec).ledger
