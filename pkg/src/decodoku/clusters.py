"""Provenance-based defect clustering, neutrality, and Manhattan-median centres.

Clusters are game knowledge, not guesswork: two defects belong to the same
cluster exactly when they are connected through error events that touched a
shared plaquette, or through merge moves. The engine owns this information
and hands it to the tutorial display and the bot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from .errors import IllegalMoveError
from .lattice import ErrorEvent, Plaquette, SyndromeState


class UnionFind:
    """Union-find over arbitrary hashable keys, path compression + rank."""

    def __init__(self) -> None:
        self.parent: dict[Hashable, Hashable] = {}
        self.rank: dict[Hashable, int] = {}

    def find(self, x: Hashable) -> Hashable:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0
            return x
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Hashable, b: Hashable) -> Hashable:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra


def is_neutral(values: Iterable[int], d: int) -> bool:
    """True iff the charges would annihilate if combined (sum to 0 mod d)."""
    return sum(values) % d == 0


def centroid(members: Iterable[Plaquette]) -> Plaquette:
    """Component-wise lower median: a deterministic minimizer of summed
    Manhattan distance to the members."""
    points = list(members)
    if not points:
        raise ValueError("centroid of an empty member set is undefined")
    rows = sorted(p[0] for p in points)
    cols = sorted(p[1] for p in points)
    mid = (len(points) - 1) // 2
    return (rows[mid], cols[mid])


@dataclass
class Cluster:
    """Snapshot of one defect group at a moment in play."""

    id: int
    members: list[tuple[Plaquette, int]]
    value_sum: int
    neutral: bool
    centre: Plaquette

    @property
    def positions(self) -> list[Plaquette]:
        return [p for p, _ in self.members]


class ProvenanceTracker:
    """Tracks which defects share history.

    Nodes are error events and plaquettes; recording an error unions it with
    every plaquette it touched, and a move unions source and target. Unions
    are permanent. Cluster ids are stable: a fresh component gets the next
    counter value, and merging keeps the smaller id.
    """

    def __init__(self) -> None:
        self._uf = UnionFind()
        self._root_id: dict[Hashable, int] = {}
        self._next_id = 0

    def _ensure_id(self, root: Hashable) -> int:
        if root not in self._root_id:
            self._root_id[root] = self._next_id
            self._next_id += 1
        return self._root_id[root]

    def _union_keep_id(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self._uf.find(a), self._uf.find(b)
        ids = [self._root_id[r] for r in (ra, rb) if r in self._root_id]
        root = self._uf.union(ra, rb)
        for r in (ra, rb):
            self._root_id.pop(r, None)
        if ids:
            self._root_id[root] = min(ids)

    def record_error(self, e: ErrorEvent, touched: Iterable[Plaquette]) -> None:
        """Union the error with every plaquette it touched."""
        key = ("e", e.event_id)
        for p in touched:
            self._union_keep_id(key, ("p", p))
        self._ensure_id(self._uf.find(key))

    def record_move(self, frm: Plaquette, to: Plaquette | str, s: SyndromeState) -> None:
        """Record a defect move; ``to`` is a plaquette or an OFF marker.

        Pass the syndrome as it stands before the move is applied.
        """
        if s.value(frm) == 0:
            raise IllegalMoveError(f"no defect at {frm} to move")
        if isinstance(to, tuple):
            self._union_keep_id(("p", frm), ("p", to))

    def cluster_id(self, p: Plaquette) -> int:
        return self._ensure_id(self._uf.find(("p", p)))

    def clusters(self, s: SyndromeState, d: int) -> list[Cluster]:
        """Live clusters: defects grouped by shared provenance.

        Groups whose defects all vanished are simply absent (retired).
        """
        groups: dict[int, list[tuple[Plaquette, int]]] = {}
        for p, v in sorted(s.values.items()):
            groups.setdefault(self.cluster_id(p), []).append((p, v))
        out = []
        for cid in sorted(groups):
            members = groups[cid]
            total = sum(v for _, v in members) % d
            out.append(
                Cluster(
                    id=cid,
                    members=members,
                    value_sum=total,
                    neutral=total == 0,
                    centre=centroid(p for p, _ in members),
                )
            )
        return out
