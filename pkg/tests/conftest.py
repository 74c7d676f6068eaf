from __future__ import annotations

import random

import pytest

from decodoku.clusters import ProvenanceTracker
from decodoku.lattice import (
    ErrorEvent,
    LatticeSpec,
    SyndromeState,
    apply_shift,
    bordering_plaquettes,
)


@pytest.fixture
def spec8() -> LatticeSpec:
    return LatticeSpec(8, 8, 10)


def build_state(events, spec) -> SyndromeState:
    s = SyndromeState()
    for e in events:
        apply_shift(s, e.qudit, e.magnitude, spec)
    return s


def build_tracked_state(events, spec) -> tuple[SyndromeState, ProvenanceTracker]:
    s = SyndromeState()
    tracker = ProvenanceTracker()
    for e in events:
        apply_shift(s, e.qudit, e.magnitude, spec)
        tracker.record_error(e, [p for p, _ in bordering_plaquettes(e.qudit, spec)])
    return s, tracker


def random_events(spec, rng: random.Random, count: int, id_start: int = 0) -> list[ErrorEvent]:
    from decodoku.lattice import all_qudits

    qudits = all_qudits(spec)
    return [
        ErrorEvent(rng.choice(qudits), rng.randrange(1, spec.d), id_start + i)
        for i in range(count)
    ]
