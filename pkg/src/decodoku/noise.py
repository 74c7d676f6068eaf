"""Error generation: i.i.d. static instances and the spawn process for live games."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lattice import ErrorEvent, LatticeSpec, all_qudits


@dataclass(frozen=True)
class NoiseSpec:
    """Noise parameters.

    ``p`` is the per-qudit error probability for static instances.
    ``magnitude_weights`` are relative weights over magnitudes 1..d-1
    (None means uniform). ``spawn_period`` is how many player moves pass
    between spawned errors in the dynamic game.
    """

    p: float = 0.1
    magnitude_weights: tuple[float, ...] | None = None
    spawn_period: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.spawn_period < 1:
            raise ValueError(f"spawn_period must be >= 1, got {self.spawn_period}")

    def weights(self, d: int) -> tuple[float, ...]:
        if self.magnitude_weights is None:
            return (1.0,) * (d - 1)
        if len(self.magnitude_weights) != d - 1:
            raise ValueError(
                f"magnitude_weights must cover 1..{d - 1}, got {len(self.magnitude_weights)} entries"
            )
        return self.magnitude_weights


def rng_stream(seed: int | str, *path: object) -> random.Random:
    """Independent, reproducible RNG stream for (seed, path) labels.

    Seeding from a string keeps streams stable across platforms and lets
    parallel trials draw from disjoint generators.
    """
    label = ":".join([str(seed), *map(str, path)])
    return random.Random(label)


def _draw_magnitude(noise: NoiseSpec, d: int, rng: random.Random) -> int:
    return rng.choices(range(1, d), weights=noise.weights(d), k=1)[0]


def generate_instance(
    spec: LatticeSpec,
    noise: NoiseSpec,
    rng: random.Random,
    id_start: int = 0,
) -> list[ErrorEvent]:
    """One static error instance: each qudit errs independently with prob p."""
    events = []
    next_id = id_start
    for q in all_qudits(spec):
        if rng.random() < noise.p:
            events.append(ErrorEvent(q, _draw_magnitude(noise, spec.d, rng), next_id))
            next_id += 1
    return events


def sample_spawn(
    spec: LatticeSpec,
    noise: NoiseSpec,
    rng: random.Random,
    event_id: int = 0,
) -> ErrorEvent:
    """One spawned error on a uniformly chosen qudit."""
    q = rng.choice(all_qudits(spec))
    return ErrorEvent(q, _draw_magnitude(noise, spec.d, rng), event_id)
