"""Seeded Monte Carlo campaigns with CSV reporting.

Two experiment kinds: logical failure rate of the HDRG decoder across a
grid of error probabilities, and survival-time distributions of the play
policies (pair-ranking bot vs uniform random legal moves) in the dynamic
game. Per-trial RNG streams are derived from (seed, point, trial index),
so trials are independent and results do not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from . import engine
from .engine import DYNAMIC, GameState, apply_player_move, new_game
from .errors import ConfigurationError
from .hdrg import hdrg_decode
from .lattice import LatticeSpec, SyndromeState, all_cut_fluxes, apply_shift
from .noise import NoiseSpec, generate_instance, rng_stream
from .pairrank import select_action

LOGICAL_CSV_HEADER = "p,trials,failures,rate"
SURVIVAL_CSV_HEADER = "episode,policy,moves_survived"

POLICY_PAIRRANK = "pairrank"
POLICY_RANDOM = "random"

DEFAULT_EPISODE_CAP = 10_000


def wilson_interval(successes: int, n: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion; behaves sensibly at
    small counts, which is the regime of low failure rates."""
    if n == 0:
        return (0.0, 1.0)
    phat = successes / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, centre - half), min(1.0, centre + half))


@dataclass(frozen=True)
class ExperimentConfig:
    spec: LatticeSpec = field(default_factory=LatticeSpec)
    p_values: tuple[float, ...] = (0.02, 0.15)
    trials: int = 1000
    seed: int = 0
    decoder: str = "hdrg"
    out: Path | None = None

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ConfigurationError("trials must be >= 0")
        if any(not 0.0 <= p <= 1.0 for p in self.p_values):
            raise ConfigurationError("p values must lie in [0, 1]")
        if self.decoder != "hdrg":
            raise ConfigurationError(f"unknown decoder {self.decoder!r}")


@dataclass(frozen=True)
class LogicalRow:
    p: float
    trials: int
    failures: int
    rate: float


def decode_trial_fails(spec: LatticeSpec, noise: NoiseSpec, seed: int, p_idx: int, trial: int) -> bool:
    """One seeded trial: sample an instance, decode, check every cut."""
    rng = rng_stream(seed, "logical", p_idx, noise.p, trial)
    events = generate_instance(spec, noise, rng)
    syndrome = SyndromeState()
    for e in events:
        apply_shift(syndrome, e.qudit, e.magnitude, spec)
    ledger = hdrg_decode(syndrome.copy(), spec)
    for q, k in ledger.net_shift.items():
        apply_shift(syndrome, q, k, spec)
    if syndrome.values:
        raise AssertionError("decoder returned a ledger that does not clear the syndrome")
    return any(all_cut_fluxes(events, ledger, spec))


def run_logical_experiment(cfg: ExperimentConfig) -> list[LogicalRow]:
    """Failure rate per error probability; writes CSV when cfg.out is set."""
    rows = []
    for p_idx, p in enumerate(cfg.p_values):
        noise = NoiseSpec(p=p, seed=cfg.seed)
        failures = sum(
            decode_trial_fails(cfg.spec, noise, cfg.seed, p_idx, t) for t in range(cfg.trials)
        )
        rate = failures / cfg.trials if cfg.trials else 0.0
        rows.append(LogicalRow(p, cfg.trials, failures, rate))
    if cfg.out is not None:
        write_logical_csv(rows, cfg.out)
    return rows


def logical_csv(rows: list[LogicalRow]) -> str:
    lines = [LOGICAL_CSV_HEADER]
    lines += [f"{r.p!r},{r.trials},{r.failures},{r.rate!r}" for r in rows]
    return "\n".join(lines) + "\n"


def write_logical_csv(rows: list[LogicalRow], out: Path) -> None:
    Path(out).write_text(logical_csv(rows))


@dataclass(frozen=True)
class SurvivalConfig:
    spec: LatticeSpec = field(default_factory=LatticeSpec)
    policy: str = POLICY_PAIRRANK
    episodes: int = 200
    cap: int = DEFAULT_EPISODE_CAP
    spawn_period: int = 1
    seed: int = 0
    out: Path | None = None

    def __post_init__(self) -> None:
        if self.policy not in (POLICY_PAIRRANK, POLICY_RANDOM):
            raise ConfigurationError(f"unknown policy {self.policy!r}")
        if self.episodes < 0 or self.cap < 1:
            raise ConfigurationError("episodes must be >= 0 and cap >= 1")


@dataclass(frozen=True)
class SurvivalRow:
    episode: int
    policy: str
    moves_survived: int


def _episode_seed(seed: int, episode: int) -> int:
    # same board sequence for both policies in a given episode
    return seed * 1_000_003 + episode


def play_episode(cfg: SurvivalConfig, episode: int) -> int:
    """Play one dynamic game to game over or the move cap; returns moves
    survived. A score equal to the cap marks a censored episode; a board
    cleared between spawns freezes the game, which also counts as censored."""
    noise = NoiseSpec(p=0.0, spawn_period=cfg.spawn_period, seed=_episode_seed(cfg.seed, episode))
    g = new_game(cfg.spec, noise, DYNAMIC)
    policy_rng = rng_stream(cfg.seed, "policy", cfg.policy, episode)
    while g.status == engine.RUNNING and g.moves_made < cfg.cap:
        move = _policy_move(cfg.policy, g, policy_rng)
        if move is None:
            return cfg.cap
        apply_player_move(g, move)
    return cfg.cap if g.status == engine.RUNNING else g.score


def _policy_move(policy: str, g: GameState, rng) -> object | None:
    if policy == POLICY_PAIRRANK:
        action = select_action(g.syndrome, g.tracker, g.spec)
        return action.move if action else None
    return engine.random_policy(g, rng)


def run_survival_experiment(cfg: SurvivalConfig) -> list[SurvivalRow]:
    rows = [
        SurvivalRow(episode, cfg.policy, play_episode(cfg, episode))
        for episode in range(cfg.episodes)
    ]
    if cfg.out is not None:
        write_survival_csv(rows, cfg.out)
    return rows


def survival_csv(rows: list[SurvivalRow]) -> str:
    lines = [SURVIVAL_CSV_HEADER]
    lines += [f"{r.episode},{r.policy},{r.moves_survived}" for r in rows]
    return "\n".join(lines) + "\n"


def write_survival_csv(rows: list[SurvivalRow], out: Path) -> None:
    Path(out).write_text(survival_csv(rows))


def compare_policies(cfg: SurvivalConfig) -> tuple[list[SurvivalRow], list[SurvivalRow], float]:
    """Run both policies on the same episode seeds; returns the two row sets
    and the one-sided Mann-Whitney p-value for bot > random."""
    from scipy.stats import mannwhitneyu

    bot = run_survival_experiment(SurvivalConfig(
        spec=cfg.spec, policy=POLICY_PAIRRANK, episodes=cfg.episodes,
        cap=cfg.cap, spawn_period=cfg.spawn_period, seed=cfg.seed,
    ))
    rnd = run_survival_experiment(SurvivalConfig(
        spec=cfg.spec, policy=POLICY_RANDOM, episodes=cfg.episodes,
        cap=cfg.cap, spawn_period=cfg.spawn_period, seed=cfg.seed,
    ))
    _, pvalue = mannwhitneyu(
        [r.moves_survived for r in bot],
        [r.moves_survived for r in rnd],
        alternative="greater",
    )
    return bot, rnd, float(pvalue)
