"""Decodoku: a qudit surface-code decoding lab built as a playable game.

Core pieces: the Z_d plaquette lattice and syndrome bookkeeping, provenance
defect clustering, the player-derived pair-ranking bot, the neutral-cluster
HDRG decoder, a game engine with text save files, a Monte Carlo experiment
harness, and an HTTP service for the browser client.
"""

from .clusters import Cluster, ProvenanceTracker, centroid, is_neutral
from .engine import (
    DYNAMIC,
    GameState,
    MoveRecord,
    PUZZLE,
    apply_player_move,
    is_game_over,
    new_game,
    solve_puzzle_check,
    suggest_move,
)
from .errors import (
    ConfigurationError,
    DecodokuError,
    GameOverError,
    IllegalMoveError,
    InvalidCoordinateError,
    ReplayError,
    SaveParseError,
)
from .hdrg import hdrg_decode, hdrg_decode_detailed, initial_clusters, merge_round
from .lattice import (
    CorrectionLedger,
    ErrorEvent,
    LatticeSpec,
    QuditId,
    SyndromeState,
    all_cut_fluxes,
    apply_shift,
    bordering_plaquettes,
    cut_flux,
    defects,
)
from .noise import NoiseSpec, generate_instance, rng_stream, sample_spawn
from .pairrank import (
    BotAction,
    DefectFeatures,
    Move,
    PairFeatures,
    defect_features,
    pair_features,
    rank_pairs,
    select_action,
)
from .savefile import SaveDocument, parse, replay, replay_text, serialize

__version__ = "0.1.0"
