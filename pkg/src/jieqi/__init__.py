"""Dark Chinese chess (JieQi): rules engine and complexity toolkit.

The package has three layers:

  * engine / jfen -- the full game rules (shuffled face-down setup,
    positional-role movement, reveal-on-move, asymmetric capture knowledge,
    three termination conditions) plus a canonical text serialization.
  * combinatorics / infoset / enumeration -- exact big-integer counting:
    the size of a player's information set and the total number of
    information sets in the game.
  * simulator / cli -- seeded uniform-random self-play measuring branching
    factor, game length, per-ply information-set size and the derived
    game-tree-complexity bound, with byte-stable CSV/JSON output.
"""

from .board import PieceKind, Side, parse_square, role_of_square, square, square_name
from .combinatorics import (
    KindMultiset,
    START_POOL,
    binomial,
    exact_log10,
    falling_factorial,
    multiset_arrangements,
)
from .engine import (
    Capture,
    CapturedInfo,
    GameState,
    IllegalMoveError,
    MissingHiddenInfoError,
    Move,
    MoveOutcome,
    Observation,
    Piece,
    Rules,
    STANDARD_RULES,
    TerminalStatus,
    WinReason,
    apply_move,
    initial_state,
    initial_state_lazy,
    legal_moves,
    observe,
    perft,
    perft_counts,
    terminal_status,
    unassigned_pool,
)
from .enumeration import (
    CountParams,
    CountTables,
    STANDARD_PARAMS,
    build_count_tables,
    count_information_sets,
    count_information_sets_bruteforce,
)
from .infoset import (
    HiddenPools,
    hidden_pools,
    infoset_log10,
    infoset_size,
    infoset_size_bruteforce,
    mover_infoset_size,
    state_hidden_pools,
    state_infoset_size,
)
from .jfen import INITIAL_JFEN, JfenError, decode_state, encode_state
from .simulator import (
    GameRecord,
    RunningSeries,
    SeriesRow,
    SimulationSummary,
    estimate_gtc_log10,
    game_seed,
    play_random_game,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "Capture",
    "CapturedInfo",
    "CountParams",
    "CountTables",
    "GameRecord",
    "GameState",
    "HiddenPools",
    "INITIAL_JFEN",
    "IllegalMoveError",
    "JfenError",
    "KindMultiset",
    "MissingHiddenInfoError",
    "Move",
    "MoveOutcome",
    "Observation",
    "Piece",
    "PieceKind",
    "Rules",
    "RunningSeries",
    "STANDARD_PARAMS",
    "STANDARD_RULES",
    "START_POOL",
    "SeriesRow",
    "Side",
    "SimulationSummary",
    "TerminalStatus",
    "WinReason",
    "apply_move",
    "binomial",
    "build_count_tables",
    "count_information_sets",
    "count_information_sets_bruteforce",
    "decode_state",
    "encode_state",
    "estimate_gtc_log10",
    "exact_log10",
    "falling_factorial",
    "game_seed",
    "hidden_pools",
    "infoset_log10",
    "infoset_size",
    "infoset_size_bruteforce",
    "initial_state",
    "initial_state_lazy",
    "legal_moves",
    "mover_infoset_size",
    "multiset_arrangements",
    "observe",
    "parse_square",
    "perft",
    "perft_counts",
    "play_random_game",
    "role_of_square",
    "run_simulation",
    "square",
    "square_name",
    "state_hidden_pools",
    "state_infoset_size",
    "terminal_status",
    "unassigned_pool",
]
