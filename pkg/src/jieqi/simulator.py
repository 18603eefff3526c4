"""Uniform-random self-play measurement of branching factor, game length,
per-ply information-set size and the derived game-tree-complexity bound.

Determinism contract: each game's seed is derived from (master seed, game
index) by a fixed splitmix64 step, every game is a pure function of its
seed, and aggregation folds the games in index order -- so results are
byte-identical for any worker count.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import NamedTuple

from .combinatorics import exact_log10
from .engine import (
    Rules,
    STANDARD_RULES,
    TerminalStatus,
    apply_move,
    initial_state,
    legal_moves,
)
from .infoset import mover_infoset_size

MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15

#: RunningSeries checkpoint spacing, in games.
CHECKPOINT_EVERY = 100


def _splitmix64(x: int) -> int:
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def game_seed(master_seed: int, game_index: int) -> int:
    """Seed of the game_index-th game: the game_index-th output of a
    splitmix64 stream started at master_seed."""
    return _splitmix64(master_seed + (game_index + 1) * _GOLDEN)


@dataclass(frozen=True)
class GameRecord:
    """One finished random game and its per-ply measurements."""

    game_index: int
    seed: int
    plies: int
    result: TerminalStatus
    branching_per_ply: list[int]
    log10_infoset_per_ply: list[float]
    infoset_total: int      # exact sum of per-ply sizes, for the exact mean

    @property
    def mean_branching(self) -> float:
        return sum(self.branching_per_ply) / self.plies

    @property
    def mean_log10_infoset(self) -> float:
        return sum(self.log10_infoset_per_ply) / self.plies


class SeriesRow(NamedTuple):
    games_completed: int
    cum_avg_branching: float
    cum_avg_length: float
    cum_avg_log10_infoset: float
    cum_log10_gtc: float


@dataclass(frozen=True)
class RunningSeries:
    """Cumulative statistics sampled every CHECKPOINT_EVERY games (plus a
    final row), tracing how the estimates converge as games accumulate."""

    rows: list[SeriesRow]


@dataclass(frozen=True)
class SimulationSummary:
    games: int
    mean_branching: float
    mean_length_plies: float
    mean_log10_infoset: float        # mean of per-ply log10 sizes
    log10_mean_infoset: float        # log10 of the exact mean per-ply size
    log10_gtc: float
    result_breakdown: dict[str, int]


def estimate_gtc_log10(branching: float, length_plies: float) -> float:
    """log10 of the branching^length game-tree-complexity lower bound."""
    if branching <= 1:
        raise ValueError(f"branching factor must exceed 1, got {branching}")
    if length_plies <= 0:
        raise ValueError(f"game length must be positive, got {length_plies}")
    return length_plies * math.log10(branching)


def play_random_game(
    seed: int,
    rules: Rules = STANDARD_RULES,
    game_index: int = 0,
) -> GameRecord:
    """Play one game choosing uniformly among the legal moves each ply.

    Per ply (one move by one player) the mover's legal-move count and the
    log10 of the mover's exact information-set size are recorded before the
    move is chosen; the terminal position itself records nothing.
    """
    state = initial_state(seed, rules)
    move_rng = random.Random(_splitmix64(seed ^ _GOLDEN))
    branching: list[int] = []
    log10s: list[float] = []
    infoset_total = 0
    while not state.status.over:
        moves = legal_moves(state)
        size = mover_infoset_size(state)
        branching.append(len(moves))
        log10s.append(exact_log10(size))
        infoset_total += size
        state, _ = apply_move(state, moves[move_rng.randrange(len(moves))])
    assert state.ply_count < 1500, "termination bound exceeded"
    return GameRecord(
        game_index=game_index,
        seed=seed,
        plies=state.ply_count,
        result=state.status,
        branching_per_ply=branching,
        log10_infoset_per_ply=log10s,
        infoset_total=infoset_total,
    )


def _play_indexed(args: tuple[int, int, Rules]) -> GameRecord:
    index, seed, rules = args
    return play_random_game(seed, rules, game_index=index)


def run_simulation(
    games: int,
    master_seed: int = 0,
    workers: int = 1,
    rules: Rules = STANDARD_RULES,
) -> tuple[SimulationSummary, RunningSeries, list[GameRecord]]:
    """Play `games` independent random games and aggregate.

    The branching factor is pooled over all plies of all games; game length
    is the per-game mean; the information-set statistic is reported both as
    the mean of per-ply log10 sizes and as the log10 of the exact
    arithmetic-mean size.  `workers` only distributes the games; it cannot
    change any output.
    """
    if games < 1:
        raise ValueError("games must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    tasks = [(i, game_seed(master_seed, i), rules) for i in range(games)]
    if workers == 1:
        records = [_play_indexed(t) for t in tasks]
    else:
        chunk = max(1, games // (workers * 8))
        with Pool(workers) as pool:
            records = pool.map(_play_indexed, tasks, chunksize=chunk)

    rows: list[SeriesRow] = []
    total_plies = 0
    total_branching = 0
    total_log10 = 0.0
    total_size = 0
    breakdown: dict[str, int] = {}
    for done, rec in enumerate(records, start=1):
        total_plies += rec.plies
        total_branching += sum(rec.branching_per_ply)
        total_log10 += sum(rec.log10_infoset_per_ply)
        total_size += rec.infoset_total
        label = rec.result.label()
        breakdown[label] = breakdown.get(label, 0) + 1
        if done % CHECKPOINT_EVERY == 0 or done == games:
            b = total_branching / total_plies
            rows.append(SeriesRow(
                games_completed=done,
                cum_avg_branching=b,
                cum_avg_length=total_plies / done,
                cum_avg_log10_infoset=total_log10 / total_plies,
                cum_log10_gtc=estimate_gtc_log10(b, total_plies / done),
            ))

    mean_branching = total_branching / total_plies
    mean_length = total_plies / games
    summary = SimulationSummary(
        games=games,
        mean_branching=mean_branching,
        mean_length_plies=mean_length,
        mean_log10_infoset=total_log10 / total_plies,
        log10_mean_infoset=exact_log10(total_size) - math.log10(total_plies),
        log10_gtc=estimate_gtc_log10(mean_branching, mean_length),
        result_breakdown=dict(sorted(breakdown.items())),
    )
    return summary, RunningSeries(rows), records


# ---------------------------------------------------------------------------
# output files
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    """Fixed 6-significant-digit rendering used in all CSV output."""
    return format(x, ".6g")


def write_games_csv(path: Path, records: list[GameRecord]) -> None:
    lines = ["game_index,seed,plies,result,mean_branching,mean_log10_infoset"]
    for rec in records:
        lines.append(
            f"{rec.game_index},{rec.seed},{rec.plies},{rec.result.label()},"
            f"{_fmt(rec.mean_branching)},{_fmt(rec.mean_log10_infoset)}"
        )
    path.write_text("\n".join(lines) + "\n")


def write_series_csv(path: Path, series: RunningSeries) -> None:
    lines = [
        "games_completed,cum_avg_branching,cum_avg_length,"
        "cum_avg_log10_infoset,cum_log10_gtc"
    ]
    for row in series.rows:
        lines.append(
            f"{row.games_completed},{_fmt(row.cum_avg_branching)},"
            f"{_fmt(row.cum_avg_length)},{_fmt(row.cum_avg_log10_infoset)},"
            f"{_fmt(row.cum_log10_gtc)}"
        )
    path.write_text("\n".join(lines) + "\n")


def write_summary_json(
    path: Path,
    summary: SimulationSummary,
    master_seed: int,
    rules: Rules,
) -> None:
    payload = {
        "games": summary.games,
        "mean_branching": summary.mean_branching,
        "mean_length_plies": summary.mean_length_plies,
        "mean_log10_infoset": summary.mean_log10_infoset,
        "log10_mean_infoset": summary.log10_mean_infoset,
        "log10_gtc": summary.log10_gtc,
        "result_breakdown": summary.result_breakdown,
        "master_seed": master_seed,
        "draw_plies": rules.draw_plies,
        "rules_flags": rules.flags(),
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
