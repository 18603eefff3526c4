"""Exact size of a player's information set.

The information set of an observation is the set of hidden-identity
assignments to the face-down squares still on the board that are consistent
with everything the viewer knows.  Both unknowns factor independently:

    size = arrangements(own pool -> own dark squares)
         * arrangements(opponent pool -> opponent dark squares)

where a side's pool is its initial 15-piece multiset minus every identity
the viewer has learned (revealed pieces, public revealed captures, and --
for the opponent's pool only -- the face-down pieces the viewer captured
and saw).  The viewer's own face-down pieces captured by the opponent stay
in the viewer's pool: their identities are unknown to the viewer, so they
constrain the on-board assignment without being ordered themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import DARK_CODE, PieceKind
from .combinatorics import (
    START_POOL,
    KindMultiset,
    exact_log10,
    multiset_arrangements,
)
from .engine import GameState, Observation, Side


@dataclass(frozen=True)
class HiddenPools:
    """The two unknown-identity pools and their on-board slot counts."""

    own_pool: KindMultiset
    own_slots: int
    opp_pool: KindMultiset
    opp_slots: int


def _board_summary(view: tuple[int, ...], side: Side) -> tuple[KindMultiset, int]:
    """(revealed non-king kinds on board, face-down count) for one side."""
    red = side is Side.RED
    counts = [0] * 6
    dark = 0
    for cell in view:
        if cell == 0 or (cell > 0) is not red:
            continue
        mag = cell if red else -cell
        if mag == DARK_CODE:
            dark += 1
        elif mag != 1:  # skip kings; NON_KING_KINDS follows PieceKind order
            counts[mag - 2] += 1
    return KindMultiset(tuple(counts)), dark


def hidden_pools(obs: Observation) -> HiddenPools:
    """Derive the unknown pools from an observation.

    Raises ValueError on an observation whose capture/reveal counts exceed
    the initial material (corrupt input).
    """
    own_revealed, own_slots = _board_summary(obs.view, obs.viewer)
    opp_revealed, opp_slots = _board_summary(obs.view, obs.viewer.opponent)
    try:
        own_pool = START_POOL - own_revealed - obs.own_revealed_captured_by_opp
        opp_pool = (
            START_POOL - opp_revealed - obs.opp_revealed_captured
            - obs.opp_dark_captured_by_viewer
        )
    except ValueError as exc:
        raise ValueError(f"corrupt observation: {exc}") from None
    if own_pool.total() != own_slots + obs.own_dark_lost_count:
        raise ValueError(
            "corrupt observation: own pool size "
            f"{own_pool.total()} != {own_slots} slots + {obs.own_dark_lost_count} lost"
        )
    if opp_pool.total() != opp_slots:
        raise ValueError(
            f"corrupt observation: opponent pool size {opp_pool.total()} != "
            f"{opp_slots} slots"
        )
    return HiddenPools(own_pool, own_slots, opp_pool, opp_slots)


def infoset_size(obs: Observation) -> int:
    """Exact number of hidden-identity assignments consistent with `obs`."""
    pools = hidden_pools(obs)
    return _pools_size(pools)


def _pools_size(pools: HiddenPools) -> int:
    return multiset_arrangements(pools.own_pool, pools.own_slots) * \
        multiset_arrangements(pools.opp_pool, pools.opp_slots)


def infoset_log10(obs: Observation) -> float:
    return exact_log10(infoset_size(obs))


# --- brute-force oracle ------------------------------------------------------

def infoset_size_bruteforce(obs: Observation) -> int:
    """Reference oracle: explicitly enumerate the distinct assignments.

    Walks the assignment tree slot by slot, branching once per kind still
    available, so every distinct assignment is visited exactly once and the
    leaf count is the answer.  Only for small cases (<= 8 dark squares in
    total); independent of the closed-form arithmetic in infoset_size.
    """
    pools = hidden_pools(obs)
    if pools.own_slots + pools.opp_slots > 8:
        raise ValueError(
            f"brute force limited to 8 dark squares, got "
            f"{pools.own_slots + pools.opp_slots}"
        )
    return _enumerate_assignments(pools.own_pool, pools.own_slots) * \
        _enumerate_assignments(pools.opp_pool, pools.opp_slots)


def _enumerate_assignments(pool: KindMultiset, slots: int) -> int:
    counts = list(pool.counts)

    def walk(slot: int) -> int:
        if slot == slots:
            return 1
        total = 0
        for i in range(len(counts)):
            if counts[i] > 0:
                counts[i] -= 1
                total += walk(slot + 1)
                counts[i] += 1
        return total

    return walk(0)


# --- direct-from-state fast path ---------------------------------------------

def state_hidden_pools(state: GameState, viewer: Side) -> HiddenPools:
    """hidden_pools(observe(state, viewer)) without building the Observation
    (the simulator calls this once per ply)."""
    own_revealed, own_slots = _board_summary(state.board, viewer)
    opp_revealed, opp_slots = _board_summary(state.board, viewer.opponent)
    own_pool = START_POOL - own_revealed
    opp_pool = START_POOL - opp_revealed
    own_dark_lost = 0
    for kind, was_dark in state.captures_by(viewer.opponent):
        if was_dark:
            own_dark_lost += 1
        elif kind is not PieceKind.KING:
            own_pool = own_pool.remove(kind)
    for kind, was_dark in state.captures_by(viewer):
        if was_dark or kind is not PieceKind.KING:
            opp_pool = opp_pool.remove(kind)
    assert own_pool.total() == own_slots + own_dark_lost
    assert opp_pool.total() == opp_slots
    return HiddenPools(own_pool, own_slots, opp_pool, opp_slots)


def state_infoset_size(state: GameState, viewer: Side) -> int:
    return _pools_size(state_hidden_pools(state, viewer))


def mover_infoset_size(state: GameState) -> int:
    """Information-set size from the viewpoint of the player to move (the
    per-ply measurement convention)."""
    return state_infoset_size(state, state.side_to_move)
