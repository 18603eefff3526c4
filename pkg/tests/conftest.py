"""Shared test helpers: direct state construction and random-state pools."""

from __future__ import annotations

import random

from jieqi import (
    GameState,
    Move,
    PieceKind,
    Rules,
    STANDARD_RULES,
    START_POOL,
    Side,
    apply_move,
    initial_state,
    legal_moves,
    parse_square,
)
from jieqi.board import NUM_SQUARES, make_cell, make_dark_cell
from jieqi.engine import Capture, ONGOING


def build_state(
    red: dict[str, str] | None = None,
    black: dict[str, str] | None = None,
    to_move: Side = Side.RED,
    plies_since_capture: int = 0,
    ply_count: int = 0,
    rules: Rules = STANDARD_RULES,
) -> GameState:
    """Construct an arbitrary position directly (status left Ongoing).

    `red` / `black` map square names to piece letters ('K','G','M','R','H',
    'C','P') for revealed pieces, or 'dark:<letter>' for a face-down piece
    with that true kind.  Pieces missing from the board are auto-completed
    into the opposing capture list (revealed face) so piece conservation
    holds and the state encodes/decodes cleanly.
    """
    board = [0] * NUM_SQUARES
    hidden: dict[int, PieceKind] = {}
    kings = {Side.RED: -1, Side.BLACK: -1}
    on_board = {Side.RED: [], Side.BLACK: []}
    for side, pieces in ((Side.RED, red or {}), (Side.BLACK, black or {})):
        for name, entry in pieces.items():
            sq = parse_square(name)
            assert board[sq] == 0, f"square {name} used twice"
            if entry.startswith("dark:"):
                kind = PieceKind.from_letter(entry[5:])
                board[sq] = make_dark_cell(side)
                hidden[sq] = kind
            else:
                kind = PieceKind.from_letter(entry)
                board[sq] = make_cell(side, kind)
                if kind is PieceKind.KING:
                    kings[side] = sq
            on_board[side].append(kind)

    def missing(side: Side) -> tuple:
        pool = START_POOL
        entries = []
        if kings[side] < 0:
            entries.append(Capture(PieceKind.KING, False))
        for kind in on_board[side]:
            if kind is not PieceKind.KING:
                pool = pool.remove(kind)
        for kind, count in pool.items():
            entries.extend([Capture(kind, False)] * count)
        return tuple(entries)

    return GameState(
        board=tuple(board),
        hidden=hidden,
        side_to_move=to_move,
        ply_count=ply_count,
        plies_since_capture=plies_since_capture,
        captured_by_red=missing(Side.BLACK),
        captured_by_black=missing(Side.RED),
        status=ONGOING,
        rules=rules,
        red_king=kings[Side.RED],
        black_king=kings[Side.BLACK],
    )


def random_state(seed: int, plies: int, rules: Rules = STANDARD_RULES) -> GameState:
    """A state reached by `plies` uniform-random moves (fewer if the game
    ends first)."""
    state = initial_state(seed, rules)
    rng = random.Random(seed ^ 0xC0FFEE)
    for _ in range(plies):
        if state.status.over:
            break
        moves = legal_moves(state)
        state, _ = apply_move(state, moves[rng.randrange(len(moves))])
    return state


def mv(text: str) -> Move:
    return Move.from_text(text)
