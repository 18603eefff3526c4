"""Ground-truth rules engine for dark Chinese chess (JieQi).

Game summary: standard Chinese-chess material on the 9x10 board, but every
piece except the two Kings starts face-down on a uniformly shuffled initial
square of its own side.  A face-down piece moves by the *role* of the square
it sits on (the Chinese-chess kind that starts there) and is flipped face-up
by its first move.  Revealed pieces move by their true kind, with the JieQi
relaxation that Guards and Ministers may roam the whole board.  Capturing a
face-down piece shows its identity to the capturer only; the owner learns
just that a piece was lost.

Rule decisions baked into this engine:

  * Red moves first.
  * Meet the marshals is resolved by the flying-general capture: a move
    that leaves the two Kings facing on an open file is legal, but it hands
    the opponent a King-takes-King capture along that file, so the player
    who exposes the file loses to it.  King-takes-King is the only way the
    facing configuration ends a game, and it is reported as the
    meet-the-marshals result.
  * A side with no legal moves loses.
  * The no-capture draw counter resets only on captures; reveals do not
    reset it.
  * A revealed Pawn's river status is judged from its current square.

All state is immutable; `apply_move` returns a fresh state.  Randomness
enters only through explicit seeds (`initial_state`) or an explicitly
passed generator (lazy identity sampling, see `apply_move`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum, unique
from typing import Iterable, NamedTuple

from .board import (
    BLACK_DARK_HOME,
    BLACK_KING_START,
    DARK_CODE,
    FILES,
    GUARD_STEPS,
    GUARD_STEPS_CLASSIC,
    HORSE_MOVES,
    KING_STEPS,
    MINISTER_JUMPS,
    NUM_SQUARES,
    PAWN_STEPS,
    RAYS,
    RED_DARK_HOME,
    RED_KING_START,
    ROLE_OF_SQUARE,
    PieceKind,
    Side,
    make_cell,
    make_dark_cell,
    parse_square,
    square_name,
)
from .combinatorics import START_POOL, KindMultiset


class IllegalMoveError(ValueError):
    """Raised when a move is not legal in the given state."""


class MissingHiddenInfoError(ValueError):
    """Raised when a move needs a hidden identity the state does not carry
    and no sampling generator was supplied."""


@dataclass(frozen=True)
class Rules:
    """Tunable rule knobs.

    draw_plies: the game is drawn when this many plies pass without a
        capture.
    classic_dark_roles: confine face-down guard-role pieces to their own
        palace (the classic movement), instead of the relaxed
        anywhere-on-board diagonal step. Revealed pieces are unaffected.
    """

    draw_plies: int = 40
    classic_dark_roles: bool = False

    def flags(self) -> dict[str, bool]:
        return {"classic_dark_roles": self.classic_dark_roles}


STANDARD_RULES = Rules()


class Move(NamedTuple):
    from_sq: int
    to_sq: int

    def text(self) -> str:
        return square_name(self.from_sq) + square_name(self.to_sq)

    @classmethod
    def from_text(cls, text: str) -> Move:
        if len(text) != 4:
            raise ValueError(f"bad move text {text!r}")
        return cls(parse_square(text[:2]), parse_square(text[2:]))


@unique
class WinReason(Enum):
    KING_CAPTURED = "king_captured"
    MEET_MARSHALS = "meet_marshals"
    OPPONENT_STALEMATED = "opponent_stalemated"


@dataclass(frozen=True)
class TerminalStatus:
    over: bool = False
    winner: Side | None = None
    reason: WinReason | None = None

    @property
    def is_ongoing(self) -> bool:
        return not self.over

    @property
    def is_draw(self) -> bool:
        return self.over and self.winner is None

    @classmethod
    def win(cls, side: Side, reason: WinReason) -> TerminalStatus:
        return cls(True, side, reason)

    def label(self) -> str:
        """Stable snake_case tag used in CSV/JSON output."""
        if not self.over:
            return "ongoing"
        if self.winner is None:
            return "draw"
        return f"win_{self.winner.name.lower()}_{self.reason.value}"


ONGOING = TerminalStatus()
DRAW = TerminalStatus(over=True)


class Capture(NamedTuple):
    """One entry of a side's capture list."""

    kind: PieceKind
    was_dark: bool          # face of the piece at the moment it was taken


class CapturedInfo(NamedTuple):
    side: Side              # owner of the captured piece
    kind: PieceKind
    was_dark: bool


class Piece(NamedTuple):
    """Decoded view of one occupied square (kind is None for a face-down
    piece whose identity the state does not carry)."""

    side: Side
    kind: PieceKind | None
    dark: bool


@dataclass(frozen=True)
class MoveOutcome:
    revealed: PieceKind | None
    captured: CapturedInfo | None
    game_ended: TerminalStatus


@dataclass(frozen=True)
class GameState:
    """Arbiter state: public board plus the hidden identity assignment.

    `board` holds only player-visible cell codes (see jieqi.board); the true
    kinds of face-down pieces live in `hidden`, keyed by square.  A dark
    square absent from `hidden` has an *undetermined* identity: such states
    arise from lazy play (`initial_state_lazy`) or from decoding a state
    text without its hidden section, and support observation-level
    operations only.
    """

    board: tuple[int, ...]
    hidden: dict[int, PieceKind]
    side_to_move: Side
    ply_count: int
    plies_since_capture: int
    captured_by_red: tuple[Capture, ...]
    captured_by_black: tuple[Capture, ...]
    status: TerminalStatus
    rules: Rules
    red_king: int           # king squares, -1 once captured
    black_king: int

    def piece_at(self, sq: int) -> Piece | None:
        cell = self.board[sq]
        if cell == 0:
            return None
        side = Side.RED if cell > 0 else Side.BLACK
        if abs(cell) == DARK_CODE:
            return Piece(side, self.hidden.get(sq), True)
        return Piece(side, PieceKind(abs(cell) - 1), False)

    def captures_by(self, side: Side) -> tuple[Capture, ...]:
        return self.captured_by_red if side is Side.RED else self.captured_by_black

    def is_arbiter_complete(self) -> bool:
        """True when every face-down piece has a determined identity."""
        return all(
            sq in self.hidden
            for sq, cell in enumerate(self.board)
            if abs(cell) == DARK_CODE
        )


@dataclass(frozen=True)
class Observation:
    """Everything one player can see.

    The board view is identical for both players (nobody knows the identity
    of any face-down piece, one's own included); the asymmetry is in the
    capture knowledge:

      * own_revealed_captured_by_opp / opp_revealed_captured are public --
        those pieces were face-up when taken.
      * own_dark_lost_count: the viewer only knows how many of its
        face-down pieces were taken, not what they were.
      * opp_dark_captured_by_viewer: the viewer saw each face-down piece it
        captured, so it knows those kinds privately.

    Captured Kings are visible on the board view (by absence) and are not
    part of the kind multisets.
    """

    viewer: Side
    view: tuple[int, ...]
    own_revealed_captured_by_opp: KindMultiset
    own_dark_lost_count: int
    opp_revealed_captured: KindMultiset
    opp_dark_captured_by_viewer: KindMultiset
    side_to_move: Side
    plies_since_capture: int


# ---------------------------------------------------------------------------
# setup
# ---------------------------------------------------------------------------

def initial_state(seed: int, rules: Rules = STANDARD_RULES) -> GameState:
    """Shuffled starting position: Kings face-up on e0/e9, each side's 15
    other pieces assigned uniformly at random (from `seed`) to that side's
    15 remaining initial squares, face-down."""
    rng = random.Random(seed & 0xFFFFFFFFFFFFFFFF)
    board = [0] * NUM_SQUARES
    hidden: dict[int, PieceKind] = {}
    board[RED_KING_START] = make_cell(Side.RED, PieceKind.KING)
    board[BLACK_KING_START] = make_cell(Side.BLACK, PieceKind.KING)
    for side, home in ((Side.RED, RED_DARK_HOME), (Side.BLACK, BLACK_DARK_HOME)):
        kinds = START_POOL.expand()
        rng.shuffle(kinds)
        dark = make_dark_cell(side)
        for sq, kind in zip(home, kinds):
            board[sq] = dark
            hidden[sq] = kind
    return GameState(
        board=tuple(board),
        hidden=hidden,
        side_to_move=Side.RED,
        ply_count=0,
        plies_since_capture=0,
        captured_by_red=(),
        captured_by_black=(),
        status=ONGOING,
        rules=rules,
        red_king=RED_KING_START,
        black_king=BLACK_KING_START,
    )


def initial_state_lazy(rules: Rules = STANDARD_RULES) -> GameState:
    """Starting position with *undetermined* hidden identities; each is
    sampled from the remaining pool the first time a move needs it (pass a
    generator to `apply_move`).  Produces the same reveal distribution as
    eager assignment."""
    board = [0] * NUM_SQUARES
    board[RED_KING_START] = make_cell(Side.RED, PieceKind.KING)
    board[BLACK_KING_START] = make_cell(Side.BLACK, PieceKind.KING)
    for sq in RED_DARK_HOME:
        board[sq] = make_dark_cell(Side.RED)
    for sq in BLACK_DARK_HOME:
        board[sq] = make_dark_cell(Side.BLACK)
    return GameState(
        board=tuple(board),
        hidden={},
        side_to_move=Side.RED,
        ply_count=0,
        plies_since_capture=0,
        captured_by_red=(),
        captured_by_black=(),
        status=ONGOING,
        rules=rules,
        red_king=RED_KING_START,
        black_king=BLACK_KING_START,
    )


# ---------------------------------------------------------------------------
# move generation
# ---------------------------------------------------------------------------

def legal_moves(state: GameState) -> list[Move]:
    """All legal moves for the side to move.

    Face-down pieces move by their square's role, revealed pieces by their
    true kind; the result therefore depends only on observation-visible
    data.  Moves that expose the Kings to each other are included -- they
    lose to the opponent's flying-general capture, which is itself listed
    here whenever the Kings stand exposed.
    """
    if state.status.over:
        raise ValueError("game is over; no legal moves")
    return _gen_all(state.board, state.side_to_move, state.rules)


def _gen_all(board: tuple[int, ...], side: Side, rules: Rules) -> list[Move]:
    moves: list[Move] = []
    red = side is Side.RED
    for sq, cell in enumerate(board):
        if cell == 0 or (cell > 0) is not red:
            continue
        _gen_piece(board, side, sq, cell, rules, moves)
    return moves


def _any_move(board: tuple[int, ...], side: Side, rules: Rules) -> bool:
    moves: list[Move] = []
    red = side is Side.RED
    for sq, cell in enumerate(board):
        if cell == 0 or (cell > 0) is not red:
            continue
        _gen_piece(board, side, sq, cell, rules, moves)
        if moves:
            return True
    return False


def _gen_piece(
    board: tuple[int, ...],
    side: Side,
    sq: int,
    cell: int,
    rules: Rules,
    out: list[Move],
) -> None:
    red = cell > 0
    dark = cell == DARK_CODE or cell == -DARK_CODE
    kind = ROLE_OF_SQUARE[sq] if dark else PieceKind(abs(cell) - 1)

    if kind is PieceKind.ROOK:
        for ray in RAYS[sq]:
            for d in ray:
                c = board[d]
                if c == 0:
                    out.append(Move(sq, d))
                else:
                    if (c > 0) is not red:
                        out.append(Move(sq, d))
                    break
    elif kind is PieceKind.CANNON:
        for ray in RAYS[sq]:
            screened = False
            for d in ray:
                c = board[d]
                if not screened:
                    if c == 0:
                        out.append(Move(sq, d))
                    else:
                        screened = True
                elif c != 0:
                    if (c > 0) is not red:
                        out.append(Move(sq, d))
                    break
    elif kind is PieceKind.PAWN:
        for d in PAWN_STEPS[side][sq]:
            c = board[d]
            if c == 0 or (c > 0) is not red:
                out.append(Move(sq, d))
    elif kind is PieceKind.HORSE:
        for leg, d in HORSE_MOVES[sq]:
            if board[leg] == 0:
                c = board[d]
                if c == 0 or (c > 0) is not red:
                    out.append(Move(sq, d))
    elif kind is PieceKind.MINISTER:
        for mid, d in MINISTER_JUMPS[sq]:
            if board[mid] == 0:
                c = board[d]
                if c == 0 or (c > 0) is not red:
                    out.append(Move(sq, d))
    elif kind is PieceKind.GUARD:
        if dark and rules.classic_dark_roles:
            steps: Iterable[int] = GUARD_STEPS_CLASSIC[side][sq]
        else:
            steps = GUARD_STEPS[sq]
        for d in steps:
            c = board[d]
            if c == 0 or (c > 0) is not red:
                out.append(Move(sq, d))
    else:  # KING
        for d in KING_STEPS[side][sq]:
            c = board[d]
            if c == 0 or (c > 0) is not red:
                out.append(Move(sq, d))
        # Flying general: with the enemy King exposed on this file, capture
        # it across any distance.
        step = FILES if red else -FILES
        d = sq + step
        enemy_king = -1 if red else 1
        while 0 <= d < NUM_SQUARES:
            c = board[d]
            if c != 0:
                if c == enemy_king:
                    out.append(Move(sq, d))
                break
            d += step


# ---------------------------------------------------------------------------
# applying moves
# ---------------------------------------------------------------------------

def apply_move(
    state: GameState,
    move: Move,
    rng: random.Random | None = None,
) -> tuple[GameState, MoveOutcome]:
    """Play `move` and return (successor, outcome).

    A face-down mover is revealed; a captured piece goes to the mover's
    capture list with the face it had.  Termination is checked in order:
    king captured (as meet-the-marshals when taken by the flying general),
    no-capture draw, opponent stalemated.

    When the move needs an undetermined hidden identity (lazy states), it
    is sampled uniformly from the owner's unassigned pool using `rng`;
    without a generator such a move raises MissingHiddenInfoError.
    """
    if state.status.over:
        raise IllegalMoveError("game is over")
    assert state.ply_count < 1500, "runaway game"
    if not (0 <= move.from_sq < NUM_SQUARES and 0 <= move.to_sq < NUM_SQUARES):
        raise IllegalMoveError(f"square off board in {move}")
    from_cell = state.board[move.from_sq]
    red = state.side_to_move is Side.RED
    if from_cell == 0 or (from_cell > 0) is not red:
        raise IllegalMoveError(
            f"{move.text()}: no {state.side_to_move.name} piece on {square_name(move.from_sq)}"
        )
    candidates: list[Move] = []
    _gen_piece(state.board, state.side_to_move, move.from_sq, from_cell,
               state.rules, candidates)
    if move not in candidates:
        raise IllegalMoveError(f"illegal move {move.text()}")

    mover = state.side_to_move
    board = list(state.board)
    hidden = dict(state.hidden)
    to_cell = board[move.to_sq]

    was_dark = abs(from_cell) == DARK_CODE
    revealed: PieceKind | None = None
    if was_dark:
        revealed = hidden.pop(move.from_sq, None)
        if revealed is None:
            revealed = _sample_identity(state, mover, rng)
        board[move.to_sq] = make_cell(mover, revealed)
    else:
        board[move.to_sq] = from_cell
    board[move.from_sq] = 0

    captured: CapturedInfo | None = None
    if to_cell != 0:
        victim = mover.opponent
        cap_dark = abs(to_cell) == DARK_CODE
        if cap_dark:
            cap_kind = hidden.pop(move.to_sq, None)
            if cap_kind is None:
                cap_kind = _sample_identity(state, victim, rng)
        else:
            cap_kind = PieceKind(abs(to_cell) - 1)
        captured = CapturedInfo(victim, cap_kind, cap_dark)

    red_king, black_king = state.red_king, state.black_king
    if move.from_sq == red_king:
        red_king = move.to_sq
    elif move.from_sq == black_king:
        black_king = move.to_sq
    if captured is not None and captured.kind is PieceKind.KING:
        if captured.side is Side.RED:
            red_king = -1
        else:
            black_king = -1

    captured_by_red = state.captured_by_red
    captured_by_black = state.captured_by_black
    if captured is not None:
        entry = Capture(captured.kind, captured.was_dark)
        if mover is Side.RED:
            captured_by_red = captured_by_red + (entry,)
        else:
            captured_by_black = captured_by_black + (entry,)
        plies_since_capture = 0
    else:
        plies_since_capture = state.plies_since_capture + 1

    next_side = mover.opponent
    board_t = tuple(board)

    if captured is not None and captured.kind is PieceKind.KING:
        # Only a King ever reaches the enemy King (the flying-general
        # capture): that ending is the meet-the-marshals loss for the
        # player who exposed the file.
        if abs(from_cell) == 1:
            status = TerminalStatus.win(mover, WinReason.MEET_MARSHALS)
        else:
            status = TerminalStatus.win(mover, WinReason.KING_CAPTURED)
    elif plies_since_capture >= state.rules.draw_plies:
        status = DRAW
    elif not _any_move(board_t, next_side, state.rules):
        status = TerminalStatus.win(mover, WinReason.OPPONENT_STALEMATED)
    else:
        status = ONGOING

    new_state = GameState(
        board=board_t,
        hidden=hidden,
        side_to_move=next_side,
        ply_count=state.ply_count + 1,
        plies_since_capture=plies_since_capture,
        captured_by_red=captured_by_red,
        captured_by_black=captured_by_black,
        status=status,
        rules=state.rules,
        red_king=red_king,
        black_king=black_king,
    )
    return new_state, MoveOutcome(revealed, captured, status)


def unassigned_pool(state: GameState, side: Side) -> KindMultiset:
    """Kinds of `side` whose location/identity the arbiter has not fixed:
    the initial pool minus revealed pieces on the board, minus captured
    pieces, minus face-down pieces with a determined identity."""
    pool = START_POOL
    red = side is Side.RED
    for cell in state.board:
        if cell != 0 and (cell > 0) is red and abs(cell) != DARK_CODE:
            kind = PieceKind(abs(cell) - 1)
            if kind is not PieceKind.KING:
                pool = pool.remove(kind)
    taken_by_opp = state.captures_by(side.opponent)
    for kind, _ in taken_by_opp:
        if kind is not PieceKind.KING:
            pool = pool.remove(kind)
    home = RED_DARK_HOME if red else BLACK_DARK_HOME
    for sq in home:
        kind = state.hidden.get(sq)
        if kind is not None:
            pool = pool.remove(kind)
    return pool


def _sample_identity(state: GameState, side: Side, rng: random.Random | None) -> PieceKind:
    if rng is None:
        raise MissingHiddenInfoError(
            f"move needs the identity of an undetermined {side.name} piece; "
            "pass rng= to sample it lazily"
        )
    pool = unassigned_pool(state, side).expand()
    return pool[rng.randrange(len(pool))]


def terminal_status(state: GameState) -> TerminalStatus:
    return state.status


# ---------------------------------------------------------------------------
# observation projection
# ---------------------------------------------------------------------------

def _capture_buckets(entries: tuple[Capture, ...]) -> tuple[KindMultiset, KindMultiset, int]:
    """Split a capture list into (revealed kinds, dark kinds, dark count)."""
    revealed = KindMultiset.from_kinds(
        k for k, dark in entries if not dark and k is not PieceKind.KING
    )
    dark = KindMultiset.from_kinds(k for k, d in entries if d)
    dark_count = sum(1 for _, d in entries if d)
    return revealed, dark, dark_count


def observe(state: GameState, viewer: Side) -> Observation:
    """Project the arbiter state to what `viewer` knows."""
    by_viewer = state.captures_by(viewer)
    by_opp = state.captures_by(viewer.opponent)
    own_revealed_lost, _, own_dark_lost = _capture_buckets(by_opp)
    opp_revealed_taken, opp_dark_taken, _ = _capture_buckets(by_viewer)
    return Observation(
        viewer=viewer,
        view=state.board,
        own_revealed_captured_by_opp=own_revealed_lost,
        own_dark_lost_count=own_dark_lost,
        opp_revealed_captured=opp_revealed_taken,
        opp_dark_captured_by_viewer=opp_dark_taken,
        side_to_move=state.side_to_move,
        plies_since_capture=state.plies_since_capture,
    )


# ---------------------------------------------------------------------------
# perft
# ---------------------------------------------------------------------------

def perft_counts(state: GameState, max_depth: int) -> list[int]:
    """Number of distinct move sequences of each length 1..max_depth from
    `state`, with reveals resolved by the state's hidden assignment.
    Sequences ending in a terminal position are counted at their length and
    not extended."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    counts = [0] * (max_depth + 1)

    def walk(s: GameState, depth: int) -> None:
        moves = _gen_all(s.board, s.side_to_move, s.rules)
        counts[depth + 1] += len(moves)
        if depth + 1 < max_depth:
            for m in moves:
                nxt, _ = apply_move(s, m)
                if not nxt.status.over:
                    walk(nxt, depth + 1)

    if not state.status.over:
        walk(state, 0)
    return counts[1:]


def perft(state: GameState, depth: int) -> int:
    return perft_counts(state, depth)[-1]
