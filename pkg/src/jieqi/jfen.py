"""JFEN: single-line text serialization of a game state.

Layout, space-separated:

    <board> <side> <plies-since-capture> <ply-count> <cap-red> <cap-black> <hidden>

board     ten rank fields from rank 9 down to rank 0, joined by '/'.
          Within a rank (file a..i): digits 1-9 run-length-encode empty
          squares; K G M R H C P are revealed Red pieces, lowercase for
          Black; 'X' is a face-down Red piece, 'x' face-down Black.
side      'r' or 'b', the side to move.
cap-red   pieces captured by Red (so Black kinds, lowercase), in capture
          order, each letter carrying a '*' suffix if the piece was
          face-down when taken; '-' when empty.  cap-black likewise with
          uppercase Red kinds.
hidden    the true identities of all face-down pieces: comma-separated
          square=KIND entries (kind letter cased by side), listed in board
          order (rank 9 down to 0, file a to i), covering every dark square
          exactly once; or '-' when omitted.  A state decoded without its
          hidden section supports observation-level operations only.

Terminal status is not encoded; it is re-derived on decode from the board
and counters (missing king -- with a winner King in the enemy palace
marking the flying-general ending -- draw counter, stalemate), which
reproduces the status `apply_move` assigned.

Encoding is canonical and bit-exact: a given state always encodes to the
same single-line string, and decode(encode(state)) round-trips exactly.
"""

from __future__ import annotations

from .board import (
    DARK_CODE,
    DARK_HOME,
    FILES,
    NUM_SQUARES,
    RANKS,
    PieceKind,
    Side,
    in_palace,
    parse_square,
    square_name,
)
from .combinatorics import START_POOL, KindMultiset
from .engine import (
    DRAW,
    ONGOING,
    Capture,
    GameState,
    Rules,
    STANDARD_RULES,
    TerminalStatus,
    WinReason,
    _any_move,
)


class JfenError(ValueError):
    """Malformed state text; the message names the offending field."""


_KIND_LETTERS = "KGMRHCP"


def _piece_letter(cell: int) -> str:
    if abs(cell) == DARK_CODE:
        letter = "X"
    else:
        letter = _KIND_LETTERS[abs(cell) - 1]
    return letter if cell > 0 else letter.lower()


def _captures_field(entries: tuple[Capture, ...], owner: Side) -> str:
    if not entries:
        return "-"
    out = []
    for kind, was_dark in entries:
        letter = kind.letter if owner is Side.RED else kind.letter.lower()
        out.append(letter + "*" if was_dark else letter)
    return "".join(out)


def encode_state(state: GameState, include_hidden: bool = True) -> str:
    """Render a state as canonical JFEN text."""
    ranks = []
    for r in range(RANKS - 1, -1, -1):
        row = []
        run = 0
        for f in range(FILES):
            cell = state.board[r * FILES + f]
            if cell == 0:
                run += 1
            else:
                if run:
                    row.append(str(run))
                    run = 0
                row.append(_piece_letter(cell))
        if run:
            row.append(str(run))
        ranks.append("".join(row))

    if include_hidden:
        entries = []
        for r in range(RANKS - 1, -1, -1):
            for f in range(FILES):
                sq = r * FILES + f
                if abs(state.board[sq]) != DARK_CODE:
                    continue
                kind = state.hidden.get(sq)
                if kind is None:
                    raise ValueError(
                        f"cannot encode hidden section: identity of {square_name(sq)} "
                        "is undetermined"
                    )
                letter = kind.letter if state.board[sq] > 0 else kind.letter.lower()
                entries.append(f"{square_name(sq)}={letter}")
        hidden_field = ",".join(entries) if entries else "-"
    else:
        hidden_field = "-"

    return " ".join(
        (
            "/".join(ranks),
            state.side_to_move.letter,
            str(state.plies_since_capture),
            str(state.ply_count),
            _captures_field(state.captured_by_red, Side.BLACK),
            _captures_field(state.captured_by_black, Side.RED),
            hidden_field,
        )
    )


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------

def _parse_board(field: str) -> list[int]:
    rank_fields = field.split("/")
    if len(rank_fields) != RANKS:
        raise JfenError(f"board: expected {RANKS} rank fields, got {len(rank_fields)}")
    board = [0] * NUM_SQUARES
    for i, text in enumerate(rank_fields):
        r = RANKS - 1 - i
        f = 0
        prev_digit = False
        for ch in text:
            if ch.isdigit():
                if prev_digit:
                    raise JfenError(f"board rank {r}: consecutive digits in {text!r}")
                if ch == "0":
                    raise JfenError(f"board rank {r}: bad run length 0")
                f += int(ch)
                prev_digit = True
                continue
            prev_digit = False
            if f >= FILES:
                raise JfenError(f"board rank {r}: width exceeds {FILES}")
            upper = ch.upper()
            if upper == "X":
                cell = DARK_CODE
            elif upper in _KIND_LETTERS:
                cell = _KIND_LETTERS.index(upper) + 1
            else:
                raise JfenError(f"board rank {r}: bad piece letter {ch!r}")
            board[r * FILES + f] = cell if ch.isupper() else -cell
            f += 1
        if f != FILES:
            raise JfenError(f"board rank {r}: width {f}, expected {FILES}")
    return board


def _parse_captures(field: str, field_name: str, owner: Side) -> tuple[Capture, ...]:
    if field == "-":
        return ()
    entries = []
    i = 0
    while i < len(field):
        ch = field[i]
        expected_case = ch.isupper() if owner is Side.RED else ch.islower()
        if not ch.isalpha() or not expected_case:
            raise JfenError(f"{field_name}: bad capture letter {ch!r}")
        try:
            kind = PieceKind.from_letter(ch)
        except ValueError as exc:
            raise JfenError(f"{field_name}: {exc}") from None
        was_dark = i + 1 < len(field) and field[i + 1] == "*"
        if was_dark and kind is PieceKind.KING:
            raise JfenError(f"{field_name}: a King cannot be captured face-down")
        entries.append(Capture(kind, was_dark))
        i += 2 if was_dark else 1
    return tuple(entries)


def _parse_hidden(field: str, board: list[int]) -> dict[int, PieceKind]:
    dark_squares = {sq for sq in range(NUM_SQUARES) if abs(board[sq]) == DARK_CODE}
    if field == "-":
        return {}
    hidden: dict[int, PieceKind] = {}
    for entry in field.split(","):
        name, sep, letter = entry.partition("=")
        if not sep or len(letter) != 1:
            raise JfenError(f"hidden: bad entry {entry!r}")
        try:
            sq = parse_square(name)
        except ValueError as exc:
            raise JfenError(f"hidden: {exc}") from None
        if sq not in dark_squares:
            raise JfenError(f"hidden: {name} is not a face-down square")
        if sq in hidden:
            raise JfenError(f"hidden: duplicate entry for {name}")
        if (board[sq] > 0) is not letter.isupper():
            raise JfenError(f"hidden: case of {entry!r} does not match the piece's side")
        try:
            kind = PieceKind.from_letter(letter)
        except ValueError as exc:
            raise JfenError(f"hidden: {exc}") from None
        if kind is PieceKind.KING:
            raise JfenError("hidden: a King cannot be face-down")
        hidden[sq] = kind
    missing = dark_squares - hidden.keys()
    if missing:
        names = ", ".join(sorted(square_name(sq) for sq in missing))
        raise JfenError(f"hidden: missing entries for {names}")
    return hidden


def _check_side_material(
    board: list[int],
    side: Side,
    captured_by_opp: tuple[Capture, ...],
    hidden: dict[int, PieceKind],
    has_hidden: bool,
) -> None:
    """Piece conservation: board + capture list must rebuild the initial
    16-piece multiset (and agree with the hidden section when present)."""
    red = side is Side.RED
    kings_on_board = 0
    dark_squares = []
    revealed = KindMultiset()
    for sq, cell in enumerate(board):
        if cell == 0 or (cell > 0) is not red:
            continue
        if abs(cell) == DARK_CODE:
            if sq not in DARK_HOME[side]:
                raise JfenError(
                    f"board: face-down {side.name} piece on {square_name(sq)} is "
                    "outside its side's starting squares"
                )
            dark_squares.append(sq)
            continue
        kind = PieceKind(abs(cell) - 1)
        if kind is PieceKind.KING:
            kings_on_board += 1
            # A King sits in its own palace, or in the enemy palace right
            # after a flying-general capture.
            if not (in_palace(sq, side) or in_palace(sq, side.opponent)):
                raise JfenError(
                    f"board: {side.name} King on {square_name(sq)} is outside both palaces"
                )
        else:
            revealed = revealed.add(kind)

    captured_kings = sum(1 for k, _ in captured_by_opp if k is PieceKind.KING)
    if kings_on_board + captured_kings != 1:
        raise JfenError(f"board: {side.name} must have exactly one King on board or captured")
    if kings_on_board > 1:
        raise JfenError(f"board: more than one {side.name} King")

    taken = KindMultiset.from_kinds(
        k for k, _ in captured_by_opp if k is not PieceKind.KING
    )
    try:
        remainder = START_POOL - revealed - taken
    except ValueError:
        raise JfenError(f"board: too many revealed/captured {side.name} pieces of one kind") from None
    if remainder.total() != len(dark_squares):
        raise JfenError(
            f"board: {side.name} has {len(dark_squares)} face-down pieces but the "
            f"unaccounted pool holds {remainder.total()}"
        )
    if has_hidden:
        assigned = KindMultiset.from_kinds(hidden[sq] for sq in dark_squares)
        if assigned != remainder:
            raise JfenError(
                f"hidden: {side.name} assignment {assigned} does not match the "
                f"unaccounted pool {remainder}"
            )


def _derive_status(
    board: list[int],
    side_to_move: Side,
    plies_since_capture: int,
    red_king: int,
    black_king: int,
    rules: Rules,
) -> TerminalStatus:
    # Mirrors the termination order of apply_move, so decoding the encoding
    # of a played-out state reproduces its status.  A winner King standing
    # in the loser's palace marks the flying-general (meet-the-marshals)
    # ending; Kings can reach the enemy palace no other way.
    for missing, winner, winner_king in (
        (red_king, Side.BLACK, black_king),
        (black_king, Side.RED, red_king),
    ):
        if missing < 0:
            if in_palace(winner_king, winner.opponent):
                return TerminalStatus.win(winner, WinReason.MEET_MARSHALS)
            return TerminalStatus.win(winner, WinReason.KING_CAPTURED)
    if plies_since_capture >= rules.draw_plies:
        return DRAW
    if not _any_move(tuple(board), side_to_move, rules):
        return TerminalStatus.win(side_to_move.opponent, WinReason.OPPONENT_STALEMATED)
    return ONGOING


def decode_state(text: str, rules: Rules = STANDARD_RULES) -> GameState:
    """Parse JFEN text into a GameState, validating the grammar and piece
    conservation. Raises JfenError naming the bad field on malformed input."""
    fields = text.strip().split(" ")
    if len(fields) != 7 or any(not f for f in fields):
        raise JfenError(f"expected 7 space-separated fields, got {len(fields)}")
    board_f, side_f, psc_f, plyc_f, capr_f, capb_f, hidden_f = fields

    board = _parse_board(board_f)
    try:
        side_to_move = Side.from_letter(side_f)
    except ValueError as exc:
        raise JfenError(f"side to move: {exc}") from None
    if not psc_f.isdigit() or not plyc_f.isdigit():
        raise JfenError("counters must be non-negative decimals")
    plies_since_capture = int(psc_f)
    ply_count = int(plyc_f)
    if plies_since_capture > rules.draw_plies:
        raise JfenError(
            f"plies-since-capture {plies_since_capture} exceeds the draw limit {rules.draw_plies}"
        )

    captured_by_red = _parse_captures(capr_f, "captured-by-red", Side.BLACK)
    captured_by_black = _parse_captures(capb_f, "captured-by-black", Side.RED)
    hidden = _parse_hidden(hidden_f, board)
    has_hidden = hidden_f != "-"

    _check_side_material(board, Side.RED, captured_by_black, hidden, has_hidden)
    _check_side_material(board, Side.BLACK, captured_by_red, hidden, has_hidden)

    def find_king(side: Side) -> int:
        target = 1 if side is Side.RED else -1
        for sq, cell in enumerate(board):
            if cell == target:
                return sq
        return -1

    red_king = find_king(Side.RED)
    black_king = find_king(Side.BLACK)
    status = _derive_status(
        board, side_to_move, plies_since_capture, red_king, black_king, rules
    )
    return GameState(
        board=tuple(board),
        hidden=hidden,
        side_to_move=side_to_move,
        ply_count=ply_count,
        plies_since_capture=plies_since_capture,
        captured_by_red=captured_by_red,
        captured_by_black=captured_by_black,
        status=status,
        rules=rules,
        red_king=red_king,
        black_king=black_king,
    )


#: The shuffled-start position with the hidden section omitted.
INITIAL_JFEN = (
    "xxxxkxxxx/9/1x5x1/x1x1x1x1x/9/9/X1X1X1X1X/1X5X1/9/XXXXKXXXX r 0 0 - - -"
)
