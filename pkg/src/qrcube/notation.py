"""Parser and printer for move-sequence text.

Grammar (ASCII form of the subscripted notation)::

    sequence := ws* [ move (ws+ move)* ] ws*
    move     := ['T' | 'M'] face ["'"] turns '(' index ')'
    face     := 'U' | 'D' | 'L' | 'R' | 'F' | 'B'
    turns    := positive integer, no leading zeros
    index    := positive integer; the k-th move must carry index k

``TU2(1)`` is a wide (two-layer) U turned clockwise twice; ``MB2(1)`` the
depth-2 slice behind B; ``D'1(2)`` one counter-clockwise D quarter turn.
The typographic prime U+2032 is accepted as an alias for ``'``.
"""
from __future__ import annotations

from .cube import FACES, Face, Move, MoveSequence
from .errors import ParseError

_FACE_LETTERS = {f.value for f in FACES}
_PRIMES = ("'", "′")
_WS = " \t"


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def offset(self, pos=None):
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, message, pos=None):
        raise ParseError(message, self.offset(pos))

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self):
        return self.pos >= len(self.text)

    def skip_ws(self):
        start = self.pos
        while self.peek() and self.peek() in _WS:
            self.pos += 1
        return self.pos - start

    def number(self, what):
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            self.fail(f"expected {what}")
        if digits[0] == "0":
            self.fail(f"malformed {what} {digits!r}", start)
        return int(digits), start


def _parse_move(sc: _Scanner, expected_index: int) -> Move:
    prefix = ""
    if sc.peek() in ("T", "M"):
        prefix = sc.peek()
        sc.pos += 1
    ch = sc.peek()
    if ch not in _FACE_LETTERS:
        sc.fail(f"unknown face letter {ch!r}" if ch else "expected a face letter")
    face = Face(ch)
    sc.pos += 1
    prime = False
    if sc.peek() in _PRIMES and sc.peek():
        prime = True
        sc.pos += 1
    turns, _ = sc.number("turn count")
    if sc.peek() != "(":
        sc.fail("expected '(' before the sequence index")
    sc.pos += 1
    index, at = sc.number("sequence index")
    if sc.peek() != ")":
        sc.fail("expected ')' after the sequence index")
    sc.pos += 1
    if index != expected_index:
        sc.fail(f"sequence index {index} out of order, expected {expected_index}", at)
    return Move(face, prefix, prime, turns, index)


def parse(text: str) -> MoveSequence:
    """Parse move text into a MoveSequence; raises ParseError with a byte offset."""
    sc = _Scanner(text)
    moves = []
    sc.skip_ws()
    while not sc.at_end():
        if moves and sc.skip_ws() == 0:
            sc.fail("expected whitespace between moves")
        if sc.at_end():
            break
        moves.append(_parse_move(sc, len(moves) + 1))
    return MoveSequence(tuple(moves))


def format_move(move: Move) -> str:
    return f"{move.prefix}{move.face.value}{chr(39) if move.prime else ''}{move.turns}({move.seq_index})"


def format_sequence(seq) -> str:
    """Canonical text; ``parse(format_sequence(s)) == s``."""
    return " ".join(format_move(m) for m in seq)


print_sequence = format_sequence
