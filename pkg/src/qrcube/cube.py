"""Order-n cube states with complex stickers, layer moves and face Hamiltonians.

Geometry
--------
Axes: +x points to R, +y to U, +z to F. Stickers live at doubled integer
coordinates, a face plane sits at ``+-n`` along its normal. Each face grid
is stored as seen from outside the cube with U on top and F facing the
viewer:

* U: row 0 is the back edge, columns run left to right (L -> R).
* D: row 0 is the front edge, columns run L -> R.
* F, R, B, L: row 0 is the top edge; B is viewed from behind, so its
  column 0 is on the R side.

A clockwise quarter turn of face X rotates the selected layers by -90
degrees about X's outward normal (clockwise as seen looking at X).
Layer depth 1 is the outer layer of X. Moves permute stickers, so the
sticker multiset is invariant.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._backend import kernels
from .errors import DomainError, ShapeError


class Face(str, enum.Enum):
    U = "U"
    D = "D"
    L = "L"
    R = "R"
    F = "F"
    B = "B"


FACES = tuple(Face)

# face -> (outward normal, column direction, row direction)
_FRAMES = {
    Face.U: ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    Face.D: ((0, -1, 0), (1, 0, 0), (0, 0, -1)),
    Face.L: ((-1, 0, 0), (0, 0, 1), (0, -1, 0)),
    Face.R: ((1, 0, 0), (0, 0, -1), (0, -1, 0)),
    Face.F: ((0, 0, 1), (1, 0, 0), (0, -1, 0)),
    Face.B: ((0, 0, -1), (-1, 0, 0), (0, -1, 0)),
}

# Gamma_j -> face, from the reference net: L F R B in the middle row, U above, D below.
GAMMA_FACES = (Face.F, Face.R, Face.D, Face.L, Face.U, Face.B)

PREFIXES = ("", "T", "M")
_PREFIX_DEPTHS = {"": (1,), "T": (1, 2), "M": (2,)}


@dataclass(frozen=True)
class Move:
    """One layer rotation.

    ``prefix`` is "" (outer layer), "T" (two outer layers, wide) or "M"
    (the single slice at depth 2). ``turns`` counts quarter turns,
    clockwise unless ``prime``. ``seq_index`` is the position annotation
    carried by the text notation.
    """

    face: Face
    prefix: str = ""
    prime: bool = False
    turns: int = 1
    seq_index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "face", Face(self.face))
        if self.prefix not in PREFIXES:
            raise DomainError(f"unknown move prefix {self.prefix!r}")
        if int(self.turns) < 1:
            raise DomainError(f"turns must be >= 1, got {self.turns}")

    @property
    def direction(self) -> str:
        return "ccw" if self.prime else "cw"

    @property
    def depths(self) -> tuple:
        return _PREFIX_DEPTHS[self.prefix]

    @property
    def quarter_turns(self) -> int:
        q = self.turns % 4
        return (-q) % 4 if self.prime else q

    def inverse(self) -> "Move":
        return replace(self, prime=not self.prime)

    def __str__(self):
        from .notation import format_move

        return format_move(self)


@dataclass(frozen=True)
class MoveSequence:
    """Ordered moves; ``seq_index`` must run 1..len."""

    moves: tuple = field(default_factory=tuple)

    def __post_init__(self):
        moves = tuple(self.moves)
        object.__setattr__(self, "moves", moves)
        for k, m in enumerate(moves, start=1):
            if m.seq_index != k:
                raise DomainError(f"move {k} carries index {m.seq_index}, expected {k}")

    @classmethod
    def of(cls, moves: Iterable[Move]) -> "MoveSequence":
        """Build a sequence, renumbering indices 1..len."""
        return cls(tuple(replace(m, seq_index=k) for k, m in enumerate(moves, start=1)))

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    def __add__(self, other: "MoveSequence") -> "MoveSequence":
        return MoveSequence.of(self.moves + tuple(other.moves))

    def inverse(self) -> "MoveSequence":
        return MoveSequence.of(m.inverse() for m in reversed(self.moves))

    def __str__(self):
        from .notation import format_sequence

        return format_sequence(self)


QUARTER_TURNS = tuple(Move(f, prime=p) for f in FACES for p in (False, True))


@lru_cache(maxsize=None)
def _geometry(n):
    """Sticker positions (6n^2 x 3, doubled coords) and a position -> index map."""
    pos = np.empty((6 * n * n, 3), dtype=int)
    for fi, face in enumerate(FACES):
        normal, right, down = (np.array(v) for v in _FRAMES[face])
        for r in range(n):
            for c in range(n):
                pos[fi * n * n + r * n + c] = n * normal + (2 * c - (n - 1)) * right + (2 * r - (n - 1)) * down
    index = {tuple(p): i for i, p in enumerate(pos)}
    return pos, index


def _rotate_cw(v, axis):
    # -90 degrees about the unit axis: v' = a (a.v) - a x v
    a = np.asarray(axis)
    return a * np.dot(a, v) - np.cross(a, v)


@lru_cache(maxsize=None)
def _layer_perm(face, depths, n):
    pos, index = _geometry(n)
    normal = np.array(_FRAMES[face][0])
    perm = np.arange(6 * n * n)
    for s, p in enumerate(pos):
        along = int(np.clip(np.dot(p, normal), -(n - 1), n - 1))
        depth = ((n - 1) - along) // 2 + 1
        if depth in depths:
            perm[index[tuple(_rotate_cw(p, normal))]] = s
    perm.setflags(write=False)
    return perm


def layer_permutation(face, depths: Sequence[int], quarter_turns: int, n: int) -> np.ndarray:
    """Gather permutation for turning the given layers of ``face``.

    ``new_stickers = old_stickers[perm]``; ``quarter_turns`` counts
    clockwise quarter turns (taken mod 4).
    """
    face = Face(face)
    depths = tuple(sorted(set(int(d) for d in depths)))
    if n < 2:
        raise DomainError(f"cube order must be >= 2, got {n}")
    if not depths or depths[0] < 1 or depths[-1] > n:
        raise DomainError(f"layer depths {depths} out of range for order {n}")
    base = _layer_perm(face, depths, n)
    perm = np.arange(6 * n * n)
    for _ in range(quarter_turns % 4):
        perm = perm[base]
    return perm


def move_permutation(move: Move, n: int) -> np.ndarray:
    if move.prefix == "M" and n < 3:
        raise DomainError(f"slice move {move} needs order >= 3, got {n}")
    if move.prefix == "T" and n < 2:
        raise DomainError(f"wide move {move} needs order >= 2, got {n}")
    return layer_permutation(move.face, move.depths, move.quarter_turns, n)


def sequence_permutation(seq: Iterable[Move], n: int) -> np.ndarray:
    perm = np.arange(6 * n * n)
    for move in seq:
        perm = perm[move_permutation(move, n)]
    return perm


class CubeState:
    """Immutable order-n cube: six n x n complex face grids.

    ``origin[k]`` is the home (solved) flat index of the sticker now at
    flat position ``k``; it is carried through moves so diagrams can be
    coloured by where stickers came from. Equality compares stickers only.
    Flat order is face-major in ``FACES`` order, then row, then column.
    """

    __slots__ = ("order", "_stickers", "_origin")

    def __init__(self, order: int, faces: Mapping, origin=None):
        n = int(order)
        if n < 2:
            raise DomainError(f"cube order must be >= 2, got {n}")
        flat = np.empty(6 * n * n, dtype=complex)
        for fi, face in enumerate(FACES):
            grid = faces.get(face, faces.get(face.value)) if isinstance(faces, Mapping) else None
            if grid is None:
                raise ShapeError(f"missing face {face.value}")
            grid = np.asarray(grid, dtype=complex)
            if grid.shape != (n, n):
                raise ShapeError(f"face {face.value} must be {n}x{n}, got {grid.shape}")
            if not np.all(np.isfinite(grid)):
                raise DomainError(f"face {face.value} has non-finite stickers")
            flat[fi * n * n:(fi + 1) * n * n] = grid.ravel()
        self._init(n, flat, origin)

    def _init(self, n, flat, origin):
        self.order = n
        self._stickers = flat
        self._stickers.setflags(write=False)
        if origin is None:
            origin = np.arange(6 * n * n)
        origin = np.array(origin, dtype=int)
        if origin.shape != (6 * n * n,) or sorted(origin.tolist()) != list(range(6 * n * n)):
            raise ShapeError("origin must be a permutation of the sticker indices")
        self._origin = origin
        self._origin.setflags(write=False)

    @classmethod
    def from_flat(cls, order, stickers, origin=None) -> "CubeState":
        n = int(order)
        flat = np.array(stickers, dtype=complex)
        if flat.shape != (6 * n * n,):
            raise ShapeError(f"expected {6 * n * n} stickers, got {flat.shape}")
        return cls(n, {f: flat[i * n * n:(i + 1) * n * n].reshape(n, n) for i, f in enumerate(FACES)}, origin)

    @classmethod
    def labeled(cls, order) -> "CubeState":
        """Every sticker distinct: the value is its home flat index."""
        n = int(order)
        return cls.from_flat(n, np.arange(6 * n * n, dtype=complex))

    @classmethod
    def uniform(cls, order, values: Mapping | None = None) -> "CubeState":
        """Solved cube with one value per face (default: the face's index)."""
        n = int(order)
        values = values or {f: i for i, f in enumerate(FACES)}
        return cls(n, {f: np.full((n, n), values[f], dtype=complex) for f in FACES})

    @property
    def stickers(self) -> np.ndarray:
        return self._stickers

    @property
    def origin(self) -> np.ndarray:
        return self._origin

    def face(self, face) -> np.ndarray:
        fi = FACES.index(Face(face))
        n = self.order
        return self._stickers[fi * n * n:(fi + 1) * n * n].reshape(n, n)

    @property
    def faces(self) -> dict:
        return {f: self.face(f) for f in FACES}

    def permuted(self, perm) -> "CubeState":
        perm = np.asarray(perm)
        return CubeState.from_flat(self.order, self._stickers[perm], self._origin[perm])

    def sticker_multiset(self) -> list:
        return sorted(self._stickers.tolist(), key=lambda z: (z.real, z.imag))

    def __eq__(self, other):
        if not isinstance(other, CubeState):
            return NotImplemented
        return self.order == other.order and np.array_equal(self._stickers, other._stickers)

    def __hash__(self):
        return hash((self.order, self._stickers.tobytes()))

    def __repr__(self):
        return f"CubeState(order={self.order})"


def _as_sequence(seq) -> MoveSequence:
    if isinstance(seq, str):
        from .notation import parse

        return parse(seq)
    if isinstance(seq, MoveSequence):
        return seq
    return MoveSequence.of(seq)


def apply(state: CubeState, seq) -> CubeState:
    """Apply a move sequence (or its text form); the input is not modified."""
    seq = _as_sequence(seq)
    return state.permuted(sequence_permutation(seq, state.order))


def commutator_is_identity(a: Move, b: Move, order: int) -> bool:
    """True iff a b a^-1 b^-1 fixes every sticker of a distinct-labelled cube."""
    comm = MoveSequence.of([a, b, a.inverse(), b.inverse()])
    cube = CubeState.labeled(order)
    return apply(cube, comm) == cube


def assemble_hamiltonian(state: CubeState, j: Sequence[complex]) -> np.ndarray:
    """``sum_j J_j Gamma_j`` with Gamma_j read from the face ``GAMMA_FACES[j]``."""
    j = list(j)
    if len(j) != 6:
        raise ShapeError(f"need six coupling coefficients, got {len(j)}")
    h = np.zeros((state.order, state.order), dtype=complex)
    for coeff, face in zip(j, GAMMA_FACES):
        h = h + coeff * state.face(face)
    return h


def cube_from_gammas(gammas: Sequence) -> CubeState:
    """Cube whose faces hold Gamma_0..Gamma_5 under the canonical net."""
    gammas = [np.asarray(g, dtype=complex) for g in gammas]
    if len(gammas) != 6:
        raise ShapeError(f"need six face matrices, got {len(gammas)}")
    return CubeState(gammas[0].shape[0], dict(zip(GAMMA_FACES, gammas)))


@dataclass(frozen=True)
class SearchResult:
    found: bool
    sequence: MoveSequence | None = None
    reason: str | None = None  # "multiset" or "depth" when not found


MAX_SEARCH_DEPTH = 8


def search_sequence(start: CubeState, target: CubeState, max_depth: int,
                    move_set: Sequence[Move] = QUARTER_TURNS) -> SearchResult:
    """Shortest move sequence taking ``start`` to ``target`` (iterative deepening).

    Among shortest sequences the lexicographically least by position in
    ``move_set`` is returned.
    """
    if start.order != target.order:
        raise ShapeError("start and target differ in order")
    if not 0 <= max_depth <= MAX_SEARCH_DEPTH:
        raise DomainError(f"max_depth must be in 0..{MAX_SEARCH_DEPTH}, got {max_depth}")
    if start.sticker_multiset() != target.sticker_multiset():
        return SearchResult(False, None, "multiset")
    n = start.order
    labels = {}
    start_ids = np.array([labels.setdefault(z, len(labels)) for z in start.stickers.tolist()], dtype=np.intc)
    target_ids = np.array([labels[z] for z in target.stickers.tolist()], dtype=np.intc)
    if np.array_equal(start_ids, target_ids):
        return SearchResult(True, MoveSequence(), None)

    templates = list(move_set)
    perms = np.array([move_permutation(m, n) for m in templates], dtype=np.intc)
    k = len(templates)
    inverse = np.full(k, -1, dtype=np.intc)
    commute = np.zeros((k, k), dtype=np.uint8)
    ident = np.arange(6 * n * n)
    for i in range(k):
        for j in range(k):
            ij = perms[i][perms[j]]
            if inverse[i] < 0 and np.array_equal(ij, ident):
                inverse[i] = j
            commute[i, j] = np.array_equal(ij, perms[j][perms[i]])
    path = kernels.ids_search(start_ids, target_ids, perms, inverse, commute, max_depth)
    if path is None:
        return SearchResult(False, None, "depth")
    return SearchResult(True, MoveSequence.of(templates[i] for i in path), None)


# JSON wire format -------------------------------------------------------

def to_json_dict(state: CubeState) -> dict:
    out = {
        "order": state.order,
        "faces": {
            f.value: [[{"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0} for z in row]
                      for row in state.face(f)]
            for f in FACES
        },
    }
    if not np.array_equal(state.origin, np.arange(state.stickers.size)):
        out["origin"] = state.origin.tolist()
    return out


def _complex_entry(v):
    if isinstance(v, Mapping):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise ShapeError(f"sticker must be {{'re':..,'im':..}}, got {v!r}")


def from_json_dict(d: Mapping) -> CubeState:
    try:
        order = int(d["order"])
        faces = {Face(k): [[_complex_entry(v) for v in row] for row in rows] for k, rows in d["faces"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed cube JSON: {exc}") from exc
    return CubeState(order, faces, d.get("origin"))


def dumps(state: CubeState) -> str:
    return json.dumps(to_json_dict(state), indent=1, sort_keys=False) + "\n"


def loads(text: str) -> CubeState:
    return from_json_dict(json.loads(text))


# Spin-expanded cubes from the Ising construction -------------------------

def spin_expansion_cube() -> CubeState:
    """Order-2 spin expansion: U, F, D populated, the rest zero."""
    z = np.zeros((2, 2))
    return CubeState(2, {
        Face.U: [[-1j, -1j], [1, -1]],
        Face.L: z, Face.F: [[1, 1], [1, 1]], Face.R: z, Face.B: z,
        Face.D: [[-1, 1], [1j, 1j]],
    })


def pauli_x_cube() -> CubeState:
    """Claimed image of the spin expansion: Pauli-matrix arrangement for sigma_x."""
    sz = [[1, 0], [0, -1]]
    return CubeState(2, {
        Face.U: sz,
        Face.L: [[0, 1j], [-1j, 0]], Face.F: [[0, 1], [1, 0]],
        Face.R: [[0, -1j], [1j, 0]], Face.B: [[0, 1], [1, 0]],
        Face.D: sz,
    })


SPIN_TO_PAULI_X = "D'1(1) B'2(2) D'2(3) B'1(4) D'2(5) B'2(6) L'2(7) B'1(8)"
