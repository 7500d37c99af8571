import itertools

import numpy as np
import pytest

from qrcube import cube as cb
from qrcube.cube import CubeState, Face, Move, MoveSequence
from qrcube.errors import DomainError, ShapeError


def _labels(state, face):
    return state.face(face).real.astype(int)


def _home(n, face, r, c):
    return cb.FACES.index(face) * n * n + r * n + c


def test_u_turn_moves_front_top_row_to_left():
    n = 3
    s = cb.apply(CubeState.labeled(n), "U1(1)")
    assert _labels(s, Face.L)[0].tolist() == [_home(n, Face.F, 0, c) for c in range(n)]
    assert _labels(s, Face.B)[0].tolist() == [_home(n, Face.L, 0, c) for c in range(n)]
    # U itself rotates clockwise: old bottom-left goes to top-left
    assert _labels(s, Face.U)[0, 0] == _home(n, Face.U, 2, 0)
    # lower rows untouched
    assert np.array_equal(_labels(s, Face.F)[1:], _labels(CubeState.labeled(n), Face.F)[1:])


def test_r_turn_moves_front_right_column_to_up():
    n = 3
    s = cb.apply(CubeState.labeled(n), "R1(1)")
    assert _labels(s, Face.U)[:, 2].tolist() == [_home(n, Face.F, r, 2) for r in range(n)]


def test_f_turn_moves_up_bottom_row_to_right():
    n = 3
    s = cb.apply(CubeState.labeled(n), "F1(1)")
    assert _labels(s, Face.R)[:, 0].tolist() == [_home(n, Face.U, 2, c) for c in range(n)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generators_order_four_and_inverse(n):
    ident = np.arange(6 * n * n)
    for face in cb.FACES:
        prefixes = ("", "T", "M") if n >= 3 else ("",)
        for pre in prefixes:
            m = Move(face, pre)
            p = cb.move_permutation(m, n)
            assert not np.array_equal(p, ident)
            assert np.array_equal(cb.sequence_permutation([m] * 4, n), ident)
            assert np.array_equal(cb.sequence_permutation([m, m.inverse()], n), ident)


def test_turn_counts_and_prime_equivalence():
    n = 3
    s = CubeState.labeled(n)
    assert cb.apply(s, "U3(1)") == cb.apply(s, "U'1(1)")
    assert cb.apply(s, "U2(1)") == cb.apply(s, "U'2(1)")
    assert cb.apply(s, "U4(1)") == s


def test_wide_is_outer_plus_slice():
    n = 4
    s = CubeState.labeled(n)
    assert cb.apply(s, "TR1(1)") == cb.apply(s, "R1(1) MR1(2)")


def test_opposite_faces_commute_and_adjacent_do_not():
    assert cb.commutator_is_identity(Move(Face.U), Move(Face.D), 3)
    assert not cb.commutator_is_identity(Move(Face.U), Move(Face.R), 3)


def test_slice_needs_order_three():
    with pytest.raises(DomainError):
        cb.move_permutation(Move(Face.U, "M"), 2)


def test_sticker_multiset_preserved_random():
    rng = np.random.default_rng(7)
    s = CubeState.labeled(4)
    moves = [Move(f, p, pr) for f in cb.FACES for p in ("", "T", "M") for pr in (False, True)]
    for _ in range(30):
        seq = MoveSequence.of(moves[i] for i in rng.integers(0, len(moves), 10))
        t = cb.apply(s, seq)
        assert t.sticker_multiset() == s.sticker_multiset()
        assert cb.apply(t, seq.inverse()) == s


def test_origin_tracks_stickers():
    s = cb.apply(CubeState.labeled(3), "U1(1) R'1(2) F2(3)")
    assert np.array_equal(s.origin, s.stickers.real.astype(int))


def test_state_validation():
    with pytest.raises(DomainError):
        CubeState.labeled(1)
    with pytest.raises(ShapeError):
        CubeState(2, {f: np.zeros((3, 3)) for f in cb.FACES})
    faces = {f: np.zeros((2, 2)) for f in cb.FACES}
    del faces[Face.B]
    with pytest.raises(ShapeError):
        CubeState(2, faces)


def test_equality_ignores_origin():
    u = CubeState.uniform(2)
    assert cb.apply(u, "U1(1) U'1(2)") == u
    assert hash(cb.apply(u, "U1(1) U'1(2)")) == hash(u)


def test_json_round_trip():
    s = cb.apply(CubeState.labeled(3), "R1(1)")
    t = cb.loads(cb.dumps(s))
    assert t == s and np.array_equal(t.origin, s.origin)
    solved = CubeState.labeled(2)
    assert "origin" not in cb.to_json_dict(solved)
    assert cb.loads(cb.dumps(solved)) == solved
    with pytest.raises(ShapeError):
        cb.from_json_dict({"order": 2})


def test_assemble_hamiltonian_from_gammas():
    rng = np.random.default_rng(8)
    g = [rng.normal(size=(3, 3)) for _ in range(6)]
    j = rng.normal(size=6)
    s = cb.cube_from_gammas(g)
    assert np.allclose(cb.assemble_hamiltonian(s, j), sum(a * b for a, b in zip(j, g)))
    with pytest.raises(ShapeError):
        cb.assemble_hamiltonian(s, j[:5])


def test_search_identity_and_multiset_rejection():
    s = CubeState.labeled(2)
    assert cb.search_sequence(s, s, 3).sequence == MoveSequence()
    other = CubeState.uniform(2)
    res = cb.search_sequence(s, other, 3)
    assert not res.found and res.reason == "multiset"
    with pytest.raises(DomainError):
        cb.search_sequence(s, s, cb.MAX_SEARCH_DEPTH + 1)


def test_search_recovers_planted_pair():
    s = CubeState.labeled(3)
    t = cb.apply(s, "R1(1) U'1(2)")
    res = cb.search_sequence(s, t, 4)
    assert res.found and len(res.sequence) == 2
    assert cb.apply(s, res.sequence) == t


def test_search_depth_exhaustion():
    s = CubeState.labeled(2)
    t = cb.apply(s, "R1(1) U1(2) F1(3)")
    res = cb.search_sequence(s, t, 2)
    assert not res.found and res.reason == "depth"


def test_search_is_lexicographically_least():
    # U2 has two shortest spellings: U U and U' U'; the first wins
    s = CubeState.labeled(3)
    res = cb.search_sequence(s, cb.apply(s, "U2(1)"), 3)
    assert str(res.sequence) == "U1(1) U1(2)"


def test_reference_spin_sequence_is_recorded_not_asserted():
    reached = cb.apply(cb.spin_expansion_cube(), cb.SPIN_TO_PAULI_X)
    assert reached.sticker_multiset() == cb.spin_expansion_cube().sticker_multiset()
    res = cb.search_sequence(cb.spin_expansion_cube(), cb.pauli_x_cube(), 5)
    assert res.found
    assert cb.apply(cb.spin_expansion_cube(), res.sequence) == cb.pauli_x_cube()


def test_move_sequence_index_validation():
    with pytest.raises(DomainError):
        MoveSequence((Move(Face.U, seq_index=2),))
    seq = MoveSequence.of([Move(Face.U), Move(Face.R)])
    assert [m.seq_index for m in seq] == [1, 2]
    assert [m.seq_index for m in seq + seq] == [1, 2, 3, 4]


def test_all_quarter_turn_pairs_noncommuting_witness():
    pairs = [(a, b) for a, b in itertools.combinations(cb.QUARTER_TURNS, 2)
             if not cb.commutator_is_identity(a, b, 3)]
    assert pairs
