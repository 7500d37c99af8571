import math

import numpy as np
import pytest

from qrcube import numerics as nm
from qrcube.errors import ConvergenceError, DomainError, ShapeError


def test_pauli_anticommute_and_square():
    s = [nm.pauli(i) for i in range(4)]
    for i in range(1, 4):
        assert np.allclose(s[i] @ s[i], np.eye(2))
        for j in range(i + 1, 4):
            assert np.allclose(s[i] @ s[j] + s[j] @ s[i], 0)
    with pytest.raises(DomainError):
        nm.pauli(4)


def test_kron_against_index_formula():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2))
    k = nm.kron(a, b)
    for i in range(2):
        for j in range(3):
            for p in range(3):
                for q in range(2):
                    assert k[i * 3 + p, j * 2 + q] == a[i, j] * b[p, q]


def test_charpoly_matches_numpy_poly():
    rng = np.random.default_rng(2)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    assert np.allclose(nm.charpoly(m), np.poly(m), atol=1e-10)


def test_eigenvalues_companion_oracle():
    rng = np.random.default_rng(3)
    for n in range(1, 9):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        got = nm.eigenvalues(m)
        assert nm.match_spectra(got, np.roots(np.poly(m))) < 1e-8


def test_eigenvalues_examples():
    assert list(nm.eigenvalues(nm.pauli(1))) == [-1, 1]
    assert nm.match_spectra(nm.eigenvalues(nm.pauli(2)), [-1, 1]) < 1e-12
    assert nm.match_spectra(nm.eigenvalues(np.eye(4)), [1, 1, 1, 1]) == 0
    jordan = np.array([[2, 1], [0, 2]], dtype=complex)
    assert list(nm.eigenvalues(jordan)) == [2, 2]


def test_eigenvalues_repeated_nontriangular():
    rng = np.random.default_rng(4)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    m = q @ np.diag([1, 1, 1, -2]) @ q.conj().T
    assert nm.match_spectra(nm.eigenvalues(m), [1, 1, 1, -2]) < 1e-9


def test_eigenvalues_large_uses_fallback():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(12, 12))
    assert abs(sum(nm.eigenvalues(m)) - np.trace(m)) < 1e-9


def test_eigenvalues_errors():
    with pytest.raises(ShapeError):
        nm.eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ShapeError):
        nm.eigenvalues(np.zeros((0, 0)))
    with pytest.raises(DomainError):
        nm.eigenvalues(np.zeros((2, 2)) * np.nan)


def test_spectrum_ordering_is_deterministic():
    s = nm.Spectrum.from_values([1j, -1, 1, -1j, 1 + 1e-14])
    assert [round(v.real, 12) for v in s] == [-1, 0, 0, 1, 1]
    assert s[1] == -1j


def test_eigenpairs_hermitian():
    rng = np.random.default_rng(6)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    h = a + a.conj().T
    assert nm.is_hermitian(h)
    vals, vecs = nm.eigenpairs(h)
    for j, lam in enumerate(vals):
        assert np.allclose(h @ vecs[:, j], lam * vecs[:, j], atol=1e-10)
    assert np.allclose(vecs.conj().T @ vecs, np.eye(5), atol=1e-12)
    with pytest.raises(DomainError):
        nm.eigenpairs(a)


def test_evolve_unitary_semigroup():
    h = np.diag([1.0, 2.0]) + 0.3 * nm.pauli(1)
    u1, u2, u12 = nm.evolve(h, 0.3), nm.evolve(h, 0.9), nm.evolve(h, 1.2)
    assert np.allclose(u1.conj().T @ u1, np.eye(2), atol=1e-12)
    assert np.allclose(u2 @ u1, u12, atol=1e-12)
    assert np.allclose(nm.evolve(h, 0.0), np.eye(2))


def test_free_propagator_composition():
    m, t1, t2, xa, xb = 1.0, 0.4, 0.7, 0.2, -0.5
    comp = nm.propagator_composition(m, t1, t2, xa, xb, eps=1e-3)
    direct = nm.free_propagator(m, t1 + t2, xa, xb, eps=1e-3)
    assert abs(comp - direct) / abs(direct) < 1e-3
    with pytest.raises(DomainError):
        nm.free_propagator(-1.0, 1.0, 0, 0)
    with pytest.raises(DomainError):
        nm.propagator_composition(1.0, 1.0, 1.0, 0, 0, eps=0.0)


def test_quad_triple_volume_and_budget():
    # volume of the unit ball
    vol = nm.quad_triple(lambda r, t, p: r * r * math.sin(t), 1.0, 1e-9)
    assert abs(vol - 4 * math.pi / 3) < 1e-8
    with pytest.raises(ConvergenceError):
        nm.quad_triple(lambda r, t, p: 1.0 / (r + 1e-300), 1.0, 1e-12, max_depth=5)


def test_match_spectra():
    assert nm.match_spectra([1, 2, 3], [3, 1, 2]) == 0
    assert nm.match_spectra([0, 1], [0.1, 1.2]) == pytest.approx(0.2)
    with pytest.raises(ShapeError):
        nm.match_spectra([1], [1, 2])


def test_kron_examples_and_mixed_product():
    s0, s1, s3 = nm.pauli(0), nm.pauli(1), nm.pauli(3)
    assert np.array_equal(nm.kron(s3, s0), np.diag([1, 1, -1, -1]))
    assert np.array_equal(nm.kron(s0, s0), np.eye(4))
    assert np.array_equal(nm.kron(s1, s0), [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    rng = np.random.default_rng(15)
    a, b, c, d = rng.normal(size=(4, 2, 2)) + 1j * rng.normal(size=(4, 2, 2))
    assert np.allclose(nm.kron(a, b) @ nm.kron(c, d), nm.kron(a @ c, b @ d), atol=1e-12)
    assert np.allclose(nm.kron(nm.kron(a, b), c), nm.kron(a, nm.kron(b, c)), atol=1e-12)


def test_free_propagator_value_and_phase():
    k = nm.free_propagator(1.0, 1.0, 0.3, 0.3)
    assert abs(k - (2j * math.pi) ** -0.5) < 1e-15
    assert k.real == pytest.approx(0.2821, abs=1e-4) and k.imag == pytest.approx(-0.2821, abs=1e-4)
    assert abs(nm.free_propagator(1.0, 1.0, 0.0, 2.7)) == pytest.approx(abs(k))
    with pytest.raises(DomainError):
        nm.free_propagator(1.0, 0.0, 0, 0)


def test_quad_triple_trivial_cases():
    assert nm.quad_triple(lambda r, t, p: 1.0, 1.0, 1e-10) == pytest.approx(2 * math.pi ** 2)
    assert abs(nm.quad_triple(lambda r, t, p: math.cos(p), 1.0, 1e-9)) < 1e-9
    with pytest.raises(DomainError):
        nm.quad_triple(lambda r, t, p: 1.0, 0.0, 1e-6)


def test_eigenpairs_examples():
    vals, vecs = nm.eigenpairs(np.diag([-13.6, -3.4]))
    assert list(vals) == [-13.6, -3.4] and np.allclose(np.abs(vecs), np.eye(2))
    b = 0.7
    vals, vecs = nm.eigenpairs(np.array([[-3.4, b], [b, -3.4]]))
    assert np.allclose(vals.as_array(), [-3.4 - b, -3.4 + b])
    assert abs(vecs[0, 0] * vecs[1, 0]) == pytest.approx(0.5) and vecs[0, 0] * vecs[1, 0] < 0
