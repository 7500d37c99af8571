"""Small dense complex linear algebra, quadrature and propagators.

Matrices are plain ``numpy`` complex arrays. Eigenvalues of matrices up
to order 8 come from the characteristic polynomial, solved by
Aberth-Ehrlich iteration in the compiled kernel and then polished
against the matrix itself; larger matrices go to LAPACK.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import _pykernels
from ._backend import kernels
from .errors import ConvergenceError, DomainError, ShapeError

MAX_ORDER = 64
CHARPOLY_MAX_ORDER = 8
HERMITIAN_ATOL = 1e-12
RESIDUAL_RTOL = 1e-7

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

_PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _sort_key(z):
    return (round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset, ordered by ``(re, im)`` rounded to 12 decimals."""

    values: tuple

    @classmethod
    def from_values(cls, values) -> "Spectrum":
        vals = [complex(v) for v in values]
        return cls(tuple(sorted(vals, key=_sort_key)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)


class EigenPairs(NamedTuple):
    values: Spectrum
    vectors: np.ndarray  # column j belongs to values[j]


def as_matrix(m, name="matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    return a


def _square(m, name="matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a


def pauli(index: int) -> np.ndarray:
    """Pauli matrix ``sigma_index``; index 0 is the identity."""
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or not 0 <= index <= 3:
        raise DomainError(f"Pauli index must be 0, 1, 2 or 3, got {index!r}")
    return _PAULI[index].copy()


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def charpoly(m) -> np.ndarray:
    """Coefficients of ``det(zI - m)``, highest degree first (Faddeev-LeVerrier)."""
    a = _square(m)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ mk) / k
    return coeffs


def _root_residual(a, z) -> float:
    """Largest relative smallest-singular-value of ``a - z_k I`` over the roots."""
    n = a.shape[0]
    eye = np.eye(n)
    scale = 1.0 + np.linalg.norm(a)
    worst = 0.0
    for zk in z:
        s = np.linalg.svd(a - zk * eye, compute_uv=False)
        worst = max(worst, s[-1] / scale)
    return worst


def _polish(a, z, sweeps=80):
    """Aberth sweeps using ``tr((zI - a)^-1) = p'/p`` evaluated on the matrix.

    Exact for multiple eigenvalues of diagonalisable matrices, which the
    polynomial coefficients alone resolve only to ~eps**(1/m).
    """
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    z = np.array(z, dtype=complex)
    last = math.inf
    stall = 0
    for _ in range(sweeps):
        maxcorr = 0.0
        for k in range(n):
            try:
                g = np.trace(np.linalg.solve(z[k] * eye - a, eye))
            except np.linalg.LinAlgError:
                continue
            if g == 0 or not np.isfinite(g):
                continue
            ratio = 1.0 / g
            diff = z[k] - np.delete(z, k)
            diff = diff[diff != 0]
            den = 1.0 - ratio * np.sum(1.0 / diff)
            w = ratio / den if den != 0 else ratio
            if not np.isfinite(w):
                continue
            z[k] -= w
            maxcorr = max(maxcorr, abs(w) / (1.0 + abs(z[k])))
        if maxcorr <= 1e-15:
            break
        stall = stall + 1 if maxcorr >= last else 0
        if stall >= 4:
            break
        last = maxcorr
    return z


def eigenvalues(m) -> Spectrum:
    """All eigenvalues of a square complex matrix, with multiplicity."""
    a = _square(m)
    n = a.shape[0]
    if n > MAX_ORDER:
        raise DomainError(f"eigenvalues supports order <= {MAX_ORDER}, got {n}")
    if not np.any(np.tril(a, -1)) or not np.any(np.triu(a, 1)):
        return Spectrum.from_values(np.diag(a))
    if n > CHARPOLY_MAX_ORDER:
        return Spectrum.from_values(np.linalg.eigvals(a))

    coeffs = charpoly(a)
    roots, converged, _, corr = kernels.poly_roots(coeffs)
    if not converged:
        # companion-matrix roots
        roots = np.roots(coeffs)
    roots = np.asarray(roots, dtype=complex)
    if roots.shape != (n,) or not np.all(np.isfinite(roots)):
        raise ConvergenceError("characteristic polynomial roots did not converge", corr)
    raw_res = _root_residual(a, roots)
    polished = _polish(a, roots)
    res = _root_residual(a, polished) if np.all(np.isfinite(polished)) else math.inf
    if res <= raw_res:
        roots, raw_res = polished, res
    if raw_res > RESIDUAL_RTOL:
        raise ConvergenceError(f"eigenvalue residual {raw_res:.3e} above {RESIDUAL_RTOL}", raw_res)
    return Spectrum.from_values(roots)


def is_hermitian(m, atol=HERMITIAN_ATOL) -> bool:
    a = _square(m)
    return bool(np.all(np.abs(a - a.conj().T) <= atol))


def eigenpairs(m) -> EigenPairs:
    """Eigenvalues and orthonormal eigenvectors of a Hermitian matrix."""
    a = _square(m)
    if not is_hermitian(a):
        raise DomainError("eigenpairs requires a Hermitian matrix")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    order = sorted(range(len(w)), key=lambda j: _sort_key(complex(w[j])))
    values = Spectrum(tuple(complex(w[j]) for j in order))
    return EigenPairs(values, v[:, order])


def evolve(h, t: float) -> np.ndarray:
    """Time-evolution operator ``exp(-i h t)`` (hbar = 1)."""
    values, vectors = eigenpairs(h)
    e = values.as_array().real
    return (vectors * np.exp(-1j * e * t)) @ vectors.conj().T


def free_propagator(mass: float, dt: float, xa: float, xb: float, eps: float = 0.0) -> complex:
    """One-dimensional free-particle propagator ``K(xb, dt; xa, 0)``, hbar = 1.

    ``eps > 0`` evaluates at the regularised time ``dt * (1 - i eps)``.
    """
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    tau = dt * (1 - 1j * eps)
    return cmath.sqrt(mass / (2j * math.pi * tau)) * cmath.exp(1j * mass * (xb - xa) ** 2 / (2 * tau))


def _free_kernel(mass, tau, dx):
    return np.sqrt(mass / (2j * np.pi * tau)) * np.exp(1j * mass * dx * dx / (2 * tau))


def propagator_composition(mass, dt1, dt2, xa, xb, eps=1e-3, step=None):
    """``int dx_c K(xb, xc; dt2) K(xc, xa; dt1)`` by trapezoid quadrature.

    Both factors use regularised times, so the integrand is a Gaussian
    envelope; the grid covers it out to ``exp(-40)`` and resolves the
    fastest phase with ~20 points per radian period.
    """
    if not (dt1 > 0 and dt2 > 0 and eps > 0):
        raise DomainError("composition needs dt1, dt2 > 0 and eps > 0")
    t1 = dt1 * (1 - 1j * eps)
    t2 = dt2 * (1 - 1j * eps)
    # envelope exp(-mass*eps*x^2 / (2 dt (1+eps^2)))
    half = math.sqrt(80.0 * max(dt1, dt2) * (1 + eps * eps) / (mass * eps))
    lo = min(xa, xb) - half
    hi = max(xa, xb) + half
    if step is None:
        freq = mass * (hi - lo) / min(dt1, dt2)
        step = 2 * math.pi / (20.0 * freq)
    npts = int(math.ceil((hi - lo) / step)) + 1
    xc = np.linspace(lo, hi, npts)
    vals = _free_kernel(mass, t2, xb - xc) * _free_kernel(mass, t1, xc - xa)
    return complex(_trapezoid(vals, xc))


def quad_triple(f: Callable[[float, float, float], float], r_max: float, tol: float,
                max_depth: int = 40) -> float:
    """Integrate ``f(r, theta, phi)`` over ``[0, r_max] x [0, pi] x [0, 2 pi]``.

    Nested adaptive Simpson; the caller supplies any Jacobian inside
    ``f``. Raises ConvergenceError when the subdivision budget runs out.
    """
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    return _pykernels.triple_simpson(f, r_max, tol, max_depth=max_depth)


def match_spectra(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Max pairwise deviation between two multisets under the optimal matching."""
    from itertools import permutations

    a = list(a)
    b = list(b)
    if len(a) != len(b):
        raise ShapeError("spectra differ in size")
    if len(a) > 8:
        raise DomainError("optimal matching is brute force; use at most 8 values")
    best = math.inf
    for p in permutations(range(len(b))):
        best = min(best, max((abs(a[i] - b[p[i]]) for i in range(len(a))), default=0.0))
    return best
