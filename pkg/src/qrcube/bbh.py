"""Benalcazar-Bernevig-Hughes Hamiltonians on the cube and their spectra.

``h_canonical`` is the Gamma-matrix form; ``h_prime`` is the explicit 4x4
matrix obtained after the wide U move, entered entry by entry. Momenta
may be complex: cos and sin are taken from their exponential definitions,
which makes the non-Hermitian sweeps well defined.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from ._format import csv_lines
from .cube import CubeState, assemble_hamiltonian, cube_from_gammas
from .errors import ConvergenceError, DomainError
from .numerics import Spectrum, eigenvalues, kron, match_spectra, pauli


@dataclass(frozen=True)
class BbhParams:
    gamma: float = 1.0   # intra-cell hopping
    lam: float = 1.0     # inter-cell hopping
    delta: float = 0.0   # on-site term
    kx: complex = 0.0
    ky: complex = 0.0


@dataclass(frozen=True)
class BandRecord:
    momentum: complex
    eigenvalues: Spectrum


def _cos(k):
    return (cmath.exp(1j * k) + cmath.exp(-1j * k)) / 2


def _sin(k):
    return (cmath.exp(1j * k) - cmath.exp(-1j * k)) / 2j


def gamma_matrices() -> tuple:
    """Gamma_0 = tau3 sigma0, Gamma_k = tau2 sigma_k (k=1..3), Gamma_4 = tau1 sigma0."""
    s = [pauli(i) for i in range(4)]
    return (kron(s[3], s[0]), kron(s[2], s[1]), kron(s[2], s[2]), kron(s[2], s[3]), kron(s[1], s[0]))


def couplings(p: BbhParams) -> tuple:
    """J_0..J_5 multiplying Gamma_0..Gamma_5."""
    return (
        p.delta,
        p.lam * _sin(p.ky),
        p.gamma + p.lam * _cos(p.ky),
        p.lam * _sin(p.kx),
        p.gamma + p.lam * _cos(p.kx),
        0.0,
    )


def bbh_cube() -> CubeState:
    """Order-4 cube carrying Gamma_0..Gamma_4; Gamma_5 (coupling 0) is the identity."""
    return cube_from_gammas(list(gamma_matrices()) + [np.eye(4)])


def h_canonical(p: BbhParams) -> np.ndarray:
    g = gamma_matrices()
    j = couplings(p)
    # H = J4 G4 + J3 G3 + J2 G2 + J1 G1 + J0 G0
    return sum(j[a] * g[a] for a in range(5))


def h_from_cube(p: BbhParams, cube: CubeState | None = None) -> np.ndarray:
    return assemble_hamiltonian(cube or bbh_cube(), couplings(p))


def h_prime(p: BbhParams) -> np.ndarray:
    """The explicit post-rotation matrix; generally non-Hermitian."""
    g, l, d = p.gamma, p.lam, p.delta
    cx, sx, cy, sy = _cos(p.kx), _sin(p.kx), _cos(p.ky), _sin(p.ky)
    return np.array([
        [0, 0, 1j * l * sy, 2 * g + l * (cx + cy) + 1j * l * sx],
        [0, 0, -2 * g - l * (cx + cy) + 1j * l * sx, -1j * l * sy],
        [g + l * cx - 1j * l * sx, -g - l * cy - 1j * l * sy, -d, 0],
        [g + l * cy - 1j * l * sy, g + l * cx + 1j * l * sx, 0, -d],
    ], dtype=complex)


def analytic_eigs_mirror(y: complex) -> Spectrum:
    """Closed-form roots of h_prime at gamma = lam = 1, delta = 0, kx = ky = y."""
    e = cmath.exp(1j * y)
    inner = cmath.sqrt(-e * (1 + e) ** 6)
    base = 2 * e + 4 * e ** 2 + 2 * e ** 3
    vals = []
    for sign in (-1, 1):
        r = cmath.sqrt(base + sign * inner) / e
        vals += [-r, r]
    return Spectrum.from_values(vals)


def analytic_eigs_antimirror(x: complex) -> Spectrum:
    """Closed-form roots of h_prime at gamma = lam = 1, delta = 0, kx = x, ky = -x."""
    e = cmath.exp(1j * x)
    inner = cmath.sqrt((1 + e) ** 6 * (1 - 3 * e + e ** 2))
    base = 1 + 2 * e + 2 * e ** 2 + 2 * e ** 3 + e ** 4
    vals = []
    for sign in (-1, 1):
        r = cmath.sqrt(base + sign * inner) / e
        vals += [-r, r]
    return Spectrum.from_values(vals)


VARIANTS = ("mirror", "antimirror", "custom")
ANALYTIC = {"mirror": analytic_eigs_mirror, "antimirror": analytic_eigs_antimirror}


@dataclass(frozen=True)
class ComplexGrid:
    """Rectangular grid; points run over Re in the outer loop, Im inner."""

    re_min: float
    re_max: float
    re_n: int
    im_min: float
    im_max: float
    im_n: int

    def __post_init__(self):
        if self.re_n < 1 or self.im_n < 1:
            raise DomainError("grid needs at least one point per axis")

    def points(self) -> list:
        re = np.linspace(self.re_min, self.re_max, self.re_n) if self.re_n > 1 else np.array([self.re_min])
        im = np.linspace(self.im_min, self.im_max, self.im_n) if self.im_n > 1 else np.array([self.im_min])
        return [complex(a, b) for a in re for b in im]


def momenta(variant: str, t: complex, kx_of=None, ky_of=None) -> tuple:
    if variant == "mirror":
        return t, t
    if variant == "antimirror":
        return t, -t
    if variant == "custom":
        if kx_of is None or ky_of is None:
            raise DomainError("custom variant needs both kx(t) and ky(t)")
        return kx_of(t), ky_of(t)
    raise DomainError(f"unknown variant {variant!r}; choose from {VARIANTS}")


def band_sweep(variant: str, grid: ComplexGrid | Sequence[complex], params: BbhParams = BbhParams(),
               kx_of: Callable | None = None, ky_of: Callable | None = None) -> list:
    """Numeric spectra of h_prime along a complex momentum grid, in grid order."""
    pts = grid.points() if isinstance(grid, ComplexGrid) else [complex(t) for t in grid]
    if not pts:
        raise DomainError("grid has no points")
    records = []
    for t in pts:
        kx, ky = momenta(variant, t, kx_of, ky_of)
        try:
            spec = eigenvalues(h_prime(replace(params, kx=kx, ky=ky)))
        except ConvergenceError as exc:
            raise ConvergenceError(f"eigensolver failed at grid point {t}: {exc}", exc.residual) from exc
        records.append(BandRecord(t, spec))
    return records


@dataclass(frozen=True)
class CheckReport:
    variant: str
    samples: int
    max_deviation: float
    worst_point: complex
    discrepancies: tuple  # (point, deviation) pairs above tol
    tol: float

    @property
    def ok(self) -> bool:
        return not self.discrepancies


CHECK_GRID = ComplexGrid(-5.8, -4.2, 5, -1.0, 1.0, 5)


def oracle_check(variant: str, grid: ComplexGrid | Sequence[complex] = CHECK_GRID, tol: float = 1e-8) -> CheckReport:
    """Compare the closed-form roots against numeric eigenvalues at gamma = lam = 1, delta = 0."""
    if variant not in ANALYTIC:
        raise DomainError(f"no closed form for variant {variant!r}")
    pts = grid.points() if isinstance(grid, ComplexGrid) else [complex(t) for t in grid]
    worst, worst_pt, bad = 0.0, pts[0], []
    for rec in band_sweep(variant, pts, BbhParams(1.0, 1.0, 0.0)):
        dev = match_spectra(ANALYTIC[variant](rec.momentum), rec.eigenvalues)
        if dev > worst:
            worst, worst_pt = dev, rec.momentum
        if dev > tol:
            bad.append((rec.momentum, dev))
    return CheckReport(variant, len(pts), worst, worst_pt, tuple(bad), tol)


def square_grid(samples: int, re_min=-5.8, re_max=-4.2, im_min=-1.0, im_max=1.0) -> ComplexGrid:
    side = math.isqrt(samples)
    if samples < 1 or side * side != samples:
        raise DomainError(f"samples must be a perfect square, got {samples}")
    return ComplexGrid(re_min, re_max, side, im_min, im_max, side)


SWEEP_HEADER = ("re_k", "im_k", "re_e1", "im_e1", "re_e2", "im_e2", "re_e3", "im_e3", "re_e4", "im_e4")


def sweep_rows(records) -> list:
    rows = []
    for rec in records:
        row = [rec.momentum.real, rec.momentum.imag]
        for z in rec.eigenvalues:
            row += [z.real, z.imag]
        rows.append(row)
    return rows


def sweep_csv(records) -> str:
    return csv_lines(SWEEP_HEADER, sweep_rows(records))
