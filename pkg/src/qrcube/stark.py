"""Linear Stark effect of hydrogen in the n <= 2 basis.

Energies are in eV and lengths in Bohr radii. The field enters as the
product ``a0 * F`` (so ``field`` has energy units); ``radius_scale``
multiplies a0 inside the dipole couplings only, the unperturbed levels
keep their hydrogen values.

Basis order everywhere: 1s, 2s, 2pz, 2px, 2py.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _pykernels
from ._backend import kernels
from ._format import csv_lines
from .cube import CubeState, apply, cube_from_gammas
from .errors import DomainError
from .numerics import Spectrum, eigenpairs

BASIS = ("1s", "2s", "2pz", "2px", "2py")
A_COEF = 128.0 * math.sqrt(2.0) / 243.0   # <1s| z |2pz> / a0
B_COEF = -3.0                              # <2s| z |2pz> / a0
FIFTH_ORDER_SEQUENCE = "MB2(1) D'1(2) R1(3) ML1(4) MU1(5)"


@dataclass(frozen=True)
class StarkConfig:
    field: float = 0.0          # a0 * F, eV
    radius_scale: float = 1.0
    e0: float = 13.6             # Rydberg energy, eV

    def __post_init__(self):
        if self.field < 0:
            raise DomainError(f"field must be >= 0, got {self.field}")
        if not self.radius_scale > 0:
            raise DomainError(f"radius_scale must be > 0, got {self.radius_scale}")

    @property
    def e1(self) -> float:
        return -self.e0

    @property
    def e2(self) -> float:
        return -self.e0 / 4.0

    def couplings(self, a_coef=A_COEF, b_coef=B_COEF) -> tuple:
        s = self.radius_scale * self.field
        return a_coef * s, b_coef * s


@dataclass(frozen=True)
class StarkLevels:
    exact: Spectrum
    exact_vectors: np.ndarray        # columns follow ``exact``
    perturbative: tuple              # (E2 - |B|, E2 + |B|)
    pair_vectors: np.ndarray         # columns in (2s, 2pz) for the perturbative pair
    exact_pair: tuple                # the two exact levels dominated by 2s/2pz
    coupling: float = 0.0            # <2s| H' |2pz> = B

    @property
    def splitting_exact(self) -> float:
        return abs(self.exact_pair[1] - self.exact_pair[0])

    @property
    def splitting_perturbative(self) -> float:
        # 2|B| directly; differencing the two levels loses digits to E2
        return 2.0 * abs(self.coupling)


def _orbital_id(name):
    try:
        return BASIS_IDS[name]
    except KeyError:
        raise DomainError(f"unknown orbital {name!r}; choose from {BASIS}") from None


BASIS_IDS = {name: _pykernels.ORBITALS.index(name) for name in BASIS}


@lru_cache(maxsize=64)
def dipole_element(n: str, m: str, scale: float = 1.0, tol: float = 1e-8) -> float:
    """``<n| r cos(theta) |m>`` in units of ``a0 * scale`` by adaptive quadrature."""
    if not scale > 0:
        raise DomainError(f"scale must be > 0, got {scale}")
    a = float(scale)
    value = kernels.dipole_triple(_orbital_id(n), _orbital_id(m), a, 60.0 * a, tol * a)
    return value / a


def dipole_coefficients(scale: float = 1.0, tol: float = 1e-8) -> tuple:
    """Quadrature values of (A, B) / (a0 F)."""
    return dipole_element("1s", "2pz", scale, tol), dipole_element("2s", "2pz", scale, tol)


def h_total(cfg: StarkConfig, couplings: Sequence[float] | None = None) -> np.ndarray:
    """Unperturbed levels plus the field matrix; real symmetric 5x5."""
    a, b = cfg.couplings(*(couplings or (A_COEF, B_COEF)))
    e1, e2 = cfg.e1, cfg.e2
    h = np.diag([e1, e2, e2, e2, e2]).astype(float)
    h[0, 2] = h[2, 0] = a
    h[1, 2] = h[2, 1] = b
    return h


def _pair_vectors(b):
    v = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    # columns: eigenvectors of E2 + b (1, 1) and E2 - b (1, -1); reorder to (E2 - |b|, E2 + |b|)
    return v if b <= 0 else v[:, ::-1]


def levels(cfg: StarkConfig, couplings: Sequence[float] | None = None) -> StarkLevels:
    h = h_total(cfg, couplings)
    spec, vecs = eigenpairs(h)
    _, b = cfg.couplings(*(couplings or (A_COEF, B_COEF)))
    weight = np.abs(vecs[1, :]) ** 2 + np.abs(vecs[2, :]) ** 2
    top = sorted(np.argsort(-weight, kind="stable")[:2])
    pair = tuple(sorted(spec[j].real for j in top))
    e2 = cfg.e2
    return StarkLevels(spec, vecs, (e2 - abs(b), e2 + abs(b)), _pair_vectors(b), pair, b)


SPLITTING_SCALES = (0.6, 1.0, 1.4, 2.0)
SPLITTING_HEADER = ("scale", "F", "splitting_exact", "splitting_perturbative")


def splitting_data(scales: Sequence[float] = SPLITTING_SCALES, f_grid: Sequence[float] = ()) -> list:
    """Rows ``(scale, F, exact splitting, perturbative splitting)``, scale-major."""
    rows = []
    for s in scales:
        for f in f_grid:
            lv = levels(StarkConfig(field=float(f), radius_scale=float(s)))
            rows.append((float(s), float(f), lv.splitting_exact, lv.splitting_perturbative))
    return rows


def splitting_csv(rows) -> str:
    return csv_lines(SPLITTING_HEADER, rows)


def stark_faces(cfg: StarkConfig) -> list:
    """Gamma_0..Gamma_5 of the fifth-order cube; unlisted entries are 0."""
    a, b = cfg.couplings()
    e1, e2 = cfg.e1, cfg.e2
    diag = np.diag([e1, e2, e2, e2, e2]).astype(complex)
    g0 = h_total(cfg).astype(complex)
    g3 = diag.copy()
    g3[0, 2], g3[1, 2] = a, b
    g3[4, :] = [a, b, e2, 0, 0]
    g4 = diag.copy()
    g4[2, :] = [a, b, e2, 0, 0]
    return [g0, diag.copy(), diag.copy(), g3, g4, diag.copy()]


def stark_cube(cfg: StarkConfig = StarkConfig(field=1.0)) -> CubeState:
    return cube_from_gammas(stark_faces(cfg))


def apply_fifth_order_sequence(cube: CubeState) -> CubeState:
    """Run the fifth-order sequence MB2 D'1 R1 ML1 MU1 on an order-5 cube."""
    if cube.order != 5:
        raise DomainError(f"the sequence is defined on an order-5 cube, got {cube.order}")
    return apply(cube, FIFTH_ORDER_SEQUENCE)
