"""Single convolutional layer: forward pass and the backward error map.

All maps are real 2-D ``numpy`` arrays and the stride is 1. Two backward
operations exist because the reference worked example and the gradient
formulas use opposite kernel orientations:

* ``input_gradient`` is the true gradient of ``conv_valid``: the padded
  error map correlated with the 180-degree rotated kernel.
* ``backward_figure`` reproduces the worked-example numbers: the padded
  error map correlated with the kernel as given.

They satisfy ``backward_figure(d, w) == input_gradient(d, rotate180(w))``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DomainError, ShapeError

ACTIVATIONS = {
    "identity": lambda z: z,
    "relu": lambda z: np.maximum(z, 0.0),
}


def _map(x, name="map") -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    return a


def _correlate(x, w):
    if w.shape[0] > x.shape[0] or w.shape[1] > x.shape[1]:
        raise ShapeError(f"kernel {w.shape} larger than input {x.shape}")
    windows = sliding_window_view(x, w.shape)
    return np.einsum("ijuv,uv->ij", windows, w)


def conv_valid(x, w, bias: float = 0.0, activation: str = "identity") -> np.ndarray:
    """``o[i, j] = f(sum_uv w[u, v] x[i+u, j+v] + b)``, valid mode."""
    x = _map(x, "input")
    w = _map(w, "kernel")
    if activation not in ACTIVATIONS:
        raise DomainError(f"unknown activation {activation!r}")
    return ACTIVATIONS[activation](_correlate(x, w) + bias)


def rotate180(w) -> np.ndarray:
    return _map(w, "kernel")[::-1, ::-1].copy()


def zero_pad(x, width: int) -> np.ndarray:
    if width < 0:
        raise DomainError(f"pad width must be >= 0, got {width}")
    return np.pad(_map(x), int(width), mode="constant", constant_values=0.0)


def _full_pad(delta, w):
    d = _map(delta, "delta")
    w = _map(w, "kernel")
    ph, pw = w.shape[0] - 1, w.shape[1] - 1
    return np.pad(d, ((ph, ph), (pw, pw))), w


def input_gradient(delta, w) -> np.ndarray:
    """Gradient of ``sum(delta * conv_valid(x, w))`` with respect to ``x``."""
    padded, w = _full_pad(delta, w)
    return _correlate(padded, rotate180(w))


def backward_figure(delta, w) -> np.ndarray:
    """Worked-example backward pass: padded ``delta`` correlated with ``w``."""
    padded, w = _full_pad(delta, w)
    return _correlate(padded, w)


def multi_kernel_backward(deltas: Sequence, ws: Sequence) -> np.ndarray:
    """Sum of ``backward_figure`` over kernels (error sensitivity of one channel)."""
    deltas = list(deltas)
    ws = list(ws)
    if len(deltas) != len(ws) or not deltas:
        raise ShapeError(f"need equal, non-zero numbers of deltas and kernels, got {len(deltas)} and {len(ws)}")
    total = backward_figure(deltas[0], ws[0])
    for d, w in zip(deltas[1:], ws[1:]):
        total = total + backward_figure(d, w)
    return total


def conv_layer(xs: Sequence, ws: Sequence, bias: float = 0.0, activation: str = "identity") -> np.ndarray:
    """Net input summed over D channels plus bias, then the activation."""
    xs = [_map(x, "input") for x in xs]
    ws = [_map(w, "kernel") for w in ws]
    if len(xs) != len(ws) or not xs:
        raise ShapeError(f"need one kernel per channel, got {len(xs)} channels and {len(ws)} kernels")
    if len({x.shape for x in xs}) != 1 or len({w.shape for w in ws}) != 1:
        raise ShapeError("channels (and kernels) must share one shape")
    if activation not in ACTIVATIONS:
        raise DomainError(f"unknown activation {activation!r}")
    z = sum(_correlate(x, w) for x, w in zip(xs, ws)) + bias
    return ACTIVATIONS[activation](z)


def face_channels(face) -> list:
    """Real and imaginary parts of a complex cube face as two feature maps."""
    f = np.asarray(face, dtype=complex)
    return [f.real.copy(), f.imag.copy()]


DEMO_KERNELS = (np.array([[0.4, 0.2], [0.2, 0.1]]), np.array([[0.2, 0.1], [0.1, -0.3]]))
DEMO_DELTAS = (np.array([[1.0, 3.0], [2.0, 2.0]]), np.array([[2.0, 1.0], [1.0, 1.0]]))
