"""Josephus-ring unfolding: every sticker at an intersection of two rings.

Three families of ``n`` concentric rings, one family per cube axis, are
centred on the vertices of an equilateral triangle. Ring ``(axis, i)``
stands for layer ``i`` along that axis, counted from the negative side.
A sticker on a face normal to axis ``A`` sits on layer ``i`` of axis ``B``
and layer ``j`` of axis ``C``; its node is one of the two intersection
points of rings ``(B, i)`` and ``(C, j)``. The positive face takes the
point left of the line from centre ``B`` to centre ``C``, the negative
face the point on the right.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from ._format import g12
from .cube import _FRAMES, FACES, GAMMA_FACES, CubeState, Face, _geometry
from .errors import DomainError, ShapeError

AXES = ("x", "y", "z")
CANVAS = 1000
CENTER = (500.0, 520.0)
SIDE = 300.0
NODE_RADIUS = 6.0

# Gamma_0..Gamma_5 colours: pink, orange, blue, red, green, yellow
DEFAULT_PALETTE = dict(zip(GAMMA_FACES, ("#f48fb1", "#fb8c00", "#1e88e5", "#e53935", "#43a047", "#fdd835")))


@dataclass(frozen=True)
class Ring:
    family: str
    index: int
    center: tuple
    radius: float


@dataclass(frozen=True)
class Node:
    face: Face
    row: int
    col: int
    ring_a: tuple          # (family, index)
    ring_b: tuple
    position: tuple
    eliminated: bool = False
    color: str | None = None


@dataclass(frozen=True)
class RingDiagram:
    order: int
    rings: tuple
    nodes: tuple           # flat sticker order

    def ring(self, family, index) -> Ring:
        return self.rings[AXES.index(family) * self.order + index]


def _centers():
    cx, cy = CENTER
    rad = SIDE / math.sqrt(3.0)
    # vertices at 90, 210, 330 degrees (screen y points down)
    return [(cx + rad * math.cos(math.radians(a)), cy - rad * math.sin(math.radians(a))) for a in (90, 210, 330)]


def _radius(i, n):
    # all pairs from different families intersect: 2 r_min > SIDE and r_max - r_min < SIDE
    return SIDE * (0.55 + 0.4 * i / (n - 1))


def _intersections(c0, r0, c1, r1):
    (x0, y0), (x1, y1) = c0, c1
    dx, dy = x1 - x0, y1 - y0
    d = math.hypot(dx, dy)
    a = (r0 * r0 - r1 * r1 + d * d) / (2 * d)
    h = math.sqrt(max(r0 * r0 - a * a, 0.0))
    mx, my = x0 + a * dx / d, y0 + a * dy / d
    # left of c0 -> c1 in a y-up frame
    left = (mx + h * dy / d, my - h * dx / d)
    right = (mx - h * dy / d, my + h * dx / d)
    return left, right


def unfold(order: int) -> RingDiagram:
    n = int(order)
    if n < 2:
        raise DomainError(f"order must be >= 2, got {order}")
    centers = _centers()
    rings = tuple(Ring(AXES[a], i, centers[a], _radius(i, n)) for a in range(3) for i in range(n))
    pos, _ = _geometry(n)
    nodes = []
    for k, p in enumerate(pos):
        face = FACES[k // (n * n)]
        r, c = divmod(k % (n * n), n)
        normal = _FRAMES[face][0]
        axis = next(a for a in range(3) if normal[a])
        b, cc = (a for a in range(3) if a != axis)
        i, j = (int(p[b]) + n - 1) // 2, (int(p[cc]) + n - 1) // 2
        rb, rc = rings[b * n + i], rings[cc * n + j]
        left, right = _intersections(rb.center, rb.radius, rc.center, rc.radius)
        nodes.append(Node(face, r, c, (AXES[b], i), (AXES[cc], j), left if normal[axis] > 0 else right))
    return RingDiagram(n, rings, tuple(nodes))


def color_by_state(d: RingDiagram, s: CubeState, palette: Mapping | None = None) -> RingDiagram:
    """Colour each node by the home face of the sticker now at its position."""
    if d.order != s.order:
        raise ShapeError(f"diagram order {d.order} does not match cube order {s.order}")
    palette = {Face(k): v for k, v in (palette or DEFAULT_PALETTE).items()}
    nn = d.order * d.order
    nodes = tuple(replace(node, color=palette[FACES[int(s.origin[k]) // nn]]) for k, node in enumerate(d.nodes))
    return replace(d, nodes=nodes)


def render_svg(d: RingDiagram) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>',
        '<g id="rings" fill="none" stroke="#9e9e9e" stroke-width="1">',
    ]
    for ring in d.rings:
        out.append(
            f'<circle class="ring" data-ring="{ring.family},{ring.index}" cx="{g12(ring.center[0])}" '
            f'cy="{g12(ring.center[1])}" r="{g12(ring.radius)}"/>'
        )
    out += ["</g>", '<g id="nodes" stroke="#212121" stroke-width="0.5">']
    for node in d.nodes:
        fill = node.color or "#bdbdbd"
        out.append(
            f'<circle class="node" data-sticker="{node.face.value},{node.row},{node.col}" '
            f'data-rings="{node.ring_a[0]},{node.ring_a[1]};{node.ring_b[0]},{node.ring_b[1]}" '
            f'data-eliminated="{str(node.eliminated).lower()}" '
            f'cx="{g12(node.position[0])}" cy="{g12(node.position[1])}" r="{g12(NODE_RADIUS)}" fill="{fill}"/>'
        )
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def to_json_dict(d: RingDiagram) -> dict:
    return {
        "order": d.order,
        "rings": [{"family": r.family, "index": r.index, "center": list(r.center), "radius": r.radius} for r in d.rings],
        "nodes": [
            {
                "face": n.face.value, "row": n.row, "col": n.col,
                "ring_a": list(n.ring_a), "ring_b": list(n.ring_b),
                "position": list(n.position), "eliminated": n.eliminated, "color": n.color,
            }
            for n in d.nodes
        ],
    }


def dumps(d: RingDiagram) -> str:
    return json.dumps(to_json_dict(d), indent=1) + "\n"


def on_ring(position, ring: Ring, tol: float = 1e-9) -> bool:
    dist = math.hypot(position[0] - ring.center[0], position[1] - ring.center[1])
    return abs(dist - ring.radius) <= tol * max(1.0, ring.radius)


def home_mask(d: RingDiagram) -> np.ndarray:
    """True where a coloured node shows its own face's colour."""
    if any(n.color is None for n in d.nodes):
        raise DomainError("diagram is not coloured")
    return np.array([n.color == DEFAULT_PALETTE[n.face] for n in d.nodes])
