"""Deterministic SVG drawings of the regions for n = 2 and n = 3.

For n = 3 the plane ``x1 + x2 + x3 = 1`` is drawn in the orthonormal basis
``e1 = (1, -1, 0) / sqrt(2)``, ``e2 = (1, 1, -2) / sqrt(6)`` centred at g.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import transforms as T
from .geometry import center

CANVAS = 800

# Vertex lists of the hexagon P (image of the cube) and of its shrunk copy
# PBAR inside the triangle K, for n = 3, in their conventional order.
P_VERTICES_N3 = (
    (1.0, 0.0, 0.0),
    (2 / 3, 2 / 3, -1 / 3),
    (0.0, 1.0, 0.0),
    (2 / 3, -1 / 3, 2 / 3),
    (0.0, 0.0, 1.0),
    (-1 / 3, 2 / 3, 2 / 3),
)
PBAR_VERTICES_N3 = (
    (2 / 3, 1 / 6, 1 / 6),
    (1 / 2, 1 / 2, 0.0),
    (1 / 6, 2 / 3, 1 / 6),
    (1 / 2, 0.0, 1 / 2),
    (1 / 6, 1 / 6, 2 / 3),
    (0.0, 1 / 2, 1 / 2),
)
K_VERTICES_N3 = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

# G restricted to the face x1 = 1, in (a2, a3) coordinates: a2 <= 2 a3, a3 <= 2 a2
G1_WEDGE = ((0.0, 0.0), (1.0, 0.5), (1.0, 1.0), (0.5, 1.0))

_BASIS = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -2.0]]) / np.array([[math.sqrt(2)], [math.sqrt(6)]])


def cube_vertex_images(n: int) -> np.ndarray:
    """Images of the cube vertices under the orthogonal projection onto the plane."""
    verts = np.array(list(itertools.product((0.0, 1.0), repeat=n)))
    return T.psi0(verts)


def _hull_order(points):
    g = center(points.shape[1])
    xy = (points - g) @ _BASIS.T
    keep = np.linalg.norm(xy, axis=1) > 1e-12
    pts, xy = points[keep], xy[keep]
    order = np.argsort(np.arctan2(xy[:, 1], xy[:, 0]))
    return pts[order]


def hexagon_vertices_n3():
    """``(P vertices, PBAR vertices)`` computed from the maps, counter-clockwise."""
    p = _hull_order(cube_vertex_images(3))
    pbar = T.homothety("g", 0.5, p)
    return p, pbar


def same_vertex_set(a, b, tol=1e-9) -> bool:
    a, b = np.asarray(a, float), np.asarray(b, float)
    if a.shape != b.shape:
        return False
    used = set()
    for v in a:
        hits = [j for j, w in enumerate(b) if j not in used and np.abs(v - w).max() <= tol]
        if not hits:
            return False
        used.add(hits[0])
    return True


class _Svg:
    def __init__(self, title):
        self.items = []
        self.title = title

    def polygon(self, pts, fill, stroke="#000000", opacity=0.35, label=None):
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in pts)
        attr = f' id="{label}"' if label else ""
        self.items.append(
            f'<polygon{attr} points="{coords}" fill="{fill}" fill-opacity="{opacity}" '
            f'stroke="{stroke}" stroke-width="1.5"/>')

    def line(self, p, q, stroke="#000000", width=2.0, arrow=False):
        extra = ' marker-end="url(#arrow)"' if arrow else ""
        self.items.append(
            f'<line x1="{p[0]:.3f}" y1="{p[1]:.3f}" x2="{q[0]:.3f}" y2="{q[1]:.3f}" '
            f'stroke="{stroke}" stroke-width="{width}"{extra}/>')

    def dot(self, p, r=3.0, fill="#000000"):
        self.items.append(f'<circle cx="{p[0]:.3f}" cy="{p[1]:.3f}" r="{r}" fill="{fill}"/>')

    def text(self, p, s, size=14):
        self.items.append(
            f'<text x="{p[0]:.3f}" y="{p[1]:.3f}" font-family="sans-serif" font-size="{size}">{s}</text>')

    def render(self):
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
            f'viewBox="0 0 {CANVAS} {CANVAS}">\n'
            f"<title>{self.title}</title>\n"
            '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" '
            'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#555555"/></marker></defs>\n'
            f'<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def figure_n2(arrows: int = 10) -> str:
    """The square H, the diagonal K, the faces F, and arrows b -> Phi(b)."""
    scale, ox, oy = 560.0, 120.0, 680.0

    def px(p):
        return ox + scale * p[0], oy - scale * p[1]

    svg = _Svg("n = 2: the square H, the diagonal K, the faces F and the map Phi")
    svg.polygon([px(v) for v in ((0, 0), (1, 0), (1, 1), (0, 1))], "#dddddd", label="H")
    svg.line(px((1, 0)), px((0, 1)), stroke="#1f77b4", width=3)
    svg.line(px((1, 0)), px((1, 1)), stroke="#d62728", width=4)
    svg.line(px((0, 1)), px((1, 1)), stroke="#d62728", width=4)
    ts = np.arange(arrows + 1) / arrows
    b = np.stack([ts, 1.0 - ts], axis=1)
    for p, q in zip(b, T.phi(b)):
        if np.abs(p - q).max() > 1e-12:
            svg.line(px(p), px(q), stroke="#555555", width=1.2, arrow=True)
        svg.dot(px(p), fill="#1f77b4")
    for v in ((1.0, 0.0), (0.0, 1.0)):
        svg.dot(px(v), r=5)
    svg.text((ox + scale + 10, oy + 5), "(1, 0)")
    svg.text((ox - 60, oy - scale + 5), "(0, 1)")
    svg.text((ox + scale / 2 - 40, oy - scale / 2 + 40), "K", size=20)
    svg.text((ox + scale + 10, oy - scale / 2), "F", size=20)
    return svg.render()


def figure_n3() -> str:
    """The triangle K, the hexagons P and PBAR in the plane, and the wedge of G on x1 = 1."""
    p_verts, pbar_verts = hexagon_vertices_n3()
    if not same_vertex_set(p_verts, P_VERTICES_N3):
        raise AssertionError("computed vertices of P disagree with the reference list")
    if not same_vertex_set(pbar_verts, PBAR_VERTICES_N3):
        raise AssertionError("computed vertices of PBAR disagree with the reference list")

    scale = 420.0
    g = center(3)

    def px(p):
        x, y = _BASIS @ (np.asarray(p, float) - g)
        return CANVAS / 2 + scale * x, CANVAS / 2 - scale * y

    svg = _Svg("n = 3: P, K and PBAR in the plane x1 + x2 + x3 = 1, and the wedge G_1")
    svg.polygon([px(v) for v in p_verts], "#ffbb78", label="P")
    svg.polygon([px(v) for v in K_VERTICES_N3], "#aec7e8", label="K")
    svg.polygon([px(v) for v in pbar_verts], "#98df8a", label="PBAR")
    svg.dot(px(g), r=4)
    for v in P_VERTICES_N3:
        x, y = px(v)
        svg.dot((x, y))
        svg.text((x + 6, y - 6), "(" + ", ".join(_frac(c) for c in v) + ")", size=12)

    # inset: the face x1 = 1 with axes a2 (right) and a3 (up)
    box, ox, oy = 130.0, 20.0, 150.0

    def inset(q):
        return ox + box * q[0], oy - box * q[1]

    svg.polygon([inset(q) for q in ((0, 0), (1, 0), (1, 1), (0, 1))], "#ffffff", opacity=1.0)
    svg.polygon([inset(q) for q in G1_WEDGE], "#c5b0d5", opacity=0.8, label="G1")
    svg.text((ox, oy + 16), "G_1 on x1 = 1 (a2, a3)", size=11)
    return svg.render()


def _frac(x):
    for den in (1, 2, 3, 6):
        num = round(x * den)
        if abs(num / den - x) < 1e-12:
            return str(num) if den == 1 else f"{num}/{den}"
    return f"{x:.3f}"


def figure(case: str) -> str:
    if case == "n2":
        return figure_n2()
    if case == "n3":
        return figure_n3()
    raise ValueError(f"case must be 'n2' or 'n3', got {case!r}")
