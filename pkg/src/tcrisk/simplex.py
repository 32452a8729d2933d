"""Barycentric pictures of test-measure sets over a three-block partition.

A measure ``P`` is drawn at ``(P(A), P(B), P(rest))`` inside a triangle with
``A`` on top, ``B`` bottom-left and the remainder bottom-right.  Horizontal
lines have constant ``P(A)``; rays out of the ``A`` corner have constant
``P(B | A^c)``.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import LemmaChain, chain_for
from .errors import InvalidObject
from .measure import Measure, Partition
from .pasting import rectangle_vertices
from .risk import RiskMeasure

Triple = tuple[Fraction, Fraction, Fraction]

WIDTH, HEIGHT = 600, 520
SIDE = 500
TRI_H = SIDE * 3 ** 0.5 / 2
CORNER_A = (WIDTH / 2, 40.0)
CORNER_B = (WIDTH / 2 - SIDE / 2, 40.0 + TRI_H)
CORNER_C = (WIDTH / 2 + SIDE / 2, 40.0 + TRI_H)


@dataclass
class SimplexScene:
    blocks: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    corner_labels: tuple[str, str, str] = ("A", "B", "(A∪B)^c")
    points: list[tuple[str, Triple]] = field(default_factory=list)
    polygons: list[tuple[str, list[int]]] = field(default_factory=list)
    segments: list[tuple[str, int, int]] = field(default_factory=list)

    def add_point(self, label: str, triple: Triple) -> int:
        if any(v < 0 for v in triple) or sum(triple) != 1:
            raise InvalidObject(f"not a barycentric triple: {triple}")
        self.points.append((label, tuple(triple)))
        return len(self.points) - 1

    @property
    def partition(self) -> Partition:
        return Partition(self.blocks, sum(len(b) for b in self.blocks))


def _triple(p: Measure, blocks) -> Triple:
    return tuple(p.mass(b) for b in blocks)


def _hull_2d(pts: list[tuple[Fraction, Fraction]]) -> list[int]:
    """Counter-clockwise convex hull (monotone chain), exact; returns indices."""
    order = sorted(set(range(len(pts))), key=lambda i: pts[i])
    uniq: list[int] = []
    for i in order:
        if not uniq or pts[uniq[-1]] != pts[i]:
            uniq.append(i)
    if len(uniq) <= 2:
        return uniq

    def cross(o, a, b):
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0])

    lower: list[int] = []
    for i in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _polygon(scene: SimplexScene, idx: list[int]) -> list[int]:
    # plane coordinates (P(B), P(A)) are an affine image of the triangle
    pts = [(scene.points[i][1][1], scene.points[i][1][0]) for i in idx]
    return [idx[k] for k in _hull_2d(pts)]


def project(rm: RiskMeasure, a, b, chain: LemmaChain | None = None) -> SimplexScene:
    """Scene with the generators, the sigma(a)-rectangle and (if any) a pasting chain."""
    a, b = tuple(sorted(set(a))), tuple(sorted(set(b)))
    n = rm.space.n
    if set(a) & set(b):
        raise InvalidObject("a and b must be disjoint")
    rest = tuple(i for i in range(n) if i not in a and i not in b)
    if not a or not b or not rest:
        raise InvalidObject("a, b and the remainder must all be nonempty")
    blocks = (a, b, rest)
    scene = SimplexScene(blocks)

    gen_idx = [scene.add_point(f"g{k + 1}", _triple(g, blocks)) for k, g in enumerate(rm.gens)]
    scene.polygons.append(("P", _polygon(scene, gen_idx)))

    rect = rectangle_vertices(rm, Partition.split(a, n))
    rect_idx = [scene.add_point(f"r{k + 1}", _triple(q, blocks)) for k, q in enumerate(rect)]
    scene.polygons.append(("rectangle", _polygon(scene, rect_idx)))

    if chain is None:
        chain = chain_for(rm, a, b)
    if chain is not None and chain.a == a and chain.b == b:
        z = [scene.add_point(f"Z{k + 1}", _triple(m, blocks)) for k, m in enumerate(chain.z)]
        # constant-P(a) edge through z4, z5 and the constant-P(a|b^c) ray to z6
        scene.segments.append(("sigma(A) paste level", z[3], z[4]))
        scene.segments.append(("sigma(B) paste ray", z[3], z[5]))
    return scene


def to_xy(t: Sequence[Fraction]) -> tuple[float, float]:
    pa, pb, pc = (float(v) for v in t)
    x = pa * CORNER_A[0] + pb * CORNER_B[0] + pc * CORNER_C[0]
    y = pa * CORNER_A[1] + pb * CORNER_B[1] + pc * CORNER_C[1]
    return x, y


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


_STYLE = {
    "P": 'fill="#9c6b30" fill-opacity="0.15" stroke="#9c6b30" stroke-width="1.5"',
    "rectangle": 'fill="none" stroke="#3050c0" stroke-width="1" stroke-dasharray="6,4"',
}


def render_svg(scene: SimplexScene) -> bytes:
    """Deterministic SVG 1.1 drawing of the scene (byte-identical for equal scenes)."""
    out = io.StringIO()
    w = out.write
    w('<?xml version="1.0" encoding="UTF-8"?>\n')
    w(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
      f'viewBox="0 0 {WIDTH} {HEIGHT}">\n')
    w("<!-- barycentric (pA, pB, pRest) -> (x, y) = pA*A + pB*B + pRest*C with\n")
    w(f"     A=({_f(CORNER_A[0])},{_f(CORNER_A[1])}) B=({_f(CORNER_B[0])},{_f(CORNER_B[1])}) "
      f"C=({_f(CORNER_C[0])},{_f(CORNER_C[1])}); y grows downward -->\n")
    w('<rect x="0" y="0" width="600" height="520" fill="white"/>\n')
    tri = " ".join(f"{_f(x)},{_f(y)}" for x, y in (CORNER_A, CORNER_B, CORNER_C))
    w(f'<polygon points="{tri}" fill="none" stroke="black" stroke-width="1.5"/>\n')
    la, lb, lc = (_esc(s) for s in scene.corner_labels)
    w(f'<text x="{_f(CORNER_A[0])}" y="{_f(CORNER_A[1] - 12)}" text-anchor="middle" font-size="16">{la}</text>\n')
    w(f'<text x="{_f(CORNER_B[0] - 8)}" y="{_f(CORNER_B[1] + 22)}" text-anchor="middle" font-size="16">{lb}</text>\n')
    w(f'<text x="{_f(CORNER_C[0] + 8)}" y="{_f(CORNER_C[1] + 22)}" text-anchor="middle" font-size="16">{lc}</text>\n')
    for label, idx in scene.polygons:
        if len(idx) < 2:
            continue
        pts = " ".join("{},{}".format(*map(_f, to_xy(scene.points[i][1]))) for i in idx)
        style = _STYLE.get(label, 'fill="none" stroke="gray"')
        w(f'<polygon data-label="{_esc(label)}" points="{pts}" {style}/>\n')
    for label, i, j in scene.segments:
        (x1, y1), (x2, y2) = to_xy(scene.points[i][1]), to_xy(scene.points[j][1])
        w(f'<line data-label="{_esc(label)}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
          'stroke="black" stroke-dasharray="4,4"/>\n')
    for label, t in scene.points:
        x, y = to_xy(t)
        color = "#c03030" if label.startswith("Z") else ("#3050c0" if label.startswith("r") else "#202020")
        w(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="{color}"/>\n')
        if label.startswith(("Z", "g")):
            w(f'<text x="{_f(x + 5)}" y="{_f(y - 5)}" font-size="12">{_esc(label)}</text>\n')
    w("</svg>\n")
    return out.getvalue().encode("utf-8")


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def to_csv(scene: SimplexScene) -> str:
    lines = ["label,pA,pB,pRest"]
    for label, (pa, pb, pc) in scene.points:
        lines.append(f"{label},{pa},{pb},{pc}")
    return "\n".join(lines) + "\n"


def to_dict(scene: SimplexScene) -> dict:
    return {
        "blocks": [list(b) for b in scene.blocks],
        "points": [{"label": l, "barycentric": [str(v) for v in t]} for l, t in scene.points],
        "polygons": [{"label": l, "points": idx} for l, idx in scene.polygons],
        "segments": [{"label": l, "from": i, "to": j} for l, i, j in scene.segments],
    }
