"""Polygons, ear-clipping triangulation, relaxed corner guards and SVG output.

All geometry uses integer coordinates and exact orientation tests. A relaxed
guard set must see at least one corner in every run of ``k + 2`` consecutive
corners. It is certified through the triangulation graph: a corner adjacent
to a guard along a triangulation edge is visible from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import BadParams, Degenerate, NotSimple, TooSmall, VerificationFailure
from .isolation import isolate_order
from .mop import Mop, closed_neighborhood_mask


def orient(a, b, c) -> int:
    """Twice the signed area of triangle ``abc``: >0 left turn, <0 right turn, 0 collinear."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p) -> bool:
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ``ab`` and ``cd`` share at least one point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and (
        (o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)
    ):
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon with integer corners."""

    corners: tuple

    def __post_init__(self):
        pts = []
        for c in self.corners:
            try:
                x, y = c
            except (TypeError, ValueError):
                raise Degenerate(f"corner {c!r} is not a coordinate pair") from None
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (x, y)):
                raise Degenerate(f"corner {c!r} must have integer coordinates")
            pts.append((x, y))
        object.__setattr__(self, "corners", tuple(pts))
        _check_simple(self.corners)

    @property
    def n(self) -> int:
        return len(self.corners)

    def signed_area2(self) -> int:
        return _area2(self.corners)

    def reflex_corners(self) -> tuple:
        c, n = self.corners, self.n
        return tuple(i for i in range(n) if orient(c[i - 1], c[i], c[(i + 1) % n]) < 0)


def _area2(pts) -> int:
    n = len(pts)
    return sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n))


def _check_simple(pts) -> None:
    n = len(pts)
    if n < 3:
        raise Degenerate(f"a polygon needs at least 3 corners, got {n}")
    if len(set(pts)) != n:
        raise Degenerate("repeated corner")
    for i in range(n):
        if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
            raise Degenerate(f"corners {(i - 1) % n}, {i}, {(i + 1) % n} are collinear")
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, pts[j], pts[(j + 1) % n]):
                raise NotSimple(f"sides {i} and {j} intersect")
    if _area2(pts) <= 0:
        raise NotSimple("corners are not in counterclockwise order")


def _in_closed_triangle(a, b, c, p) -> bool:
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def triangulate(P: SimplePolygon) -> Mop:
    """Ear clipping; among all current ears the one with the smallest cut diagonal is clipped.

    An ear is a strictly convex corner whose triangle contains no other
    remaining corner, boundary included.
    """
    pts = P.corners
    ring = list(range(P.n))
    diagonals = []
    while len(ring) > 3:
        m = len(ring)
        best = None
        for idx in range(m):
            p, v, q = ring[idx - 1], ring[idx], ring[(idx + 1) % m]
            if orient(pts[p], pts[v], pts[q]) <= 0:
                continue
            if any(
                _in_closed_triangle(pts[p], pts[v], pts[q], pts[w])
                for w in ring
                if w not in (p, v, q)
            ):
                continue
            cut = (p, q) if p < q else (q, p)
            if best is None or cut < best[0]:
                best = (cut, idx)
        if best is None:
            raise Degenerate("no ear found; polygon is degenerate")
        diagonals.append(best[0])
        del ring[best[1]]
    return Mop(P.n, diagonals)


# -- spiral galleries ---------------------------------------------------------


def _spiral_radius(k: int) -> int:
    # keeps every rim corner strictly reflex after rounding and out of sight of the base corner
    return 1000 + 40 * (k + 1) ** 2


def spiral_gallery(t: int, k: int) -> SimplePolygon:
    """``t`` rooms of ``k + 4`` corners each in a row on a thin corridor.

    Room ``i`` has a base corner ``x_1``, a top corner ``C`` above it and a rim
    of ``k + 2`` corners on a quarter circle bulging into the room, ending at
    base corner ``x_2`` next to ``x_1``. The ``k`` inner rim corners are reflex.
    Every rim corner but the last two sees only ``C`` and its rim neighbors, so
    every triangulation joins ``C`` to the whole rim except ``x_2``. That makes
    each room need a guard of its own. The base corners sit on ``y = 0``,
    except that the outermost two drop to ``y = -1`` and close the corridor.
    """
    ints = all(isinstance(v, int) and not isinstance(v, bool) for v in (t, k))
    if not ints or t < 1 or k < 0:
        raise BadParams(f"spiral gallery needs integers t >= 1, k >= 0, got t={t!r}, k={k!r}")
    R = _spiral_radius(k)
    step = R + 2
    corners = []
    # counterclockwise: corridor floor left to right, then rooms right to left
    for i in range(t - 1, -1, -1):
        X = i * step
        x1 = (X + R + 1, -1 if i == t - 1 else 0)
        corners.append(x1)
        corners.append((X + R + 1, R + 1))
        for j in range(k + 2):
            theta = (math.pi / 2) * (1 - j / (k + 1))
            corners.append((X + round(R * math.cos(theta)), round(R * math.sin(theta))))
        if i == 0:
            corners[-1] = (X + R, -1)
        else:
            corners[-1] = (X + R, 0)
    # start at room 1's lowered x_2 so the first side is the corridor floor
    shift = len(corners) - 1
    corners = corners[shift:] + corners[:shift]
    P = SimplePolygon(tuple(corners))
    _check_spiral_structure(P, t, k)
    return P


def spiral_rooms(t: int, k: int) -> list:
    """Corner indices of each room of ``spiral_gallery(t, k)``: ``(x_1, C, rim...)``."""
    out = []
    n = t * (k + 4)
    for r in range(t):
        base = 1 + r * (k + 4)
        out.append(tuple((base + j) % n for j in range(k + 4)))
    return out


def _check_spiral_structure(P: SimplePolygon, t: int, k: int) -> None:
    G = triangulate(P)
    for room in spiral_rooms(t, k):
        inside = set(room)
        top = room[1]
        for v in room[2:-1]:
            if not G.has_edge(top, v):
                raise VerificationFailure(f"top corner {top} does not see rim corner {v}")
        for v in room[1:-1]:
            if not set(G.neighbors[v]) <= inside:
                raise VerificationFailure(f"interior corner {v} sees into another room")


# -- guards -------------------------------------------------------------------


@dataclass(frozen=True)
class GuardCertificate:
    """Guards plus, for each window start ``i``, a covered corner of ``i..i+k+1``."""

    guards: tuple
    k: int
    windows: tuple
    initial_guards: tuple
    augmentations: int
    mop: Mop

    @property
    def size(self) -> int:
        return len(self.guards)


def _window_witnesses(G: Mop, S, k: int):
    n = G.n
    seen = closed_neighborhood_mask(G, S)
    width = min(k + 2, n)
    out = []
    for i in range(n):
        hit = None
        for off in range(width):
            c = (i + off) % n
            if seen >> c & 1:
                hit = c
                break
        out.append(hit)
    return out


def verify_window_coverage(G: Mop, S, k: int) -> tuple:
    """``(True, None)`` if every ``k+2`` cyclic window meets ``N[S]``, else ``(False, start)``."""
    for i, hit in enumerate(_window_witnesses(G, S, k)):
        if hit is None:
            return False, i
    return True, None


def place_guards(P: SimplePolygon, k: int) -> GuardCertificate:
    """Corner guards from an isolating set of the triangulation, topped up if a window is blind."""
    if not isinstance(k, int) or k < 0:
        raise BadParams(f"k must be a non-negative integer, got {k!r}")
    if P.n < k + 4:
        raise TooSmall(f"guard placement needs n >= k+4 = {k + 4}, got n={P.n}")
    G = triangulate(P)
    initial = isolate_order(G, k).set
    guards = set(initial)
    augmentations = 0
    while True:
        ok, start = verify_window_coverage(G, guards, k)
        if ok:
            break
        guards.add((start + (k + 1) // 2) % P.n)
        augmentations += 1
    windows = tuple(_window_witnesses(G, guards, k))
    return GuardCertificate(tuple(sorted(guards)), k, windows, initial, augmentations, G)


# -- SVG --------------------------------------------------------------------------


def render_svg(shape, S=(), size: int = 480) -> str:
    """Standalone SVG: outline, dashed diagonals, highlighted vertices of ``S``.

    ``shape`` is a SimplePolygon (triangulated for the diagonals) or a Mop
    (drawn on a regular polygon).
    """
    if isinstance(shape, SimplePolygon):
        G = triangulate(shape)
        raw = shape.corners
    elif isinstance(shape, Mop):
        G = shape
        raw = [
            (math.cos(2 * math.pi * v / G.n + math.pi / 2), math.sin(2 * math.pi * v / G.n + math.pi / 2))
            for v in range(G.n)
        ]
    else:
        raise TypeError("render_svg expects a SimplePolygon or a Mop")
    pad = 20
    xs = [p[0] for p in raw]
    ys = [p[1] for p in raw]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1
    scale = (size - 2 * pad) / span
    pts = [
        (pad + (x - min(xs)) * scale, size - pad - (y - min(ys)) * scale) for x, y in raw
    ]
    chosen = set(S)
    fmt = lambda v: f"{v:.2f}"  # noqa: E731
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(f'n={G.n} marked={sorted(chosen)}')}</title>",
        '<g class="boundary" stroke="black" stroke-width="1.5">',
    ]
    n = G.n
    for v in range(n):
        a, b = pts[v], pts[(v + 1) % n]
        lines.append(
            f'<line x1="{fmt(a[0])}" y1="{fmt(a[1])}" x2="{fmt(b[0])}" y2="{fmt(b[1])}"/>'
        )
    lines.append("</g>")
    lines.append('<g class="diagonals" stroke="gray" stroke-width="1" stroke-dasharray="4 3">')
    for u, v in G.diagonals:
        a, b = pts[u], pts[v]
        lines.append(
            f'<line x1="{fmt(a[0])}" y1="{fmt(a[1])}" x2="{fmt(b[0])}" y2="{fmt(b[1])}"/>'
        )
    lines.append("</g>")
    lines.append('<g class="vertices">')
    for v, (x, y) in enumerate(pts):
        if v in chosen:
            lines.append(
                f'<circle class="marked" cx="{fmt(x)}" cy="{fmt(y)}" r="6" fill="red" stroke="black"/>'
            )
        else:
            lines.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="2.5" fill="black"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
