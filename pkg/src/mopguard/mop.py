"""Canonical maximal outerplanar graphs (MOPs) and their structural surgery.

A MOP on ``n`` vertices is stored as a triangulated polygon: the boundary
(Hamiltonian) cycle is always ``0, 1, ..., n-1`` and only the ``n - 3``
diagonals are kept explicitly. Every operation that changes the vertex set
relabels its output canonically and returns a map back to the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    CrossingDiagonals,
    InvalidIndex,
    NotABoundaryEdge,
    NotADiagonal,
    NotAnEdge,
    NotDegree2,
    TooFewVertices,
    TooSmall,
    WrongDiagonalCount,
)

VertexSet = tuple  # sorted, duplicate-free tuple of vertex indices


def _normalize(n: int, diagonals: Iterable) -> tuple:
    seen = set()
    for pair in diagonals:
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise InvalidIndex(f"diagonal {pair!r} is not a pair") from None
        if not (isinstance(a, int) and isinstance(b, int)):
            raise InvalidIndex(f"diagonal {pair!r} has non-integer endpoints")
        if a > b:
            a, b = b, a
        if a < 0 or b >= n:
            raise InvalidIndex(f"diagonal {(a, b)} out of range for n={n}")
        if b - a < 2 or (a == 0 and b == n - 1):
            raise InvalidIndex(f"{(a, b)} is a boundary edge or loop, not a diagonal")
        seen.add((a, b))
    return tuple(sorted(seen))


def _first_crossing(diagonals: Sequence) -> Optional[tuple]:
    # chords sorted by (a, -b) must nest like parentheses
    stack = []
    for a, b in sorted(diagonals, key=lambda d: (d[0], -d[1])):
        while stack and stack[-1][1] <= a:
            stack.pop()
        if stack and b > stack[-1][1]:
            return stack[-1], (a, b)
        stack.append((a, b))
    return None


@dataclass(frozen=True)
class Mop:
    """A validated MOP: vertex count plus the sorted tuple of diagonals."""

    n: int
    diagonals: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise TooFewVertices(f"a MOP needs at least 3 vertices, got {self.n!r}")
        diags = _normalize(self.n, self.diagonals)
        if len(diags) != self.n - 3:
            raise WrongDiagonalCount(
                f"n={self.n} needs {self.n - 3} distinct diagonals, got {len(diags)}"
            )
        crossing = _first_crossing(diags)
        if crossing is not None:
            raise CrossingDiagonals(f"diagonals {crossing[0]} and {crossing[1]} cross")
        object.__setattr__(self, "diagonals", diags)

    @classmethod
    def _trusted(cls, n: int, pairs: Iterable) -> "Mop":
        """Build without validation; ``pairs`` must already be valid diagonals."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(
            obj, "diagonals", tuple(sorted((a, b) if a < b else (b, a) for a, b in pairs))
        )
        return obj

    @cached_property
    def diagonal_set(self) -> frozenset:
        return frozenset(self.diagonals)

    @cached_property
    def neighbors(self) -> tuple:
        return tuple(tuple(_iter_bits(m)) for m in self.adj_masks)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(m.bit_count() for m in self.adj_masks)

    @cached_property
    def adj_masks(self) -> tuple:
        n = self.n
        masks = [0] + [(5 << v) for v in range(n - 2)] + [1 | (1 << (n - 2))]
        masks[0] = 2 | (1 << (n - 1))
        for a, b in self.diagonals:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> tuple:
        return tuple(m | (1 << v) for v, m in enumerate(self.adj_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        if (u - v) % self.n in (1, self.n - 1):
            return True
        return ((u, v) if u < v else (v, u)) in self.diagonal_set

    def is_boundary_edge(self, u: int, v: int) -> bool:
        return u != v and (u - v) % self.n in (1, self.n - 1)

    def edges(self) -> list:
        n = self.n
        bnd = [(v, v + 1) for v in range(n - 1)] + [(0, n - 1)]
        return sorted(bnd + list(self.diagonals))

    def faces(self) -> list:
        """All ``n - 2`` triangular faces as sorted triples."""
        n = self.n
        out = []
        for v, nb in enumerate(self.neighbors):
            ordered = sorted(nb, key=lambda w: (w - v) % n)
            for a, b in zip(ordered, ordered[1:]):
                if v < a and v < b:
                    out.append(tuple(sorted((v, a, b))))
        return sorted(out)


@dataclass(frozen=True)
class VertexMap:
    """Child-index to parent-index map produced by surgery on a MOP.

    ``parent[c]`` is the parent vertex of child ``c``. A contraction merges two
    parent vertices into ``merged_child``; ``merged_parents`` lists both.
    """

    parent: tuple
    merged_child: Optional[int] = None
    merged_parents: Optional[tuple] = None

    def lift(self, child_set: Iterable[int]) -> tuple:
        """Image of a child vertex set; a merged vertex lifts to both parents."""
        out = set()
        for c in child_set:
            if c == self.merged_child:
                out.update(self.merged_parents)
            else:
                out.add(self.parent[c])
        return tuple(sorted(out))


@dataclass(frozen=True)
class DiagonalSplit:
    g1: Mop
    g2: Mop
    map1: tuple
    map2: tuple
    cut: tuple


def validate(n: int, diagonals: Iterable) -> Mop:
    return Mop(n, tuple(diagonals))


def vertex_set(G: Mop, S: Iterable[int]) -> VertexSet:
    """Normalize ``S`` to a sorted duplicate-free tuple, checking every index."""
    out = set()
    for v in S:
        if not isinstance(v, int) or not 0 <= v < G.n:
            raise InvalidIndex(f"vertex {v!r} out of range for n={G.n}")
        out.add(v)
    return tuple(sorted(out))


def _check_vertex(G: Mop, v) -> None:
    if not isinstance(v, int) or not 0 <= v < G.n:
        raise InvalidIndex(f"vertex {v!r} out of range for n={G.n}")


def degree(G: Mop, v: int) -> int:
    _check_vertex(G, v)
    return G.degrees[v]


def degree2_vertices(G: Mop) -> VertexSet:
    return tuple(v for v, d in enumerate(G.degrees) if d == 2)


def _mask(S: Iterable[int]) -> int:
    m = 0
    for v in S:
        m |= 1 << v
    return m


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def closed_neighborhood_mask(G: Mop, S: Iterable[int]) -> int:
    adj = G.adj_masks
    m = 0
    for v in S:
        m |= adj[v] | (1 << v)
    return m


def closed_neighborhood(G: Mop, S: Iterable[int]) -> VertexSet:
    return tuple(_iter_bits(closed_neighborhood_mask(G, vertex_set(G, S))))


def residual_max_degree(G: Mop, S: Iterable[int]) -> int:
    """Maximum degree of ``G - N[S]``; -1 when nothing is left."""
    residual = G.full_mask & ~closed_neighborhood_mask(G, S)
    adj = G.adj_masks
    best = -1
    r = residual
    while r:
        low = r & -r
        d = (adj[low.bit_length() - 1] & residual).bit_count()
        if d > best:
            best = d
        r ^= low
    return best


def is_isolating(G: Mop, S: Iterable[int], k: int) -> tuple:
    """``(Δ(G - N[S]) <= k, Δ(G - N[S]))`` with Δ of the empty graph = -1."""
    delta = residual_max_degree(G, vertex_set(G, S))
    return delta <= k, delta


def is_dominating(G: Mop, S: Iterable[int]) -> bool:
    return closed_neighborhood_mask(G, vertex_set(G, S)) == G.full_mask


def apex(G: Mop, edge) -> tuple:
    """Third vertices of the faces on ``edge``: one for a boundary edge, two for a diagonal."""
    u, v = edge
    _check_vertex(G, u)
    _check_vertex(G, v)
    if u == v or not G.has_edge(u, v):
        raise NotAnEdge(f"{(u, v)} is not an edge")
    return tuple(_iter_bits(G.adj_masks[u] & G.adj_masks[v]))


def arc_submop(G: Mop, start: int, length: int) -> tuple:
    """Sub-MOP induced by the boundary arc ``start, start+1, ...`` of ``length`` vertices.

    The arc's end vertices must be adjacent. Returns the sub-MOP (relabeled
    ``0..length-1`` along the arc) and the child-to-parent tuple.
    """
    n = G.n
    end = start + length
    if end <= n:
        parent = tuple(range(start, end))
    else:
        parent = tuple(range(start, n)) + tuple(range(end - n))
    pairs = []
    for a, b in G.diagonals:
        la = (a - start) % n
        lb = (b - start) % n
        if la >= length or lb >= length:
            continue
        if la > lb:
            la, lb = lb, la
        if lb - la >= 2 and not (la == 0 and lb == length - 1):
            pairs.append((la, lb))
    return Mop._trusted(length, pairs), parent


def relabel(G: Mop, image: Sequence[int]) -> Mop:
    """Apply the vertex permutation ``v -> image[v]``; it must map the cycle onto itself."""
    return Mop._trusted(G.n, [(image[a], image[b]) for a, b in G.diagonals])


def rotate(G: Mop, shift: int) -> tuple:
    """Relabel so parent ``shift`` becomes 0. Returns (child Mop, child->parent tuple)."""
    n = G.n
    parent = tuple((c + shift) % n for c in range(n))
    image = [0] * n
    for c, p in enumerate(parent):
        image[p] = c
    return relabel(G, image), parent


def reflect(G: Mop, center: int) -> Mop:
    """The mirror image ``v -> (center - v) mod n`` (an involution)."""
    n = G.n
    return relabel(G, [(center - v) % n for v in range(n)])


def diagonal_partition(G: Mop, d) -> DiagonalSplit:
    a, b = d
    if a > b:
        a, b = b, a
    if (a, b) not in G.diagonal_set:
        raise NotADiagonal(f"{(a, b)} is not a diagonal")
    g1, map1 = arc_submop(G, a, b - a + 1)
    g2, map2 = arc_submop(G, b, G.n - (b - a) + 1)
    return DiagonalSplit(g1, g2, map1, map2, (a, b))


def splitting_diagonal(G: Mop, r: int) -> tuple:
    """Chord ``(i, i + p mod n)`` with the least ``p >= r + 2``; ties go to the least ``i``.

    The arc ``i, i+1, ..., i+p`` carries exactly ``p`` boundary edges of ``G`` and
    ``r + 2 <= p <= 2r + 2``. Returns ``((i, (i + p) % n), p)``.
    """
    n = G.n
    if r < 0 or n < 2 * r + 4:
        raise TooSmall(f"need n >= 2r+4 = {2 * r + 4}, got n={n}")
    lo = r + 2
    bp, bi = n, n
    for a, b in G.diagonals:
        p = b - a
        if lo <= p <= bp and (p < bp or a < bi):
            bp, bi = p, a
        p = n - p
        if lo <= p <= bp and (p < bp or b < bi):
            bp, bi = p, b
    return (bi, (bi + bp) % n), bp


def contract_hamiltonian_edge(G: Mop, e) -> tuple:
    """Contract boundary edge ``e``; the merged vertex takes the smaller canonical slot.

    For ``e = {u, u+1}`` the merged vertex is ``u``; for ``{n-1, 0}`` it is ``0``.
    Returns the contracted Mop of order ``n - 1`` and its VertexMap.
    """
    n = G.n
    u, v = e
    if not G.is_boundary_edge(u, v):
        raise NotABoundaryEdge(f"{(u, v)} is not a boundary edge")
    if n < 4:
        raise TooSmall("contraction needs n >= 4")
    if (u + 1) % n != v:
        u, v = v, u
    # now v == u + 1 (mod n); v is removed
    if v == 0:
        keep, drop = 0, n - 1
    else:
        keep, drop = u, v
    image = list(range(drop)) + [keep] + list(range(drop, n - 1))
    m = n - 1
    pairs = set()
    for a, b in G.diagonals:
        x, y = image[a], image[b]
        if x > y:
            x, y = y, x
        if y - x >= 2 and not (x == 0 and y == m - 1):
            pairs.add((x, y))
    parent = tuple(range(drop)) + tuple(range(drop + 1, n))
    child = Mop._trusted(m, pairs)
    return child, VertexMap(parent, image[keep], tuple(sorted((keep, drop))))


def _delete_vertices(G: Mop, removed: set) -> tuple:
    n = G.n
    parent = tuple(w for w in range(n) if w not in removed)
    image = {p: c for c, p in enumerate(parent)}
    m = len(parent)
    pairs = []
    for a, b in G.diagonals:
        x, y = image.get(a), image.get(b)
        if x is None or y is None:
            continue
        if y - x >= 2 and not (x == 0 and y == m - 1):
            pairs.append((x, y))
    return Mop._trusted(m, pairs), VertexMap(parent)


def delete_degree2_vertex(G: Mop, v: int) -> tuple:
    _check_vertex(G, v)
    if G.n < 4:
        raise TooSmall("deleting a vertex needs n >= 4")
    if G.degrees[v] != 2:
        raise NotDegree2(f"vertex {v} has degree {G.degrees[v]}")
    return _delete_vertices(G, {v})


def delete_all_degree2(G: Mop) -> tuple:
    """Remove every degree-2 vertex of ``G`` at once (they are independent)."""
    if G.n < 5:
        raise TooSmall("deleting all degree-2 vertices leaves fewer than 3 vertices for n < 5")
    return _delete_vertices(G, set(degree2_vertices(G)))


def add_ear(G: Mop, e) -> Mop:
    """Attach a new degree-2 vertex to boundary edge ``e``.

    The new vertex sits between the endpoints on the cycle: at index ``u + 1``
    for ``e = {u, u+1}``, at index ``n`` for ``e = {n-1, 0}``.
    """
    n = G.n
    u, v = e
    if not G.is_boundary_edge(u, v):
        raise NotABoundaryEdge(f"{(u, v)} is not a boundary edge")
    if (u + 1) % n != v:
        u, v = v, u
    if v == 0:
        pairs = list(G.diagonals) + [(0, n - 1)]
    else:
        shift = lambda w: w + 1 if w > u else w  # noqa: E731
        pairs = [(shift(a), shift(b)) for a, b in G.diagonals] + [(u, u + 2)]
    return Mop._trusted(n + 1, pairs)


def three_coloring(G: Mop) -> tuple:
    """Proper 3-coloring with every face trichromatic, normalized so vertices 0, 1 get 0, 1.

    Such a coloring is unique up to renaming colors. It is built by
    propagating across faces from the boundary edge ``{0, 1}``: the apex of a
    face whose other two corners are colored takes the remaining color.
    """
    n = G.n
    adj = G.adj_masks
    colors = [-1] * n
    colors[0], colors[1] = 0, 1
    stack = [(0, 1)]
    while stack:
        a, b = stack.pop()
        common = adj[a] & adj[b]
        while common:
            low = common & -common
            w = low.bit_length() - 1
            common ^= low
            if colors[w] < 0:
                colors[w] = 3 - colors[a] - colors[b]
                stack.append((a, w))
                stack.append((w, b))
    return tuple(colors)
