"""Certified constructions of isolating and dominating sets in MOPs.

The recursive algorithms follow the inductive proofs of the order bounds
``n/(k+4)`` and ``(n+n_2)/(k+5)``: find a diagonal cutting off ``l`` boundary
edges with ``k+4 <= l <= 2k+6``, shrink ``l`` while the apex of the cut lies
outside the admissible window, then either contract (``l = k+4``) or drop the
cut-off part and recurse.

Local notation inside a step: after fixing the rotation ``s`` the boundary is
``x_1, ..., x_n`` with ``x_m`` at vertex ``(s + m - 1) mod n``; the cut is
``x_1 x_{l+1}`` and ``x_j`` is the apex of the face on it inside the cut-off
side.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import KTooSmall, TooLarge, TooSmall, VerificationFailure
from .mop import (
    Mop,
    arc_submop,
    contract_hamiltonian_edge,
    degree2_vertices,
    delete_all_degree2,
    is_dominating,
    reflect,
    residual_max_degree,
    splitting_diagonal,
    three_coloring,
)


class Bound(str, Enum):
    ORDER = "ORDER"
    ORDER_PLUS_N2 = "ORDER_PLUS_N2"
    ORDER_MINUS_N2 = "ORDER_MINUS_N2"
    BEST = "BEST"
    DOM_THIRD = "DOM_THIRD"
    DOM_HALF = "DOM_HALF"


class TraceStep(NamedTuple):
    depth: int
    case: str
    n: int
    cut: Optional[tuple] = None
    apex: Optional[int] = None

    def line(self) -> str:
        cut = "-" if self.cut is None else f"{self.cut[0]}-{self.cut[1]}"
        apex = "-" if self.apex is None else str(self.apex)
        return f"{self.depth}\t{self.case}\tn={self.n}\tcut={cut}\tapex={apex}"


@dataclass(frozen=True)
class BoundedSolution:
    """An algorithm's output set with the bound it is certified against.

    ``certified`` is true when the bound's hypotheses hold for the input, in
    which case ``len(set) <= floor(bound_value)`` is guaranteed (and checked).
    """

    set: tuple
    k: int
    bound_name: Bound
    bound_value: Fraction
    trace: tuple
    certified: bool = True

    @property
    def size(self) -> int:
        return len(self.set)

    @property
    def floor_bound(self) -> int:
        return self.bound_value.numerator // self.bound_value.denominator

    def trace_log(self) -> str:
        return "\n".join(step.line() for step in self.trace)


# -- shared pieces -----------------------------------------------------------


def _small(G: Mop, k: int):
    if residual_max_degree(G, ()) <= k:
        return set()
    for v in range(G.n):
        if residual_max_degree(G, (v,)) <= k:
            return {v}
    raise VerificationFailure(f"no single isolating vertex in a MOP of order {G.n} for k={k}")


def isolate_small(G: Mop, k: int) -> tuple:
    """Empty set if it already isolates, else the first single vertex that does (n <= 2k+7)."""
    if G.n > 2 * k + 7:
        raise TooLarge(f"isolate_small needs n <= 2k+7 = {2 * k + 7}, got n={G.n}")
    return tuple(sorted(_small(G, k)))


def _apex_j(G: Mop, s: int, ell: int) -> int:
    """Paper-style index ``j`` of the apex on cut ``x_1 x_{l+1}`` inside the cut-off side."""
    n = G.n
    common = G.adj_masks[s] & G.adj_masks[(s + ell) % n]
    while common:
        low = common & -common
        w = low.bit_length() - 1
        off = (w - s) % n
        if 0 < off < ell:
            return off + 1
        common ^= low
    raise AssertionError("cut has no apex on its short side")


def _split_and_refine(G: Mop, k: int, depth: int, trace: list) -> tuple:
    """Cut with ``k+4 <= l <= 2k+6`` whose apex index ``j`` lies in ``[t+2, k+4]`` when ``l > k+4``."""
    n = G.n
    (s, _), ell = splitting_diagonal(G, k + 2)
    j = _apex_j(G, s, ell)
    trace.append(TraceStep(depth, "split", n, (s, (s + ell) % n), (s + j - 1) % n))
    while ell > k + 4:
        t = ell - (k + 4)
        if t + 2 <= j <= k + 4:
            break
        if j >= k + 5:
            ell = j - 1
            case = "refine-left"
        else:
            s = (s + j - 1) % n
            ell = ell + 1 - j
            case = "refine-right"
        j = _apex_j(G, s, ell)
        trace.append(TraceStep(depth, case, n, (s, (s + ell) % n), (s + j - 1) % n))
    return s, ell, j


def _lift(parent, S):
    return {parent[c] for c in S}


# -- order bound ---------------------------------------------------------------


def _masks(n: int, diags) -> list:
    masks = [0] + [(5 << v) for v in range(n - 2)] + [1 | (1 << (n - 2))]
    masks[0] = 2 | (1 << (n - 1))
    for a, b in diags:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    return masks


def _small_masks(n: int, adj: list, k: int) -> set:
    full = (1 << n) - 1
    for cand in (None,) + tuple(range(n)):
        if cand is None:
            residual = full
        else:
            residual = full & ~(adj[cand] | (1 << cand))
        r = residual
        while r:
            low = r & -r
            if (adj[low.bit_length() - 1] & residual).bit_count() > k:
                break
            r ^= low
        else:
            return set() if cand is None else {cand}
    raise VerificationFailure(f"no single isolating vertex in a MOP of order {n} for k={k}")


def _order(n: int, diags, k: int, depth: int, trace: list) -> set:
    """Recursion on bare diagonal lists; a child vertex ``c`` is parent ``(s + l + c) mod n``."""
    adj = _masks(n, diags)
    if n <= 2 * k + 7:
        trace.append(TraceStep(depth, "small", n))
        return _small_masks(n, adj, k)
    lo = k + 4
    bp, s = n, n
    for a, b in diags:
        p = b - a
        if lo <= p <= bp and (p < bp or a < s):
            bp, s = p, a
        p = n - p
        if lo <= p <= bp and (p < bp or b < s):
            bp, s = p, b
    ell = bp
    j = _apex_masks(adj, n, s, ell)
    trace.append(TraceStep(depth, "split", n, (s, (s + ell) % n), (s + j - 1) % n))
    while ell > k + 4:
        t = ell - (k + 4)
        if t + 2 <= j <= k + 4:
            break
        if j >= k + 5:
            ell = j - 1
            case = "refine-left"
        else:
            s = (s + j - 1) % n
            ell = ell + 1 - j
            case = "refine-right"
        j = _apex_masks(adj, n, s, ell)
        trace.append(TraceStep(depth, case, n, (s, (s + ell) % n), (s + j - 1) % n))

    st = (s + ell) % n
    xj = (s + j - 1) % n
    length = n - ell + 1
    last = length - 1
    contract = ell == k + 4
    trace.append(TraceStep(depth, "contract" if contract else "drop", n, (s, st), xj))
    if not contract and length <= k + 3:
        return {xj}
    m = last if contract else length
    sub = set()
    for a, b in diags:
        la = (a - st) % n
        lb = (b - st) % n
        if la >= length or lb >= length:
            continue
        if contract:
            if la == last:
                la = 0
            elif lb == last:
                lb = 0
        if la > lb:
            la, lb = lb, la
        if lb - la >= 2 and not (la == 0 and lb == m - 1):
            sub.add((la, lb))
    child = _order(m, sub, k, depth + 1, trace)
    out = {(st + c) % n for c in child}
    if contract and 0 in child:
        return out | {s}
    return out | {xj}


def _apex_masks(adj, n: int, s: int, ell: int) -> int:
    common = adj[s] & adj[(s + ell) % n]
    while common:
        low = common & -common
        off = (low.bit_length() - 1 - s) % n
        if 0 < off < ell:
            return off + 1
        common ^= low
    raise AssertionError("cut has no apex on its short side")


# -- order plus n_2 bound --------------------------------------------------------


def _plus(G: Mop, k: int, depth: int, trace: list) -> set:
    n = G.n
    if n <= 2 * k + 7:
        S = _small(G, k)
        trace.append(TraceStep(depth, "small", n))
        return S
    s, ell, j = _split_and_refine(G, k, depth, trace)
    X = lambda m: (s + m - 1) % n  # noqa: E731
    if ell == k + 4:
        return _plus_tight(G, k, s, j, depth, trace)
    trace.append(TraceStep(depth, "drop", n, (X(1), X(ell + 1)), X(j)))
    g2, par2 = arc_submop(G, X(ell + 1), n - ell + 1)
    if g2.n <= k + 3:
        return {X(j)}
    return _lift(par2, _plus(g2, k, depth + 1, trace)) | {X(j)}


def _plus_tight(G: Mop, k: int, s: int, j: int, depth: int, trace: list) -> set:
    """The ``l = k+4`` case: branch on the degrees of the cut's ends in the far side."""
    n = G.n
    X = lambda m: (s + m - 1) % n  # noqa: E731
    cut = (X(1), X(k + 5))
    # far side: x_{k+5} -> 0, x_{k+6} -> 1, ..., x_n -> m-2, x_1 -> m-1
    g2, par2 = arc_submop(G, X(k + 5), n - k - 3)
    m = g2.n
    if g2.degrees[0] + g2.degrees[m - 1] == 5:
        trace.append(TraceStep(depth, "degsum5", n, cut, X(j)))
        gp, parp = arc_submop(G, X(k + 6), n - k - 5)
        return _lift(parp, _plus(gp, k, depth + 1, trace)) | {X(j)}

    gc, vm = contract_hamiltonian_edge(g2, (m - 1, 0))
    fresh = [
        par2[vm.parent[c]]
        for c in range(1, gc.n)
        if gc.degrees[c] == 2 and G.degrees[par2[vm.parent[c]]] != 2
    ]
    if not fresh:
        trace.append(TraceStep(depth, "contract", n, cut, X(j)))
        sub = _plus(gc, k, depth + 1, trace)
        out = {par2[vm.parent[c]] for c in sub if c != 0}
        if 0 in sub:
            return out | {X(1), X(k + 5)}
        return out | {X(j)}

    if X(k + 6) in fresh:
        return _plus_resplit(G, k, s, j, depth, trace)
    if fresh != [X(n)]:
        raise VerificationFailure(f"unexpected new degree-2 vertices {fresh} after contraction")
    # mirror x_m <-> x_{k+6-m}: the cut and its near side map onto themselves
    center = (2 * s + k + 4) % n
    mirrored = reflect(G, center)
    sub = _plus_resplit(mirrored, k, s, k + 6 - j, depth, trace)
    return {(center - v) % n for v in sub}


def _plus_resplit(G: Mop, k: int, s: int, j: int, depth: int, trace: list) -> set:
    """``x_{k+6}`` became degree 2: split off ``x_1 x_{k+7}`` instead and guard with ``x*``."""
    n = G.n
    X = lambda m: (s + m - 1) % n  # noqa: E731
    if not G.has_edge(X(1), X(k + 7)):
        raise VerificationFailure("expected x_1 x_{k+7} to be an edge")
    guard = X(k + 5) if j == 2 else X(1)
    trace.append(TraceStep(depth, "resplit", n, (X(1), X(k + 7)), guard))
    h2, par = arc_submop(G, X(k + 7), n - k - 5)
    return _lift(par, _plus(h2, k, depth + 1, trace)) | {guard}


# -- public algorithms -------------------------------------------------------------


def _finish(G, S, k, name, bound, trace, certified, dominate=False) -> BoundedSolution:
    S = tuple(sorted(S))
    if dominate:
        ok = is_dominating(G, S)
    else:
        ok = residual_max_degree(G, S) <= k
    if not ok:
        raise VerificationFailure(f"{name.value} produced a set that fails verification: {S}")
    sol = BoundedSolution(S, k, name, bound, tuple(trace), certified)
    if certified and sol.size > sol.floor_bound:
        raise VerificationFailure(
            f"{name.value} returned {sol.size} > floor({bound}) = {sol.floor_bound}"
        )
    return sol


def _check_k(k):
    if not isinstance(k, int) or k < 0:
        raise KTooSmall(f"k must be a non-negative integer, got {k!r}")


def isolate_order(G: Mop, k: int) -> BoundedSolution:
    """Isolating set of size at most ``floor(n/(k+4))`` (guaranteed when ``n >= k+4``)."""
    _check_k(k)
    trace = []
    S = _order(G.n, G.diagonals, k, 0, trace)
    return _finish(G, S, k, Bound.ORDER, Fraction(G.n, k + 4), trace, G.n >= k + 4)


def isolate_order_plus_n2(G: Mop, k: int) -> BoundedSolution:
    """Isolating set of size at most ``floor((n+n_2)/(k+5))`` (guaranteed when ``n >= k+3``)."""
    _check_k(k)
    n2 = len(degree2_vertices(G))
    trace = []
    S = _plus(G, k, 0, trace)
    return _finish(
        G, S, k, Bound.ORDER_PLUS_N2, Fraction(G.n + n2, k + 5), trace, G.n >= k + 3
    )


def isolate_order_minus_n2(G: Mop, k: int) -> BoundedSolution:
    """Isolating set of size at most ``floor((n-n_2)/(k+2))`` for ``k >= 1``, ``n >= 2k+3``.

    Deletes all degree-2 vertices, then takes a ``(k-2)``-isolating set of what
    is left (a dominating set when ``k = 1``); each remaining vertex has at most
    two deleted neighbors, which the slack of 2 absorbs.
    """
    if not isinstance(k, int) or k < 1:
        raise KTooSmall(f"the (n-n_2)/(k+2) bound needs k >= 1, got {k!r}")
    if G.n < 2 * k + 3:
        raise TooSmall(f"the (n-n_2)/(k+2) bound needs n >= 2k+3 = {2 * k + 3}, got {G.n}")
    n2 = len(degree2_vertices(G))
    gp, vm = delete_all_degree2(G)
    trace = [TraceStep(0, "delete-V2", G.n)]
    if k == 1:
        inner = dominate_third(gp)
    else:
        inner = isolate_order(gp, k - 2)
    trace.extend(TraceStep(s.depth + 1, s.case, s.n, s.cut, s.apex) for s in inner.trace)
    S = vm.lift(inner.set)
    return _finish(G, S, k, Bound.ORDER_MINUS_N2, Fraction(G.n - n2, k + 2), trace, True)


def applicable_bounds(G: Mop, k: int) -> dict:
    """The order bounds whose hypotheses hold for ``(G, k)``, keyed by name."""
    n = G.n
    n2 = len(degree2_vertices(G))
    out = {}
    if n >= k + 4:
        out[Bound.ORDER] = Fraction(n, k + 4)
    if n >= k + 3:
        out[Bound.ORDER_PLUS_N2] = Fraction(n + n2, k + 5)
    if k >= 1 and n >= 2 * k + 3:
        out[Bound.ORDER_MINUS_N2] = Fraction(n - n2, k + 2)
    return out


def isolate_best(G: Mop, k: int) -> BoundedSolution:
    """Run every applicable construction and keep the smallest set."""
    _check_k(k)
    runs = [isolate_order(G, k), isolate_order_plus_n2(G, k)]
    if k >= 1 and G.n >= 2 * k + 3:
        runs.append(isolate_order_minus_n2(G, k))
    best = min(runs, key=lambda sol: sol.size)
    bounds = applicable_bounds(G, k)
    if bounds:
        value, certified = min(bounds.values()), True
    else:
        value, certified = Fraction(G.n, k + 4), False
    head = TraceStep(0, f"best:{best.bound_name.value}", G.n)
    return _finish(G, best.set, k, Bound.BEST, value, (head,) + best.trace, certified)


def dominate_third(G: Mop) -> BoundedSolution:
    """Smallest color class of the face-respecting 3-coloring; at most ``floor(n/3)``."""
    colors = three_coloring(G)
    classes = [[v for v, c in enumerate(colors) if c == color] for color in range(3)]
    best = min(classes, key=len)
    trace = [TraceStep(0, "3-color", G.n)]
    return _finish(G, best, -1, Bound.DOM_THIRD, Fraction(G.n, 3), trace, True, dominate=True)


def dominate_half_minus(G: Mop) -> BoundedSolution:
    """Every second vertex along the cycle left after deleting degree-2 vertices.

    The alternation starts so that the one pair of consecutive unchosen
    vertices (present when the remaining cycle has odd length) carries no
    deleted ear. That is possible unless every remaining cycle edge carries an
    ear and the cycle is odd, as in the 3-sun; there the bound
    ``floor((n - n_2)/2)`` is false, one extra vertex is added and the result
    is returned uncertified. Needs ``n >= 4``.
    """
    if G.n < 4:
        raise TooSmall(f"dominate_half_minus needs n >= 4, got {G.n}")
    v2 = degree2_vertices(G)
    v2set = set(v2)
    kept = [v for v in range(G.n) if v not in v2set]
    m = len(kept)
    trace = [TraceStep(0, "delete-V2", G.n)]
    certified = True
    if m % 2:
        # ears sit on cycle edges of G - V2; an ear's neighbors are consecutive in ``kept``
        pos = {v: i for i, v in enumerate(kept)}
        eared = set()
        for x in v2:
            a, b = sorted(pos[u] for u in G.neighbors[x])
            eared.add(a if b == a + 1 else b)  # edge (kept[i], kept[i+1 mod m]) keyed by i
        free = [i for i in range(m) if i not in eared]
        if free:
            start = (free[0] + 1) % m
            kept = kept[start:] + kept[:start]
            D = kept[1::2]
        else:
            D = kept[1::2] + [kept[0]]
            certified = False
            trace.append(TraceStep(0, "all-edges-eared", G.n))
    else:
        D = kept[1::2]
    trace.append(TraceStep(1, "alternate", m))
    return _finish(
        G, D, -1, Bound.DOM_HALF, Fraction(G.n - len(v2), 2), trace, certified, dominate=True
    )
