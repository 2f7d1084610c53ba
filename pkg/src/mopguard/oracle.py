"""Exact isolation and domination numbers by size-ordered search.

Domination is treated as isolation with ``k = -1``: every vertex left outside
``N[S]`` then violates the degree condition. The search deepens the set size
``s = 0, 1, 2, ...`` and branches on the first violating vertex ``v``. Any
valid set must contain a vertex of ``N[v]``, or (for ``k >= 0``) a vertex
whose closed neighborhood removes a residual neighbor of ``v``. So only those
candidates are tried, which never changes the minimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import KTooSmall, LimitExceeded
from .mop import Mop

DEFAULT_LIMIT = 24


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: tuple
    explored: int


def _first_violator(adj, residual: int, k: int):
    r = residual
    while r:
        low = r & -r
        v = low.bit_length() - 1
        if (adj[v] & residual).bit_count() > k:
            return v
        r ^= low
    return None


def _solve(G: Mop, k: int, limit: int) -> ExactResult:
    if G.n > limit:
        raise LimitExceeded(f"exact search limited to n <= {limit}, got n={G.n}")
    n = G.n
    adj = G.adj_masks
    closed = [adj[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1
    explored = 0

    def dfs(covered: int, chosen: list, budget: int):
        nonlocal explored
        explored += 1
        residual = full & ~covered
        v = _first_violator(adj, residual, k)
        if v is None:
            return list(chosen)
        if budget == 0:
            return None
        cand = closed[v]
        if k >= 0:
            nb = adj[v] & residual
            while nb:
                low = nb & -nb
                cand |= closed[low.bit_length() - 1]
                nb ^= low
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if u in chosen:
                continue
            chosen.append(u)
            found = dfs(covered | closed[u], chosen, budget - 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    for size in range(n + 1):
        found = dfs(0, [], size)
        if found is not None:
            return ExactResult(size, tuple(sorted(found)), explored)
    raise AssertionError("the full vertex set always qualifies")


def exact_isolation_number(G: Mop, k: int, limit: int = DEFAULT_LIMIT) -> ExactResult:
    """Smallest ``S`` with ``Δ(G - N[S]) <= k``."""
    if not isinstance(k, int) or k < 0:
        raise KTooSmall(f"k must be a non-negative integer, got {k!r}")
    return _solve(G, k, limit)


def exact_domination_number(G: Mop, limit: int = DEFAULT_LIMIT) -> ExactResult:
    return _solve(G, -1, limit)


def reference_number(G: Mop, k: int) -> ExactResult:
    """Unpruned search over all subsets by size; ``k = -1`` means domination."""
    n = G.n
    adj = G.adj_masks
    full = (1 << n) - 1
    explored = 0
    for size in range(n + 1):
        for S in combinations(range(n), size):
            explored += 1
            covered = 0
            for v in S:
                covered |= adj[v] | (1 << v)
            if _first_violator(adj, full & ~covered, k) is None:
                return ExactResult(size, S, explored)
    raise AssertionError("the full vertex set always qualifies")
