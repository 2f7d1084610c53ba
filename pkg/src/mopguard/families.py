"""Deterministic generators for the extremal MOP families and a uniform random MOP.

Every family is assembled from small blocks glued along one boundary edge
each. The glued blocks are placed around the outer cycle in order and the
polygon spanned by the attachment vertices is triangulated as a fan from the
second attachment vertex of block 1 (``x^1_1`` in the usual labeling).

Random MOPs are Catalan-uniform and reproducible from a 64-bit seed: a
SplitMix64 stream drives a Fisher-Yates shuffle of ``n-2`` internal and
``n-1`` leaf tokens, the cycle lemma picks the unique rotation that is a valid
preorder of a binary tree, and that tree is read off as a triangulation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BadParams, TooSmall
from .mop import Mop

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64. ``bounded(u)`` is ``next() % u``.

    Pseudocode (all arithmetic mod 2**64)::

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bounded(self, u: int) -> int:
        return self.next() % u


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> Mop:
        try:
            gen = GENERATORS[self.family.upper()]
        except KeyError:
            raise BadParams(f"unknown family {self.family!r}") from None
        try:
            return gen(**self.params)
        except TypeError as exc:
            raise BadParams(f"bad parameters for family {self.family}: {exc}") from None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParams(msg)


def _is_int(*xs) -> bool:
    return all(isinstance(x, int) and not isinstance(x, bool) for x in xs)


def fan(n: int) -> Mop:
    if not _is_int(n) or n < 3:
        raise TooSmall(f"fan needs n >= 3, got {n!r}")
    return Mop._trusted(n, [(0, i) for i in range(2, n - 1)])


class _Block:
    """A block MOP given by its boundary cycle (list of names) and its internal diagonals.

    The attachment edge is ``cycle[-1] -- cycle[0]``.
    """

    def __init__(self, cycle, diagonals):
        self.cycle = list(cycle)
        self.diagonals = list(diagonals)


def _fan_block(center, path, attach):
    """Fan with the given center and rim path, rotated so ``attach`` (a boundary edge) closes the cycle."""
    cycle = [center] + list(path)
    diags = [(center, p) for p in path[1:-1]]
    return _rotate_cycle(_Block(cycle, diags), attach)


def _rotate_cycle(block, attach):
    a, b = attach
    cyc = block.cycle
    m = len(cyc)
    ia, ib = cyc.index(a), cyc.index(b)
    if (ia + 1) % m == ib:
        start = ib  # ... a, b ... -> start at b, end at a
    elif (ib + 1) % m == ia:
        start = ia
    else:
        raise AssertionError(f"{attach} is not a boundary edge of the block")
    block.cycle = cyc[start:] + cyc[:start]
    return block


def _glue(blocks, anchor) -> tuple:
    """Join blocks around one cycle; return (Mop, name->label dict) rotated so ``anchor`` is 0."""
    order = []
    diags = []
    attach = []
    for blk in blocks:
        order.extend(blk.cycle)
        diags.extend(blk.diagonals)
        attach.append(blk.cycle[0])
        attach.append(blk.cycle[-1])
    if len(blocks) > 1:
        for blk in blocks:
            diags.append((blk.cycle[0], blk.cycle[-1]))
        # attachment polygon in cycle order; fan from block 1's second attachment vertex
        hub = 1
        m = len(attach)
        for i in range(m):
            if i not in (hub, (hub - 1) % m, (hub + 1) % m):
                diags.append((attach[hub], attach[i]))
    shift = order.index(anchor)
    order = order[shift:] + order[:shift]
    label = {name: i for i, name in enumerate(order)}
    pairs = [(label[a], label[b]) for a, b in diags]
    return Mop(len(order), pairs), label


def family_T(k: int, t: int) -> Mop:
    """``t`` fans ``F_{k+4}`` joined on ``x^i_1, x^i_2``; order ``(k+4)t``, ``n_2 = t``."""
    _require(_is_int(k, t) and k >= 0, f"family T needs integer k >= 0, got k={k!r}")
    _require(t >= 1, f"family T needs t >= 1, got t={t!r}")
    blocks = []
    for i in range(t):
        path = [("x", i, j) for j in range(1, k + 4)]
        blocks.append(_fan_block(("x", i, 0), path, (("x", i, 1), ("x", i, 2))))
    return _glue(blocks, ("x", 0, 0))[0]


def family_A(k: int, p: int) -> Mop:
    """``2t`` fans ``F_{k+4}``, ``t = p(k+5)``: half joined on ``x_1, x_2``, half on ``x_2, x_3``.

    Order ``2(k+4)t``. There are ``3t`` degree-2 vertices for ``k >= 1``; for
    ``k = 0`` the attachment vertex ``x_3`` is a rim end, leaving ``2t``.
    """
    _require(_is_int(k, p) and k >= 0, f"family A needs integer k >= 0, got k={k!r}")
    _require(p >= 1, f"family A needs p >= 1, got p={p!r}")
    t = p * (k + 5)
    blocks = []
    for i in range(2 * t):
        path = [("x", i, j) for j in range(1, k + 4)]
        lo = 1 if i < t else 2
        blocks.append(_fan_block(("x", i, 0), path, (("x", i, lo), ("x", i, lo + 1))))
    return _glue(blocks, ("x", 0, 0))[0]


def _h_block(k: int, i: int) -> _Block:
    x = lambda j: ("x", i, j)  # noqa: E731
    y = lambda j: ("y", i, j)  # noqa: E731
    cycle = (
        [x(j) for j in range(2, k + 5)]
        + [y(1), y(0)]
        + [y(j) for j in range(k + 3, 1, -1)]
        + [x(k + 5), x(0), x(1)]
    )
    diags = [(x(0), x(j)) for j in range(2, k + 5)]
    diags += [(y(0), y(j)) for j in range(2, k + 3)]
    diags += [(x(k + 4), x(k + 5)), (y(1), y(2)), (x(k + 4), y(2))]
    return _Block(cycle, diags)


def family_H(k: int, t: int) -> Mop:
    """Blocks ``F_{k+6}`` + ``F_{k+4}`` bridged by three edges, joined on ``x^i_1, x^i_2``.

    Requires ``(k+4)/2 <= t < k+5``. Order ``(2k+10)t``, ``n_2 = t``.
    """
    _require(_is_int(k, t) and k >= 0, f"family H needs integer k >= 0, got k={k!r}")
    _require(
        2 * t >= k + 4 and t < k + 5,
        f"family H needs (k+4)/2 <= t < k+5, got k={k}, t={t}",
    )
    blocks = [_h_block(k, i) for i in range(t)]
    return _glue(blocks, ("x", 0, 0))[0]


def _r_block(k: int, i: int) -> _Block:
    """Fan ``F_{k+2}`` (center x, rim p_1..p_{k+1}) with an ear on every boundary edge but ``u v``.

    ``u v = p_h p_{h+1}`` with ``h = max(1, (k+1) // 2)``: both ends have fan
    degree 3 when ``k >= 3``; for ``k <= 2`` no such edge exists and the rim
    edge ``p_1 p_2`` is used.
    """
    xc = ("x", i)
    p = lambda j: ("p", i, j)  # noqa: E731
    h = max(1, (k + 1) // 2)
    fan_cycle = [xc] + [p(j) for j in range(1, k + 2)]
    cycle = []
    diags = [(xc, p(j)) for j in range(2, k + 1)]
    ear = 0
    m = len(fan_cycle)
    for idx in range(m):
        a, b = fan_cycle[idx], fan_cycle[(idx + 1) % m]
        cycle.append(a)
        if (a, b) == (p(h), p(h + 1)):
            continue
        ear += 1
        cycle.append(("y", i, ear))
        diags.append((a, b))
    blk = _Block(cycle, diags)
    return _rotate_cycle(blk, (p(h), p(h + 1)))


def family_S(k: int, t: int) -> Mop:
    """``t`` copies of ``R_{2k+3}`` joined on ``u_i, v_i``; order ``(2k+3)t``, ``n_2 = (k+1)t``."""
    _require(_is_int(k, t) and k >= 1, f"family S needs integer k >= 1, got k={k!r}")
    _require(t >= 1, f"family S needs t >= 1, got t={t!r}")
    blocks = [_r_block(k, i) for i in range(t)]
    return _glue(blocks, ("x", 0))[0]


def family_R(k: int) -> Mop:
    """``R_{2k+3}``: the single-block case of family S."""
    _require(_is_int(k) and k >= 1, f"family R needs integer k >= 1, got k={k!r}")
    return family_S(k, 1)


def family_M(p: int) -> Mop:
    """``p`` triangles joined on ``x_{i,1}, x_{i,2}``; order ``3p``, degree-2 vertices ``x_{i,3}``."""
    _require(_is_int(p) and p >= 2, f"family M needs integer p >= 2, got p={p!r}")
    blocks = []
    for i in range(p):
        a, b, c = ("x", i, 1), ("x", i, 2), ("x", i, 3)
        blocks.append(_rotate_cycle(_Block([a, b, c], []), (a, b)))
    return _glue(blocks, ("x", 0, 1))[0]


def _luka_word(m: int, rng: SplitMix64) -> list:
    word = [1] * m + [0] * (m + 1)
    for i in range(len(word) - 1, 0, -1):
        j = rng.bounded(i + 1)
        word[i], word[j] = word[j], word[i]
    # cycle lemma: rotate to start right after the first minimum prefix sum
    best, arg, s = 1, 0, 0
    for i, tok in enumerate(word, 1):
        s += 1 if tok else -1
        if s < best:
            best, arg = s, i
    arg %= len(word)
    return word[arg:] + word[:arg]


def _word_to_diagonals(word: list, n: int) -> list:
    diags = []
    stack = []  # frames [start, mid]
    a = 0
    for tok in word:
        if tok:
            stack.append([a, None])
            continue
        b = a + 1
        while stack:
            top = stack[-1]
            if top[1] is None:
                top[1] = b
                break
            stack.pop()
            if not (top[0] == 0 and b == n - 1):
                diags.append((top[0], b))
        a = b
    return diags


def random_mop(n: int, seed: int) -> Mop:
    """Catalan-uniform random triangulation of the ``n``-gon, deterministic per seed."""
    if not _is_int(n) or n < 3:
        raise TooSmall(f"random MOP needs n >= 3, got {n!r}")
    rng = SplitMix64(seed)
    word = _luka_word(n - 2, rng)
    return Mop._trusted(n, _word_to_diagonals(word, n))


GENERATORS = {
    "FAN": fan,
    "T": family_T,
    "A": family_A,
    "H": family_H,
    "R": family_R,
    "S": family_S,
    "M": family_M,
    "RANDOM": random_mop,
}
