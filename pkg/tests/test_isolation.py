from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopguard.errors import KTooSmall, TooLarge, TooSmall
from mopguard.families import fan, family_A, family_H, family_M, family_R, family_S, family_T, random_mop
from mopguard.isolation import (
    Bound,
    applicable_bounds,
    dominate_half_minus,
    dominate_third,
    isolate_best,
    isolate_order,
    isolate_order_minus_n2,
    isolate_order_plus_n2,
    isolate_small,
)
from mopguard.mop import Mop, degree2_vertices, is_dominating, is_isolating
from mopguard.oracle import exact_domination_number, exact_isolation_number

from .conftest import corpus_seed

TRIANGLE = Mop(3, ())
SUN3 = Mop(6, ((0, 2), (0, 4), (2, 4)))


# -- small case ----------------------------------------------------------------------


def test_isolate_small_examples():
    assert len(isolate_small(TRIANGLE, 0)) == 1
    assert isolate_small(fan(5), 2) == (0,)
    assert isolate_small(fan(4), 3) == ()
    with pytest.raises(TooLarge):
        isolate_small(fan(12), 2)


@given(st.integers(0, 4), st.data())
def test_isolate_small_single_vertex(k, data):
    n = data.draw(st.integers(3, 2 * k + 7))
    G = random_mop(n, data.draw(st.integers(0, 2**40)))
    S = isolate_small(G, k)
    assert len(S) <= 1 and is_isolating(G, S, k)[0]
    if n <= k + 1:
        assert S == ()


# -- the three order bounds -----------------------------------------------------------


def test_isolate_order_examples():
    sol = isolate_order(family_T(2, 2), 2)
    assert sol.size == 2 and sol.bound_name is Bound.ORDER and sol.bound_value == 2
    assert isolate_order(family_A(2, 1), 2).size == 14
    assert isolate_order(fan(7), 3).size == 1


def test_isolate_order_plus_examples():
    assert isolate_order_plus_n2(family_T(2, 2), 2).size == 2
    sol = isolate_order_plus_n2(family_H(2, 3), 2)
    assert sol.size == 6 and sol.bound_value == Fraction(45, 7)
    assert isolate_order_plus_n2(TRIANGLE, 0).size <= 1


def test_isolate_order_minus_examples():
    assert isolate_order_minus_n2(family_S(2, 1), 2).size == 1
    assert isolate_order_minus_n2(family_S(2, 2), 2).size == 2
    assert isolate_order_minus_n2(fan(7), 2).size == 1
    with pytest.raises(KTooSmall):
        isolate_order_minus_n2(fan(7), 0)
    with pytest.raises(TooSmall):
        isolate_order_minus_n2(fan(6), 2)


def test_negative_k_is_rejected():
    for algo in (isolate_order, isolate_order_plus_n2, isolate_best):
        with pytest.raises(KTooSmall):
            algo(fan(6), -1)


def test_best_picks_the_regime_bound():
    A = isolate_best(family_A(2, 1), 2)
    assert A.size == 14 and A.bound_value == Fraction(84, 6)
    H = isolate_best(family_H(2, 3), 2)
    assert H.size == 6 and H.bound_value == Fraction(45, 7)
    S = isolate_best(family_S(2, 2), 2)
    assert S.size == 2 and S.bound_value == Fraction(14 - 6, 4)
    assert S.trace[0].case.startswith("best:")


def test_uncertified_below_hypotheses():
    # n < k+3: no bound applies, the output is still a verified isolating set
    sol = isolate_order_plus_n2(fan(4), 3)
    assert not sol.certified and is_isolating(fan(4), sol.set, 3)[0]
    assert applicable_bounds(fan(4), 3) == {}


def test_trace_is_line_oriented():
    sol = isolate_order(family_T(2, 2), 2)
    lines = sol.trace_log().splitlines()
    assert len(lines) == len(sol.trace) >= 2
    depth, case, n, cut, apex = lines[0].split("\t")
    assert depth == "0" and n == "n=12" and cut.startswith("cut=")
    assert sol.trace[-1].case == "small"


ALGOS = [
    (isolate_order, lambda n, n2, k: n >= k + 4, lambda n, n2, k: n // (k + 4)),
    (isolate_order_plus_n2, lambda n, n2, k: n >= k + 3, lambda n, n2, k: (n + n2) // (k + 5)),
    (isolate_order_minus_n2, lambda n, n2, k: k >= 1 and n >= 2 * k + 3, lambda n, n2, k: (n - n2) // (k + 2)),
]


@settings(max_examples=300)
@given(st.integers(3, 60), st.integers(0, 2**40), st.integers(0, 6))
def test_algorithms_respect_their_bounds(n, seed, k):
    G = random_mop(n, seed)
    n2 = len(degree2_vertices(G))
    for algo, applies, bound in ALGOS:
        if not applies(n, n2, k):
            continue
        sol = algo(G, k)
        assert sol.certified
        assert is_isolating(G, sol.set, k)[0]
        assert sol.size <= bound(n, n2, k)
    best = isolate_best(G, k)
    assert is_isolating(G, best.set, k)[0]


@settings(max_examples=100)
@given(st.integers(4, 60), st.integers(0, 2**40), st.integers(0, 59))
def test_bounds_hold_under_rotation(n, seed, shift):
    from mopguard.mop import rotate

    G, _ = rotate(random_mop(n, seed), shift % n)
    for k in range(n - 3):
        if k > 4:
            break
        sol = isolate_order(G, k)
        assert is_isolating(G, sol.set, k)[0] and sol.size <= n // (k + 4)


@pytest.mark.parametrize(
    "G, k",
    [
        (family_T(2, 2), 2),
        (family_T(0, 3), 0),
        (family_T(1, 2), 1),
        (family_S(2, 1), 2),
        (family_S(2, 2), 2),
        (family_S(1, 3), 1),
        (family_R(3), 3),
    ],
    ids=["T22", "T03", "T12", "S21", "S22", "S13", "R3"],
)
def test_best_matches_oracle_on_families(G, k):
    assert isolate_best(G, k).size == exact_isolation_number(G, k).value


# -- domination --------------------------------------------------------------------


def test_dominate_third_examples():
    assert dominate_third(TRIANGLE).size == 1
    sol = dominate_third(fan(6))
    assert sol.set == (0,) and is_dominating(fan(6), sol.set)
    assert dominate_third(family_M(3)).size <= 3


def test_dominate_half_examples():
    assert dominate_half_minus(family_M(3)).size == 3
    assert dominate_half_minus(family_M(2)).size == 2
    sol = dominate_half_minus(fan(6))
    assert sol.size == 2 and is_dominating(fan(6), sol.set)
    with pytest.raises(TooSmall):
        dominate_half_minus(TRIANGLE)


def test_half_bound_fails_on_the_sun():
    # the 3-sun: a triangle with an ear on each side; no vertex dominates it
    assert degree2_vertices(SUN3) == (1, 3, 5)
    assert exact_domination_number(SUN3).value == 2 > (6 - 3) // 2
    sol = dominate_half_minus(SUN3)
    assert not sol.certified and sol.size == 2 and is_dominating(SUN3, sol.set)


def _all_edges_eared(G):
    v2 = set(degree2_vertices(G))
    m = G.n - len(v2)
    return m % 2 == 1 and len(v2) == m


def test_half_bound_counterexamples_are_exactly_the_all_eared_odd_cycles(random_corpus):
    """Every miss of floor((n-n2)/2) in the corpus is a MOP whose domination number exceeds it."""
    misses = 0
    for n in range(4, 41):
        for G in random_corpus[n]:
            sol = dominate_half_minus(G)
            assert is_dominating(G, sol.set)
            target = (n - len(degree2_vertices(G))) // 2
            assert sol.certified == (not _all_edges_eared(G))
            if sol.certified:
                assert sol.size == target
                continue
            misses += 1
            assert sol.size == target + 1
            if n <= 24:
                assert exact_domination_number(G).value == target + 1
    assert misses > 0


@pytest.mark.parametrize("m", [3, 5, 7])
def test_all_eared_odd_cycles_need_half_rounded_up(m):
    # triangulate an m-gon as a fan, then put an ear on every side
    core = fan(m)
    diags = [(2 * a, 2 * b) for a, b in core.diagonals]
    diags += [(2 * i, 2 * i + 2) for i in range(m - 1)] + [(0, 2 * m - 2)]
    G = Mop(2 * m, tuple(diags))
    assert exact_domination_number(G).value == (m + 1) // 2
    assert dominate_half_minus(G).size == (m + 1) // 2


@settings(max_examples=200)
@given(st.integers(3, 60), st.integers(0, 2**40))
def test_third_domination_bound(n, seed):
    G = random_mop(n, seed)
    sol = dominate_third(G)
    assert is_dominating(G, sol.set) and sol.size <= n // 3


def test_corpus_seed_layout():
    assert corpus_seed(5, 3) == (5 << 20) | 3
