from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodlab.arith import (
    divisors,
    iroot,
    least_rotation_period,
    min_rotation,
    mobius,
    semigroup_tail_start,
    word_least_period,
)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    with pytest.raises(ValueError):
        divisors(0)


def test_mobius_values():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=9))
@settings(max_examples=80, deadline=None)
def test_iroot_floor(x, k):
    r = iroot(x, k)
    assert r**k <= x < (r + 1) ** k


@given(st.text(alphabet="ab", min_size=1, max_size=12))
@settings(max_examples=100, deadline=None)
def test_word_period_divides_and_repeats(w):
    p = word_least_period(w)
    assert len(w) % p == 0
    assert w == w[:p] * (len(w) // p)


@given(st.text(alphabet="ab", min_size=1, max_size=10), st.integers(min_value=0, max_value=9))
@settings(max_examples=100, deadline=None)
def test_min_rotation_invariant(w, shift):
    rotated = w[shift % len(w) :] + w[: shift % len(w)]
    assert min_rotation(w) == min_rotation(rotated)
    assert least_rotation_period(w) == least_rotation_period(rotated)


@given(st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_semigroup_tail_certified(gens):
    gens = sorted(gens)
    t = semigroup_tail_start(gens)
    g = 0
    for x in gens:
        g = gcd(g, x)
    assert t % g == 0
    # everything from t on (multiples of the gcd) really is reachable
    limit = t + 4 * max(gens)
    reach = {0}
    frontier = [0]
    while frontier:
        s = frontier.pop()
        for x in gens:
            if s + x <= limit and s + x not in reach:
                reach.add(s + x)
                frontier.append(s + x)
    for value in range(t, limit + 1, g):
        assert value in reach
