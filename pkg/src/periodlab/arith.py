"""Small exact-arithmetic helpers: divisors, Möbius, integer roots, coin-problem DP.

Everything here works on plain Python integers and is pure; nothing holds
state between calls.
"""

from __future__ import annotations

from math import gcd, isqrt

MOBIUS_CAP = 10**6


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    """Möbius function by trial division. Capped at MOBIUS_CAP."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MOBIUS_CAP:
        raise ValueError(f"mobius horizon cap exceeded: {n} > {MOBIUS_CAP}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def iroot(x: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer (Newton on ints)."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x == 0:
        return 0
    if k == 1:
        return x
    if k == 2:
        return isqrt(x)
    r = 1 << -(-x.bit_length() // k)  # overestimate
    while True:
        t = ((k - 1) * r + x // r ** (k - 1)) // k
        if t >= r:
            break
        r = t
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def word_least_period(w) -> int:
    """Least p such that w is a repetition of its length-p prefix (p | len(w))."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    for p in divisors(n):
        if p == n:
            break
        if all(w[i] == w[i % p] for i in range(n)):
            return p
    return n


def least_rotation_period(w) -> int:
    """Least period of the bi-infinite repetition of w.

    Equals len(w) exactly when w is primitive (not a proper power).
    """
    return word_least_period(w)


def min_rotation(w):
    """Lexicographically least rotation of a sequence (Booth-style, simple form)."""
    n = len(w)
    doubled = tuple(w) + tuple(w)
    best = 0
    for i in range(1, n):
        if doubled[i : i + n] < doubled[best : best + n]:
            best = i
    return doubled[best : best + n]


def reachable_sums(generators, limit: int) -> set[int]:
    """All sums of multisets over ``generators`` that are <= limit (0 included)."""
    gens = sorted({g for g in generators if 1 <= g <= limit})
    reach = bytearray(limit + 1)
    reach[0] = 1
    for g in gens:
        for s in range(g, limit + 1):
            if reach[s - g]:
                reach[s] = 1
    return {s for s in range(limit + 1) if reach[s]}


def semigroup_tail_start(generators) -> int:
    """Certified t such that every multiple of g = gcd(generators) with value >= t
    is a nonnegative combination of the generators.

    Determined by coin-problem DP: once g-multiples form a run of length
    min(generators)/g, all later multiples are reachable.
    """
    gens = sorted(set(generators))
    if not gens or gens[0] < 1:
        raise ValueError("generators must be positive")
    g = 0
    for x in gens:
        g = gcd(g, x)
    reduced = [x // g for x in gens]
    a0 = reduced[0]
    if a0 == 1:
        return g
    bound = a0 * reduced[-1] + a0  # past the Frobenius number of the reduced set
    reach = bytearray(bound + 1)
    reach[0] = 1
    for x in reduced:
        for s in range(x, bound + 1):
            if reach[s - x]:
                reach[s] = 1
    run = 0
    for s in range(bound + 1):
        run = run + 1 if reach[s] else 0
        if run == a0:
            return g * (s - a0 + 1)
    raise AssertionError("coin DP bound too small")  # unreachable by Chicken McNugget
