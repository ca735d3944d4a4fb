"""Rational zeta functions of edge shifts and recurrence extraction.

All arithmetic here is exact: integer polynomials, fraction-free Bareiss
elimination for determinants, and Fraction power series. No floating point
anywhere in this module, since zero-testing of sequence terms must be exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import lcm
from .graph_core import DirectedMultigraph
from .sft_counting import PeriodSetDescriptor


class NoPatternFit(Exception):
    """The observed support admits no eventually-periodic fit within bounds."""


# -- integer polynomials ------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, coeffs) -> "IntPolynomial":
        c = list(int(x) for x in coeffs)
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def at0(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial.make(
            [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial.make(
            [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial.make(out)

    def scale(self, k: int):
        return IntPolynomial.make([k * c for c in self.coeffs])

    def shift(self, k: int):
        """Multiply by t**k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self):
        return IntPolynomial.make(
            [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g or 1


def poly_divexact(num: IntPolynomial, den: IntPolynomial) -> IntPolynomial:
    """Exact polynomial quotient; raises if den does not divide num."""
    if den.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero:
        return IntPolynomial.zero()
    run = list(num.coeffs)
    d = list(den.coeffs)
    dn = len(d) - 1
    lead = d[-1]
    qn = len(run) - 1 - dn
    if qn < 0:
        raise ValueError("inexact polynomial division")
    q = [0] * (qn + 1)
    for i in range(qn, -1, -1):
        c = run[i + dn]
        if c % lead:
            raise ValueError("inexact polynomial division")
        q[i] = c // lead
        if q[i]:
            for j, dj in enumerate(d):
                run[i + j] -= q[i] * dj
    if any(run):
        raise ValueError("inexact polynomial division")
    return IntPolynomial.make(q)


def _qpoly_gcd(a, b):
    """Monic gcd over Q[t]; inputs/outputs are lists of Fractions."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] -= f * c
            a = trim(a)
        a, b = b, a
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


# -- rational functions -------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Reduced integer-cleared rational function; denominator nonzero at 0."""

    num: IntPolynomial
    den: IntPolynomial

    @classmethod
    def make(cls, num, den) -> "RationalFunction":
        num = num if isinstance(num, IntPolynomial) else IntPolynomial.make(num)
        den = den if isinstance(den, IntPolynomial) else IntPolynomial.make(den)
        if den.is_zero or den.at0() == 0:
            raise ValueError("denominator must be nonzero at 0")
        if num.is_zero:
            return cls(IntPolynomial.zero(), IntPolynomial.one())
        g = _qpoly_gcd(list(num.coeffs), list(den.coeffs))
        if len(g) > 1:
            den_l = lcm_of_denoms(g)
            gint = IntPolynomial.make([int(c * den_l) for c in g])
            num = poly_divexact(num.scale(gint.content()), gint)
            den = poly_divexact(den.scale(gint.content()), gint)
        c = gcd(num.content(), den.content())
        num = poly_divexact(num, IntPolynomial.make([c]))
        den = poly_divexact(den, IntPolynomial.make([c]))
        if den.at0() < 0:
            num, den = -num, -den
        return cls(num, den)

    def series(self, N: int) -> list:
        """First N coefficients (Fractions) of the power-series expansion."""
        b0 = Fraction(self.den.at0())
        out = []
        for n in range(N):
            acc = Fraction(self.num.coeff(n))
            for j in range(1, n + 1):
                bj = self.den.coeff(j)
                if bj:
                    acc -= bj * out[n - j]
            out.append(acc / b0)
        return out

    def at0(self) -> Fraction:
        return Fraction(self.num.at0(), self.den.at0())

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls.make(data["num"], data["den"])


def lcm_of_denoms(fracs) -> int:
    out = 1
    for f in fracs:
        out = lcm(out, Fraction(f).denominator)
    return out


def det_poly_matrix(m: list) -> IntPolynomial:
    """Determinant of a square IntPolynomial matrix by fraction-free
    (Bareiss) elimination; all divisions are exact."""
    n = len(m)
    if n == 0:
        return IntPolynomial.one()
    a = [row[:] for row in m]
    sign = 1
    prev = IntPolynomial.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            pivot = next(
                (i for i in range(k + 1, n) if not a[i][k].is_zero), None
            )
            if pivot is None:
                return IntPolynomial.zero()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = poly_divexact(
                    a[k][k] * a[i][j] - a[i][k] * a[k][j], prev
                )
            a[i][k] = IntPolynomial.zero()
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def zeta_of_graph(g: DirectedMultigraph) -> RationalFunction:
    """Zeta function of the edge shift of ``g``: 1 / det(I - tA), exactly."""
    n = g.n
    adj = g.adjacency
    m = [
        [
            IntPolynomial.make([1 if i == j else 0, -adj[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return RationalFunction.make(IntPolynomial.one(), det_poly_matrix(m))


def log_derivative_series(z: RationalFunction, N: int) -> list:
    """Coefficients p_1..p_N of z'/z, exact Fractions.

    Requires z(0) = 1 (the zeta normalization); for zeta functions of graphs
    the values are the integer closed-walk counts.
    """
    if z.at0() != 1:
        raise ValueError("zeta normalization requires z(0) = 1")
    f = _log_derivative(z)
    return f.series(N)


def _log_derivative(z: RationalFunction) -> RationalFunction:
    num = z.num.derivative() * z.den - z.den.derivative() * z.num
    return RationalFunction.make(num, z.num * z.den)


def p_sequence_rational(z: RationalFunction) -> RationalFunction:
    """t * z'/z: the generating function whose t^n coefficient is p_n."""
    f = _log_derivative(z)
    return RationalFunction.make(f.num.shift(1), f.den)


# -- linear recurrences -------------------------------------------------------


@dataclass(frozen=True)
class LinearRecurrence:
    """a_n = -(b_1 a_{n-1} + ... + b_m a_{n-m}) for n >= valid_from,
    with the stored initial terms a_0, a_1, ...

    The order is minimal for the represented sequence when built from a
    reduced rational function.
    """

    order: int
    coeffs: tuple  # b_1..b_m as Fractions
    initial: tuple  # a_0..a_s as Fractions
    valid_from: int

    def terms(self, N: int) -> list:
        """a_0..a_N as exact Fractions."""
        out = list(self.initial[: N + 1])
        n = len(out)
        while n <= N:
            acc = Fraction(0)
            for i, b in enumerate(self.coeffs, start=1):
                if n - i >= 0:
                    acc -= b * out[n - i]
            out.append(acc)
            n += 1
        return out

    def reproduces_initial(self) -> bool:
        for n in range(max(self.valid_from, 1), len(self.initial)):
            acc = Fraction(0)
            for i, b in enumerate(self.coeffs, start=1):
                if n - i >= 0:
                    acc -= b * self.initial[n - i]
            if acc != self.initial[n]:
                return False
        return True


def recurrence_from_rational(f: RationalFunction) -> LinearRecurrence:
    """Read the recurrence off the denominator of a reduced rational
    generating function: order = deg(den), coefficients b_i = den_i / den_0;
    forward iteration reproduces the series beyond the numerator degree."""
    b0 = f.den.at0()
    m = 0 if f.den.is_zero else f.den.degree
    coeffs = tuple(Fraction(f.den.coeff(i), b0) for i in range(1, m + 1))
    num_deg = -1 if f.num.is_zero else f.num.degree
    valid_from = num_deg + 1
    keep = max(valid_from, m, 1)
    initial = tuple(f.series(keep))
    return LinearRecurrence(m, coeffs, initial, valid_from)


# -- empirical zero-set fitting ----------------------------------------------


@dataclass(frozen=True)
class EmpiricalZeroPattern:
    """Fitted eventually-periodic support of a recurrent sequence over
    positions n = 1, 2, ... Never certified: this is an observation, and the
    general zero-set problem is out of reach.

    Residue classes (mod ``period``) hold from ``threshold`` on; below it
    membership is the explicit ``low`` set.
    """

    period: int
    threshold: int
    residues: frozenset
    low: frozenset
    horizon: int

    certified = False

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        if n < self.threshold:
            return n in self.low
        return n % self.period in self.residues

    def members_upto(self, N: int) -> list:
        return [n for n in range(1, N + 1) if self.contains(n)]

    def is_monotone_upto(self, H: int) -> bool:
        """n in S implies k*n in S, verified on [1, H]."""
        for n in range(1, H + 1):
            if self.contains(n):
                for kn in range(2 * n, H + 1, n):
                    if not self.contains(kn):
                        return False
        return True

    @property
    def descriptor(self):
        """Uncertified PeriodSetDescriptor, when the pattern is closed under
        index multiplication (the reduction to d*N-form needs it); else None.
        """
        r, K = self.period, self.threshold
        check_h = max(4 * (K + r), 4 * self.horizon)
        if not self.is_monotone_upto(check_h):
            return None
        comps = []
        for c in sorted(self.residues):
            d = r if c == 0 else gcd(c, r)
            tau = max(1, -(-K // d))
            comps.append((d, tau, ()))
        candidate = PeriodSetDescriptor.make((), comps, certified=False)
        finite = {
            n
            for n in range(1, K)
            if self.contains(n) and not candidate.contains(n)
        }
        candidate = PeriodSetDescriptor.make(finite, comps, certified=False)
        bound = max(candidate.structural_bound(), K) + lcm(
            candidate.tail_lcm(), r
        )
        for n in range(1, bound + 1):
            if candidate.contains(n) != self.contains(n):
                return None
        return candidate

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "threshold": self.threshold,
            "residues": sorted(self.residues),
            "low": sorted(self.low),
            "horizon": self.horizon,
            "certified": False,
        }


def empirical_zero_set(rec: LinearRecurrence, N: int) -> EmpiricalZeroPattern:
    """Fit the smallest eventually-periodic pattern (period r <= N/4) to the
    support of a_1..a_N; the complement of the fitted set is the empirical
    zero set. Raises :class:`NoPatternFit` when nothing fits — the fit never
    silently extrapolates past an inconsistency.
    """
    if N < 4 * max(rec.order, 1):
        raise ValueError("horizon too small: need N >= 4 * order")
    seq = rec.terms(N)
    obs = [False] * (N + 1)
    for n in range(1, N + 1):
        obs[n] = seq[n] != 0
    for r in range(1, N // 4 + 1):
        for K in range(1, N // 2 + 1):
            if all(obs[n] == obs[n + r] for n in range(K, N - r + 1)):
                residues = frozenset(
                    n % r for n in range(K, min(K + r, N + 1)) if obs[n]
                )
                low = frozenset(n for n in range(1, K) if obs[n])
                return EmpiricalZeroPattern(r, K, residues, low, N)
    raise NoPatternFit(f"no eventually-periodic support with period <= {N // 4}")
