import random
from fractions import Fraction

import pytest

from periodlab.graph_core import trace_power
from periodlab.sft_counting import ps_descriptor
from periodlab.zeta import (
    IntPolynomial,
    LinearRecurrence,
    NoPatternFit,
    RationalFunction,
    empirical_zero_set,
    log_derivative_series,
    p_sequence_rational,
    poly_divexact,
    recurrence_from_rational,
    zeta_of_graph,
)

from conftest import build_graph, cycle_graph, random_graph


def exp_truncation(pn, N):
    """Degree-N truncation of exp(sum p_n t^n / n), exact Fractions."""
    e = [Fraction(1)] + [Fraction(0)] * N
    for k in range(1, N + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += pn[j - 1] * e[k - j]
        e[k] = acc / k
    return e


def graph_from_matrix(m):
    n = len(m)
    vertices = [f"v{i}" for i in range(n)]
    edges = []
    k = 0
    for i in range(n):
        for j in range(n):
            for _ in range(m[i][j]):
                edges.append((f"v{i}", f"v{j}", f"e{k}"))
                k += 1
    return build_graph(vertices, edges)


class TestPolynomials:
    def test_mul_and_divexact(self):
        a = IntPolynomial.make([1, 2, 1])
        b = IntPolynomial.make([1, 1])
        assert poly_divexact(a, b) == b

    def test_inexact_division_raises(self):
        with pytest.raises(ValueError):
            poly_divexact(IntPolynomial.make([1, 1, 1]), IntPolynomial.make([2, 1]))

    def test_trim(self):
        assert IntPolynomial.make([1, 0, 0]).coeffs == (1,)


class TestZeta:
    def test_full_two_shift(self, full_two_shift):
        z = zeta_of_graph(full_two_shift)
        assert z.to_json() == {"num": [1], "den": [1, -2]}
        pn = [trace_power(full_two_shift, n) for n in range(1, 9)]
        assert exp_truncation(pn, 8) == z.series(9)

    def test_golden_mean(self, golden_mean):
        z = zeta_of_graph(golden_mean)
        assert z.to_json() == {"num": [1], "den": [1, -1, -1]}
        pn = [trace_power(golden_mean, n) for n in range(1, 9)]
        assert exp_truncation(pn, 8) == z.series(9)

    def test_three_cycle(self):
        z = zeta_of_graph(cycle_graph(3))
        assert z.to_json() == {"num": [1], "den": [1, 0, 0, -1]}

    def test_exhaustive_small_matrices(self):
        # all 0/1 matrices up to 2x2, plus a sample of 3x3
        from itertools import product

        for bits in product((0, 1), repeat=4):
            m = [[bits[0], bits[1]], [bits[2], bits[3]]]
            g = graph_from_matrix(m)
            z = zeta_of_graph(g)
            pn = [trace_power(g, n) for n in range(1, 13)]
            assert exp_truncation(pn, 12) == z.series(13)
        rng = random.Random(5)
        for _ in range(20):
            m = [[rng.randint(0, 1) for _ in range(3)] for _ in range(3)]
            g = graph_from_matrix(m)
            z = zeta_of_graph(g)
            pn = [trace_power(g, n) for n in range(1, 13)]
            assert exp_truncation(pn, 12) == z.series(13)


class TestLogDerivative:
    def test_full_shift(self):
        z = RationalFunction.make([1], [1, -2])
        assert log_derivative_series(z, 4) == [2, 4, 8, 16]

    def test_golden(self, golden_mean):
        z = zeta_of_graph(golden_mean)
        assert log_derivative_series(z, 5) == [1, 3, 4, 7, 11]

    def test_constant_one(self):
        z = RationalFunction.make([1], [1])
        assert log_derivative_series(z, 3) == [0, 0, 0]

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            log_derivative_series(RationalFunction.make([2], [1]), 3)

    def test_matches_traces_random(self):
        rng = random.Random(17)
        for _ in range(10):
            g = random_graph(rng, max_vertices=5, max_edges=8, horizon=8)
            z = zeta_of_graph(g)
            series = log_derivative_series(z, 12)
            assert series == [trace_power(g, n) for n in range(1, 13)]


class TestRecurrence:
    def test_fibonacci(self):
        rec = recurrence_from_rational(RationalFunction.make([1], [1, -1, -1]))
        assert rec.order == 2
        assert rec.coeffs == (Fraction(-1), Fraction(-1))
        assert rec.terms(8) == [1, 1, 2, 3, 5, 8, 13, 21, 34]

    def test_order_one(self):
        rec = recurrence_from_rational(RationalFunction.make([1], [1, -2]))
        assert rec.order == 1
        assert rec.terms(5) == [1, 2, 4, 8, 16, 32]

    def test_period_three_with_numerator(self):
        f = RationalFunction.make([1, 1], [1, 0, 0, -1])
        rec = recurrence_from_rational(f)
        assert rec.order == 3
        assert rec.terms(12) == f.series(13)

    def test_reproduces_initial(self):
        f = RationalFunction.make([3, 1, 4], [1, -2, 0, 5])
        rec = recurrence_from_rational(f)
        assert rec.reproduces_initial()
        assert rec.terms(40) == f.series(41)

    def test_reproduces_beyond_numerator_random(self):
        rng = random.Random(29)
        for _ in range(10):
            g = random_graph(rng, max_vertices=4, max_edges=6, horizon=8)
            z = zeta_of_graph(g)
            f = p_sequence_rational(z)
            rec = recurrence_from_rational(f)
            terms = rec.terms(40)
            for n in range(1, 41):
                assert terms[n] == trace_power(g, n)


class TestEmpiricalZeroSet:
    def test_multiples_of_three(self):
        rec = recurrence_from_rational(RationalFunction.make([1], [1, 0, 0, -1]))
        # positions 1..N of the series of 1/(1-t^3): support 3N
        pat = empirical_zero_set(rec, 24)
        assert pat.period == 3 and pat.residues == frozenset({0})
        desc = pat.descriptor
        assert desc is not None and not desc.certified
        assert desc.to_json()["components"] == [
            {"d": 3, "threshold": 1, "extras": []}
        ]

    def test_positive_sequence_all_naturals(self):
        rec = LinearRecurrence(
            2, (Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(1)), 2
        )
        pat = empirical_zero_set(rec, 16)
        desc = pat.descriptor
        assert desc is not None
        assert desc.to_json()["components"] == [
            {"d": 1, "threshold": 1, "extras": []}
        ]

    def test_alternating_keeps_residue_form(self):
        rec = LinearRecurrence(
            2, (Fraction(0), Fraction(-1)), (Fraction(0), Fraction(1)), 2
        )
        pat = empirical_zero_set(rec, 20)
        assert pat.period == 2 and pat.residues == frozenset({1})
        assert pat.members_upto(9) == [1, 3, 5, 7, 9]
        # odd numbers are not closed under index multiplication: no d(N+k)
        # conversion exists, the residue pattern is the result
        assert pat.descriptor is None

    def test_no_fit_reported(self):
        # zeros at 1, 5, 17: support not eventually periodic with r <= N/4
        init = tuple(
            Fraction((n - 1) * (n - 5) * (n - 17)) for n in range(4)
        )
        rec = LinearRecurrence(
            4, (Fraction(-4), Fraction(6), Fraction(-4), Fraction(1)), init, 4
        )
        with pytest.raises(NoPatternFit):
            empirical_zero_set(rec, 20)

    def test_agrees_with_ps_descriptor(self):
        rng = random.Random(43)
        for _ in range(10):
            g = random_graph(rng, max_vertices=4, max_edges=6, horizon=8)
            if g.n == 0 or trace_power(g, 1) + trace_power(g, 2) + trace_power(g, 3) == 0:
                continue
            z = zeta_of_graph(g)
            rec = recurrence_from_rational(p_sequence_rational(z))
            try:
                pat = empirical_zero_set(rec, 48)
            except NoPatternFit:
                continue
            desc = ps_descriptor(g)
            for n in range(1, 49):
                assert pat.contains(n) == desc.contains(n)
