import random

import pytest

from periodlab.graph_core import (
    Cycle,
    DirectedMultigraph,
    ResourceLimitExceeded,
    closed_walk_counts,
    component_period,
    component_walk_counts,
    disjoint_union,
    enumerate_closed_paths,
    essential_subgraph,
    scc_decompose,
    subdivide_edges,
    trace_power,
)

from conftest import attached_cycles_graph_5_2, build_graph, cycle_graph, random_graph


def reachable(g, start):
    adj = {v: set() for v in g.vertices}
    for s, t, _ in g.edges:
        adj[s].add(t)
    seen = {start}
    stack = [start]
    while stack:
        for t in adj[stack.pop()]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


class TestScc:
    def test_single_cycle(self):
        dec = scc_decompose(cycle_graph(3))
        assert len(dec.components) == 1
        assert dec.is_trivial == (False,)

    def test_bridge(self):
        g = build_graph(
            ["a", "b", "c", "d", "e"],
            [
                ("a", "b", "1"),
                ("b", "a", "2"),
                ("b", "c", "3"),
                ("c", "d", "4"),
                ("d", "e", "5"),
                ("e", "c", "6"),
            ],
        )
        dec = scc_decompose(g)
        assert sorted(sorted(c) for c in dec.components) == [
            ["a", "b"],
            ["c", "d", "e"],
        ]
        assert dec.is_trivial == (False, False)
        assert dec.condensation_edges == frozenset({(0, 1)})

    def test_attached_cycles_single_component(self):
        # brute-force reachability: every vertex reaches every other
        g = attached_cycles_graph_5_2()
        for v in g.vertices:
            assert reachable(g, v) == set(g.vertices)
        dec = scc_decompose(g)
        assert len(dec.components) == 1
        assert not dec.is_trivial[0]

    def test_condensation_acyclic(self):
        rng = random.Random(7)
        for _ in range(30):
            g = random_graph(rng, max_vertices=6, max_edges=10)
            dec = scc_decompose(g)
            # topological sort of the condensation must succeed
            n = len(dec.components)
            indeg = [0] * n
            for _, b in dec.condensation_edges:
                indeg[b] += 1
            order = [i for i in range(n) if indeg[i] == 0]
            seen = 0
            while order:
                i = order.pop()
                seen += 1
                for a, b in dec.condensation_edges:
                    if a == i:
                        indeg[b] -= 1
                        if indeg[b] == 0:
                            order.append(b)
            assert seen == n

    def test_empty_graph(self):
        dec = scc_decompose(build_graph([], []))
        assert dec.components == ()


class TestPeriod:
    def test_four_cycle(self):
        g = cycle_graph(4)
        dec = scc_decompose(g)
        assert component_period(g, dec.components[0]) == 4

    def test_two_self_loops(self):
        g = build_graph(["v"], [("v", "v", "a"), ("v", "v", "b")])
        assert component_period(g, {"v"}) == 1

    def test_golden_mean_from_cycle_oracle(self, golden_mean):
        # gcd of enumerated cycle lengths
        from math import gcd

        paths = enumerate_closed_paths(golden_mean, 6)
        g = 0
        for n, cycles in paths.items():
            if cycles:
                g = gcd(g, n)
        assert g == 1
        assert component_period(golden_mean, {"a", "b"}) == 1

    def test_trivial_component_rejected(self):
        g = build_graph(["a", "b"], [("a", "b", "e")])
        with pytest.raises(ValueError):
            component_period(g, {"a"})

    def test_matches_cycle_gcd_on_random_graphs(self):
        from math import gcd

        rng = random.Random(11)
        for _ in range(25):
            g = random_graph(
                rng, max_vertices=8, max_edges=10, horizon=12, budget=40_000
            )
            dec = scc_decompose(g)
            paths = enumerate_closed_paths(g, 12)
            for i in dec.nontrivial:
                comp = dec.components[i]
                lengths = [
                    len(c)
                    for n in paths
                    for c in paths[n]
                    if c.start in comp
                ]
                if not lengths:
                    continue
                expect = 0
                for L in lengths:
                    expect = gcd(expect, L)
                assert component_period(g, comp) == expect


class TestTracePower:
    def test_full_two_shift(self, full_two_shift):
        assert trace_power(full_two_shift, 10) == 1024

    def test_golden_mean(self, golden_mean):
        assert [trace_power(golden_mean, n) for n in range(1, 6)] == [1, 3, 4, 7, 11]

    def test_three_cycle(self):
        g = cycle_graph(3)
        assert trace_power(g, 4) == 0
        assert trace_power(g, 6) == 3

    def test_counts_match_enumeration(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_graph(rng, max_vertices=5, max_edges=8, horizon=8)
            paths = enumerate_closed_paths(g, 8)
            for n in range(1, 9):
                assert trace_power(g, n) == len(paths[n])

    def test_additive_over_disjoint_union(self, golden_mean):
        g = disjoint_union([golden_mean, cycle_graph(3)])
        for n in range(1, 9):
            assert trace_power(g, n) == trace_power(golden_mean, n) + trace_power(
                cycle_graph(3), n
            )

    def test_walk_counts_agree(self):
        rng = random.Random(5)
        for _ in range(25):
            g = random_graph(rng, max_vertices=6, max_edges=10, horizon=10)
            assert closed_walk_counts(g, 10) == [
                trace_power(g, n) for n in range(1, 11)
            ]

    def test_component_series_on_weighted_core(self, golden_mean):
        dec = scc_decompose(golden_mean)
        assert component_walk_counts(golden_mean, dec.components[0], 5) == [
            1,
            3,
            4,
            7,
            11,
        ]


class TestEnumerate:
    def test_three_cycle(self):
        paths = enumerate_closed_paths(cycle_graph(3), 3)
        assert [len(paths[n]) for n in (1, 2, 3)] == [0, 0, 3]
        assert {c.start for c in paths[3]} == set(cycle_graph(3).vertices)

    def test_golden_counts(self, golden_mean):
        paths = enumerate_closed_paths(golden_mean, 4)
        assert [len(paths[n]) for n in range(1, 5)] == [1, 3, 4, 7]

    def test_acyclic(self):
        g = build_graph(["a", "b"], [("a", "b", "e")])
        paths = enumerate_closed_paths(g, 4)
        assert all(not v for v in paths.values())

    def test_resource_limit_distinct_from_empty(self, full_two_shift):
        with pytest.raises(ResourceLimitExceeded):
            enumerate_closed_paths(full_two_shift, 20, max_total=100)

    def test_least_period_of_cycle(self):
        assert Cycle("a", ("x", "y", "x", "y")).least_period() == 2
        assert Cycle("a", ("x", "y", "z")).least_period() == 3


class TestTransforms:
    def test_subdivide_scales_lengths(self, golden_mean):
        # orbits of length n become orbits of length 3n (3x the basepoints)
        g2 = subdivide_edges(golden_mean, 3)
        for n in range(1, 13):
            expect = 3 * trace_power(golden_mean, n // 3) if n % 3 == 0 else 0
            assert trace_power(g2, n) == expect

    def test_essential_trims_strands(self):
        g = build_graph(
            ["a", "b", "c"],
            [("a", "a", "loop"), ("a", "b", "out"), ("c", "a", "in")],
        )
        ess = essential_subgraph(g)
        assert ess.vertices == ("a",)

    def test_json_round_trip(self, golden_mean):
        assert DirectedMultigraph.from_json(golden_mean.to_json()) == golden_mean

    def test_dot_contains_edges(self, golden_mean):
        dot = golden_mean.to_dot()
        assert '"a" -> "b"' in dot and dot.startswith("digraph")

    def test_dot_round_trip(self, golden_mean):
        assert DirectedMultigraph.from_dot(golden_mean.to_dot()) == golden_mean

    def test_duplicate_edge_id_rejected(self):
        with pytest.raises(ValueError):
            build_graph(["a"], [("a", "a", "e"), ("a", "a", "e")])

    def test_dangling_edge_rejected(self):
        with pytest.raises(ValueError):
            build_graph(["a"], [("a", "b", "e")])


def test_concurrent_use_is_safe(golden_mean):
    # pure functions over immutable values: concurrent analyses of shared
    # inputs agree with the sequential results
    from concurrent.futures import ThreadPoolExecutor

    from periodlab.sft_counting import count_table, lps_descriptor_sft

    expected_table = count_table(golden_mean, 12)
    expected_desc = lps_descriptor_sft(golden_mean)
    with ThreadPoolExecutor(max_workers=8) as pool:
        tables = list(pool.map(lambda _: count_table(golden_mean, 12), range(16)))
        descs = list(pool.map(lambda _: lps_descriptor_sft(golden_mean), range(16)))
    assert all(t == expected_table for t in tables)
    assert all(d == expected_desc for d in descs)
