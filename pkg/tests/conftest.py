import random

import pytest

from periodlab.graph_core import (
    DirectedMultigraph,
    closed_walk_counts,
    essential_subgraph,
)
from periodlab.sofic import LabeledGraph


def build_graph(vertices, edges):
    return DirectedMultigraph.build(vertices, edges)


def build_labeled(vertices, labeled_edges):
    g = DirectedMultigraph.build(
        vertices, [(s, t, e) for (s, t, e, _l) in labeled_edges]
    )
    return LabeledGraph.build(g, {e: l for (_s, _t, e, l) in labeled_edges})


def cycle_graph(n, prefix="c"):
    return build_graph(
        [f"{prefix}{i}" for i in range(n)],
        [(f"{prefix}{i}", f"{prefix}{(i + 1) % n}", f"{prefix}.e{i}") for i in range(n)],
    )


@pytest.fixture
def golden_mean():
    return build_graph(
        ["a", "b"], [("a", "a", "e1"), ("a", "b", "e2"), ("b", "a", "e3")]
    )


@pytest.fixture
def full_two_shift():
    return build_graph(["v"], [("v", "v", "0"), ("v", "v", "1")])


@pytest.fixture
def even_shift():
    return build_labeled(
        ["s0", "s1"],
        [
            ("s0", "s0", "a", "1"),
            ("s0", "s1", "b", "0"),
            ("s1", "s0", "c", "0"),
        ],
    )


@pytest.fixture
def zero_two_cycle():
    return build_labeled(
        ["a", "b"], [("a", "b", "e1", "0"), ("b", "a", "e2", "0")]
    )


@pytest.fixture
def golden_cover():
    return build_labeled(
        ["q0", "q1"],
        [
            ("q0", "q0", "a", "0"),
            ("q0", "q1", "b", "1"),
            ("q1", "q0", "c", "0"),
        ],
    )


@pytest.fixture
def full_shift_cover():
    return build_labeled(
        ["v"], [("v", "v", "e0", "0"), ("v", "v", "e1", "1")]
    )


def attached_cycles_graph_5_2():
    """5-cycle, 2-cycle attached at v0, 6-cycle attached at the interior
    vertex of the 2-cycle: least periods {2} | {n >= 5}."""
    verts = [f"v{i}" for i in range(5)] + ["x1"] + [f"y{i}" for i in range(5)]
    edges = [(f"v{i}", f"v{(i + 1) % 5}", f"c5.{i}") for i in range(5)]
    edges += [("v0", "x1", "f2.0"), ("x1", "v0", "f2.1")]
    edges += [("x1", "y0", "c6.0")]
    edges += [(f"y{i}", f"y{i + 1}", f"c6.{i + 1}") for i in range(4)]
    edges += [("y4", "x1", "c6.5")]
    return build_graph(verts, edges)


def random_graph(rng: random.Random, max_vertices=6, max_edges=12, budget=60_000, horizon=12):
    """Seeded random multigraph whose total closed-path count up to the
    horizon stays under the brute-force budget."""
    while True:
        nv = rng.randint(1, max_vertices)
        ne = rng.randint(0, max_edges)
        vertices = [f"v{i}" for i in range(nv)]
        edges = []
        for k in range(ne):
            s = rng.randrange(nv)
            t = rng.randrange(nv)
            edges.append((f"v{s}", f"v{t}", f"e{k}"))
        g = build_graph(vertices, edges)
        if sum(closed_walk_counts(g, horizon)) <= budget:
            return g


def random_labeled(rng: random.Random, max_states=4, alphabet="01"):
    """Seeded random labeled graph, essential and nonempty."""
    while True:
        nv = rng.randint(1, max_states)
        vertices = [f"s{i}" for i in range(nv)]
        edges = []
        k = 0
        for v in vertices:
            for a in alphabet:
                # each state reads each symbol with probability 3/4, to a
                # random target (occasionally two, for nondeterminism)
                if rng.random() < 0.75:
                    edges.append((v, f"s{rng.randrange(nv)}", f"e{k}", a))
                    k += 1
                    if rng.random() < 0.2:
                        edges.append((v, f"s{rng.randrange(nv)}", f"e{k}", a))
                        k += 1
        if not edges:
            continue
        g = build_graph(vertices, [(s, t, e) for (s, t, e, _l) in edges])
        ess = essential_subgraph(g)
        if ess.n == 0:
            continue
        keep = {e for (_s, _t, e) in ess.edges}
        labels = {e: l for (_s, _t, e, l) in edges if e in keep}
        return LabeledGraph.build(ess, labels)
