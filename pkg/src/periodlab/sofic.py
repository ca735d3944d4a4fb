"""Labeled-graph presentations of sofic shifts.

Covers periodic-point enumeration by cycle labels, subset-construction
determinization with follower-set minimization (Fischer cover for
irreducible shifts), synchronizing words, receptive periodic points, and
the layer graphs that realize the unique-preimage decomposition of the
least-period set.

A periodic point of the presented shift is the bi-infinite repetition of a
word w; it belongs to the shift iff the transition relation of w has a
cycle. Two presentations of the same point are *mutually separated* when
they occupy distinct vertices at every time; the layer-i graph tracks
i-sets of vertices joined by injective label-respecting matchings, so a
point has >= i mutually separated presentations exactly when some layer-i
walk carries its label.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .arith import least_rotation_period, min_rotation
from .graph_core import (
    DirectedMultigraph,
    ResourceLimitExceeded,
    closed_walk_counts,
    enumerate_closed_paths,
    essential_subgraph,
    scc_decompose,
)

DEFAULT_WORD_BUDGET = 5_000_000


def as_word(w) -> tuple:
    return tuple(w)


def word_str(w) -> str:
    return "".join(str(a) for a in w)


@dataclass(frozen=True)
class LabeledGraph:
    """A directed multigraph with a symbol on every edge."""

    graph: DirectedMultigraph
    labels: tuple[tuple[str, str], ...]  # (edge id, symbol), sorted

    @classmethod
    def build(cls, graph: DirectedMultigraph, labels) -> "LabeledGraph":
        label_map = dict(labels.items()) if isinstance(labels, dict) else dict(labels)
        missing = [e for (_, _, e) in graph.edges if e not in label_map]
        if missing:
            raise ValueError(f"unlabeled edges: {missing}")
        pairs = tuple(sorted((e, str(label_map[e])) for (_, _, e) in graph.edges))
        return cls(graph, pairs)

    @cached_property
    def label_map(self) -> dict:
        return dict(self.labels)

    @cached_property
    def alphabet(self) -> tuple:
        return tuple(sorted({s for (_, s) in self.labels}))

    @cached_property
    def steps(self) -> dict:
        """Per symbol: sparse map vertex index -> frozenset of target indices."""
        idx = self.graph.index
        acc: dict = {a: {} for a in self.alphabet}
        lm = self.label_map
        for src, dst, eid in self.graph.edges:
            acc[lm[eid]].setdefault(idx[src], set()).add(idx[dst])
        return {
            a: {v: frozenset(t) for v, t in rows.items()}
            for a, rows in acc.items()
        }

    def essential(self) -> "LabeledGraph":
        g = essential_subgraph(self.graph)
        keep = {e for (_, _, e) in g.edges}
        return LabeledGraph.build(g, {e: s for (e, s) in self.labels if e in keep})

    def to_json(self) -> dict:
        lm = self.label_map
        return {
            "vertices": list(self.graph.vertices),
            "edges": [
                {"id": e, "from": s, "to": t, "label": lm[e]}
                for (s, t, e) in self.graph.edges
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabeledGraph":
        g = DirectedMultigraph.build(
            data["vertices"],
            [(e["from"], e["to"], e["id"]) for e in data["edges"]],
        )
        return cls.build(g, {e["id"]: e["label"] for e in data["edges"]})

    def to_dot(self) -> str:
        lm = self.label_map
        lines = ["digraph {"]
        for v in self.graph.vertices:
            lines.append(f'  "{v}";')
        for src, dst, eid in self.graph.edges:
            lines.append(f'  "{src}" -> "{dst}" [label="{lm[eid]}"];')
        lines.append("}")
        return "\n".join(lines)


# -- transition relations ------------------------------------------------------
#
# The relation of a word w is the set of pairs (v, v'): there is a w-labeled
# path from v to v'. The bi-infinite repetition of w lies in the shift
# exactly when this relation, viewed as a digraph, has a cycle.


def relation_identity(n: int) -> frozenset:
    return frozenset((v, v) for v in range(n))


def relation_step(rel: frozenset, step: dict) -> frozenset:
    out = set()
    for v, x in rel:
        nxt = step.get(x)
        if nxt:
            for y in nxt:
                out.add((v, y))
    return frozenset(out)


def relation_has_cycle(rel: frozenset) -> bool:
    """Does the relation digraph contain a cycle?"""
    succ: dict = {}
    for v, y in rel:
        succ.setdefault(v, set()).add(y)
    alive = set(succ)
    changed = True
    while changed and alive:
        changed = False
        preds = set()
        for v in list(alive):
            nxt = succ[v] & alive
            if not nxt:
                alive.discard(v)
                changed = True
            else:
                preds |= nxt
        for v in list(alive):
            if v not in preds:
                alive.discard(v)
                changed = True
    return bool(alive)


def word_relation(lg_steps: dict, n_vertices: int, w) -> frozenset:
    rel = relation_identity(n_vertices)
    for a in w:
        step = lg_steps.get(a)
        if step is None:
            return frozenset()
        rel = relation_step(rel, step)
        if not rel:
            break
    return rel


def periodic_point_in_shift(lg: LabeledGraph, w) -> bool:
    """Is the bi-infinite repetition of w a point of the presented shift?"""
    rel = word_relation(lg.steps, lg.graph.n, as_word(w))
    return relation_has_cycle(rel)


def _periodic_words_exact_length(lg: LabeledGraph, n: int, budget=None):
    """All words w of length n (in DFS order over the sorted alphabet) whose
    bi-infinite repetition lies in the shift; yields (word, relation)."""
    steps = lg.steps
    nv = lg.graph.n
    if nv == 0:
        return
    alphabet = lg.alphabet
    spent = 0
    stack = [((), relation_identity(nv))]
    while stack:
        w, rel = stack.pop()
        if len(w) == n:
            if relation_has_cycle(rel):
                yield w, rel
            continue
        for a in reversed(alphabet):
            nxt = relation_step(rel, steps[a])
            spent += 1
            if budget is not None and spent > budget:
                raise ResourceLimitExceeded("periodic word sweep budget exceeded")
            if nxt:
                stack.append((w + (a,), nxt))


def sofic_period_counts(lg: LabeledGraph, N: int, class_cap: int = 200_000):
    """Exact point counts p_n of the presented sofic shift for n <= N, with
    a witness word for every least rotation period seen along the way.

    Words of each length are grouped by their transition relation (counts
    add, one representative word is kept), so the sweep is exponential only
    in the relation-class structure, not in the word count.
    """
    nv = lg.graph.n
    steps = lg.steps
    alphabet = lg.alphabet
    p = [0] * N
    witnesses: dict = {}
    if nv == 0:
        return p, witnesses
    level = {relation_identity(nv): [1, ()]}
    cycle_memo: dict = {}
    for n in range(1, N + 1):
        nxt: dict = {}
        for rel, (cnt, rep) in level.items():
            for a in alphabet:
                r2 = relation_step(rel, steps[a])
                if not r2:
                    continue
                slot = nxt.get(r2)
                if slot is None:
                    nxt[r2] = [cnt, rep + (a,)]
                else:
                    slot[0] += cnt
        level = nxt
        if len(level) > class_cap:
            raise ResourceLimitExceeded("relation-class cap exceeded")
        total = 0
        for rel, (cnt, rep) in level.items():
            cyc = cycle_memo.get(rel)
            if cyc is None:
                cyc = relation_has_cycle(rel)
                cycle_memo[rel] = cyc
            if cyc:
                total += cnt
                rho = least_rotation_period(rep)
                if rho not in witnesses:
                    witnesses[rho] = word_str(min_rotation(rep[:rho]))
        p[n - 1] = total
    return p, witnesses


@dataclass(frozen=True)
class SoficLpsResult:
    """Least periods <= N with one witness word per period."""

    N: int
    witnesses: tuple  # ((period, word string), ...) sorted by period

    @property
    def support(self) -> frozenset:
        return frozenset(p for (p, _) in self.witnesses)

    def to_json(self) -> list:
        return [{"period": p, "word": w} for (p, w) in self.witnesses]


def sofic_lps_upto(
    lg: LabeledGraph, N: int, max_paths: int = 200_000
) -> SoficLpsResult:
    """LPS of the presented sofic shift, exactly, on [1, N].

    Closed paths up to a budgeted length are swept and the least rotation
    period of each label recorded; since a point's shortest presentation
    can be several phases longer than its period, the support is then
    settled exactly by counting period-n points per transition-relation
    class and Möbius-inverting to least-period counts. Witnesses come from
    the sweeps, with a targeted word search as a last resort.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    from .sft_counting import mobius_invert

    lm = lg.label_map
    found: dict = {}
    totals = closed_walk_counts(lg.graph, N)
    sweep_n, acc = 0, 0
    for n in range(1, N + 1):
        acc += totals[n - 1]
        if acc > max_paths:
            break
        sweep_n = n  # the counting pass below keeps the result exact anyway
    paths = (
        enumerate_closed_paths(lg.graph, sweep_n, max_total=2 * max_paths)
        if sweep_n >= 1
        else {}
    )
    for n in range(1, sweep_n + 1):
        for cyc in paths[n]:
            label = tuple(lm[e] for e in cyc.edge_ids)
            rho = least_rotation_period(label)
            if rho not in found:
                found[rho] = word_str(min_rotation(label[:rho]))
    p, class_witnesses = sofic_period_counts(lg, N)
    for rho, w in class_witnesses.items():
        found.setdefault(rho, w)
    support = {
        n for n, qn in enumerate(mobius_invert(p), start=1) if qn > 0
    }
    if set(found) - support:
        raise AssertionError("witnessed period missing from exact count")
    for n in sorted(support):
        if n in found:
            continue
        for w, _rel in _periodic_words_exact_length(lg, n, budget=DEFAULT_WORD_BUDGET):
            if least_rotation_period(w) == n:
                found[n] = word_str(min_rotation(w))
                break
    return SoficLpsResult(
        N, tuple((n, found[n]) for n in sorted(support))
    )


# -- determinization and the Fischer cover -------------------------------------


@dataclass(frozen=True)
class DeterministicPresentation:
    """Right-resolving presentation; ``minimal`` marks the Fischer cover of
    an irreducible sofic shift (no two states share a follower set)."""

    lg: LabeledGraph
    minimal: bool
    irreducible: bool

    @cached_property
    def delta(self) -> dict:
        """(state, symbol) -> state (partial)."""
        out = {}
        lm = self.lg.label_map
        for src, dst, eid in self.lg.graph.edges:
            key = (src, lm[eid])
            if key in out:
                raise ValueError("presentation is not right-resolving")
            out[key] = dst
        return out

    @property
    def states(self) -> tuple:
        return self.lg.graph.vertices

    def read(self, state, w):
        for a in w:
            state = self.delta.get((state, a))
            if state is None:
                return None
        return state

    def image_set(self, w) -> frozenset:
        cur = set(self.states)
        for a in w:
            cur = {self.delta.get((q, a)) for q in cur}
            cur.discard(None)
            if not cur:
                break
        return frozenset(cur)

    def allows(self, w) -> bool:
        return bool(self.image_set(w))


def _subset_automaton(lg: LabeledGraph):
    """Subset construction seeded at the full vertex set: states are
    frozensets of vertices, transitions per symbol by the union step."""
    steps = lg.steps
    nv = lg.graph.n
    full = frozenset(range(nv))
    if nv == 0:
        return {}, []
    trans: dict = {}
    stack = [full]
    seen = {full}
    while stack:
        cur = stack.pop()
        for a in lg.alphabet:
            acc = set()
            for v in cur:
                acc |= steps[a].get(v, frozenset())
            nxt = frozenset(acc)
            if nxt:
                trans[(cur, a)] = nxt
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return trans, sorted(seen, key=sorted)


def _trim_automaton(states, trans):
    alive = set(states)
    changed = True
    while changed:
        changed = False
        outs = {q: 0 for q in alive}
        ins = {q: 0 for q in alive}
        for (q, _a), t in trans.items():
            if q in alive and t in alive:
                outs[q] += 1
                ins[t] += 1
        for q in list(alive):
            if outs[q] == 0 or ins[q] == 0:
                alive.discard(q)
                changed = True
    states = [q for q in states if q in alive]
    trans = {
        (q, a): t for ((q, a), t) in trans.items() if q in alive and t in alive
    }
    return states, trans


def _minimize_partial(states, trans, alphabet):
    """Moore refinement by follower languages on a partial DFA."""
    cls = {q: 0 for q in states}
    while True:
        sigs: dict = {}
        for q in states:
            sig = (cls[q],) + tuple(
                cls.get(trans.get((q, a))) for a in alphabet
            )
            sigs.setdefault(sig, []).append(q)
        new_cls = {}
        ordered = sorted(sigs, key=lambda s: tuple(-1 if x is None else x for x in s))
        for i, sig in enumerate(ordered):
            for q in sigs[sig]:
                new_cls[q] = i
        if len(set(new_cls.values())) == len(set(cls.values())):
            renum = new_cls
            break
        cls = new_cls
    classes = sorted(set(renum.values()))
    members = {c: sorted((q for q in states if renum[q] == c), key=sorted) for c in classes}
    qtrans = {}
    for (q, a), t in trans.items():
        qtrans[(renum[q], a)] = renum[t]
    return classes, members, qtrans


def _language_covered_by(states, trans, alphabet, comp):
    """Is every word readable somewhere in (states, trans) also readable
    within the state set ``comp``?  Subset-simulation check."""
    comp = frozenset(comp)
    seen = set()
    stack = [(q, comp) for q in states]
    while stack:
        q, s = stack.pop()
        if (q, s) in seen:
            continue
        seen.add((q, s))
        if len(seen) > 200_000:
            raise ResourceLimitExceeded("language inclusion check too large")
        for a in alphabet:
            qn = trans.get((q, a))
            if qn is None:
                continue
            sn = frozenset(
                t
                for t in (trans.get((c, a)) for c in s)
                if t is not None and t in comp
            )
            if not sn:
                return False
            stack.append((qn, sn))
    return True


def determinize_and_minimize(lg: LabeledGraph) -> DeterministicPresentation:
    """Right-resolving presentation of the same sofic shift; when the shift
    is irreducible, the minimal one (Fischer cover).

    Irreducibility of the *shift* is decided by whether some terminal
    strongly connected piece of the minimized automaton already presents the
    whole language; for a reducible shift the full right-resolving
    presentation is returned with ``minimal=False``.
    """
    ess = lg.essential()
    if ess.graph.n == 0:
        empty = LabeledGraph.build(DirectedMultigraph.build((), ()), {})
        return DeterministicPresentation(empty, False, False)
    trans, states = _subset_automaton(ess)
    states, trans = _trim_automaton(states, trans)
    classes, members, qtrans = _minimize_partial(states, trans, ess.alphabet)
    # condensation of the class automaton
    cedges = [(q, t) for ((q, _a), t) in qtrans.items()]
    succ = {c: set() for c in classes}
    for q, t in cedges:
        succ[q].add(t)
    name = {c: "s" + str(i) for i, c in enumerate(classes)}

    def build(chosen, minimal, irreducible):
        keep = sorted(chosen)
        vertices = [name[c] for c in keep]
        edges, labels = [], {}
        for (q, a), t in sorted(qtrans.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            if q in chosen and t in chosen:
                eid = f"{name[q]}-{a}"
                edges.append((name[q], name[t], eid))
                labels[eid] = a
        g = DirectedMultigraph.build(vertices, edges)
        return DeterministicPresentation(
            LabeledGraph.build(g, labels), minimal, irreducible
        )

    mgraph = DirectedMultigraph.build(
        [str(c) for c in classes],
        [
            (str(q), str(t), f"e{i}")
            for i, (q, t) in enumerate(sorted(set(cedges)))
        ],
    )
    dec = scc_decompose(mgraph)
    outgoing = {i for (i, _j) in dec.condensation_edges}
    for i, comp in enumerate(dec.components):
        if dec.is_trivial[i] or i in outgoing:
            continue
        comp_classes = {int(c) for c in comp}
        if _language_covered_by(classes, qtrans, ess.alphabet, comp_classes):
            return build(comp_classes, True, True)
    return build(set(classes), False, False)


def synchronizing_words_upto(dp: DeterministicPresentation, L: int) -> list:
    """Words of length <= L whose read image over all states is a single
    state. Requires the minimal irreducible presentation, where focusing
    certifies intrinsic synchronization."""
    if not (dp.minimal and dp.irreducible):
        raise ValueError("synchronizing-word analysis needs the minimal cover")
    out = []
    frontier = [((), frozenset(dp.states))]
    for _ in range(L):
        nxt = []
        for w, img in frontier:
            for a in dp.lg.alphabet:
                img2 = frozenset(
                    t
                    for t in (dp.delta.get((q, a)) for q in img)
                    if t is not None
                )
                if img2:
                    w2 = w + (a,)
                    nxt.append((w2, img2))
                    if len(img2) == 1:
                        out.append(word_str(w2))
        frontier = nxt
    return sorted(out, key=lambda w: (len(w), w))


@dataclass(frozen=True)
class ReceptiveCertificate:
    receptive: bool
    state: str | None
    rotation: str | None
    reason: str


def is_receptive(dp: DeterministicPresentation, w) -> ReceptiveCertificate:
    """Does the point w^infinity admit a presentation of its own least
    period, i.e. a closed path of length |w| labeled by a rotation of w in
    the minimal cover?"""
    if not (dp.minimal and dp.irreducible):
        raise ValueError("receptivity check needs the minimal irreducible cover")
    w = as_word(w)
    if least_rotation_period(w) != len(w):
        raise ValueError("w must not be purely periodic")
    for r in range(len(w)):
        rot = w[r:] + w[:r]
        for q in dp.states:
            if dp.read(q, rot) == q:
                return ReceptiveCertificate(True, q, word_str(rot), "cycle found")
    return ReceptiveCertificate(
        False, None, None, "no closed path of this length carries any rotation"
    )


def _partial_map_of_symbol(dp: DeterministicPresentation):
    states = dp.states
    idx = {q: i for i, q in enumerate(states)}
    maps = {}
    for a in dp.lg.alphabet:
        maps[a] = tuple(
            idx.get(dp.delta.get((q, a))) for q in states
        )
    return maps


def _compose_maps(f, g):
    """Apply f, then g."""
    return tuple(g[x] if x is not None else None for x in f)


def _map_power(f, k):
    out = tuple(range(len(f)))
    base = f
    while k:
        if k & 1:
            out = _compose_maps(out, base)
        k >>= 1
        if k:
            base = _compose_maps(base, base)
    return out


def receptive_lps_upto(dp: DeterministicPresentation, N: int) -> frozenset:
    """Least periods n <= N of receptive periodic points: lengths n for
    which some primitive word of length n labels a closed path.

    Counted exactly via the transition monoid: the number of primitive
    words of each length whose partial map has a fixed point.
    """
    if not (dp.minimal and dp.irreducible):
        raise ValueError("receptive analysis needs the minimal irreducible cover")
    sym_maps = _partial_map_of_symbol(dp)
    counts: list = [None] * (N + 1)  # counts[n]: map -> number of words
    first = {}
    for a, f in sym_maps.items():
        first[f] = first.get(f, 0) + 1
    counts[1] = first
    for n in range(2, N + 1):
        cur: dict = {}
        for f, c in counts[n - 1].items():
            for a, g in sym_maps.items():
                h = _compose_maps(f, g)
                cur[h] = cur.get(h, 0) + c
        if len(cur) > 200_000:
            raise ResourceLimitExceeded("transition monoid too large")
        counts[n] = cur
    prim: list = [None] * (N + 1)
    for n in range(1, N + 1):
        cur = dict(counts[n])
        for m in range(1, n):
            if n % m == 0:
                for h, c in prim[m].items():
                    hk = _map_power(h, n // m)
                    if hk in cur:
                        cur[hk] -= c
                        if cur[hk] == 0:
                            del cur[hk]
        prim[n] = cur
    out = set()
    for n in range(1, N + 1):
        for f, c in prim[n].items():
            if c > 0 and any(f[v] == v for v in range(len(dp.states))):
                out.add(n)
                break
    return frozenset(out)


# -- layer graphs and the unique-preimage decomposition -------------------------


def _has_perfect_matching(adj: list) -> bool:
    """adj[i] = candidate right indices for left i; both sides same size."""
    n = len(adj)
    match_r = {}

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_r or augment(match_r[j], seen):
                match_r[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, set()):
            return False
    return True


@dataclass(frozen=True)
class LayerGraph:
    """Layer i: vertices are the i-subsets of the source vertices; an
    a-labeled edge U -> V marks an injective a-matching from U onto V.
    Layer 1 reproduces the source presentation (as a labeled relation)."""

    index: int
    lg: LabeledGraph
    subsets: tuple  # tuple of sorted vertex-id tuples


def layer_graph(lg: LabeledGraph, i: int) -> LayerGraph:
    if i < 1:
        raise ValueError("layer index must be >= 1")
    verts = lg.graph.vertices
    idx = lg.graph.index
    subsets = list(combinations(sorted(verts), i))
    name = {s: "{" + ",".join(s) + "}" for s in subsets}
    steps = lg.steps
    edges, labels = [], {}
    for a in lg.alphabet:
        step = steps[a]
        for U, V in product(subsets, subsets):
            adj = [
                [
                    j
                    for j, v in enumerate(V)
                    if idx[v] in step.get(idx[u], frozenset())
                ]
                for u in U
            ]
            if all(adj) and _has_perfect_matching(adj):
                eid = f"{name[U]}~{a}~{name[V]}"
                edges.append((name[U], name[V], eid))
                labels[eid] = a
    g = DirectedMultigraph.build([name[s] for s in subsets], edges)
    return LayerGraph(i, LabeledGraph.build(g, labels), tuple(subsets))


@dataclass(frozen=True)
class LayerDecomposition:
    """supports[(i, j)] = least periods contributed by points with exactly i
    mutually separated presentations whose layer-i presentation lies in
    irreducible component j."""

    N: int
    supports: tuple  # (((i, j), frozenset of periods), ...)
    witnesses: tuple  # ((period, word, layer, component), ...)

    @property
    def union(self) -> frozenset:
        out = set()
        for _, periods in self.supports:
            out |= periods
        return frozenset(out)

    def support_map(self) -> dict:
        return {k: v for (k, v) in self.supports}

    def to_json(self) -> list:
        return [
            {"period": p, "word": w, "layer": i, "component": j}
            for (p, w, i, j) in self.witnesses
        ]


def unique_preimage_lps(
    lg: LabeledGraph, N: int, budget: int = DEFAULT_WORD_BUDGET,
    max_states: int = 12,
) -> LayerDecomposition:
    """Classify every least period n <= N by the exact number of mutually
    separated presentations of a witnessing point and the layer component
    presenting it; the union over retained (layer, component) pairs is the
    full LPS on [1, N].

    Layer vertices are subsets of the presentation's states, so this is a
    desk-scale analysis; presentations beyond ``max_states`` states are
    refused as a resource limit.
    """
    nv = lg.graph.n
    if nv > max_states:
        raise ResourceLimitExceeded(
            f"layer analysis needs <= {max_states} states, got {nv}"
        )
    layer_objs = {}
    layer_sccs = {}

    def ensure_layer(i):
        if i in layer_objs:
            return layer_objs[i]
        if i == 1:
            obj = None
            steps = lg.steps
            nvert = nv
            base = lg
        else:
            obj = layer_graph(lg, i)
            steps = obj.lg.steps
            nvert = obj.lg.graph.n
            base = obj.lg
        dec = scc_decompose(base.graph)
        layer_objs[i] = (steps, nvert, base)
        layer_sccs[i] = dec
        return layer_objs[i]

    supports: dict = {}
    witnesses = []
    for n in range(1, N + 1):
        for w, rel1 in _periodic_words_exact_length(lg, n, budget=budget):
            if least_rotation_period(w) != n:
                continue
            if min_rotation(w) != w:
                continue
            sep = 1
            rel_at_sep = rel1
            i = 2
            while i <= nv:
                steps, nvert, _base = ensure_layer(i)
                rel = word_relation(steps, nvert, w)
                if relation_has_cycle(rel):
                    sep = i
                    rel_at_sep = rel
                    i += 1
                else:
                    break
            ensure_layer(sep)
            comps = _cycle_components(rel_at_sep, layer_objs[sep][2], layer_sccs[sep])
            for j in comps:
                supports.setdefault((sep, j), set()).add(n)
            witnesses.append((n, word_str(w), sep, min(comps)))
    return LayerDecomposition(
        N,
        tuple(sorted((k, frozenset(v)) for k, v in supports.items())),
        tuple(sorted(witnesses)),
    )


def _cycle_components(rel, base_lg: LabeledGraph, dec) -> set:
    """Layer components containing a cycle of the word relation."""
    verts = base_lg.graph.by_index
    n = len(verts)
    rgraph = DirectedMultigraph.build(
        [str(v) for v in range(n)],
        [(str(v), str(t), f"r{v}.{t}") for (v, t) in rel],
    )
    rdec = scc_decompose(rgraph)
    out = set()
    for i in rdec.nontrivial:
        member = next(iter(rdec.components[i]))
        out.add(dec.component_of(verts[int(member)]))
    return out
