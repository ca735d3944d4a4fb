"""Directed multigraphs and exact closed-walk counting.

A :class:`DirectedMultigraph` is the edge-shift presentation everything else
in the package is built on: vertices are opaque string ids, parallel edges
and self-loops are allowed, and the adjacency matrix holds exact nonnegative
integers. All values are immutable after construction and every function
here is pure, so concurrent use on shared inputs is safe.

Counting is exact: matrix powers use arbitrary-precision integers, and for
large sparse graphs closed-walk counts are obtained by contracting forced
chains onto a weighted core and running a transfer DP (cross-checked against
the dense matrix powers in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .arith import word_least_period

DEFAULT_PATH_BUDGET = 2_000_000


class ResourceLimitExceeded(Exception):
    """Raised when a brute-force sweep would exceed its configured budget."""


@dataclass(frozen=True)
class DirectedMultigraph:
    """Finite directed multigraph with opaque string vertex and edge ids.

    ``edges`` holds ``(source, target, edge_id)`` triples. Edge ids are
    unique; endpoints must name existing vertices. Internal indices are
    assigned in the stored vertex order, which is preserved by the JSON
    round trip.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = set()
        for src, dst, eid in self.edges:
            if src not in seen or dst not in seen:
                raise ValueError(f"edge {eid!r} references missing vertex")
            if eid in ids:
                raise ValueError(f"duplicate edge id {eid!r}")
            ids.add(eid)

    @classmethod
    def build(cls, vertices, edges) -> "DirectedMultigraph":
        return cls(tuple(vertices), tuple((s, t, e) for (s, t, e) in edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict:
        """Deterministic internal indices, assigned by sorted vertex id."""
        return {v: i for i, v in enumerate(self.by_index)}

    @cached_property
    def by_index(self) -> tuple:
        return tuple(sorted(self.vertices))

    @cached_property
    def out_adj(self) -> tuple:
        """Per vertex index: tuple of (target index, edge id)."""
        adj = [[] for _ in self.vertices]
        idx = self.index
        for src, dst, eid in self.edges:
            adj[idx[src]].append((idx[dst], eid))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def adjacency(self) -> tuple:
        """Adjacency matrix rows; entry (u, v) counts edges u -> v."""
        m = [[0] * self.n for _ in self.vertices]
        idx = self.index
        for src, dst, _ in self.edges:
            m[idx[src]][idx[dst]] += 1
        return tuple(tuple(r) for r in m)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "from": s, "to": t} for (s, t, e) in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DirectedMultigraph":
        return cls.build(
            data["vertices"],
            [(e["from"], e["to"], e["id"]) for e in data["edges"]],
        )

    def to_dot(self, labels=None) -> str:
        lines = ["digraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for src, dst, eid in self.edges:
            tag = eid if labels is None else f"{eid}:{labels[eid]}"
            lines.append(f'  "{src}" -> "{dst}" [label="{tag}"];')
        lines.append("}")
        return "\n".join(lines)

    @classmethod
    def from_dot(cls, text: str) -> "DirectedMultigraph":
        """Parse the DOT dialect emitted by :meth:`to_dot` (lossless)."""
        import re

        vertices, edges = [], []
        edge_re = re.compile(r'^"(.*)" -> "(.*)" \[label="([^:"]*)(?::.*)?"\];$')
        vert_re = re.compile(r'^"(.*)";$')
        for raw in text.splitlines():
            line = raw.strip()
            if line in ("digraph {", "}") or not line:
                continue
            m = edge_re.match(line)
            if m:
                edges.append((m.group(1), m.group(2), m.group(3)))
                continue
            m = vert_re.match(line)
            if m:
                vertices.append(m.group(1))
                continue
            raise ValueError(f"unparseable DOT line: {raw!r}")
        return cls.build(vertices, edges)


@dataclass(frozen=True)
class Cycle:
    """A closed edge-path: ``edge_ids`` returns to ``start``."""

    start: str
    edge_ids: tuple[str, ...]

    def __len__(self):
        return len(self.edge_ids)

    def least_period(self) -> int:
        """Least period of the bi-infinite repetition of this edge sequence."""
        return word_least_period(self.edge_ids)


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components plus their acyclic condensation.

    A component is trivial iff it contains no edge (hence no cycle).
    """

    components: tuple[frozenset, ...]
    is_trivial: tuple[bool, ...]
    condensation_edges: frozenset

    def component_of(self, v: str) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise KeyError(v)

    @property
    def nontrivial(self) -> list[int]:
        return [i for i, t in enumerate(self.is_trivial) if not t]


def scc_decompose(g: DirectedMultigraph) -> SccDecomposition:
    """Tarjan's algorithm (iterative); components ordered canonically."""
    n = g.n
    adj = g.out_adj
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = [1]

    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                visited[v] = True
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while ei < len(adj[v]):
                w = adj[v][ei][0]
                ei += 1
                if not visited[w]:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])

    comp_sets = [frozenset(g.by_index[i] for i in c) for c in comps]
    order = sorted(range(len(comp_sets)), key=lambda i: sorted(comp_sets[i]))
    comp_sets = [comp_sets[i] for i in order]
    member = {}
    for i, c in enumerate(comp_sets):
        for v in c:
            member[v] = i
    trivial = [True] * len(comp_sets)
    cond = set()
    for src, dst, _ in g.edges:
        a, b = member[src], member[dst]
        if a == b:
            trivial[a] = False
        else:
            cond.add((a, b))
    return SccDecomposition(tuple(comp_sets), tuple(trivial), frozenset(cond))


def component_period(g: DirectedMultigraph, component) -> int:
    """gcd of all cycle lengths inside a nontrivial SCC, via BFS level gcds.

    No cycle enumeration: for every intra-component edge u -> v the value
    level(u) + 1 - level(v) contributes to the gcd.
    """
    comp = set(component)
    intra = [(s, t) for (s, t, _) in g.edges if s in comp and t in comp]
    if not intra:
        raise ValueError("component has no internal edge; period undefined")
    succ: dict = {v: [] for v in comp}
    for s, t in intra:
        succ[s].append(t)
    root = min(comp)
    level = {root: 0}
    queue = [root]
    while queue:
        u = queue.pop()
        for t in succ[u]:
            if t not in level:
                level[t] = level[u] + 1
                queue.append(t)
    d = 0
    for s, t in intra:
        d = gcd(d, level[s] + 1 - level[t])
    return abs(d)


def _mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matrix_power(m, k: int):
    """Exact k-th power of a square integer matrix by binary exponentiation."""
    n = len(m)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(r) for r in m]
    while k:
        if k & 1:
            result = _mat_mul(result, base)
        k >>= 1
        if k:
            base = _mat_mul(base, base)
    return result


def trace_power(g: DirectedMultigraph, n: int) -> int:
    """Exact trace of the n-th adjacency power: the number of closed
    edge-paths of length n counted with starting phase."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if g.n == 0:
        return 0
    p = matrix_power(g.adjacency, n)
    return sum(p[i][i] for i in range(g.n))


def enumerate_closed_paths(
    g: DirectedMultigraph, N: int, max_total: int = DEFAULT_PATH_BUDGET
) -> dict:
    """Complete list of closed edge-paths of each length n <= N.

    The count for each n equals ``trace_power(g, n)``. Raises
    :class:`ResourceLimitExceeded` when the sweep would record more than
    ``max_total`` paths; an empty result is returned as empty lists.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    result: dict = {k: [] for k in range(1, N + 1)}
    adj = g.out_adj
    total = 0
    visits = 0
    visit_budget = 50 * max_total
    for s in range(g.n):
        start_id = g.by_index[s]
        path: list[str] = []
        # stack of iterators over out-edges
        stack = [iter(adj[s])]
        while stack:
            it = stack[-1]
            step = next(it, None)
            if step is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            visits += 1
            if visits > visit_budget:
                raise ResourceLimitExceeded(
                    f"path sweep visit budget exceeded at N={N}"
                )
            target, eid = step
            path.append(eid)
            if target == s:
                total += 1
                if total > max_total:
                    raise ResourceLimitExceeded(
                        f"more than {max_total} closed paths at N={N}"
                    )
                result[len(path)].append(Cycle(start_id, tuple(path)))
            if len(path) < N:
                stack.append(iter(adj[target]))
            else:
                path.pop()
    return result


def essential_subgraph(g: DirectedMultigraph) -> DirectedMultigraph:
    """Maximal subgraph in which every vertex lies on a bi-infinite walk."""
    alive = set(g.vertices)
    changed = True
    while changed:
        changed = False
        outs = {v: 0 for v in alive}
        ins = {v: 0 for v in alive}
        for s, t, _ in g.edges:
            if s in alive and t in alive:
                outs[s] += 1
                ins[t] += 1
        for v in list(alive):
            if outs[v] == 0 or ins[v] == 0:
                alive.discard(v)
                changed = True
    return DirectedMultigraph.build(
        [v for v in g.vertices if v in alive],
        [(s, t, e) for (s, t, e) in g.edges if s in alive and t in alive],
    )


def induced_subgraph(g: DirectedMultigraph, vertex_set) -> DirectedMultigraph:
    keep = set(vertex_set)
    return DirectedMultigraph.build(
        [v for v in g.vertices if v in keep],
        [(s, t, e) for (s, t, e) in g.edges if s in keep and t in keep],
    )


def disjoint_union(graphs) -> DirectedMultigraph:
    """Disjoint union with deterministic relabeling ``c<i>.<id>``."""
    vertices, edges = [], []
    for i, g in enumerate(graphs):
        pre = f"c{i}."
        vertices.extend(pre + v for v in g.vertices)
        edges.extend((pre + s, pre + t, pre + e) for (s, t, e) in g.edges)
    return DirectedMultigraph.build(vertices, edges)


def subdivide_edges(g: DirectedMultigraph, d: int) -> DirectedMultigraph:
    """Replace every edge by a directed path of d edges (d - 1 new vertices).

    Multiplies every closed-walk length by exactly d.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return g
    vertices = list(g.vertices)
    edges = []
    for src, dst, eid in g.edges:
        prev = src
        for j in range(1, d):
            mid = f"{eid}@{j}"
            vertices.append(mid)
            edges.append((prev, mid, f"{eid}#{j}"))
            prev = mid
        edges.append((prev, dst, f"{eid}#{d}"))
    return DirectedMultigraph.build(vertices, edges)


# -- weighted-core machinery -------------------------------------------------
#
# Inside one strongly connected component, vertices with a single in-edge and
# a single out-edge never offer a choice to a walk, so chains contract onto a
# small "core" whose edges carry integer lengths. Closed-walk counts of the
# original component are recovered from transfer DPs on the core: a closed
# walk based at an interior vertex of a length-w core edge (u -> x) is a walk
# x -> u of the complementary length, giving the (w - 1) correction term.


def contract_chains(g: DirectedMultigraph, component):
    """Weighted core of a component: (core vertex list, [(u, v, weight)])."""
    comp = sorted(component)
    in_e: dict = {v: [] for v in comp}
    out_e: dict = {v: [] for v in comp}
    edges = []
    cset = set(comp)
    for s, t, _ in g.edges:
        if s in cset and t in cset:
            edges.append([s, t, 1])
    for e in edges:
        out_e[e[0]].append(e)
        in_e[e[1]].append(e)
    removed = set()
    changed = True
    while changed:
        changed = False
        for v in comp:
            if v in removed:
                continue
            if len(in_e[v]) == 1 and len(out_e[v]) == 1:
                ein = in_e[v][0]
                eout = out_e[v][0]
                if ein is eout:  # self-loop vertex, keep
                    continue
                merged = [ein[0], eout[1], ein[2] + eout[2]]
                out_e[ein[0]].remove(ein)
                in_e[eout[1]].remove(eout)
                out_e[merged[0]].append(merged)
                in_e[merged[1]].append(merged)
                removed.add(v)
                in_e[v] = []
                out_e[v] = []
                changed = True
    core = [v for v in comp if v not in removed]
    core_edges = []
    for v in core:
        for e in out_e[v]:
            core_edges.append((e[0], e[1], e[2]))
    core_edges.sort()
    return core, core_edges


def component_walk_counts(g: DirectedMultigraph, component, N: int) -> list:
    """[p_1 .. p_N] closed-walk counts within one nontrivial component."""
    core, core_edges = contract_chains(g, component)
    k = len(core)
    idx = {v: i for i, v in enumerate(core)}
    by_target_rev: list = [[] for _ in range(k)]  # edges grouped for DP step
    max_w = 1
    for u, v, w in core_edges:
        by_target_rev[idx[u]].append((idx[v], w))
        max_w = max(max_w, w)
    # walks_to[u][ell % window][y] = number of walks y -> u of length ell
    window = max_w + 1
    layers = [[[0] * k for _ in range(k)] for _ in range(window)]
    for u in range(k):
        layers[0][u][u] = 1
    interior = [(idx[u], idx[v], w) for (u, v, w) in core_edges if w > 1]
    p = [0] * (N + 1)
    for ell in range(1, N + 1):
        cur = [[0] * k for _ in range(k)]
        for u in range(k):
            row_u = cur[u]
            for y in range(k):
                total = 0
                for x, w in by_target_rev[y]:
                    if w <= ell:
                        total += layers[(ell - w) % window][u][x]
                row_u[y] = total
        layers[ell % window] = cur
        s = sum(cur[u][u] for u in range(k))
        for u, x, w in interior:
            if ell - w >= 0:
                s += (w - 1) * layers[(ell - w) % window][u][x]
            # ell == w with x == u handled by the same lookup (layer 0)
        p[ell] = s
    return p[1:]


def closed_walk_counts(g: DirectedMultigraph, N: int) -> list:
    """[p_1 .. p_N] for the whole graph; closed walks live inside components."""
    if g.n == 0 or N < 1:
        return [0] * max(N, 0)
    dec = scc_decompose(g)
    totals = [0] * N
    for i in dec.nontrivial:
        comp = dec.components[i]
        for j, val in enumerate(component_walk_counts(g, comp, N)):
            totals[j] += val
    return totals


def basepoint_return_counts(core, core_edges, base, N: int) -> list:
    """[c_0 .. c_N]: walks base -> base of each length on a weighted core.

    Superadditive: c(a + b) >= c(a) * c(b), since returns concatenate.
    """
    k = len(core)
    idx = {v: i for i, v in enumerate(core)}
    b = idx[base]
    grouped: list = [[] for _ in range(k)]
    max_w = 1
    for u, v, w in core_edges:
        grouped[idx[u]].append((idx[v], w))
        max_w = max(max_w, w)
    window = max_w + 1
    layers = [[0] * k for _ in range(window)]
    layers[0][b] = 1
    out = [1] + [0] * N
    for ell in range(1, N + 1):
        cur = [0] * k
        for y in range(k):
            total = 0
            for x, w in grouped[y]:
                if w <= ell:
                    total += layers[(ell - w) % window][x]
            cur[y] = total
        layers[ell % window] = cur
        out[ell] = cur[b]
    return out


def basepoint_return_attained(core, core_edges, base, N: int) -> bytearray:
    """attained[ell] = 1 iff some walk base -> base of length ell exists."""
    k = len(core)
    idx = {v: i for i, v in enumerate(core)}
    b = idx[base]
    grouped: list = [[] for _ in range(k)]
    max_w = 1
    for u, v, w in core_edges:
        grouped[idx[u]].append((idx[v], w))
        max_w = max(max_w, w)
    window = max_w + 1
    layers = [[False] * k for _ in range(window)]
    layers[0][b] = True
    out = bytearray(N + 1)
    out[0] = 1
    for ell in range(1, N + 1):
        cur = [False] * k
        for y in range(k):
            for x, w in grouped[y]:
                if w <= ell and layers[(ell - w) % window][x]:
                    cur[y] = True
                    break
        layers[ell % window] = cur
        out[ell] = 1 if cur[b] else 0
    return out


def max_walk_counts(g: DirectedMultigraph, component, J: int) -> list:
    """[W_1 .. W_J]: W_j = max over component vertices of the number of
    length-j walks staying in the component (a certified upper bound
    W_j ** (1/j) for the component's Perron root)."""
    comp = sorted(component)
    idx = {v: i for i, v in enumerate(comp)}
    succ: list = [[] for _ in comp]
    cset = set(comp)
    for s, t, _ in g.edges:
        if s in cset and t in cset:
            succ[idx[s]].append(idx[t])
    vec = [1] * len(comp)
    out = []
    for _ in range(J):
        vec = [sum(vec[t] for t in succ[v]) for v in range(len(comp))]
        out.append(max(vec) if vec else 0)
    return out
