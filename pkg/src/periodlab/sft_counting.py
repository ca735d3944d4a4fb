"""Periodic-point and least-period counting for edge shifts.

Produces exact count tables (p_n, q_n) and *certified* descriptors of the
period set {n : p_n > 0} and the least-period set supp(q_n). A certified
descriptor is correct for every n, not just below a horizon: tails are
established by elementary walk inequalities (superadditive basepoint return
counts against walk-count upper bounds), and everything below the certified
threshold is decided by exact sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import divisors, iroot, lcm, mobius
from .graph_core import (
    DirectedMultigraph,
    basepoint_return_attained,
    basepoint_return_counts,
    component_period,
    component_walk_counts,
    contract_chains,
    closed_walk_counts,
    essential_subgraph,
    max_walk_counts,
    scc_decompose,
)

_ROOT_DENOM = 1 << 16


class CertificationError(Exception):
    """A certified tail could not be established within internal caps."""


# -- forbidden-word specs and higher-block recoding ---------------------------


@dataclass(frozen=True)
class ForbiddenWordSpec:
    """A shift of finite type given by its alphabet and forbidden words."""

    alphabet: tuple[str, ...]
    forbidden: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbol")
        seen = set()
        for w in self.forbidden:
            if len(w) < 1:
                raise ValueError("forbidden words must have length >= 1")
            if any(a not in self.alphabet for a in w):
                raise ValueError(f"forbidden word {w!r} uses unknown symbols")
            if w in seen:
                raise ValueError(f"duplicate forbidden word {w!r}")
            seen.add(w)

    @classmethod
    def build(cls, alphabet, forbidden) -> "ForbiddenWordSpec":
        return cls(
            tuple(alphabet), tuple(tuple(w) for w in forbidden)
        )


def _contains_forbidden(block, forbidden) -> bool:
    for w in forbidden:
        k = len(w)
        if k <= len(block):
            for i in range(len(block) - k + 1):
                if block[i : i + k] == w:
                    return True
    return False


def higher_block_recode(spec: ForbiddenWordSpec) -> DirectedMultigraph:
    """Graph whose edge shift is conjugate to the SFT defined by ``spec``.

    Vertices are the allowed (L-1)-blocks and edges the allowed L-blocks,
    where L is the longest forbidden-word length (at least 2). Conjugacy
    preserves p_n and q_n for every n. Forbidding every length-1 word yields
    the empty graph (the empty shift).
    """
    L = max([2] + [len(w) for w in spec.forbidden])
    blocks = [()]
    for _ in range(L - 1):
        blocks = [b + (a,) for b in blocks for a in spec.alphabet]
    vertices = ["".join(b) for b in blocks if not _contains_forbidden(b, spec.forbidden)]
    vset = set(vertices)
    edges = []
    for v in vertices:
        prefix = tuple(v)
        for a in spec.alphabet:
            block = prefix + (a,)
            if _contains_forbidden(block, spec.forbidden):
                continue
            target = "".join(block[1:])
            if target in vset:
                edges.append((v, target, "".join(block)))
    return essential_subgraph(DirectedMultigraph.build(vertices, edges))


# -- count tables -------------------------------------------------------------


@dataclass(frozen=True)
class CountTable:
    """Exact sequences p_1..p_N and q_1..q_N, with p_n = sum_{k|n} q_k."""

    N: int
    p: tuple[int, ...]
    q: tuple[int, ...]

    def p_at(self, n: int) -> int:
        return self.p[n - 1]

    def q_at(self, n: int) -> int:
        return self.q[n - 1]

    def to_csv(self) -> str:
        lines = ["n,p,q"]
        for i in range(self.N):
            lines.append(f"{i + 1},{self.p[i]},{self.q[i]}")
        return "\n".join(lines)


def mobius_invert(p: list) -> list:
    """q_n = sum_{k|n} mu(n/k) p_k, for n = 1..len(p)."""
    q = []
    for n in range(1, len(p) + 1):
        q.append(sum(mobius(n // k) * p[k - 1] for k in divisors(n)))
    return q


def count_table(g: DirectedMultigraph, N: int) -> CountTable:
    """Exact p (closed-walk counts) and q (Möbius inversion) up to N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    p = closed_walk_counts(g, N)
    q = mobius_invert(p)
    for n, qn in enumerate(q, start=1):
        if qn < 0:
            raise AssertionError(f"negative q_{n}; counting bug")
    return CountTable(N, tuple(p), tuple(q))


# -- period-set descriptors ---------------------------------------------------


@dataclass(frozen=True)
class DescriptorComponent:
    """The set scale * ({n : n >= threshold} | extras)."""

    scale: int
    threshold: int
    extras: frozenset

    def contains(self, n: int) -> bool:
        if n <= 0 or n % self.scale:
            return False
        k = n // self.scale
        return k >= self.threshold or k in self.extras


@dataclass(frozen=True)
class PeriodSetDescriptor:
    """Exact finite representation of a set F | union of d_i * S_i
    (F finite, each S_i cofinite), in a canonical form.

    ``certified`` means membership agrees with ground truth for all n, not
    just below some horizon.
    """

    finite_part: frozenset
    components: tuple[DescriptorComponent, ...]
    certified: bool

    @classmethod
    def make(cls, finite=(), components=(), certified=False) -> "PeriodSetDescriptor":
        comps = [
            (int(d), int(t), frozenset(int(e) for e in extras))
            for (d, t, extras) in (
                (c.scale, c.threshold, c.extras) if isinstance(c, DescriptorComponent) else c
                for c in components
            )
        ]
        fin, comps = _canonicalize(set(int(x) for x in finite), comps)
        return cls(
            frozenset(fin),
            tuple(DescriptorComponent(d, t, frozenset(e)) for (d, t, e) in comps),
            bool(certified),
        )

    @classmethod
    def empty(cls, certified=True) -> "PeriodSetDescriptor":
        return cls.make((), (), certified)

    @classmethod
    def singleton(cls, n: int, certified=True) -> "PeriodSetDescriptor":
        return cls.make((n,), (), certified)

    def contains(self, n: int) -> bool:
        if n in self.finite_part:
            return True
        return any(c.contains(n) for c in self.components)

    def __contains__(self, n) -> bool:
        return self.contains(n)

    @property
    def is_empty(self) -> bool:
        return not self.finite_part and not self.components

    @property
    def is_finite(self) -> bool:
        return not self.components

    def members_upto(self, N: int) -> list[int]:
        return [n for n in range(1, N + 1) if self.contains(n)]

    def structural_bound(self) -> int:
        """All membership beyond this bound is tail-periodic."""
        b = max(self.finite_part, default=0)
        for c in self.components:
            b = max(b, c.scale * c.threshold, c.scale * max(c.extras, default=0))
        return b

    def tail_lcm(self) -> int:
        out = 1
        for c in self.components:
            out = lcm(out, c.scale)
        return out

    def to_json(self) -> dict:
        return {
            "finite": sorted(self.finite_part),
            "components": [
                {"d": c.scale, "threshold": c.threshold, "extras": sorted(c.extras)}
                for c in self.components
            ],
            "certified": self.certified,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PeriodSetDescriptor":
        return cls.make(
            data.get("finite", ()),
            [(c["d"], c["threshold"], c.get("extras", ())) for c in data.get("components", ())],
            data.get("certified", False),
        )


def _comp_contains(comp, n: int) -> bool:
    d, t, extras = comp
    if n <= 0 or n % d:
        return False
    k = n // d
    return k >= t or k in extras


def _comp_subsumed(a, b) -> bool:
    """Is the tail set of component a contained in that of component b?"""
    da, ta = a
    db, tb = b
    return da % db == 0 and da * ta >= db * tb


def _canonicalize(finite: set, comps: list):
    """Canonical form: extras are drained into the finite part, thresholds
    are pulled down over adjacent finite members, subsumed components are
    dropped, and the finite part is disjoint from every component."""
    work = []
    for d, t, extras in comps:
        if d < 1 or t < 1:
            raise ValueError("component needs scale >= 1 and threshold >= 1")
        for e in extras:
            if not 1 <= e < t:
                raise ValueError("extras must lie strictly below the threshold")
            finite.add(d * e)
        work.append((d, t))
    comps = work
    changed = True
    while changed:
        changed = False
        # threshold pull-down over adjacent finite members
        for i, (d, t) in enumerate(comps):
            while t > 1 and d * (t - 1) in finite:
                finite.discard(d * (t - 1))
                t -= 1
                changed = True
            comps[i] = (d, t)
        # drop subsumed components (keep the first of equals)
        comps.sort()
        kept = []
        for i, c in enumerate(comps):
            drop = False
            for j, other in enumerate(comps):
                if i == j:
                    continue
                if _comp_subsumed(c, other) and not (
                    j > i and _comp_subsumed(other, c)
                ):
                    drop = True
                    break
            if drop:
                changed = True
            else:
                kept.append(c)
        comps = kept
        # finite members covered by a component disappear
        for n in sorted(finite):
            if any(_comp_contains((d, t, ()), n) for (d, t) in comps):
                finite.discard(n)
                changed = True
    comps.sort()
    return finite, [(d, t, set()) for (d, t) in comps]


def descriptors_equal_sets(a: PeriodSetDescriptor, b: PeriodSetDescriptor) -> bool:
    """Exact set equality, decided by a sweep up to the joint periodic tail."""
    bound = max(a.structural_bound(), b.structural_bound())
    period = lcm(a.tail_lcm(), b.tail_lcm())
    horizon = bound + period
    return all(a.contains(n) == b.contains(n) for n in range(1, horizon + 1))


# -- certified descriptors ----------------------------------------------------


def _is_single_cycle(core, core_edges) -> bool:
    return (
        len(core) == 1
        and len(core_edges) == 1
        and core_edges[0][0] == core_edges[0][1]
    )


def _multiples_run_start(attained, d: int, a0: int, limit: int):
    """First k0 such that attained holds on d*k0, d*(k0+1), ..., certified by
    a run of a0/d consecutive attained multiples (returns concatenate)."""
    need = a0 // d
    run = 0
    k = 1
    while d * k <= limit:
        run = run + 1 if attained[d * k] else 0
        if run == need:
            return k - need + 1
        k += 1
    return None


def _return_structure(g, component, d):
    """Weighted core, basepoint, and the certified start w0 of the full
    d-multiple tail of basepoint return lengths."""
    core, core_edges = contract_chains(g, component)
    base = core[0]
    limit = 4 * d * max(
        2, sum(w for (_, _, w) in core_edges)
    )
    while True:
        attained = basepoint_return_attained(core, core_edges, base, limit)
        a0 = next((l for l in range(1, limit + 1) if attained[l]), None)
        if a0 is not None:
            k0 = _multiples_run_start(attained, d, a0, limit)
            if k0 is not None:
                return core, core_edges, base, d * k0, attained
        limit *= 2
        if limit > 10**6:
            raise CertificationError("no certified return tail within cap")


def ps_descriptor(g: DirectedMultigraph) -> PeriodSetDescriptor:
    """Certified descriptor of {n : tr(A^n) > 0}, assembled per component.

    Inside a component with period d, every closed-walk length is a multiple
    of d, basepoint returns give a certified all-multiples tail, and an exact
    sweep below the tail start decides the rest.
    """
    dec = scc_decompose(g)
    finite: set = set()
    comps = []
    for i in dec.nontrivial:
        component = dec.components[i]
        d = component_period(g, component)
        core, core_edges, base, w0, _ = _return_structure(g, component, d)
        tau = w0 // d
        if tau > 1:
            p = component_walk_counts(g, component, w0 - 1)
            extras = {k for k in range(1, tau) if p[d * k - 1] > 0}
        else:
            extras = set()
        comps.append((d, tau, extras))
    return PeriodSetDescriptor.make(finite, comps, certified=True)


def _floor_root_scaled(value: int, k: int, denom: int = _ROOT_DENOM) -> int:
    """Largest x with (x / denom) ** k <= value."""
    return iroot(value * denom**k, k)


_STEP_DENOM = 1 << 8  # coarse denominator for per-step growth factors


@dataclass(frozen=True)
class GrowthCertificate:
    """Certified growth data for one non-cycle irreducible component.

    The certified facts are:
      p_n >= (x / 2^8)^(n - w_prime)    for multiples n >= w_prime of d
      rho >= y / 2^16 > 1               (Perron-root lower bound)
      rho^j_upper <= walk_cap           (from max length-j walk counts)
    so summed p-tails are dominated and q-positivity thresholds follow from
    an exact integer inequality.
    """

    m: int
    d: int
    w_prime: int
    x: int
    y: int
    j_upper: int
    walk_cap: int


def _float_log(value: int) -> float:
    from math import log2

    if value <= 0:
        return float("-inf")
    if value.bit_length() <= 900:
        return log2(value)
    shift = value.bit_length() - 64
    return log2(value >> shift) + shift


def growth_certificate(g, component, d, core, core_edges, base, w0) -> GrowthCertificate:
    """Build the certificate, choosing the growth base K and the walk-bound
    exponent j by float preselection (only the final integer inequalities
    certify anything, so the selection is free to be heuristic)."""
    m = len(component)
    Dx, Dy = _STEP_DENOM, _ROOT_DENOM
    walk_caps = max_walk_counts(g, component, 160)
    best_j, best_wlog = None, None
    for j in range(1, len(walk_caps) + 1):
        wlog = _float_log(walk_caps[j - 1]) / j
        if best_wlog is None or wlog < best_wlog - 1e-12:
            best_j, best_wlog = j, wlog
    k_cap = max(8 * d, 96)
    while True:
        counts = basepoint_return_counts(core, core_edges, base, k_cap)
        K, best_clog = None, 0.0
        for k in range(d, k_cap + 1, d):
            if counts[k] >= 2:
                clog = _float_log(counts[k]) / k
                if clog > best_clog:
                    K, best_clog = k, clog
        x = _floor_root_scaled(counts[K], K, Dx) if K is not None else None
        y = None
        for k in range(d, k_cap + 1, d):
            if counts[k] > m:
                cand = _floor_root_scaled(counts[k] // m, k, Dy)
                if cand > Dy:
                    y = cand
                    break
        if (
            x is not None
            and x > Dx
            and y is not None
            and x ** (2 * best_j) > walk_caps[best_j - 1] * Dx ** (2 * best_j)
        ):
            return GrowthCertificate(m, d, w0 + K, x, y, best_j, walk_caps[best_j - 1])
        k_cap *= 2
        if k_cap > 8192:
            raise CertificationError("return growth too slow to certify")


def _estimate_crossing(log_deficit: float, log_ratio: float) -> int:
    if log_ratio <= 0:
        return 0
    return max(0, int(log_deficit / log_ratio) - 2)


def solve_q_positive_threshold(cert: GrowthCertificate, margin: int = 1) -> int:
    """Smallest certified n* (a multiple of d) such that for all multiples
    n >= n* of d:  lam^(n - w') * (rho_low - 1) > margin * m * W^((n+2)/(2j)).

    At margin 1 this makes q_n > 0; larger margins leave room to dominate
    another system's counts. A float estimate jump-starts the scan (the
    returned threshold is certified either way, just not always minimal).
    """
    Dx, Dy = _STEP_DENOM, _ROOT_DENOM
    d, w_prime = cert.d, cert.w_prime
    x, y, W, m = cert.x, cert.y, cert.walk_cap, cert.m
    j2 = 2 * cert.j_upper
    from math import log2

    log_lam = log2(x) - 8
    log_w = _float_log(W) / (2 * cert.j_upper)
    deficit = (
        log2(margin * m)
        + (w_prime + 2) * log_w
        - log2(max(y - Dy, 1)) + 16
    )
    est_steps = _estimate_crossing(deficit, d * (log_lam - log_w))
    n = ((w_prime + d) // d) * d + d * est_steps
    lhs = x ** (j2 * (n - w_prime)) * (y - Dy) ** j2
    rhs = (margin * m) ** j2 * W ** (n + 2) * Dx ** (j2 * (n - w_prime)) * Dy**j2
    lhs_step = x ** (j2 * d)
    rhs_step = W**d * Dx ** (j2 * d)
    iterations = 0
    while lhs <= rhs:
        n += d
        lhs *= lhs_step
        rhs *= rhs_step
        iterations += 1
        if iterations > 500_000:
            raise CertificationError("threshold search exceeded cap")
    return n


def solve_growth_dominates(cert: GrowthCertificate, bound_base: int, bound_cap: int, j_other: int) -> int:
    """Smallest certified n0 (multiple of d) such that for all multiples
    n >= n0:  lam^(n - w') >= 2 * bound_base * bound_cap^(n / j_other),
    i.e. the certified lower growth dominates another graph's walk-count
    upper bound. Requires lam^j_other > bound_cap (else CertificationError).
    """
    Dx = _STEP_DENOM
    d, w_prime, x = cert.d, cert.w_prime, cert.x
    if bound_cap < 1:
        bound_cap = 1
    if x**j_other <= bound_cap * Dx**j_other:
        raise CertificationError("growth rates do not separate")
    jo = j_other
    n = ((w_prime + d) // d) * d
    lhs = x ** (jo * (n - w_prime))
    rhs = (2 * bound_base) ** jo * bound_cap**n * Dx ** (jo * (n - w_prime))
    lhs_step = x ** (jo * d)
    rhs_step = bound_cap**d * Dx ** (jo * d)
    iterations = 0
    while lhs <= rhs:
        n += d
        lhs *= lhs_step
        rhs *= rhs_step
        iterations += 1
        if iterations > 500_000:
            raise CertificationError("domination search exceeded cap")
    return n


def _certified_lps_threshold(g, component, d, core, core_edges, base, w0):
    """Smallest certified tau (in units of d) with q_{d k} > 0 for all
    k >= tau in this component."""
    cert = growth_certificate(g, component, d, core, core_edges, base, w0)
    return solve_q_positive_threshold(cert) // d


def lps_descriptor_sft(g: DirectedMultigraph) -> PeriodSetDescriptor:
    """Certified descriptor of supp(q_n) for the edge shift of ``g``.

    Per nontrivial component: a single cycle of length c contributes {c};
    otherwise the component has period d and contributes d * (cofinite) with
    exact exceptions below a certified threshold. Results are united and
    canonicalized.
    """
    dec = scc_decompose(g)
    finite: set = set()
    comps = []
    for i in dec.nontrivial:
        component = dec.components[i]
        d = component_period(g, component)
        core, core_edges, base, w0, _ = _return_structure(g, component, d)
        if _is_single_cycle(core, core_edges):
            finite.add(core_edges[0][2])
            continue
        tau = _certified_lps_threshold(g, component, d, core, core_edges, base, w0)
        if tau > 1:
            p = component_walk_counts(g, component, d * (tau - 1))
            extras = set()
            for k in range(1, tau):
                n = d * k
                qn = sum(mobius(n // e) * p[e - 1] for e in divisors(n))
                if qn < 0:
                    raise AssertionError("negative least-period count")
                if qn > 0:
                    extras.add(k)
        else:
            extras = set()
        comps.append((d, tau, extras))
    return PeriodSetDescriptor.make(finite, comps, certified=True)
