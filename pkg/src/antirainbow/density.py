"""Exact rational density functionals.

Every density here is a ``fractions.Fraction``; no decision path ever
touches floating point.  The two optimized quantities are

* maximal density  m(G)  = max over nonempty subgraphs of e/v, and
* maximum 2-density m2(H) = max over subgraphs on >= 3 vertices of
  (e-1)/(v-2), floored at 1/2.

m(G) is computed by a densest-subgraph min-cut reduction iterated to the
exact optimum; m2 by exhaustive subset enumeration (both of them have
independent brute-force twins used by the test suite).
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graphs import Graph, GraphInputError

BRUTEFORCE_VERTEX_LIMIT = 16
TWO_DENSITY_VERTEX_LIMIT = 24


def format_fraction(x: Fraction) -> str:
    """Serialize as "p/q" (always with an explicit denominator)."""
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphInputError(f"bad rational {text!r}: {exc}") from None


@dataclass(frozen=True)
class DensityWitness:
    """An optimal subgraph together with the exact value it realizes."""

    value: Fraction
    vertices: frozenset[int]
    edge_count: int
    vertex_count: int


def _induced_edge_count(g: Graph, s: frozenset[int] | set[int]) -> int:
    return sum(1 for u, v in g.edges if u in s and v in s)


def subgraph_density(g: Graph, s: Iterable[int]) -> Fraction:
    """e(g[s]) / |s|, exactly."""
    ss = set(s)
    if not ss:
        raise GraphInputError("subgraph density of an empty vertex set")
    if any(v < 0 or v >= g.vertex_count for v in ss):
        raise GraphInputError("vertex set not contained in the graph")
    return Fraction(_induced_edge_count(g, ss), len(ss))


# -- maximal density via min-cut ---------------------------------------------


class _Dinic:
    """Integer max-flow (Dinic) on a small dense network."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for eid in self.head[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow

            # one blocking-flow phase: iterative DFS over the level graph
            it = [0] * self.n
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    pushed = min(self.cap[eid] for eid in path)
                    for eid in path:
                        self.cap[eid] -= pushed
                        self.cap[eid ^ 1] += pushed
                    flow += pushed
                    cut = next(
                        i for i, eid in enumerate(path) if self.cap[eid] == 0
                    )
                    del path[cut:]
                    u = self.to[path[-1]] if path else s
                    continue
                advanced = False
                while it[u] < len(self.head[u]):
                    eid = self.head[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        path.append(eid)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if advanced:
                    continue
                if u == s:
                    break  # phase exhausted
                level[u] = -1  # dead end this phase
                u = self.to[path.pop() ^ 1]

    def min_cut_source_side(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual network (after max_flow)."""
        seen = {s}
        queue = [s]
        for u in queue:
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def _denser_subgraph(g: Graph, guess: Fraction) -> set[int] | None:
    """A vertex set with density strictly above ``guess``, or None.

    Goldberg's network: with all capacities scaled by the denominator of
    ``guess``, the min cut drops below m*n*b exactly when some nonempty S
    has e(S) > guess*|S|; the source side of the cut is such an S.
    """
    n, m = g.vertex_count, g.edge_count
    a, b = guess.numerator, guess.denominator
    source, sink = n, n + 1
    net = _Dinic(n + 2)
    for v in range(n):
        net.add_edge(source, v, m * b)
        net.add_edge(v, sink, m * b + 2 * a - g.degree(v) * b)
    for u, v in g.edges:
        net.add_edge(u, v, b)
        net.add_edge(v, u, b)
    flow = net.max_flow(source, sink)
    if flow >= m * n * b:
        return None
    side = net.min_cut_source_side(source)
    side.discard(source)
    return side


def max_density(g: Graph) -> DensityWitness:
    """Exact m(G) with an optimal witness, by iterated min-cut refinement.

    Starting from the whole vertex set, each round asks the cut network for
    a subgraph strictly denser than the current candidate and re-anchors on
    it; densities are exact rationals so the loop terminates at the optimum.
    """
    if g.edge_count == 0:
        raise GraphInputError("maximal density is undefined for an edgeless graph")
    best = set(range(g.vertex_count))
    best_val = Fraction(g.edge_count, g.vertex_count)
    while True:
        better = _denser_subgraph(g, best_val)
        if better is None:
            break
        best = better
        best_val = Fraction(_induced_edge_count(g, best), len(best))
    return DensityWitness(
        value=best_val,
        vertices=frozenset(best),
        edge_count=_induced_edge_count(g, best),
        vertex_count=len(best),
    )


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _subset_edge_counts(g: Graph) -> array:
    """edge counts e(S) for every vertex subset S, indexed by bitmask."""
    n = g.vertex_count
    masks = g.adjacency_masks()
    counts = array("i", bytes(4 << n))
    for s in range(1, 1 << n):
        low = s & (-s)
        v = low.bit_length() - 1
        rest = s ^ low
        counts[s] = counts[rest] + (masks[v] & rest).bit_count()
    return counts


def max_density_bruteforce(g: Graph) -> DensityWitness:
    """m(G) by exhaustive subset enumeration (oracle twin of max_density).

    Ties broken by the lexicographically smallest vertex set.
    """
    if g.vertex_count > BRUTEFORCE_VERTEX_LIMIT:
        raise GraphInputError(
            f"brute force limited to {BRUTEFORCE_VERTEX_LIMIT} vertices"
        )
    if g.edge_count == 0:
        raise GraphInputError("maximal density is undefined for an edgeless graph")
    counts = _subset_edge_counts(g)
    best_e, best_v, best_mask = 0, 1, 1  # the single vertex 0
    for s in range(1, 1 << g.vertex_count):
        e = counts[s]
        v = s.bit_count()
        if e * best_v > best_e * v:
            best_e, best_v, best_mask = e, v, s
        elif e * best_v == best_e * v and _mask_vertices(s) < _mask_vertices(best_mask):
            best_e, best_v, best_mask = e, v, s
    return DensityWitness(
        value=Fraction(best_e, best_v),
        vertices=frozenset(_mask_vertices(best_mask)),
        edge_count=best_e,
        vertex_count=best_v,
    )


# -- 2-density ----------------------------------------------------------------


def two_density(h: Graph) -> Fraction:
    """(e - 1) / (v - 2) of the whole graph; needs at least 3 vertices."""
    if h.vertex_count < 3:
        raise GraphInputError("2-density needs at least 3 vertices")
    return Fraction(h.edge_count - 1, h.vertex_count - 2)


def max_two_density(h: Graph) -> DensityWitness:
    """Exact m2(H) with a witness when a subgraph attains it.

    Maximum of (e-1)/(v-2) over vertex subsets of size >= 3 (induced
    subgraphs dominate), floored at 1/2.  When the result is the bare 1/2
    floor with no attaining subgraph the witness fields are empty.
    """
    if h.vertex_count > TWO_DENSITY_VERTEX_LIMIT:
        raise GraphInputError(
            f"2-density search limited to {TWO_DENSITY_VERTEX_LIMIT} vertices"
        )
    half = Fraction(1, 2)
    if h.vertex_count < 3:
        return DensityWitness(half, frozenset(), 0, 0)
    counts = _subset_edge_counts(h)
    best_e = best_v = 0
    best_mask = -1
    for s in range(1, 1 << h.vertex_count):
        v = s.bit_count()
        if v < 3:
            continue
        e = counts[s]
        if best_mask < 0 or (e - 1) * (best_v - 2) > (best_e - 1) * (v - 2):
            best_e, best_v, best_mask = e, v, s
        elif (e - 1) * (best_v - 2) == (best_e - 1) * (v - 2) and _mask_vertices(
            s
        ) < _mask_vertices(best_mask):
            best_e, best_v, best_mask = e, v, s
    value = Fraction(best_e - 1, best_v - 2)
    if value < half:
        return DensityWitness(half, frozenset(), 0, 0)
    return DensityWitness(
        value=value,
        vertices=frozenset(_mask_vertices(best_mask)),
        edge_count=best_e,
        vertex_count=best_v,
    )


def is_strictly_two_balanced(h: Graph) -> bool:
    """True iff the whole graph's 2-density strictly beats every proper subgraph.

    Equivalent formulation used here: d2(H) = m2(H) and every proper vertex
    subset on >= 3 vertices induces strictly smaller d2 (edge-deleted
    subgraphs on the full vertex set lose density automatically).
    """
    if h.vertex_count < 3 or h.vertex_count > TWO_DENSITY_VERTEX_LIMIT:
        return False
    mu = two_density(h)
    counts = _subset_edge_counts(h)
    full = (1 << h.vertex_count) - 1
    for s in range(1, 1 << h.vertex_count):
        if s == full or s.bit_count() < 3:
            continue
        if Fraction(counts[s] - 1, s.bit_count() - 2) >= mu:
            return False
    return True


def strictly_two_balanced_core(h: Graph) -> Graph:
    """A subgraph attaining m2(H) whose proper subgraphs all fall short.

    Takes the smallest vertex set whose induced subgraph attains m2(H)
    (lexicographically smallest among those); minimality makes the induced
    subgraph strictly 2-balanced.  Vertices are relabelled densely in
    ascending order of their original ids.
    """
    if h.vertex_count > TWO_DENSITY_VERTEX_LIMIT:
        raise GraphInputError(
            f"2-density search limited to {TWO_DENSITY_VERTEX_LIMIT} vertices"
        )
    top = max_two_density(h)
    if not top.vertices:
        raise GraphInputError("maximum 2-density is not attained by any subgraph")
    mu = top.value
    counts = _subset_edge_counts(h)
    best: tuple[int, tuple[int, ...]] | None = None
    for s in range(1, 1 << h.vertex_count):
        v = s.bit_count()
        if v < 3:
            continue
        if Fraction(counts[s] - 1, v - 2) != mu:
            continue
        key = (v, _mask_vertices(s))
        if best is None or key < best:
            best = key
    assert best is not None
    return h.induced_subgraph(best[1])


def ceil_fraction(x: Fraction) -> int:
    """Exact ceiling of a rational."""
    return math.ceil(x)
