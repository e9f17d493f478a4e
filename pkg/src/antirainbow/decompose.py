"""Bounded-degree forest decomposition of a graph.

The pipeline orients the graph along its degeneracy ordering and then
repeatedly peels one out-arc off every maximum-out-degree vertex.  Each
peel is a bipartite matching problem: vertices of out-degree d on the
left, c copies of their out-neighbourhood on the right, arcs as edges.
A saturating matching always exists when d exceeds the maximal density of
the digraph, and its arc set is a forest of maximum degree at most c+1.

Layer i collects the peel at out-degree threshold i; the layers F_K..F_{k+1}
(k = floor(m), K = floor(2m)) plus the residual partition the edge set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .density import ceil_fraction, format_fraction, max_density, parse_fraction
from .graphs import (
    Graph,
    GraphInputError,
    Orientation,
    degeneracy_ordering,
    exact_degeneracy,
    is_forest,
)


class DensityViolationError(RuntimeError):
    """Peel failure certificate: the digraph is denser than the assumed bound.

    Carries the Hall violator U (left vertices) whose copied neighbourhood
    is too small: |N+(U)| * copies < |U|, which forces m(J) > mu.
    """

    def __init__(
        self,
        hall_set: frozenset[int],
        out_neighborhood: frozenset[int],
        copies: int,
        mu: Fraction,
    ):
        self.hall_set = hall_set
        self.out_neighborhood = out_neighborhood
        self.copies = copies
        self.mu = mu
        super().__init__(
            f"no saturating matching: |N+(U)|={len(out_neighborhood)} with c={copies} "
            f"copies cannot cover |U|={len(hall_set)}, so the digraph is denser than "
            f"{format_fraction(mu)}"
        )


@dataclass(frozen=True)
class SaturationResult:
    """Either a left-saturating matching or a Hall violator."""

    matching: dict[Hashable, Hashable] | None
    violator: frozenset | None

    @property
    def saturated(self) -> bool:
        return self.matching is not None


def _hopcroft_karp(
    left: Sequence[Hashable], adjacency: Mapping[Hashable, Sequence[Hashable]]
) -> tuple[dict, dict]:
    """Maximum bipartite matching; deterministic given the input orders."""
    INF = float("inf")
    match_l: dict = {}
    match_r: dict = {}
    while True:
        # BFS layering from free left vertices
        dist = {}
        queue = []
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for r in adjacency.get(u, ()):
                w = match_r.get(r)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l, match_r

        def augment(u: Hashable) -> bool:
            for r in adjacency.get(u, ()):
                w = match_r.get(r)
                if w is None or (
                    dist.get(w, INF) == dist.get(u, INF) + 1 and augment(w)
                ):
                    match_l[u] = r
                    match_r[r] = u
                    return True
            dist[u] = INF
            return False

        for u in left:
            if u not in match_l:
                augment(u)


def saturating_matching(
    left: Sequence[Hashable],
    right: Sequence[Hashable],
    adjacency: Mapping[Hashable, Sequence[Hashable]],
) -> SaturationResult:
    """Find a matching saturating ``left``, or a Hall violator set.

    On failure the violator U satisfies |N(U)| < |U| and is extracted from
    the alternating reachability set of the final maximum matching.  On
    success a greedy pass re-points each left vertex (in order) at its
    lowest-indexed free neighbour, making the output canonical.
    """
    right_index = {r: i for i, r in enumerate(right)}
    adj = {u: list(adjacency.get(u, ())) for u in left}
    for u, rs in adj.items():
        for r in rs:
            if r not in right_index:
                raise GraphInputError(f"adjacency of {u!r} mentions unknown {r!r}")
    match_l, match_r = _hopcroft_karp(left, adj)

    free = [u for u in left if u not in match_l]
    if free:
        # alternating BFS: unmatched-edge left->right, matched-edge right->left
        reach_l = set(free)
        queue = list(free)
        while queue:
            u = queue.pop()
            for r in adj[u]:
                w = match_r.get(r)
                if w is not None and w not in reach_l:
                    reach_l.add(w)
                    queue.append(w)
        return SaturationResult(matching=None, violator=frozenset(reach_l))

    for u in left:
        current = right_index[match_l[u]]
        for r in adj[u]:
            i = right_index[r]
            if i >= current:
                continue
            if r not in match_r:
                del match_r[match_l[u]]
                match_l[u] = r
                match_r[r] = u
                current = i
    return SaturationResult(matching=dict(match_l), violator=None)


@dataclass(frozen=True)
class PeelResult:
    """One layer peeled off an orientation.

    forest_edge_ids index into the peeled orientation's base graph, as do
    kept_edge_ids, which map the remainder's edges back to that graph.
    """

    forest_edge_ids: frozenset[int]
    remainder: Orientation
    kept_edge_ids: tuple[int, ...]
    copies: int
    saturated: frozenset[int]

    def forest_arcs(self, source: Orientation) -> list[tuple[int, int, int]]:
        return [(eid,) + source.arc(eid) for eid in sorted(self.forest_edge_ids)]


def peel_layer(j: Orientation, d: int, mu: Fraction) -> PeelResult:
    """Split off a forest F containing one out-arc of every out-degree-d vertex.

    Requires d = max out-degree of j and d > mu.  With c = ceil(mu/(d-mu))
    copies of each out-neighbour on the right, a saturating matching exists
    whenever mu is at least the maximal density of the underlying graph;
    otherwise the matching fails and the Hall violator certifies the
    density excess (DensityViolationError).

    The matched arcs satisfy max out-degree 1 and max in-degree c, so F is
    a forest with max degree at most c + 1 = ceil(d/(d-mu)); every peeled
    vertex loses exactly one out-arc, so the remainder has max out-degree
    d - 1.
    """
    actual = j.max_out_degree()
    if actual != d:
        raise GraphInputError(f"max out-degree is {actual}, expected {d}")
    if not d > mu:
        raise GraphInputError(f"need d > mu, got d={d}, mu={format_fraction(mu)}")

    out_degs = j.out_degrees()
    saturated = sorted(v for v in range(j.base.vertex_count) if out_degs[v] == d)
    copies = ceil_fraction(mu / (d - mu))

    heads = sorted({j.arc(eid)[1] for u in saturated for eid in j.out_edges(u)})
    right = [(v, i) for v in heads for i in range(1, copies + 1)]
    adjacency = {
        u: [
            (head, i)
            for head in sorted(j.arc(eid)[1] for eid in j.out_edges(u))
            for i in range(1, copies + 1)
        ]
        for u in saturated
    }
    result = saturating_matching(saturated, right, adjacency)
    if not result.saturated:
        assert result.violator is not None
        violator = result.violator
        neigh = frozenset(j.arc(eid)[1] for u in violator for eid in j.out_edges(u))
        raise DensityViolationError(
            hall_set=frozenset(violator),
            out_neighborhood=neigh,
            copies=copies,
            mu=mu,
        )

    assert result.matching is not None
    arc_of = {}
    for u in saturated:
        head = result.matching[u][0]
        for eid in j.out_edges(u):
            if j.arc(eid)[1] == head:
                arc_of[u] = eid
                break
    forest_ids = frozenset(arc_of.values())
    kept = tuple(e for e in range(j.base.edge_count) if e not in forest_ids)
    remainder_graph = Graph(j.base.vertex_count, [j.base.edges[e] for e in kept])
    return PeelResult(
        forest_edge_ids=forest_ids,
        remainder=Orientation(remainder_graph, j.order),
        kept_edge_ids=kept,
        copies=copies,
        saturated=frozenset(saturated),
    )


@dataclass(frozen=True)
class Decomposition:
    """Forest layers F_K..F_{k+1} plus residual, with the certifying order.

    ``forests`` maps layer index i to the edge ids (of the original graph)
    in F_i; ``residual`` holds the edge ids of the final low-out-degree
    remainder.  Layers and residual partition the edge set.
    """

    m_value: Fraction
    k: int
    K: int
    order: tuple[int, ...]
    forests: dict[int, frozenset[int]] = field(default_factory=dict)
    residual: frozenset[int] = frozenset()

    def layer_indices(self) -> list[int]:
        return sorted(self.forests, reverse=True)

    def upper_union(self, j: int) -> frozenset[int]:
        """Edge ids of B_j, the union of layers strictly above j."""
        ids: set[int] = set()
        for i, layer in self.forests.items():
            if i > j:
                ids |= layer
        return frozenset(ids)

    def to_json_dict(self) -> dict:
        return {
            "m": format_fraction(self.m_value),
            "k": self.k,
            "K": self.K,
            "order": list(self.order),
            "layers": {str(i): sorted(self.forests[i]) for i in self.layer_indices()},
            "residual": sorted(self.residual),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Decomposition":
        try:
            return cls(
                m_value=parse_fraction(data["m"]),
                k=int(data["k"]),
                K=int(data["K"]),
                order=tuple(int(v) for v in data["order"]),
                forests={
                    int(i): frozenset(int(e) for e in ids)
                    for i, ids in data["layers"].items()
                },
                residual=frozenset(int(e) for e in data["residual"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphInputError(f"bad decomposition document: {exc}") from None


def degenerate_decomposition(g: Graph, tight_mu: bool = False) -> Decomposition:
    """Decompose g into forests F_K..F_{k+1} plus a k-degenerate residual.

    Orients g along its degeneracy ordering, then for i = K down to k+1
    peels layer F_i whenever the current max out-degree reaches i.  By
    default every peel uses mu = m(G); with ``tight_mu`` it recomputes the
    maximal density of the current remainder, which can only shrink the
    per-layer degree bounds.
    """
    if g.edge_count == 0:
        raise GraphInputError("decomposition needs at least one edge")
    m_val = max_density(g).value
    k = m_val.numerator // m_val.denominator
    K = (2 * m_val.numerator) // m_val.denominator
    order, _ = degeneracy_ordering(g)

    current = Orientation(g, order)
    ids = tuple(range(g.edge_count))
    forests: dict[int, frozenset[int]] = {}
    for i in range(K, k, -1):
        if current.max_out_degree() <= i - 1:
            forests[i] = frozenset()
            continue
        mu = max_density(current.base).value if tight_mu else m_val
        try:
            peel = peel_layer(current, i, mu)
        except DensityViolationError as exc:
            raise RuntimeError(
                f"internal invariant breach while peeling layer {i}: {exc}"
            ) from exc
        forests[i] = frozenset(ids[e] for e in peel.forest_edge_ids)
        ids = tuple(ids[e] for e in peel.kept_edge_ids)
        current = peel.remainder
    return Decomposition(
        m_value=m_val,
        k=k,
        K=K,
        order=order,
        forests=forests,
        residual=frozenset(ids),
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str

    def to_json_dict(self) -> dict:
        return {
            "check": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
        }


def _max_degree_of_edges(g: Graph, edge_ids: frozenset[int]) -> int:
    deg = [0] * g.vertex_count
    for e in edge_ids:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return max(deg, default=0)


def verify_decomposition(g: Graph, d: Decomposition) -> list[CheckResult]:
    """Re-check every decomposition guarantee against the graph.

    Clauses: the recorded density parameters match a recomputation; the
    layers plus residual partition E(G); each layer is a forest within its
    degree budget; for every k <= j <= K the upper union B_j is
    (K-j)-degenerate and its complement is j-degenerate, with the max
    degree of B_j within the summed layer budgets.
    """
    checks: list[CheckResult] = []
    m_val = d.m_value

    if g.edge_count:
        true_m = max_density(g).value
        params_ok = (
            m_val == true_m
            and d.k == true_m.numerator // true_m.denominator
            and d.K == (2 * true_m.numerator) // true_m.denominator
        )
        checks.append(
            CheckResult(
                "density_parameters",
                params_ok,
                f"recorded m={format_fraction(m_val)}, k={d.k}, K={d.K}; "
                f"recomputed m={format_fraction(true_m)}",
            )
        )

    all_ids: list[int] = sorted(d.residual) + [
        e for layer in d.forests.values() for e in layer
    ]
    covered = set(all_ids)
    distinct = len(covered) == len(all_ids)
    partition_ok = distinct and covered == set(range(g.edge_count))
    checks.append(
        CheckResult(
            "partition",
            partition_ok,
            f"{len(covered)} distinct ids over {g.edge_count} edges"
            + ("" if distinct else " (overlapping layers)"),
        )
    )

    for i in d.layer_indices():
        layer = d.forests[i]
        sub = g.edge_subgraph(layer)
        forest_ok = is_forest(sub)
        bound = ceil_fraction(Fraction(i) / (i - m_val))
        delta = _max_degree_of_edges(g, layer)
        checks.append(
            CheckResult(
                f"forest_F{i}",
                forest_ok,
                f"|F_{i}|={len(layer)}, acyclic={forest_ok}",
            )
        )
        checks.append(
            CheckResult(
                f"degree_F{i}",
                delta <= bound,
                f"max degree {delta} <= ceil({i}/({i}-{format_fraction(m_val)})) = {bound}",
            )
        )

    for j in range(d.k, d.K + 1):
        upper = d.upper_union(j)
        rest = frozenset(range(g.edge_count)) - upper
        upper_degen = exact_degeneracy(g.edge_subgraph(upper))
        rest_degen = exact_degeneracy(g.edge_subgraph(rest))
        checks.append(
            CheckResult(
                f"upper_degeneracy_B{j}",
                upper_degen <= d.K - j,
                f"degeneracy {upper_degen} <= {d.K - j}",
            )
        )
        checks.append(
            CheckResult(
                f"rest_degeneracy_j{j}",
                rest_degen <= j,
                f"degeneracy {rest_degen} <= {j}",
            )
        )
        budget = sum(
            _max_degree_of_edges(g, d.forests[i]) for i in d.forests if i > j
        )
        checks.append(
            CheckResult(
                f"upper_degree_B{j}",
                _max_degree_of_edges(g, upper) <= budget,
                f"max degree {_max_degree_of_edges(g, upper)} <= {budget}",
            )
        )

    return checks
