"""Verification tools for the anti-rainbow guarantee.

Three families of checks live here: a rainbow-copy search (backtracking
subgraph isomorphism pruned by colour reuse), the degeneracy-distance
bound with its exact brute-force twin, and the certificate that the
colouring's palette budgets satisfy the inequalities the guarantee rests
on.  Everything returns data; nothing here mutates the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coloring import RESIDUAL, EdgeColoring, layer_tag, r_value
from .decompose import CheckResult, Decomposition
from .density import ceil_fraction, format_fraction
from .graphs import Graph, GraphInputError

DEGENERATE_ORACLE_LIMIT = 10


class AuditBudgetError(RuntimeError):
    """Raised when subgraph enumeration exceeds its step budget."""

    def __init__(self, budget: int, partial: list["RainbowViolation"]):
        self.budget = budget
        self.partial = partial
        super().__init__(
            f"enumeration budget of {budget} steps exceeded; "
            f"{len(partial)} violations found so far"
        )


@dataclass(frozen=True)
class Embedding:
    """A copy of the pattern inside the host."""

    pattern: Graph
    mapping: dict[int, int]
    edge_images: dict[int, int]


def _pattern_order(h: Graph) -> list[int]:
    """Static search order: highest degree first, then most placed neighbours."""
    order: list[int] = []
    placed: set[int] = set()
    degs = h.degrees()
    while len(order) < h.vertex_count:
        best = None
        for v in range(h.vertex_count):
            if v in placed:
                continue
            anchored = sum(1 for w in h.neighbors(v) if w in placed)
            key = (anchored, degs[v], -v)
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        placed.add(best[1])
    return order


def rainbow_copy_search(
    g: Graph, c: EdgeColoring, h: Graph
) -> Embedding | None:
    """First rainbow copy of h in (g, c) in canonical order, or None.

    Branches are cut as soon as two mapped edges share a colour, and a
    global pigeonhole check (fewer distinct colours than pattern edges)
    answers immediately; that is what makes whole-host patterns cheap.
    """
    if h.edge_count == 0:
        raise GraphInputError("pattern must have at least one edge")
    missing = [e for e in range(g.edge_count) if e not in c.color]
    if missing:
        raise GraphInputError(f"uncoloured edges: {missing[:5]}")
    if c.color_count() < h.edge_count:
        return None

    order = _pattern_order(h)
    h_degs = h.degrees()
    g_degs = g.degrees()
    mapping: dict[int, int] = {}
    used_hosts: set[int] = set()
    used_colors: set[int] = set()
    edge_images: dict[int, int] = {}

    host_edge = {}
    for eid, (u, v) in enumerate(g.edges):
        host_edge[(u, v)] = eid
        host_edge[(v, u)] = eid

    def candidates(pv: int) -> list[int]:
        anchored = [w for w in h.neighbors(pv) if w in mapping]
        if anchored:
            first = mapping[anchored[0]]
            pool = sorted(g.neighbors(first))
        else:
            pool = list(range(g.vertex_count))
        return [x for x in pool if x not in used_hosts and g_degs[x] >= h_degs[pv]]

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        pv = order[idx]
        for gv in candidates(pv):
            new_edges: list[tuple[int, int]] = []
            ok = True
            for w in h.neighbors(pv):
                if w not in mapping:
                    continue
                key = (gv, mapping[w])
                eid = host_edge.get(key)
                if eid is None:
                    ok = False
                    break
                col = c.color[eid]
                if col in used_colors or any(
                    c.color[e2] == col for _, e2 in new_edges
                ):
                    ok = False
                    break
                h_eid = next(
                    e
                    for e in h.adjacency[pv]
                    if h.other_endpoint(e, pv) == w
                )
                new_edges.append((h_eid, eid))
            if not ok:
                continue
            mapping[pv] = gv
            used_hosts.add(gv)
            for h_eid, g_eid in new_edges:
                edge_images[h_eid] = g_eid
                used_colors.add(c.color[g_eid])
            if extend(idx + 1):
                return True
            for h_eid, g_eid in new_edges:
                del edge_images[h_eid]
                used_colors.discard(c.color[g_eid])
            used_hosts.discard(gv)
            del mapping[pv]
        return False

    if extend(0):
        return Embedding(pattern=h, mapping=dict(mapping), edge_images=dict(edge_images))
    return None


def max_degenerate_subgraph_edges(h: Graph, d: int) -> int:
    """Maximum edge count of a d-degenerate spanning subgraph of h, exactly.

    Dynamic program over vertex subsets: eliminating v first from suffix
    set S lets it keep up to d of its edges into S \\ {v}, and the rest of
    the suffix is solved independently.
    """
    if h.vertex_count > DEGENERATE_ORACLE_LIMIT:
        raise GraphInputError(
            f"exact search limited to {DEGENERATE_ORACLE_LIMIT} vertices"
        )
    if d < 0:
        raise GraphInputError("degeneracy bound must be nonnegative")
    n = h.vertex_count
    masks = h.adjacency_masks()
    best = [0] * (1 << n)
    for s in range(1, 1 << n):
        acc = 0
        rest_bits = s
        while rest_bits:
            low = rest_bits & (-rest_bits)
            rest_bits ^= low
            v = low.bit_length() - 1
            without = s ^ low
            val = best[without] + min(d, (masks[v] & without).bit_count())
            if val > acc:
                acc = val
        best[s] = acc
    return best[(1 << n) - 1]


def degeneracy_gap_bound(
    h: Graph, d: int, k: int, eps: Fraction
) -> Fraction:
    """Lower bound on edges any d-degenerate subgraph must give up.

    For a graph with (e-1)/(v-2) >= k + eps this is
    binom(d-1, 2) - (d - k - eps) * (v - 2); nonpositive values are vacuous.
    Requires d <= v: the edge-count cap on d-degenerate graphs that the
    bound rests on fails beyond that, and so does the bound itself.
    """
    if not (0 <= eps < 1):
        raise GraphInputError("eps must lie in [0, 1)")
    if h.vertex_count < 3:
        raise GraphInputError("bound needs at least 3 vertices")
    if d > h.vertex_count:
        raise GraphInputError(
            f"bound needs d <= v, got d={d} on {h.vertex_count} vertices"
        )
    d2 = Fraction(h.edge_count - 1, h.vertex_count - 2)
    if d2 < k + eps:
        raise GraphInputError(
            f"2-density {format_fraction(d2)} is below k + eps = {k} + {format_fraction(eps)}"
        )
    return Fraction((d - 1) * (d - 2), 2) - (d - k - eps) * (h.vertex_count - 2)


def certificate_check(
    g: Graph, dec: Decomposition, col: EdgeColoring
) -> list[CheckResult]:
    """Verify the palette budgets and the closing inequalities.

    Checks: (i) each layer palette fits ceil(i/(i-m)); (ii) the layers
    above k+1 use at most r colours in total; (iii) residual colours are
    globally unique; (iv) for k >= 18 the exact inequalities
    binom(k-1,2) > k+2+r and ceil((k+1)/(1-eps)) + r <=
    (eps/(1-eps))(binom(k,2)-r) + binom(k-1,2); (v) the recorded r matches
    its defining sum.
    """
    checks: list[CheckResult] = []
    m = dec.m_value
    k = dec.k
    r = r_value(m)

    for i in sorted(dec.forests, reverse=True):
        tag = layer_tag(i)
        start, end = col.palettes.get(tag, (0, 0))
        width = end - start
        bound = ceil_fraction(Fraction(i) / (i - m))
        checks.append(
            CheckResult(
                f"palette_F{i}",
                width <= bound,
                f"palette width {width} <= {bound}",
            )
        )

    upper_colors = {
        col.color[e] for i in dec.forests if i > k + 1 for e in dec.forests[i]
    }
    checks.append(
        CheckResult(
            "upper_layer_colors",
            len(upper_colors) <= r,
            f"{len(upper_colors)} colours on layers above {k + 1} <= r = {r}",
        )
    )

    color_multiplicity: dict[int, int] = {}
    for e, cval in col.color.items():
        color_multiplicity[cval] = color_multiplicity.get(cval, 0) + 1
    residual_dupes = [
        e
        for e, tag in col.layer_of.items()
        if tag == RESIDUAL and color_multiplicity[col.color[e]] != 1
    ]
    checks.append(
        CheckResult(
            "residual_colors_unique",
            not residual_dupes,
            "all residual colours used once"
            if not residual_dupes
            else f"duplicated on edges {sorted(residual_dupes)[:5]}",
        )
    )

    if k >= 18:
        binom_k1 = (k - 1) * (k - 2) // 2
        binom_k = k * (k - 1) // 2
        strict_ok = binom_k1 > k + 2 + r
        checks.append(
            CheckResult(
                "closing_inequality",
                strict_ok,
                f"binom({k - 1},2) = {binom_k1} > {k} + 2 + {r} = {k + 2 + r}",
            )
        )
        eps = m - k
        chain_lhs = Fraction(ceil_fraction(Fraction(k + 1) / (1 - eps)) + r)
        chain_rhs = (eps / (1 - eps)) * (binom_k - r) + binom_k1
        checks.append(
            CheckResult(
                "chained_inequality",
                chain_lhs <= chain_rhs,
                f"{format_fraction(chain_lhs)} <= {format_fraction(chain_rhs)}",
            )
        )
    else:
        checks.append(
            CheckResult(
                "closing_inequality",
                True,
                f"not applicable: k = {k} < 18",
            )
        )

    checks.append(
        CheckResult(
            "r_definition",
            col.r == r,
            f"recorded r = {col.r}, defining sum = {r}",
        )
    )
    return checks


@dataclass(frozen=True)
class RainbowViolation:
    """A rainbow subgraph whose 2-density reaches the host's maximal density."""

    vertices: frozenset[int]
    edge_ids: frozenset[int]
    two_density: Fraction

    def to_json_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": sorted(self.edge_ids),
            "two_density": format_fraction(self.two_density),
        }


def rainbow_subgraph_audit(
    g: Graph,
    col: EdgeColoring,
    max_edges: int,
    m_value: Fraction | None = None,
    budget: int = 10_000_000,
) -> list[RainbowViolation]:
    """Enumerate connected rainbow subgraphs and report dense ones.

    Grows connected edge sets from each anchor edge (only ids above the
    anchor join, so every subgraph appears exactly once), abandoning any
    branch that repeats a colour.  Subgraphs on >= 3 vertices whose
    2-density reaches m(G) are returned as violations; exceeding the step
    budget raises AuditBudgetError carrying the partial report.

    When even the best 2-density achievable within the edge budget falls
    below m(G), the answer is empty with no enumeration at all; that is
    what makes small-budget audits of dense hosts instant.
    """
    if max_edges < 1:
        raise GraphInputError("max_edges must be positive")
    missing = [e for e in range(g.edge_count) if e not in col.color]
    if missing:
        raise GraphInputError(f"uncoloured edges: {missing[:5]}")
    m_val = m_value if m_value is not None else col.m_value

    ceiling = max(
        (
            Fraction(min(max_edges, v * (v - 1) // 2) - 1, v - 2)
            for v in range(3, max_edges + 2)
        ),
        default=Fraction(0),
    )
    if ceiling < m_val:
        return []

    violations: list[RainbowViolation] = []
    steps = 0

    def check(edges: set[int], vertices: set[int]) -> None:
        if len(vertices) < 3:
            return
        d2 = Fraction(len(edges) - 1, len(vertices) - 2)
        if d2 >= m_val:
            violations.append(
                RainbowViolation(
                    vertices=frozenset(vertices),
                    edge_ids=frozenset(edges),
                    two_density=d2,
                )
            )

    def grow(
        edges: set[int],
        vertices: set[int],
        colors: set[int],
        banned: set[int],
        anchor: int,
    ) -> None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise AuditBudgetError(budget, list(violations))
        if len(edges) >= max_edges:
            return
        frontier = sorted(
            {
                eid
                for v in vertices
                for eid in g.adjacency[v]
                if eid > anchor and eid not in edges and eid not in banned
            }
        )
        # binary partition: branch i contains frontier[i] and none of the
        # earlier frontier edges, so every connected set appears once
        for eid in frontier:
            u, v = g.edges[eid]
            cval = col.color[eid]
            if cval not in colors:
                added = {x for x in (u, v) if x not in vertices}
                edges.add(eid)
                vertices |= added
                colors.add(cval)
                check(edges, vertices)
                grow(edges, vertices, colors, banned, anchor)
                colors.discard(cval)
                vertices -= added
                edges.discard(eid)
            banned.add(eid)
        banned.difference_update(frontier)

    for anchor in range(g.edge_count):
        u, v = g.edges[anchor]
        edges = {anchor}
        vertices = {u, v}
        colors = {col.color[anchor]}
        check(edges, vertices)
        grow(edges, vertices, colors, set(), anchor)

    violations.sort(key=lambda w: (sorted(w.vertices), sorted(w.edge_ids)))
    return violations
