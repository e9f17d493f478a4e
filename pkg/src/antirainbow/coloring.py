"""Proper edge colouring built on the forest decomposition.

Each forest layer gets its own palette of exactly its maximum degree many
colours (forests always admit that); every residual edge gets a fresh
colour of its own.  Distinct palettes never collide, so the colouring is
proper, and the palette budget on the upper layers is what keeps dense
subgraphs from being rainbow.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .decompose import Decomposition, degenerate_decomposition
from .density import ceil_fraction, format_fraction, parse_fraction
from .graphs import Graph, GraphInputError, is_forest

GUARANTEE_THRESHOLD = 18

RESIDUAL = "residual"


def layer_tag(i: int) -> str:
    return f"F_{i}"


def r_value(m: Fraction) -> int:
    """Palette budget of the upper layers: sum of ceil(i/(i-m)) for k+2 <= i <= K."""
    k = m.numerator // m.denominator
    K = (2 * m.numerator) // m.denominator
    return sum(ceil_fraction(Fraction(i) / (i - m)) for i in range(k + 2, K + 1))


def color_forest(f: Graph) -> dict[int, int]:
    """Proper edge colouring of a forest with exactly max-degree many colours.

    Roots every tree at its lowest vertex and walks it breadth first,
    giving each down-edge the smallest colour free at both endpoints.
    """
    if not is_forest(f):
        raise GraphInputError("color_forest requires an acyclic graph")
    colors: dict[int, int] = {}
    used: list[set[int]] = [set() for _ in range(f.vertex_count)]
    visited = [False] * f.vertex_count
    for root in range(f.vertex_count):
        if visited[root]:
            continue
        visited[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for eid in f.adjacency[v]:
                if eid in colors:
                    continue
                w = f.other_endpoint(eid, v)
                c = 0
                while c in used[v] or c in used[w]:
                    c += 1
                colors[eid] = c
                used[v].add(c)
                used[w].add(c)
                visited[w] = True
                queue.append(w)
    return colors


@dataclass(frozen=True)
class EdgeColoring:
    """Edge -> colour map partitioned into per-layer palettes.

    ``palettes`` maps each layer tag to its half-open colour range
    [start, end); residual edges all live in the final range, one colour
    each.
    """

    color: dict[int, int]
    layer_of: dict[int, str]
    palettes: dict[str, tuple[int, int]]
    r: int
    guarantee: bool
    m_value: Fraction
    k: int
    K: int

    def color_count(self) -> int:
        return len(set(self.color.values()))

    def layer_edges(self, tag: str) -> list[int]:
        return sorted(e for e, t in self.layer_of.items() if t == tag)

    def to_json_dict(self, g: Graph) -> dict:
        return {
            "m": format_fraction(self.m_value),
            "k": self.k,
            "K": self.K,
            "r": self.r,
            "guarantee": self.guarantee,
            "edges": [
                {
                    "id": e,
                    "u": g.edges[e][0],
                    "v": g.edges[e][1],
                    "layer": self.layer_of[e],
                    "color": self.color[e],
                }
                for e in range(g.edge_count)
            ],
            "palettes": {
                tag: [start, end] for tag, (start, end) in self.palettes.items()
            },
        }

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_json_dict(g), indent=2)

    @classmethod
    def from_json_dict(cls, data: dict) -> "EdgeColoring":
        try:
            return cls(
                color={int(row["id"]): int(row["color"]) for row in data["edges"]},
                layer_of={int(row["id"]): str(row["layer"]) for row in data["edges"]},
                palettes={
                    tag: (int(lo), int(hi))
                    for tag, (lo, hi) in data["palettes"].items()
                },
                r=int(data["r"]),
                guarantee=bool(data["guarantee"]),
                m_value=parse_fraction(data["m"]),
                k=int(data["k"]),
                K=int(data["K"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphInputError(f"bad colouring document: {exc}") from None


def coloring_from_decomposition(
    g: Graph, dec: Decomposition
) -> EdgeColoring:
    """Colour g layer by layer: König palettes for forests, fresh residual colours."""
    color: dict[int, int] = {}
    layer_of: dict[int, str] = {}
    palettes: dict[str, tuple[int, int]] = {}
    next_color = 0
    for i in sorted(dec.forests, reverse=True):
        layer = dec.forests[i]
        tag = layer_tag(i)
        sub_ids = sorted(layer)
        sub = g.edge_subgraph(sub_ids)
        local = color_forest(sub)
        width = max(local.values(), default=-1) + 1
        palettes[tag] = (next_color, next_color + width)
        for local_eid, orig_eid in enumerate(sub_ids):
            color[orig_eid] = next_color + local[local_eid]
            layer_of[orig_eid] = tag
        next_color += width
    residual_ids = sorted(dec.residual)
    palettes[RESIDUAL] = (next_color, next_color + len(residual_ids))
    for e in residual_ids:
        color[e] = next_color
        layer_of[e] = RESIDUAL
        next_color += 1
    return EdgeColoring(
        color=color,
        layer_of=layer_of,
        palettes=palettes,
        r=r_value(dec.m_value),
        guarantee=dec.m_value >= GUARANTEE_THRESHOLD,
        m_value=dec.m_value,
        k=dec.k,
        K=dec.K,
    )


def anti_rainbow_coloring(
    g: Graph, tight_mu: bool = False
) -> tuple[EdgeColoring, Decomposition]:
    """Decompose and colour so that rainbow subgraphs stay sparse.

    For m(G) >= 18 the colouring provably keeps the 2-density of every
    rainbow subgraph strictly below m(G); below that threshold the same
    construction is returned with guarantee=False.
    """
    if g.edge_count == 0:
        raise GraphInputError("colouring needs at least one edge")
    dec = degenerate_decomposition(g, tight_mu=tight_mu)
    return coloring_from_decomposition(g, dec), dec


def is_proper_coloring(g: Graph, c: EdgeColoring) -> bool:
    """True iff no two incident edges share a colour; all edges must be coloured."""
    missing = [e for e in range(g.edge_count) if e not in c.color]
    if missing:
        raise GraphInputError(f"uncoloured edges: {missing[:5]}")
    for v in range(g.vertex_count):
        seen = set()
        for eid in g.adjacency[v]:
            col = c.color[eid]
            if col in seen:
                return False
            seen.add(col)
    return True
