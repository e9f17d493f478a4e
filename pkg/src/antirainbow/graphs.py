"""Simple undirected graphs, degeneracy orderings, and forward orientations.

Vertices are dense integers 0..n-1.  Edges are unordered pairs stored as
(u, v) with u < v; the edge id is the position in the edge list and is
stable across every downstream structure (decomposition layers, colour
maps, JSON output all speak in these ids).
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Iterator, Sequence


class GraphInputError(ValueError):
    """Raised for malformed or contract-violating inputs."""


class Graph:
    """Immutable simple undirected graph.

    Construction validates simplicity: self-loops and duplicate edges are
    rejected, and every endpoint must be < vertex_count.
    """

    __slots__ = ("vertex_count", "edges", "adjacency")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise GraphInputError("vertex_count must be nonnegative")
        normalized: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphInputError(
                    f"edge ({u}, {v}) out of range for {vertex_count} vertices"
                )
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphInputError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            normalized.append(e)
        self.vertex_count = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        incident: list[list[int]] = [[] for _ in range(vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            incident[u].append(eid)
            incident[v].append(eid)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(ids) for ids in incident
        )

    # -- basic accessors ---------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(ids) for ids in self.adjacency]

    def max_degree(self) -> int:
        return max((len(ids) for ids in self.adjacency), default=0)

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def other_endpoint(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        return w if v == u else u

    def neighbors(self, v: int) -> list[int]:
        return [self.other_endpoint(eid, v) for eid in self.adjacency[v]]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return any(self.edges[eid] == (u, v) for eid in self.adjacency[u])

    def adjacency_masks(self) -> list[int]:
        """Neighbour sets as integer bitmasks (for subset-enumeration kernels)."""
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    # -- derived graphs ----------------------------------------------------

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Subgraph on the same vertex set keeping only the given edge ids."""
        return Graph(self.vertex_count, [self.edges[e] for e in sorted(set(edge_ids))])

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph relabelled densely; vertices sorted ascending."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        kept = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(vs), kept)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and sorted(self.edges) == sorted(other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, tuple(sorted(self.edges))))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


class Orientation:
    """A graph oriented by a linear vertex order: every arc goes forward.

    The tail of edge (u, v) is whichever endpoint appears earlier in
    ``order``; consequently the digraph is acyclic.
    """

    __slots__ = ("base", "order", "position", "tails")

    def __init__(self, base: Graph, order: Sequence[int]):
        if sorted(order) != list(range(base.vertex_count)):
            raise GraphInputError("order is not a permutation of the vertex set")
        self.base = base
        self.order: tuple[int, ...] = tuple(order)
        pos = [0] * base.vertex_count
        for i, v in enumerate(self.order):
            pos[v] = i
        self.position: tuple[int, ...] = tuple(pos)
        self.tails: tuple[int, ...] = tuple(
            u if pos[u] < pos[v] else v for u, v in base.edges
        )

    def arc(self, eid: int) -> tuple[int, int]:
        """(tail, head) of the given edge."""
        tail = self.tails[eid]
        return tail, self.base.other_endpoint(eid, tail)

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Yield (edge_id, tail, head) for every edge."""
        for eid in range(self.base.edge_count):
            tail, head = self.arc(eid)
            yield eid, tail, head

    def out_edges(self, v: int) -> list[int]:
        return [eid for eid in self.base.adjacency[v] if self.tails[eid] == v]

    def out_degree(self, v: int) -> int:
        return sum(1 for eid in self.base.adjacency[v] if self.tails[eid] == v)

    def out_degrees(self) -> list[int]:
        degs = [0] * self.base.vertex_count
        for t in self.tails:
            degs[t] += 1
        return degs

    def max_out_degree(self) -> int:
        return max(self.out_degrees(), default=0)

    def __repr__(self) -> str:
        return f"Orientation(n={self.base.vertex_count}, m={self.base.edge_count})"


# -- parsing ----------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document.

    Each non-comment line holds two distinct nonnegative integers separated
    by whitespace.  Lines starting with '#' are comments.  An optional first
    line "n <count>" fixes the vertex count; otherwise it is one more than
    the largest id seen.
    """
    pairs: list[tuple[int, int]] = []
    declared: int | None = None
    first_data_line = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if first_data_line and tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphInputError(f"line {lineno}: malformed header {line!r}")
            try:
                declared = int(tokens[1])
            except ValueError:
                raise GraphInputError(
                    f"line {lineno}: header count is not an integer"
                ) from None
            if declared < 0:
                raise GraphInputError(f"line {lineno}: negative vertex count")
            first_data_line = False
            continue
        first_data_line = False
        if len(tokens) != 2:
            raise GraphInputError(f"line {lineno}: expected two ids, got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphInputError(f"line {lineno}: non-integer id in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphInputError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphInputError(f"line {lineno}: self-loop at {u}")
        pairs.append((u, v))

    max_id = max((max(u, v) for u, v in pairs), default=-1)
    n = declared if declared is not None else max_id + 1
    if max_id >= n:
        raise GraphInputError(
            f"vertex id {max_id} exceeds declared count {n}"
        )
    try:
        return Graph(n, pairs)
    except GraphInputError as exc:
        raise GraphInputError(str(exc)) from None


# -- degeneracy -------------------------------------------------------------


def degeneracy_ordering(g: Graph) -> tuple[tuple[int, ...], int]:
    """Min-degree peeling order and the degeneracy it certifies.

    Repeatedly removes a minimum-degree vertex, ties broken by lowest id.
    Returns (removal order, max degree seen at removal time).
    """
    n = g.vertex_count
    deg = g.degrees()
    removed = [False] * n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    degeneracy = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue  # stale entry
        removed[v] = True
        order.append(v)
        degeneracy = max(degeneracy, d)
        for eid in g.adjacency[v]:
            w = g.other_endpoint(eid, v)
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return tuple(order), degeneracy


def exact_degeneracy(g: Graph) -> int:
    """Degeneracy: the max over subgraphs of the minimum degree."""
    return degeneracy_ordering(g)[1]


def orient_by_ordering(g: Graph, order: Sequence[int]) -> Orientation:
    """Direct every edge from its earlier endpoint in ``order``."""
    return Orientation(g, order)


def is_forest(g: Graph) -> bool:
    """True iff the graph is acyclic (union-find over the edges)."""
    parent = list(range(g.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, in id order."""
    seen = [False] * g.vertex_count
    comps: list[list[int]] = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for eid in g.adjacency[v]:
                w = g.other_endpoint(eid, v)
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# -- small constructors (used by tests and the experiments harness) ---------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
