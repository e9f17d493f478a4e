"""Shared fixtures: random graph generation and naive oracles.

The oracles here are deliberately written against the definitions
(subset enumeration, permutation search) rather than sharing code with
the library, so they can arbitrate.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from antirainbow import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 10, min_edges: int = 0):
    n = draw(st.integers(min_value=max(min_n, 2 if min_edges else 0), max_value=max_n))
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return Graph(n, [])
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, min_size=min_edges)
    )
    return Graph(n, chosen)


# -- naive oracles -----------------------------------------------------------


def naive_max_density(g: Graph) -> Fraction:
    """max e(S)/|S| by plain subset enumeration (no bit tricks)."""
    best = Fraction(0)
    for size in range(1, g.vertex_count + 1):
        for s in combinations(range(g.vertex_count), size):
            ss = set(s)
            e = sum(1 for u, v in g.edges if u in ss and v in ss)
            best = max(best, Fraction(e, size))
    return best


def naive_max_two_density(g: Graph) -> Fraction:
    best = Fraction(1, 2)
    for size in range(3, g.vertex_count + 1):
        for s in combinations(range(g.vertex_count), size):
            ss = set(s)
            e = sum(1 for u, v in g.edges if u in ss and v in ss)
            best = max(best, Fraction(e - 1, size - 2))
    return best


def naive_degeneracy(g: Graph) -> int:
    """max over vertex subsets of the minimum induced degree."""
    best = 0
    for size in range(1, g.vertex_count + 1):
        for s in combinations(range(g.vertex_count), size):
            ss = set(s)
            degs = {
                v: sum(1 for (a, b) in g.edges if (a == v and b in ss) or (b == v and a in ss))
                for v in ss
            }
            best = max(best, min(degs.values()))
    return best


def independent_ceil(x: Fraction) -> int:
    q, r = divmod(x.numerator, x.denominator)
    return q + (1 if r else 0)


def independent_r_sum(m: Fraction) -> int:
    k = m.numerator // m.denominator
    big_k = (2 * m.numerator) // m.denominator
    total = 0
    for i in range(k + 2, big_k + 1):
        total += independent_ceil(Fraction(i, 1) / (i - m))
    return total
