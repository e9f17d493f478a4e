"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest report.  Every tolerance is zero (exact rational
or integer comparisons) except the explicitly statistical criterion 6.
"""

import functools
import random
import time
from fractions import Fraction

import networkx as nx

from antirainbow import (
    Graph,
    ceil_fraction,
    certificate_check,
    complete_graph,
    anti_rainbow_coloring,
    degeneracy_gap_bound,
    degenerate_decomposition,
    is_proper_coloring,
    max_degenerate_subgraph_edges,
    max_density,
    max_density_bruteforce,
    max_two_density,
    orient_by_ordering,
    peel_layer,
    r_value,
    rainbow_copy_search,
    triangle_threshold_sweep,
    verify_decomposition,
)
from antirainbow.decompose import DensityViolationError
from antirainbow.experiments import contains_triangle

from conftest import independent_r_sum, random_graph


def criterion(number, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[acceptance] criterion {number}: FAIL - {description}", flush=True)
                raise
            print(f"[acceptance] criterion {number}: PASS - {description}", flush=True)

        return wrapper

    return decorate


@criterion(1, "K40 end-to-end pipeline with certificate, under 5 seconds")
def test_k40_end_to_end():
    start = time.monotonic()
    g = complete_graph(40)

    witness = max_density(g)
    assert witness.value == Fraction(39, 2)

    col, dec = anti_rainbow_coloring(g)
    assert (dec.k, dec.K) == (19, 39)

    failures = [c for c in verify_decomposition(g, dec) if not c.passed]
    assert not failures, failures

    assert is_proper_coloring(g, col)
    assert col.r == 86 == r_value(Fraction(39, 2))

    cert = {c.name: c for c in certificate_check(g, dec, col)}
    assert all(c.passed for c in cert.values()), [
        c.name for c in cert.values() if not c.passed
    ]
    # binom(18, 2) = 153 beats k + 2 + r = 107
    assert 153 > 19 + 2 + 86
    assert "153" in cert["closing_inequality"].details

    assert col.color_count() < 780
    assert rainbow_copy_search(g, col, g) is None

    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


@criterion(2, "decomposition fuzz: 500 random graphs verify on every clause")
def test_decomposition_fuzz():
    rng = random.Random(20260810)
    checked = 0
    for p in (0.1, 0.3, 0.5, 0.9):
        done = 0
        while done < 125:
            g = random_graph(rng, rng.randint(4, 30), p)
            if g.edge_count == 0:
                continue
            done += 1
            checked += 1
            dec = degenerate_decomposition(g)
            failures = [c for c in verify_decomposition(g, dec) if not c.passed]
            assert not failures, (g, failures)
    assert checked >= 500


@criterion(3, "density oracle equivalence on 500 random graphs, under 60 seconds")
def test_density_oracle_equivalence():
    start = time.monotonic()
    rng = random.Random(314159)
    done = 0
    while done < 500:
        g = random_graph(rng, rng.randint(2, 14), rng.choice([0.15, 0.35, 0.6, 0.9]))
        if g.edge_count == 0:
            continue
        done += 1
        assert max_density(g).value == max_density_bruteforce(g).value, g
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s"


@criterion(4, "degeneracy-distance bound sound on all connected graphs up to 7 vertices")
def test_gap_bound_exhaustive():
    atlas = [
        h
        for h in nx.graph_atlas_g()[1:]
        if 3 <= h.number_of_nodes() <= 7 and nx.is_connected(h)
    ]
    assert len(atlas) == 994  # 2 + 6 + 21 + 112 + 853 connected graphs on 3..7

    checked = 0
    for h_nx in atlas:
        relabel = {v: i for i, v in enumerate(sorted(h_nx.nodes()))}
        g = Graph(
            h_nx.number_of_nodes(),
            [(relabel[u], relabel[v]) for u, v in h_nx.edges()],
        )
        d2 = Fraction(g.edge_count - 1, g.vertex_count - 2)
        k = d2.numerator // d2.denominator
        eps = d2 - k
        for d in range(1, min(5, g.vertex_count) + 1):
            bound = degeneracy_gap_bound(g, d, k, eps)
            gap = g.edge_count - max_degenerate_subgraph_edges(g, d)
            assert gap >= bound, (g, d, gap, bound)
            checked += 1
    assert checked > 3500

    # equality cases
    k5 = complete_graph(5)
    assert Fraction(k5.edge_count - 1, 3) == 3
    assert k5.edge_count - max_degenerate_subgraph_edges(k5, 2) == 3
    assert degeneracy_gap_bound(k5, 2, 3, Fraction(0)) == 3

    k6 = complete_graph(6)
    assert Fraction(k6.edge_count - 1, 4) == Fraction(7, 2)
    assert k6.edge_count - max_degenerate_subgraph_edges(k6, 3) == 3
    assert degeneracy_gap_bound(k6, 3, 3, Fraction(1, 2)) == 3


@criterion(5, "m2 <= m + 1 on 500 random graphs containing a triangle")
def test_m2_against_m():
    rng = random.Random(8675309)
    done = 0
    while done < 500:
        g = random_graph(rng, rng.randint(4, 12), rng.choice([0.4, 0.55, 0.7]))
        if g.edge_count == 0 or not contains_triangle(g):
            continue
        done += 1
        m2 = max_two_density(g).value
        m = max_density(g).value
        assert m2 <= m + 1, (g, m2, m)


@criterion(6, "triangle containment curve sweeps from below 0.1 to above 0.9")
def test_triangle_threshold_demo():
    start = time.monotonic()
    ps = ["0.004", "0.008", "0.012", "0.016", "0.022", "0.03"]
    points = triangle_threshold_sweep(n=100, ps=ps, trials=200, master_seed=4242)
    rates = [pt.rate for pt in points]
    inversions = sum(1 for a, b in zip(rates, rates[1:]) if b < a)
    assert inversions <= 1, rates
    assert rates[0] < Fraction(1, 10), rates
    assert rates[-1] > Fraction(9, 10), rates
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"took {elapsed:.2f}s"


@criterion(7, "palette budget r matches the independent summation at spot values")
def test_r_spot_values():
    for m, expected in [
        (Fraction(39, 2), 86),
        (Fraction(18), 69),
        (Fraction(1, 2), 0),
    ]:
        assert independent_r_sum(m) == expected
        assert r_value(m) == expected


@criterion(8, "peel-step contract on 1000 orientations plus Hall-failure certificates")
def test_peel_contract_fuzz():
    rng = random.Random(987654321)
    done = 0
    while done < 1000:
        g = random_graph(rng, rng.randint(2, 12), rng.choice([0.2, 0.4, 0.7, 0.95]))
        if g.edge_count == 0:
            continue
        done += 1
        order = list(range(g.vertex_count))
        rng.shuffle(order)
        ori = orient_by_ordering(g, order)
        d = ori.max_out_degree()
        mu = max_density(g).value
        assert d > mu
        res = peel_layer(ori, d, mu)
        out = [0] * g.vertex_count
        indeg = [0] * g.vertex_count
        total = [0] * g.vertex_count
        for e in res.forest_edge_ids:
            tail, head = ori.arc(e)
            out[tail] += 1
            indeg[head] += 1
            total[tail] += 1
            total[head] += 1
        assert max(out) <= 1
        assert max(indeg) <= res.copies
        assert max(total) <= ceil_fraction(Fraction(d) / (d - mu))
        assert res.remainder.max_out_degree() <= d - 1

    # synthetic Hall failures: s sources sharing t sinks, mu forced low
    failures = 0
    for s, t, mu in [
        (5, 2, Fraction(1, 2)),
        (7, 3, Fraction(1, 2)),
        (9, 2, Fraction(1, 2)),
        (5, 1, Fraction(1, 3)),
        (11, 4, Fraction(2, 5)),
        (6, 2, Fraction(3, 4)),
        (13, 3, Fraction(1, 4)),
        (8, 2, Fraction(2, 3)),
    ]:
        edges = [(i, s + j) for i in range(s) for j in range(t)]
        g = Graph(s + t, edges)
        ori = orient_by_ordering(g, list(range(s + t)))
        assert mu < max_density(g).value
        try:
            peel_layer(ori, t, mu)
        except DensityViolationError as err:
            failures += 1
            assert len(err.out_neighborhood) * err.copies < len(err.hall_set)
            assert err.hall_set <= frozenset(range(s))
        else:
            raise AssertionError(f"expected Hall failure for s={s}, t={t}, mu={mu}")
    assert failures == 8
