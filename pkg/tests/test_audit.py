import random
from fractions import Fraction
from itertools import permutations

import pytest

from antirainbow import (
    AuditBudgetError,
    EdgeColoring,
    Graph,
    GraphInputError,
    anti_rainbow_coloring,
    certificate_check,
    complete_graph,
    degeneracy_gap_bound,
    max_degenerate_subgraph_edges,
    path_graph,
    rainbow_copy_search,
    rainbow_subgraph_audit,
    star_graph,
)

from conftest import random_graph


def residual_coloring(g, colors):
    return EdgeColoring(
        color=dict(enumerate(colors)),
        layer_of={e: "residual" for e in range(g.edge_count)},
        palettes={"residual": (0, (max(colors) + 1) if colors else 0)},
        r=0,
        guarantee=False,
        m_value=Fraction(1, 2),
        k=0,
        K=1,
    )


def naive_rainbow_exists(g, col, h):
    """Try every injective vertex map (oracle for small hosts)."""
    hv, gv = h.vertex_count, g.vertex_count
    host_edge = {}
    for eid, (u, v) in enumerate(g.edges):
        host_edge[(u, v)] = eid
        host_edge[(v, u)] = eid
    for image in permutations(range(gv), hv):
        eids = []
        ok = True
        for a, b in h.edges:
            eid = host_edge.get((image[a], image[b]))
            if eid is None:
                ok = False
                break
            eids.append(eid)
        if not ok:
            continue
        cs = [col.color[e] for e in eids]
        if len(cs) == len(set(cs)):
            return True
    return False


class TestRainbowCopySearch:
    def test_triangle_in_itself(self):
        g = complete_graph(3)
        col = residual_coloring(g, [0, 1, 2])
        emb = rainbow_copy_search(g, col, g)
        assert emb is not None
        # adjacency-preserving and injective
        assert len(set(emb.mapping.values())) == 3
        for (a, b), eid in zip(g.edges, range(3)):
            assert emb.edge_images  # images recorded

    def test_pigeonhole_too_few_colors(self):
        g = complete_graph(4)
        col = residual_coloring(g, [0, 1, 2, 0, 1, 2])
        pattern = complete_graph(4)
        assert rainbow_copy_search(g, col, pattern) is None

    def test_k4_hosts_rainbow_triangle(self):
        g = complete_graph(4)
        col, _ = anti_rainbow_coloring(g)
        assert rainbow_copy_search(g, col, complete_graph(3)) is not None

    def test_empty_pattern_rejected(self):
        g = complete_graph(3)
        col = residual_coloring(g, [0, 1, 2])
        with pytest.raises(GraphInputError):
            rainbow_copy_search(g, col, Graph(2, []))

    def test_embedding_is_valid(self):
        rng = random.Random(3)
        pattern = path_graph(3)
        for _ in range(30):
            g = random_graph(rng, rng.randint(3, 9), 0.5)
            if g.edge_count == 0:
                continue
            col, _ = anti_rainbow_coloring(g)
            emb = rainbow_copy_search(g, col, pattern)
            if emb is None:
                continue
            assert len(set(emb.mapping.values())) == pattern.vertex_count
            used = [col.color[e] for e in emb.edge_images.values()]
            assert len(used) == len(set(used))
            for h_eid, (a, b) in enumerate(pattern.edges):
                ge = emb.edge_images[h_eid]
                assert {emb.mapping[a], emb.mapping[b]} == set(g.edges[ge])

    def test_agrees_with_naive_oracle(self):
        rng = random.Random(64)
        patterns = [complete_graph(3), path_graph(4), star_graph(3), complete_graph(4)]
        done = 0
        while done < 40:
            g = random_graph(rng, rng.randint(3, 7), rng.choice([0.3, 0.6, 0.9]))
            if g.edge_count == 0:
                continue
            done += 1
            col, _ = anti_rainbow_coloring(g)
            h = patterns[done % len(patterns)]
            assert (rainbow_copy_search(g, col, h) is not None) == naive_rainbow_exists(
                g, col, h
            )

    def test_single_copy_pigeonhole(self):
        # when no rainbow copy exists in a host equal to the pattern, every
        # structural copy must repeat a colour
        rng = random.Random(90)
        done = 0
        while done < 20:
            g = random_graph(rng, rng.randint(3, 6), 0.7)
            if g.edge_count < 2:
                continue
            done += 1
            col, _ = anti_rainbow_coloring(g)
            if rainbow_copy_search(g, col, g) is not None:
                continue
            host_edge = {}
            for eid, (u, v) in enumerate(g.edges):
                host_edge[(u, v)] = eid
                host_edge[(v, u)] = eid
            for image in permutations(range(g.vertex_count)):
                eids = [
                    host_edge.get((image[a], image[b])) for a, b in g.edges
                ]
                if any(e is None for e in eids):
                    continue
                cs = [col.color[e] for e in eids]
                assert len(set(cs)) < len(cs)

    def test_deterministic(self):
        g = complete_graph(5)
        col, _ = anti_rainbow_coloring(g)
        first = rainbow_copy_search(g, col, complete_graph(3))
        second = rainbow_copy_search(g, col, complete_graph(3))
        assert first is not None and first.mapping == second.mapping


class TestMaxDegenerateSubgraph:
    def test_k5_d2(self):
        assert max_degenerate_subgraph_edges(complete_graph(5), 2) == 7

    def test_k6_d3(self):
        assert max_degenerate_subgraph_edges(complete_graph(6), 3) == 12

    def test_forest_d1(self):
        g = path_graph(6)
        assert max_degenerate_subgraph_edges(g, 1) == g.edge_count

    def test_cap(self):
        with pytest.raises(GraphInputError):
            max_degenerate_subgraph_edges(complete_graph(11), 2)

    def test_clique_closed_form(self):
        for n in range(3, 9):
            for d in range(1, n):
                expected = d * (d - 1) // 2 + d * (n - d)
                assert max_degenerate_subgraph_edges(complete_graph(n), d) == expected

    def test_against_permutation_oracle(self):
        rng = random.Random(12)

        def oracle(g, d):
            best = 0
            for perm in permutations(range(g.vertex_count)):
                later = set()
                total = 0
                for v in reversed(perm):
                    total += min(d, sum(1 for w in g.neighbors(v) if w in later))
                    later.add(v)
                best = max(best, total)
            return best

        for _ in range(25):
            g = random_graph(rng, rng.randint(2, 6), rng.random())
            d = rng.randint(1, 3)
            assert max_degenerate_subgraph_edges(g, d) == oracle(g, d)


class TestGapBound:
    def test_k5_d2_tight(self):
        g = complete_graph(5)
        bound = degeneracy_gap_bound(g, 2, 3, Fraction(0))
        assert bound == 3
        assert g.edge_count - max_degenerate_subgraph_edges(g, 2) == 3

    def test_k5_d4_vacuous(self):
        assert degeneracy_gap_bound(complete_graph(5), 4, 3, Fraction(0)) == 0

    def test_k6_d3_tight(self):
        g = complete_graph(6)
        bound = degeneracy_gap_bound(g, 3, 3, Fraction(1, 2))
        assert bound == 3
        assert g.edge_count - max_degenerate_subgraph_edges(g, 3) == 3

    def test_precondition_check(self):
        with pytest.raises(GraphInputError):
            degeneracy_gap_bound(path_graph(4), 1, 5, Fraction(0))

    def test_soundness_random(self):
        rng = random.Random(55)
        done = 0
        while done < 220:
            g = random_graph(rng, rng.randint(3, 8), rng.random())
            if g.vertex_count < 3 or g.edge_count == 0:
                continue
            d2 = Fraction(g.edge_count - 1, g.vertex_count - 2)
            if d2 < 0:
                continue
            done += 1
            k = d2.numerator // d2.denominator
            eps = d2 - k
            for d in range(1, min(6, g.vertex_count + 1)):
                bound = degeneracy_gap_bound(g, d, k, eps)
                gap = g.edge_count - max_degenerate_subgraph_edges(g, d)
                assert gap >= bound

    def test_d_above_vertex_count_rejected(self):
        # the edge-count cap behind the bound breaks down past d = v; a
        # triangle at d = 4 would yield a "bound" of 1 against a gap of 0
        with pytest.raises(GraphInputError):
            degeneracy_gap_bound(complete_graph(3), 4, 2, Fraction(0))


class TestCertificate:
    def test_k40_certificate(self):
        g = complete_graph(40)
        col, dec = anti_rainbow_coloring(g)
        checks = {c.name: c for c in certificate_check(g, dec, col)}
        assert all(c.passed for c in checks.values())
        assert dec.k == 19 and col.r == 86
        assert "153" in checks["closing_inequality"].details

    def test_k4_small_k_not_applicable(self):
        g = complete_graph(4)
        col, dec = anti_rainbow_coloring(g)
        checks = {c.name: c for c in certificate_check(g, dec, col)}
        assert checks["closing_inequality"].passed
        assert "not applicable" in checks["closing_inequality"].details
        assert checks["residual_colors_unique"].passed
        assert checks["upper_layer_colors"].passed

    def test_tampered_residual_colors(self):
        g = complete_graph(4)
        col, dec = anti_rainbow_coloring(g)
        residual = sorted(e for e, tag in col.layer_of.items() if tag == "residual")
        tampered_colors = dict(col.color)
        tampered_colors[residual[1]] = tampered_colors[residual[0]]
        tampered = EdgeColoring(
            color=tampered_colors,
            layer_of=col.layer_of,
            palettes=col.palettes,
            r=col.r,
            guarantee=col.guarantee,
            m_value=col.m_value,
            k=col.k,
            K=col.K,
        )
        checks = {c.name: c for c in certificate_check(g, dec, tampered)}
        assert not checks["residual_colors_unique"].passed

    def test_wrong_r_detected(self):
        g = complete_graph(4)
        col, dec = anti_rainbow_coloring(g)
        tampered = EdgeColoring(
            color=col.color,
            layer_of=col.layer_of,
            palettes=col.palettes,
            r=col.r + 1,
            guarantee=col.guarantee,
            m_value=col.m_value,
            k=col.k,
            K=col.K,
        )
        checks = {c.name: c for c in certificate_check(g, dec, tampered)}
        assert not checks["r_definition"].passed


class TestRainbowAudit:
    def test_triangle_violation(self):
        g = complete_graph(3)
        col = residual_coloring(g, [0, 1, 2])
        violations = rainbow_subgraph_audit(g, col, max_edges=3, m_value=Fraction(1))
        densities = {v.two_density for v in violations}
        assert Fraction(2) in densities  # the triangle itself
        assert any(v.edge_ids == frozenset({0, 1, 2}) for v in violations)

    def test_unique_p4(self):
        g = path_graph(4)
        col = residual_coloring(g, [0, 1, 2])
        v2 = rainbow_subgraph_audit(g, col, max_edges=2, m_value=Fraction(3, 4))
        assert len(v2) == 2  # the two sub-paths on 3 vertices
        assert all(v.two_density == 1 for v in v2)
        v3 = rainbow_subgraph_audit(g, col, max_edges=3, m_value=Fraction(3, 4))
        assert len(v3) == 3  # plus the full path

    def test_pipeline_p4_hides_full_path(self):
        # the forest palette colours the path with 2 colours, so the full
        # path is not rainbow and only the sub-paths show up
        g = path_graph(4)
        col, _ = anti_rainbow_coloring(g)
        v3 = rainbow_subgraph_audit(g, col, max_edges=3)
        assert len(v3) == 2

    def test_small_budget_small_subgraphs(self):
        # any subgraph with at most 5 edges has 2-density at most 4
        g = complete_graph(12)
        col, dec = anti_rainbow_coloring(g)
        violations = rainbow_subgraph_audit(
            g, col, max_edges=3, m_value=Fraction(9, 2)
        )
        assert violations == []

    def test_dense_guaranteed_host_instant(self):
        # 2-density of any 5-edge subgraph tops out at 2, far below m(K40);
        # the audit must answer empty without enumerating
        g = complete_graph(40)
        col, _ = anti_rainbow_coloring(g)
        violations = rainbow_subgraph_audit(g, col, max_edges=5, budget=10)
        assert violations == []

    def test_budget_exceeded(self):
        g = complete_graph(8)
        col, _ = anti_rainbow_coloring(g)
        with pytest.raises(AuditBudgetError) as exc_info:
            rainbow_subgraph_audit(g, col, max_edges=8, m_value=Fraction(1), budget=50)
        assert isinstance(exc_info.value.partial, list)

    def test_enumeration_counts_connected_sets(self):
        # all-distinct colours on a star: every nonempty edge subset is
        # connected and rainbow; sets with >= 2 edges span >= 3 vertices
        g = star_graph(4)
        col = residual_coloring(g, [0, 1, 2, 3])
        violations = rainbow_subgraph_audit(g, col, max_edges=4, m_value=Fraction(0))
        assert len(violations) == 2**4 - 1 - 4
