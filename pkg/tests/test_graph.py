import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ubgspan.graph import (
    EdgeList,
    build_ubg,
    k_hop_neighborhood,
    mst_weight,
    segments_properly_cross,
    shortest_path_distance,
    threshold_subgraph,
)
from ubgspan.metric import Point, PointSet, distance, generate_uniform_square


def make_ps(coords):
    return PointSet(range(len(coords)), coords)


class TestBuildUbg:
    def test_short_pair_is_edge(self):
        g = build_ubg(make_ps([[0, 0], [0.5, 0]]), 1.0)
        assert g.edge_list().edges == [(0, 1, 0.5)]

    def test_long_pair_is_not(self):
        g = build_ubg(make_ps([[0, 0], [1.5, 0]]), 1.0)
        assert len(g.edge_list()) == 0

    def test_matches_brute_force(self):
        ps = generate_uniform_square(50, 5, 13)
        g = build_ubg(ps, 1.0)
        assert g.edge_list() == oracles.brute_ubg_edges(ps, 1.0)

    def test_weights_are_exact_distances(self):
        ps = generate_uniform_square(30, 5, 4)
        g = build_ubg(ps, 1.0)
        pts = {p.id: p for p in ps.points}
        for u, v, w in g.edge_list():
            assert w == distance(pts[u], pts[v])

    def test_neighbors_sorted(self):
        ps = generate_uniform_square(40, 3, 5)
        g = build_ubg(ps, 1.0)
        for p in ps.points:
            nbrs = g.neighbors_of(p.id)
            assert nbrs == sorted(nbrs)


class TestThresholdSubgraph:
    def test_triangle_partition(self):
        # Weights 0.3 / 0.6 / 0.9 via a right-ish triangle.
        ps = make_ps([[0, 0], [0.3, 0], [0.9, 0]])
        g = build_ubg(ps, 1.0)
        short = threshold_subgraph(g, 0.5, "<=")
        long = threshold_subgraph(g, 0.5, ">")
        assert [e[2] for e in short] == [0.3]
        assert sorted(e[2] for e in long) == pytest.approx([0.6, 0.9], abs=1e-12)

    def test_alpha_equal_radius_keeps_all(self):
        ps = generate_uniform_square(30, 5, 1)
        g = build_ubg(ps, 1.0)
        assert threshold_subgraph(g, 1.0, "<=") == g.edge_list()

    def test_partition_identity(self):
        ps = generate_uniform_square(60, 5, 8)
        g = build_ubg(ps, 1.0)
        for alpha in (0.25, 0.5, 0.8):
            lo = threshold_subgraph(g, alpha, "<=")
            hi = threshold_subgraph(g, alpha, ">")
            assert len(lo) + len(hi) == g.num_edges()
            assert lo.union(hi) == g.edge_list()

    def test_bad_mode(self):
        g = build_ubg(make_ps([[0, 0], [0.5, 0]]), 1.0)
        with pytest.raises(ValueError):
            threshold_subgraph(g, 0.5, ">=")


class TestShortestPath:
    def test_two_hop_path(self):
        edges = EdgeList([(0, 1, 0.5), (1, 2, 0.5)])
        assert shortest_path_distance(edges, 0, 2) == 1.0

    def test_same_node(self):
        edges = EdgeList([(0, 1, 0.5)])
        assert shortest_path_distance(edges, 0, 0) == 0.0

    def test_disconnected_is_inf(self):
        edges = EdgeList([(0, 1, 0.5), (2, 3, 0.5)])
        assert shortest_path_distance(edges, 0, 3) == float("inf")

    def test_matches_bellman_ford(self):
        ps = generate_uniform_square(30, 4, 17)
        edges = build_ubg(ps, 1.0).edge_list()
        for u in range(0, 30, 4):
            for v in range(1, 30, 5):
                assert shortest_path_distance(edges, u, v) == pytest.approx(
                    oracles.bellman_ford(edges, u, v), abs=1e-12
                )


class TestMstWeight:
    def test_collinear(self):
        g = build_ubg(make_ps([[0, 0], [0.5, 0], [1.0, 0]]), 1.0)
        assert mst_weight(g) == 1.0

    def test_single_point(self):
        g = build_ubg(make_ps([[2, 2]]), 1.0)
        assert mst_weight(g) == 0.0

    def test_matches_prim(self):
        ps = generate_uniform_square(50, 5, 23)
        g = build_ubg(ps, 1.0)
        adj = {p.id: dict(g.neighbors_of(p.id)) for p in ps.points}
        assert mst_weight(g) == pytest.approx(
            oracles.prim_mst_weight([p.id for p in ps.points], adj), abs=1e-12
        )

    def test_disconnected_sums_components(self):
        g = build_ubg(make_ps([[0, 0], [0.4, 0], [9, 9], [9.3, 9]]), 1.0)
        assert mst_weight(g) == pytest.approx(0.7, abs=1e-15)

    def test_lower_bounds_spanning_subgraphs(self):
        # Enumerate all spanning trees (edge subsets of size n-1 that connect).
        import itertools

        rng = np.random.default_rng(5)
        for _ in range(10):
            n = 7
            ps = PointSet(range(n), rng.random((n, 2)) * 1.6)
            g = build_ubg(ps, 1.0)
            edges = list(g.edge_list())
            if len(edges) < n - 1 or len(edges) > 16:
                continue
            best = mst_weight(g)
            if len(g.components()) > 1:
                continue
            found = []
            for subset in itertools.combinations(edges, n - 1):
                el = EdgeList(subset)
                if all(
                    shortest_path_distance(el, 0, v) < float("inf") for v in range(1, n)
                ):
                    found.append(sum(e[2] for e in subset))
            assert found and min(found) == pytest.approx(best, abs=1e-12)


class TestKHop:
    def test_zero_hops(self):
        ps = generate_uniform_square(10, 5, 3)
        g = build_ubg(ps, 1.0)
        assert list(k_hop_neighborhood(g, 4, 0).ids) == [4]

    def test_path_two_hops(self):
        ps = make_ps([[0, 0], [0.9, 0], [1.8, 0], [2.7, 0]])
        g = build_ubg(ps, 1.0)
        assert list(k_hop_neighborhood(g, 0, 2).ids) == [0, 1, 2]

    def test_matches_bfs(self):
        ps = generate_uniform_square(60, 5, 21)
        g = build_ubg(ps, 1.0)
        adj = {
            p.id: {q for q, _ in g.neighbors_of(p.id)} for p in ps.points
        }
        for w in range(0, 60, 9):
            got = set(k_hop_neighborhood(g, w, 2).ids)
            assert got == oracles.bfs_khop(adj, w, 2)

    def test_induced_ubg_matches_direct_build(self):
        ps = generate_uniform_square(40, 4, 2)
        g = build_ubg(ps, 1.0)
        sub = k_hop_neighborhood(g, 0, 2)
        assert build_ubg(sub, 1.0).edge_list() == g.induced(sub.ids).edge_list()


def seg(i, x, y):
    return Point(i, (float(x), float(y)))


class TestSegmentsCross:
    def test_x_crossing(self):
        assert segments_properly_cross(
            seg(0, 0, 0), seg(1, 1, 1), seg(2, 0, 1), seg(3, 1, 0)
        )

    def test_shared_endpoint_no_cross(self):
        assert not segments_properly_cross(
            seg(0, 0, 0), seg(1, 1, 0), seg(1, 1, 0), seg(2, 2, 0)
        )

    def test_t_junction_no_cross(self):
        # Endpoint of one segment interior to the other: open segments share
        # no point of the *open* second segment.
        assert not segments_properly_cross(
            seg(0, 0, 0), seg(1, 2, 0), seg(2, 1, 0), seg(3, 1, 1)
        )

    def test_collinear_overlap_counts(self):
        assert segments_properly_cross(
            seg(0, 0, 0), seg(1, 2, 0), seg(2, 1, 0), seg(3, 3, 0)
        )
        assert not segments_properly_cross(
            seg(0, 0, 0), seg(1, 1, 0), seg(2, 1, 0), seg(3, 2, 0)
        )

    @settings(max_examples=60, deadline=None)
    @given(data=st.lists(st.floats(0, 1), min_size=8, max_size=8))
    def test_symmetry_property(self, data):
        a, b, c, d = (
            seg(i, data[2 * i], data[2 * i + 1]) for i in range(4)
        )
        if a.coords == b.coords or c.coords == d.coords:
            return
        got = segments_properly_cross(a, b, c, d)
        assert got == segments_properly_cross(c, d, a, b)
        assert got == segments_properly_cross(b, a, c, d)
        assert got == segments_properly_cross(a, b, d, c)

    def test_matches_parametric_oracle(self):
        rng = np.random.default_rng(31)
        agree = 0
        for k in range(200):
            pts = [seg(i, *rng.random(2)) for i in range(4)]
            got = segments_properly_cross(*pts)
            want = oracles.segments_cross_oracle(*pts)
            assert got == want
            agree += 1
        assert agree == 200


class TestEdgeListCsv:
    def test_roundtrip(self, tmp_path):
        ps = generate_uniform_square(25, 3, 14)
        edges = build_ubg(ps, 1.0).edge_list()
        path = tmp_path / "edges.csv"
        edges.to_csv(path)
        assert EdgeList.from_csv(path) == edges

    def test_header_enforced(self):
        with pytest.raises(ValueError, match="header"):
            EdgeList.from_csv("a,b,c\n1,2,0.5")
