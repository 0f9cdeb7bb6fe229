import itertools

import pytest

from ubgspan.graph import EdgeList, build_ubg, k_hop_neighborhood, shortest_path_distance
from ubgspan.metric import PointSet, distance, generate_uniform_square, packing_bound
from ubgspan.netsim import Model
from ubgspan.protocols import (
    CONGEST_OVERHEAD,
    congest_spanner,
    distributed_euclidean_spanner,
    distributed_mis,
    distributed_spanner,
    emulate_congest,
    emulate_local_shares,
    local_mis_greedy,
    span_long_edges,
    span_short_edges,
)
from ubgspan.verify import check_stretch, covering_check


def make_ps(coords):
    return PointSet(range(len(coords)), coords)


def assert_mis_valid(g, members):
    members = set(members)
    for p in g.points.points:
        nbrs = {q for q, _ in g.neighbors_of(p.id)}
        if p.id in members:
            assert not (nbrs & members), f"member {p.id} has member neighbor"
        else:
            assert nbrs & members, f"non-member {p.id} undominated"


class TestDistributedMIS:
    def test_single_node(self):
        g = build_ubg(make_ps([[0, 0]]), 1.0)
        res = distributed_mis(g, seed=1)
        assert res.members == {0}
        assert res.rounds == 0

    def test_three_node_path(self):
        g = build_ubg(make_ps([[0, 0], [0.9, 0], [1.8, 0]]), 1.0)
        res = distributed_mis(g, seed=5)
        assert res.members in ({1}, {0, 2})
        assert_mis_valid(g, res.members)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_seeded_instances_are_valid(self, seed):
        g = build_ubg(generate_uniform_square(100, 5, seed), 1.0)
        res = distributed_mis(g, seed=seed)
        assert_mis_valid(g, res.members)
        assert res.rounds >= 1

    def test_threshold_subgraph_variant(self):
        g = build_ubg(generate_uniform_square(80, 3, 7), 0.25)
        res = distributed_mis(g, seed=7)
        assert_mis_valid(g, res.members)

    def test_model_agnostic_and_deterministic(self):
        g = build_ubg(generate_uniform_square(60, 4, 3), 1.0)
        a = distributed_mis(g, seed=9, model=Model.LOCAL)
        b = distributed_mis(g, seed=9, model=Model.CONGEST)
        assert a.members == b.members
        assert a.rounds == b.rounds


class TestLocalMisGreedy:
    def test_close_pair_keeps_lower_id(self):
        ps = make_ps([[0, 0], [0.1, 0]])
        assert local_mis_greedy(ps, 0.25) == {0}

    def test_separated_pair_keeps_both(self):
        ps = make_ps([[0, 0], [0.3, 0]])
        assert local_mis_greedy(ps, 0.25) == {0, 1}

    def test_definitional_oracle(self):
        ps = generate_uniform_square(40, 2, 11)
        chosen = local_mis_greedy(ps, 0.25)
        pts = {p.id: p for p in ps.points}
        for i in pts:
            if i in chosen:
                assert all(
                    distance(pts[i], pts[j]) > 0.25 for j in chosen if j != i
                )
            else:
                assert any(distance(pts[i], pts[j]) <= 0.25 for j in chosen)


class TestDistributedSpanner:
    def test_single_point(self):
        g = build_ubg(make_ps([[1, 1]]), 1.0)
        res = distributed_spanner(g, 0.5, seed=1)
        assert len(res.spanner.edges) == 0
        assert res.mis_members == {0}

    def test_two_points(self):
        g = build_ubg(make_ps([[0, 0], [0.5, 0]]), 1.0)
        res = distributed_spanner(g, 0.5, seed=2)
        assert [(u, v) for u, v, _ in res.spanner.edges] == [(0, 1)]

    def test_rounds_are_mis_plus_three(self):
        for seed in (0, 1):
            g = build_ubg(generate_uniform_square(80, 5, seed), 1.0)
            res = distributed_spanner(g, 0.5, seed=seed)
            assert res.rounds == res.mis_rounds + 3

    def test_stretch_and_offline_emulation(self):
        g = build_ubg(generate_uniform_square(100, 5, 4), 1.0)
        res = distributed_spanner(g, 0.5, seed=4)
        assert check_stretch(g, res.spanner) <= 1.5 + 1e-9
        from ubgspan.spanner import centralized_spanner

        shares = emulate_local_shares(
            g, res.mis_members, lambda ubg: centralized_spanner(ubg, 0.5)
        )
        union = EdgeList(e for el in shares.values() for e in el)
        assert union == res.spanner.edges
        assert res.shares == shares

    def test_center_multiplicity_bounded(self):
        g = build_ubg(generate_uniform_square(100, 5, 8), 1.0)
        res = distributed_spanner(g, 0.5, seed=8)
        bound = packing_bound(2, 1, 2)
        counts = {int(i): 0 for i in g.ids}
        for w in res.mis_members:
            for i in k_hop_neighborhood(g, w, 2).ids:
                counts[int(i)] += 1
        assert max(counts.values()) <= bound


class TestDistributedEuclidean:
    def test_two_points(self):
        g = build_ubg(make_ps([[0, 0], [0.5, 0]]), 1.0)
        res = distributed_euclidean_spanner(g, 2.0, seed=1)
        assert len(res.spanner.edges) == 1

    def test_share_union_matches_offline_emulation(self):
        from ubgspan.spanner import centralized_euclidean_spanner

        g = build_ubg(generate_uniform_square(80, 4, 9), 1.0)
        res = distributed_euclidean_spanner(g, 1.5, seed=9)
        shares = emulate_local_shares(
            g, res.mis_members, lambda ubg: centralized_euclidean_spanner(ubg, 1.5)
        )
        union = EdgeList(e for el in shares.values() for e in el)
        assert union == res.spanner.edges

    def test_stretch_and_unit_truncation(self):
        g = build_ubg(generate_uniform_square(100, 5, 6), 1.0)
        res = distributed_euclidean_spanner(g, 2.0, seed=6)
        assert check_stretch(g, res.spanner) <= 2.0 + 1e-9
        assert all(w <= 1.0 for _, _, w in res.spanner.edges)
        assert res.rounds == res.mis_rounds + 3


class TestCongestPhases:
    def test_isolated_center(self):
        g = build_ubg(make_ps([[0, 0], [5, 5]]), 1.0)
        short = span_short_edges(g, 0, 0.5)
        assert short.i_w == [0]
        assert len(short.shares[0]) == 0

    def test_short_phase_covering(self):
        g = build_ubg(generate_uniform_square(80, 4, 3), 1.0)
        mis = distributed_mis(g, seed=3)
        for w in sorted(mis.members):
            short = span_short_edges(g, w, 0.5)
            n2 = k_hop_neighborhood(g, w, 2)
            assert covering_check(g.points, short.i_w, [int(i) for i in n2.ids], 0.5)
            assert len(short.i_w) <= packing_bound(2, 0.25, 2)

    def test_short_phase_spans_short_edges(self):
        g = build_ubg(generate_uniform_square(80, 4, 5), 1.0)
        eps = 0.5
        mis = distributed_mis(g, seed=5)
        for w in sorted(mis.members)[:4]:
            short = span_short_edges(g, w, eps)
            union = EdgeList(e for el in short.shares.values() for e in el)
            n2 = set(int(i) for i in k_hop_neighborhood(g, w, 2).ids)
            for u, v, wt in g.edge_list():
                if u in n2 and v in n2 and wt <= 0.5:
                    assert shortest_path_distance(union, u, v) <= (1 + eps) * wt + 1e-9

    def test_long_phase_parameters_and_covering(self):
        eps = 0.5
        assert eps / 40 == 0.0125
        assert eps / 20 == 0.025
        assert 1 + eps / 5 == 1.1
        g = build_ubg(generate_uniform_square(80, 4, 9), 1.0)
        mis = distributed_mis(g, seed=9)
        w = sorted(mis.members)[0]
        long_ = span_long_edges(g, w, eps)
        n2 = [int(i) for i in k_hop_neighborhood(g, w, 2).ids]
        assert covering_check(g.points, long_.i_prime_w, n2, eps / 20)
        assert len(long_.i_prime_w) <= packing_bound(2, eps / 40, 2)
        # Selected centers are eps/40-separated by construction.
        pts = {p.id: p for p in g.points.points}
        for a, b in itertools.combinations(long_.i_prime_w, 2):
            assert distance(pts[a], pts[b]) > eps / 40

    def test_long_phase_spans_long_edges(self):
        g = build_ubg(generate_uniform_square(80, 4, 13), 1.0)
        eps = 0.5
        mis = distributed_mis(g, seed=13)
        for w in sorted(mis.members)[:3]:
            long_ = span_long_edges(g, w, eps)
            union = long_.sprime
            for el in long_.shares.values():
                union = union.union(el)
            n2 = set(int(i) for i in k_hop_neighborhood(g, w, 2).ids)
            for u, v, wt in g.edge_list():
                if u in n2 and v in n2 and wt > 0.5:
                    assert shortest_path_distance(union, u, v) <= (1 + eps) * wt + 1e-9


class TestCongestSpanner:
    def test_single_point(self):
        g = build_ubg(make_ps([[0, 0]]), 1.0)
        res = congest_spanner(g, 0.5, seed=1)
        assert len(res.spanner.edges) == 0

    def test_matches_emulator_and_stretch(self):
        g = build_ubg(generate_uniform_square(100, 5, 2), 1.0)
        res = congest_spanner(g, 0.5, seed=2)
        edges, artifacts = emulate_congest(g, res.mis_members, 0.5)
        assert edges == res.spanner.edges
        assert artifacts.i_of == res.artifacts.i_of
        assert artifacts.i_prime_of == res.artifacts.i_prime_of
        assert check_stretch(g, res.spanner) <= 1.5 + 1e-9

    @pytest.mark.parametrize("eps,seed,n", [
        (0.25, 3, 60), (0.5, 7, 70), (1.0, 11, 80), (0.36, 5, 50),
    ])
    def test_engine_equals_emulator_across_parameters(self, eps, seed, n):
        # The offline emulation is the transport oracle: any mis-routed,
        # truncated, or dropped message shows up as an edge-set difference.
        g = build_ubg(generate_uniform_square(n, 4, seed), 1.0)
        res = congest_spanner(g, eps, seed=seed)
        edges, artifacts = emulate_congest(g, res.mis_members, eps)
        assert edges == res.spanner.edges
        assert artifacts.i_of == res.artifacts.i_of
        assert artifacts.i_prime_of == res.artifacts.i_prime_of

    def test_constant_overhead_and_width(self):
        for n, seed in ((40, 1), (90, 1)):
            g = build_ubg(generate_uniform_square(n, 5, seed), 1.0)
            res = congest_spanner(g, 0.5, seed=seed)
            assert res.rounds - res.mis_rounds == CONGEST_OVERHEAD
            assert res.max_words <= 8

    def test_subgraph_property(self):
        g = build_ubg(generate_uniform_square(90, 5, 4), 1.0)
        res = congest_spanner(g, 1.0, seed=4)
        ubg_edges = g.edge_list()
        for u, v, w in res.spanner.edges:
            assert (u, v) in ubg_edges
            assert w <= 1.0

    def test_determinism(self):
        g = build_ubg(generate_uniform_square(60, 4, 6), 1.0)
        a = congest_spanner(g, 0.5, seed=6)
        b = congest_spanner(g, 0.5, seed=6)
        assert a.spanner.edges == b.spanner.edges
        assert a.rounds == b.rounds


class TestProtocolSummary:
    def test_json_summary_fields(self):
        g = build_ubg(generate_uniform_square(30, 3, 2), 1.0)
        res = congest_spanner(g, 0.5, seed=2)
        summary = res.summary()
        assert set(summary) == {"protocol", "n", "param", "rounds", "mis_rounds", "max_words"}
        assert summary["protocol"] == "congest"
        assert summary["n"] == 30
        assert summary["param"] == 0.5
        assert summary["rounds"] == summary["mis_rounds"] + CONGEST_OVERHEAD
