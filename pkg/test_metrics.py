#!/usr/bin/env python3
"""
Tests for edge, node and adjusted heterophily, their aggregates and the report.
"""

import itertools
import os
import sys

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from conftest import (
    brute_force_induced,
    build_academic,
    induce_homogeneous,
    permute_papers,
    random_academic,
    random_publications,
)
from heterophily_gauge.config import RunConfig
from heterophily_gauge.core import LabelMap
from heterophily_gauge.errors import (
    AllMetapathsEmptyError,
    DegenerateClassDistributionError,
    EmptyInducedGraphError,
    UsageError,
)
from heterophily_gauge.metapath import MetapathSet, enumerate_metapaths, induce_subgraph, parse_metapath
from heterophily_gauge.metrics import (
    AdjustedHeterophily,
    AggregationKind,
    adjusted_heterophily,
    build_metric_report,
    class_degree_profile,
    edge_heterophily,
    estimate_edge_heterophily,
    h2_index,
    metapath_label_heterophily,
    node_heterophily,
    null_model_heterophily,
    render_table,
)
from heterophily_gauge.metrics import base_metric
from heterophily_gauge.metrics.aggregate import aggregate
from heterophily_gauge.metrics.report import render_metapath_rows
from heterophily_gauge.synth import TARGET_TYPE, PlantedConfig, generate_planted

K4_EDGES = list(itertools.combinations(range(4), 2))


def naive_metrics(n, edges, labels):
    """Double-loop H_edge, H_node and p over the simple undirected edge set."""
    simple = {(min(u, v), max(u, v)) for u, v in edges if u != v}
    neighbors = {v: set() for v in range(n)}
    for u, v in simple:
        neighbors[u].add(v)
        neighbors[v].add(u)
    h_edge = sum(labels[u] != labels[v] for u, v in simple) / len(simple)
    fractions = [sum(labels[u] != labels[v] for u in nb) / len(nb) for v, nb in neighbors.items() if nb]
    h_node = sum(fractions) / len(fractions)
    class_degrees = {}
    for v, nb in neighbors.items():
        class_degrees[labels[v]] = class_degrees.get(labels[v], 0) + len(nb)
    total = 2 * len(simple)
    p = sum(d * d for d in class_degrees.values()) / (total * total)
    return h_edge, h_node, p


@st.composite
def labeled_graphs(draw, min_nodes=2, max_nodes=12, max_classes=3):
    n = draw(st.integers(min_nodes, max_nodes))
    num_classes = draw(st.integers(1, max_classes))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=4 * n))
    labels = draw(st.lists(st.integers(0, num_classes - 1), min_size=n, max_size=n))
    return n, edges, labels, num_classes


@st.composite
def swap_cases(draw, max_nodes=12):
    """A simple graph on labels starting 0, 0, 1 that always holds the homophilic edge (0, 1)."""
    n = draw(st.integers(3, max_nodes))
    labels = [0, 0, 1] + draw(st.lists(st.integers(0, 2), min_size=n - 3, max_size=n - 3))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    simple = {(min(u, v), max(u, v)) for u, v in edges if u != v} | {(0, 1)}
    return n, simple, labels


class TestEdgeHeterophily:
    def test_single_heterophilic_edge(self):
        ig, labels = induce_homogeneous(2, [(0, 1)], [0, 1])
        assert edge_heterophily(ig, labels) == 1.0

    def test_pure_homophily(self):
        ig, labels = induce_homogeneous(4, [(0, 1), (2, 3)], [0, 0, 1, 1])
        assert edge_heterophily(ig, labels) == 0.0

    def test_k4(self):
        ig, labels = induce_homogeneous(4, K4_EDGES, [0, 0, 1, 1])
        assert edge_heterophily(ig, labels) == pytest.approx(2 / 3, abs=1e-12)

    def test_empty_graph(self):
        ig, labels = induce_homogeneous(3, [], [0, 1, 0])
        with pytest.raises(EmptyInducedGraphError):
            edge_heterophily(ig, labels)


class TestNodeHeterophily:
    def test_bipartite_star(self):
        ig, labels = induce_homogeneous(5, [(0, leaf) for leaf in range(1, 5)], [0, 1, 1, 1, 1])
        assert node_heterophily(ig, labels) == 1.0

    def test_triangle(self):
        ig, labels = induce_homogeneous(3, [(0, 1), (1, 2), (0, 2)], [0, 0, 1])
        assert node_heterophily(ig, labels) == pytest.approx(2 / 3, abs=1e-12)

    def test_homophilic_clique(self):
        ig, labels = induce_homogeneous(4, K4_EDGES, [1, 1, 1, 1], num_classes=2)
        assert node_heterophily(ig, labels) == 0.0

    def test_isolated_nodes_excluded(self):
        ig, labels = induce_homogeneous(4, [(0, 1)], [0, 1, 0, 0])
        assert node_heterophily(ig, labels) == 1.0

    def test_all_isolated(self):
        ig, labels = induce_homogeneous(3, [], [0, 1, 0])
        with pytest.raises(EmptyInducedGraphError):
            node_heterophily(ig, labels)


class TestAdjustedHeterophily:
    def test_k4_constants(self):
        ig, labels = induce_homogeneous(4, K4_EDGES, [0, 0, 1, 1])
        table = class_degree_profile(ig, labels)
        assert table.class_degrees == [6.0, 6.0]
        assert table.endpoint_total == 12.0
        assert table.collision_mass == pytest.approx(0.5, abs=1e-12)
        assert adjusted_heterophily(ig, labels) == pytest.approx(4 / 3, abs=1e-12)

    def test_path_a_b_a(self):
        ig, labels = induce_homogeneous(3, [(0, 1), (1, 2)], [0, 1, 0])
        assert class_degree_profile(ig, labels).collision_mass == pytest.approx(0.5)
        assert adjusted_heterophily(ig, labels) == pytest.approx(2.0)

    @pytest.mark.parametrize("blocks", [1, 2, 5])
    def test_neutral_point(self, blocks):
        # Ring coloured 0,0,1,1,...: half the edges cross and each class holds half the degree
        n = 4 * blocks
        ring = [(v, (v + 1) % n) for v in range(n)]
        ig, labels = induce_homogeneous(n, ring, [(v // 2) % 2 for v in range(n)])
        p = class_degree_profile(ig, labels).collision_mass
        assert edge_heterophily(ig, labels) == pytest.approx(1 - p, abs=1e-12)
        assert adjusted_heterophily(ig, labels) == pytest.approx(1.0, abs=1e-12)

    def test_homophilic_two_class_graph(self):
        ig, labels = induce_homogeneous(4, [(0, 1), (2, 3)], [0, 0, 1, 1])
        assert adjusted_heterophily(ig, labels) == pytest.approx(0.0, abs=1e-12)

    def test_single_class_is_degenerate(self):
        ig, labels = induce_homogeneous(3, [(0, 1), (1, 2)], [0, 0, 0])
        with pytest.raises(DegenerateClassDistributionError, match="denominator"):
            adjusted_heterophily(ig, labels)

    def test_exact_expectation(self):
        ig, labels = induce_homogeneous(4, K4_EDGES, [0, 0, 1, 1])
        table = class_degree_profile(ig, labels)
        assert table.exact_collision_mass == pytest.approx(60 / 132)
        metric = AdjustedHeterophily(expectation="exact")
        assert metric.compute(ig, labels) == pytest.approx((2 / 3) / (1 - 60 / 132))
        assert metric.get_metric_info()["expectation"] == "exact"

    def test_weighted_profile(self):
        ig, labels = induce_homogeneous(3, [(0, 1), (1, 2)], [0, 1, 0], count_multiplicity=True)
        table = class_degree_profile(ig, labels)
        assert sum(table.class_degrees) == pytest.approx(ig.endpoint_total)


class TestProperties:
    @given(labeled_graphs())
    @settings(max_examples=150, deadline=None)
    def test_matches_naive_oracle(self, data):
        n, edges, labels, num_classes = data
        assume(any(u != v for u, v in edges))
        ig, label_map = induce_homogeneous(n, edges, labels, num_classes=num_classes)
        h_edge, h_node, p = naive_metrics(n, edges, labels)
        assert edge_heterophily(ig, label_map) == pytest.approx(h_edge, abs=1e-12)
        assert node_heterophily(ig, label_map) == pytest.approx(h_node, abs=1e-12)
        table = class_degree_profile(ig, label_map)
        assert table.collision_mass == pytest.approx(p, abs=1e-12)
        assert sum(table.class_degrees) == 2 * ig.m
        assert 0.0 <= edge_heterophily(ig, label_map) <= 1.0
        if p < 1.0:
            assert adjusted_heterophily(ig, label_map) == pytest.approx(h_edge / (1 - p), abs=1e-12)
        else:
            with pytest.raises(DegenerateClassDistributionError):
                adjusted_heterophily(ig, label_map)

    @given(labeled_graphs(min_nodes=5, max_nodes=50, max_classes=5))
    @settings(max_examples=1000, deadline=None)
    def test_adjusted_equals_edge_over_expected(self, data):
        n, edges, labels, num_classes = data
        assume(any(u != v for u, v in edges))
        ig, label_map = induce_homogeneous(n, edges, labels, num_classes=num_classes)
        table = class_degree_profile(ig, label_map)
        assume(table.classes_present > 1)
        h_edge = edge_heterophily(ig, label_map)
        assert adjusted_heterophily(ig, label_map) == pytest.approx(h_edge / (1 - table.collision_mass), abs=1e-12)

    def assert_aggregates_match_naive(self, g, labels, ms):
        y = labels.labels.tolist()
        edge_values, adjusted_values = [], []
        for path in ms.paths:
            simple = brute_force_induced(g, labels, path)
            if not simple:
                continue
            h_edge, h_node, p = naive_metrics(len(y), list(simple), y)
            ig = induce_subgraph(g, labels, path)
            assert edge_heterophily(ig, labels) == pytest.approx(h_edge, abs=1e-12)
            assert node_heterophily(ig, labels) == pytest.approx(h_node, abs=1e-12)
            edge_values.append(h_edge)
            if p < 1.0:
                adjusted_values.append(h_edge / (1 - p))
        if edge_values:
            assert metapath_label_heterophily(g, labels, ms) == pytest.approx(np.mean(edge_values), abs=1e-12)
        else:
            with pytest.raises(AllMetapathsEmptyError):
                metapath_label_heterophily(g, labels, ms)
        if adjusted_values:
            assert h2_index(g, labels, ms) == pytest.approx(np.mean(adjusted_values), abs=1e-12)
        else:
            with pytest.raises(AllMetapathsEmptyError):
                h2_index(g, labels, ms)

    @given(random_academic(max_papers=30, max_authors=30, max_edges=40))
    @settings(max_examples=500, deadline=None)
    def test_heterogeneous_aggregates_match_naive(self, data):
        g, labels = data
        self.assert_aggregates_match_naive(g, labels, enumerate_metapaths(g.schema, "paper", k=2))

    @given(random_publications(max_papers=20, max_authors=10, max_venues=4, max_edges=25))
    @settings(max_examples=200, deadline=None)
    def test_three_type_aggregates_match_naive(self, data):
        g, labels = data
        self.assert_aggregates_match_naive(g, labels, enumerate_metapaths(g.schema, "paper", k=3))

    @given(random_publications(max_papers=20, max_authors=10, max_venues=4, max_edges=25))
    @settings(max_examples=200, deadline=None)
    def test_aggregates_stay_within_metapath_range(self, data):
        g, labels = data
        ms = enumerate_metapaths(g.schema, "paper", k=3)
        edge_values, adjusted_values = [], []
        for path in ms.paths:
            ig = induce_subgraph(g, labels, path)
            if ig.m == 0:
                continue
            edge_values.append(edge_heterophily(ig, labels))
            if class_degree_profile(ig, labels).classes_present > 1:
                adjusted_values.append(adjusted_heterophily(ig, labels))
        for agg in (AggregationKind.MEAN, AggregationKind.MAX):
            if edge_values:
                mlh = metapath_label_heterophily(g, labels, ms, agg)
                assert min(edge_values) - 1e-12 <= mlh <= max(edge_values) + 1e-12
                assert 0.0 <= mlh <= 1.0
            if adjusted_values:
                h2 = h2_index(g, labels, ms, agg)
                assert min(adjusted_values) - 1e-12 <= h2 <= max(adjusted_values) + 1e-12
                assert h2 >= 0.0
        if edge_values:
            assert metapath_label_heterophily(g, labels, ms, AggregationKind.MAX) == pytest.approx(max(edge_values))
        if adjusted_values:
            assert h2_index(g, labels, ms, AggregationKind.MAX) == pytest.approx(max(adjusted_values))

    @given(random_publications(), st.data())
    @settings(max_examples=100, deadline=None)
    def test_node_permutation_changes_nothing(self, data, choice):
        g, labels = data
        perm = choice.draw(st.permutations(range(len(labels))))
        moved_g, moved_labels = permute_papers(g, labels, perm)
        ms = enumerate_metapaths(g.schema, "paper", k=3)
        for path in ms.paths:
            ig, moved = induce_subgraph(g, labels, path), induce_subgraph(moved_g, moved_labels, path)
            assert moved.m == ig.m
            if ig.m == 0:
                continue
            assert edge_heterophily(moved, moved_labels) == pytest.approx(edge_heterophily(ig, labels), abs=1e-12)
            assert node_heterophily(moved, moved_labels) == pytest.approx(node_heterophily(ig, labels), abs=1e-12)
            assert class_degree_profile(moved, moved_labels).collision_mass == pytest.approx(
                class_degree_profile(ig, labels).collision_mass, abs=1e-12
            )
        for index in (metapath_label_heterophily, h2_index):
            try:
                expected = index(g, labels, ms)
            except AllMetapathsEmptyError:
                with pytest.raises(AllMetapathsEmptyError):
                    index(moved_g, moved_labels, ms)
            else:
                assert index(moved_g, moved_labels, ms) == pytest.approx(expected, abs=1e-12)

    @given(labeled_graphs(min_nodes=3), st.data())
    @settings(max_examples=200, deadline=None)
    def test_adding_one_edge_moves_h_edge_its_way(self, data, choice):
        n, edges, labels, num_classes = data
        simple = {(min(u, v), max(u, v)) for u, v in edges if u != v}
        missing = [pair for pair in itertools.combinations(range(n), 2) if pair not in simple]
        assume(simple and missing)
        u, v = choice.draw(st.sampled_from(missing))
        before, label_map = induce_homogeneous(n, sorted(simple), labels, num_classes=num_classes)
        after, _ = induce_homogeneous(n, sorted(simple | {(u, v)}), labels, num_classes=num_classes)
        if labels[u] == labels[v]:
            assert edge_heterophily(after, label_map) <= edge_heterophily(before, label_map)
        else:
            assert edge_heterophily(after, label_map) >= edge_heterophily(before, label_map)

    @given(swap_cases(), st.data())
    @settings(max_examples=200, deadline=None)
    def test_swapping_in_a_heterophilic_edge_raises_h_edge(self, data, choice):
        n, simple, labels = data
        homophilic = sorted(e for e in simple if labels[e[0]] == labels[e[1]])
        heterophilic = [e for e in itertools.combinations(range(n), 2) if labels[e[0]] != labels[e[1]] and e not in simple]
        assume(heterophilic)
        dropped = choice.draw(st.sampled_from(homophilic))
        added = choice.draw(st.sampled_from(heterophilic))
        before, label_map = induce_homogeneous(n, sorted(simple), labels, num_classes=3)
        after, _ = induce_homogeneous(n, sorted((simple - {dropped}) | {added}), labels, num_classes=3)
        assert after.m == before.m
        assert edge_heterophily(after, label_map) == pytest.approx(edge_heterophily(before, label_map) + 1 / before.m)

    @given(labeled_graphs(), st.permutations(range(5)))
    @settings(max_examples=80, deadline=None)
    def test_relabeling_classes_changes_nothing(self, data, perm):
        n, edges, labels, num_classes = data
        assume(any(u != v for u, v in edges))
        ig, original = induce_homogeneous(n, edges, labels, num_classes=num_classes)
        renamed = LabelMap("node", 5, [perm[y] for y in labels])
        assert edge_heterophily(ig, renamed) == edge_heterophily(ig, original)
        assert node_heterophily(ig, renamed) == pytest.approx(node_heterophily(ig, original), abs=1e-12)
        assert class_degree_profile(ig, renamed).collision_mass == pytest.approx(
            class_degree_profile(ig, original).collision_mass, abs=1e-12
        )

    def test_thread_count_does_not_change_values(self, monkeypatch):
        rng = np.random.default_rng(3)
        n = 500
        edges = rng.integers(0, n, size=(3000, 2))
        labels = rng.integers(0, 3, size=n)
        ig, label_map = induce_homogeneous(n, edges, labels, num_classes=3)
        serial = (edge_heterophily(ig, label_map), node_heterophily(ig, label_map))
        monkeypatch.setattr(base_metric, "PARALLEL_MIN_ITEMS", 1)
        parallel = (edge_heterophily(ig, label_map, threads=7), node_heterophily(ig, label_map, threads=7))
        assert parallel[0] == pytest.approx(serial[0], abs=1e-9)
        assert parallel[1] == pytest.approx(serial[1], abs=1e-9)


class TestAggregation:
    def academic(self):
        # Two authors, each writing a pair of differently labeled papers; cites links 0 and 2
        return build_academic(
            4, 2, writes=[(0, 0), (0, 1), (1, 2), (1, 3)], cites=[(0, 2)], labels=[0, 1, 0, 1]
        )

    def metapath_set(self, g, *texts):
        paths = [parse_metapath(text, g.schema, "paper") for text in texts]
        return MetapathSet(target_type="paper", max_length=2, lengths=[1, 2], paths=paths)

    def test_aggregate_arithmetic(self):
        assert aggregate([0.2, 0.6], AggregationKind.MEAN) == pytest.approx(0.4)
        assert aggregate([0.2, 0.6], AggregationKind.MAX) == pytest.approx(0.6)
        assert aggregate([4 / 3, 2 / 3], "mean") == pytest.approx(1.0)
        with pytest.raises(AllMetapathsEmptyError):
            aggregate([])

    def test_singleton_set(self):
        g, labels = self.academic()
        ms = self.metapath_set(g, "~writes.writes")
        assert metapath_label_heterophily(g, labels, ms) == 1.0
        assert h2_index(g, labels, ms) == pytest.approx(2.0)

    def test_mean_and_max(self):
        g, labels = self.academic()
        ms = self.metapath_set(g, "~writes.writes", "cites")
        assert metapath_label_heterophily(g, labels, ms, AggregationKind.MEAN) == pytest.approx(0.5)
        assert metapath_label_heterophily(g, labels, ms, AggregationKind.MAX) == 1.0

    def test_empty_metapaths_are_skipped(self):
        g, labels = self.academic()
        ms = enumerate_metapaths(g.schema, "paper", k=2)
        # cites.cites and its variants induce nothing on a single citation
        assert metapath_label_heterophily(g, labels, ms, AggregationKind.MAX) == 1.0

    def test_single_class_metapath_skipped_for_h2(self):
        g, labels = self.academic()
        ms = self.metapath_set(g, "~writes.writes", "cites")
        # cites joins two class-0 papers: H_adj is undefined there
        assert h2_index(g, labels, ms) == pytest.approx(2.0)

    def test_everything_empty(self):
        g, labels = build_academic(3, 1, labels=[0, 1, 0])
        with pytest.raises(AllMetapathsEmptyError):
            metapath_label_heterophily(g, labels, enumerate_metapaths(g.schema, "paper", k=2))
        with pytest.raises(AllMetapathsEmptyError):
            h2_index(g, labels, MetapathSet(target_type="paper", max_length=2, lengths=[1, 2], paths=[]))


class TestSampling:
    def test_exhaustive_is_exact(self):
        ig, labels = induce_homogeneous(4, K4_EDGES, [0, 0, 1, 1])
        estimate = estimate_edge_heterophily(ig, labels, sample_size=ig.m, exhaustive=True)
        assert estimate.estimate == pytest.approx(2 / 3, abs=1e-12)
        assert estimate.half_width == 0.0

    def test_all_heterophilic(self):
        ig, labels = induce_homogeneous(5, [(0, leaf) for leaf in range(1, 5)], [0, 1, 1, 1, 1])
        estimate = estimate_edge_heterophily(ig, labels, sample_size=200, seed=9)
        assert estimate.estimate == 1.0
        assert estimate.half_width == 0.0

    def test_seeded(self):
        rng = np.random.default_rng(11)
        ig, labels = induce_homogeneous(300, rng.integers(0, 300, size=(2000, 2)), rng.integers(0, 2, size=300))
        first = estimate_edge_heterophily(ig, labels, sample_size=500, seed=4)
        second = estimate_edge_heterophily(ig, labels, sample_size=500, seed=4)
        assert first == second
        exact = edge_heterophily(ig, labels)
        assert abs(first.estimate - exact) < 4 * first.half_width + 1e-9

    def test_planted_mixing_estimate(self):
        g, labels = generate_planted(PlantedConfig(num_classes=2, nodes_per_class=5000, mean_degree=20, mixing=0.3, seed=8))
        ig = induce_subgraph(g, labels, parse_metapath("links", g.schema, TARGET_TYPE))
        exact = edge_heterophily(ig, labels)
        assert abs(exact - 0.3) < 0.02
        for seed in (0, 1, 2):
            estimate = estimate_edge_heterophily(ig, labels, sample_size=20_000, seed=seed)
            assert abs(estimate.estimate - exact) < 0.015
            assert 0.0 < estimate.half_width < 0.01

    def test_bad_sample_size(self):
        ig, labels = induce_homogeneous(2, [(0, 1)], [0, 1])
        with pytest.raises(UsageError):
            estimate_edge_heterophily(ig, labels, sample_size=0)


class TestNullModel:
    def test_tracks_analytic_expectation(self):
        rng = np.random.default_rng(5)
        n = 400
        ig, labels = induce_homogeneous(n, rng.integers(0, n, size=(2500, 2)), rng.integers(0, 2, size=n))
        baseline = null_model_heterophily(ig, labels, trials=5, seed=1)
        expected = class_degree_profile(ig, labels).expected_heterophily
        assert baseline.trials == 5
        assert baseline.mean == pytest.approx(expected, abs=0.03)

    def test_weighted_graph_rejected(self):
        ig, labels = induce_homogeneous(3, [(0, 1), (1, 2)], [0, 1, 0], count_multiplicity=True)
        with pytest.raises(UsageError):
            null_model_heterophily(ig, labels)


class TestReport:
    def report_graph(self):
        return build_academic(4, 2, writes=[(0, 0), (0, 1), (1, 2), (1, 3)], labels=[0, 1, 0, 1])

    def test_rows_and_skips(self):
        g, labels = self.report_graph()
        ms = enumerate_metapaths(g.schema, "paper", k=2)
        report = build_metric_report(g, labels, ms, RunConfig(threads=1, quiet=True), dataset="toy")
        assert [row.metapath for row in report.rows] == ["paper <-writes- author -writes-> paper"]
        assert len(report.skipped) == 4
        row = report.rows[0]
        assert (row.m, row.h_edge, row.h_node, row.p) == (2.0, 1.0, 1.0, 0.5)
        assert row.h_adj == pytest.approx(2.0)
        assert report.mlh == 1.0
        assert report.h2 == pytest.approx(2.0)
        assert report.overall.h_edge == 1.0
        assert report.config["agg"] == "mean"

        table = render_table([("toy", report)])
        assert "Metapath-based Label Heterophily (MLH)" in table
        assert "1.0000" in table
        assert "skipped paper -cites-> paper" in render_metapath_rows(report)

    def test_single_class_report(self):
        g, _ = self.report_graph()
        labels = LabelMap("paper", 1, [0, 0, 0, 0])
        ms = enumerate_metapaths(g.schema, "paper", k=2)
        with pytest.raises(DegenerateClassDistributionError):
            build_metric_report(g, labels, ms, RunConfig(threads=1, quiet=True))

    def test_all_empty_report(self):
        g, labels = build_academic(3, 1, labels=[0, 1, 0])
        with pytest.raises(AllMetapathsEmptyError):
            build_metric_report(g, labels, enumerate_metapaths(g.schema, "paper", k=2), RunConfig(threads=1, quiet=True))

    def test_sampling_and_null_columns(self):
        g, labels = self.report_graph()
        ms = enumerate_metapaths(g.schema, "paper", k=2)
        config = RunConfig(threads=1, quiet=True, sample_size=50, null_trials=2)
        row = build_metric_report(g, labels, ms, config).rows[0]
        assert row.h_edge_estimate == 1.0
        assert row.null_h_edge is not None

    def test_agg_max_not_below_mean(self):
        g, labels = build_academic(
            4, 2, writes=[(0, 0), (0, 1), (1, 2), (1, 3)], cites=[(0, 1), (0, 2)], labels=[0, 1, 0, 1]
        )
        ms = enumerate_metapaths(g.schema, "paper", k=2)
        mean = build_metric_report(g, labels, ms, RunConfig(threads=1, quiet=True, agg="mean"))
        best = build_metric_report(g, labels, ms, RunConfig(threads=1, quiet=True, agg="max"))
        assert best.mlh >= mean.mlh
        assert best.h2 >= mean.h2
