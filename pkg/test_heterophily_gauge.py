#!/usr/bin/env python3
"""
End-to-end tests for the Heterophily Gauge: the orchestrator, the command
line and the HTTP API.
"""

import json
import os
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from api import app
from heterophily_gauge import HeterophilyGauge
from heterophily_gauge.cli import main
from heterophily_gauge.config import RunConfig, build_run_config
from heterophily_gauge.core import HeteroGraph, LabelMap, Schema
from heterophily_gauge.errors import AllMetapathsEmptyError, DataError, UsageError
from heterophily_gauge.metrics import MetricReport


def single_class(toy_bundle):
    (toy_bundle.parent / "paper.csv").write_text("local_id,label,timestamp\n0,0,2001\n1,0,2002\n2,0,2003\n")
    return toy_bundle


class TestGauge:
    def test_toy_report(self, toy_bundle):
        gauge = HeterophilyGauge.from_path(str(toy_bundle), RunConfig(threads=1, quiet=True))
        report = gauge.compute_metrics()
        assert report.dataset == "bundle"
        assert [row.metapath for row in report.rows] == ["paper <-writes- author -writes-> paper"]
        assert report.mlh == pytest.approx(1.0, abs=1e-12)
        assert report.h2 == pytest.approx(2.0, abs=1e-12)
        assert len(report.skipped) == 4
        assert report.config["lengths"] == [1, 2]

    def test_explicit_metapaths_are_canonicalized(self, toy_bundle):
        config = RunConfig(threads=1, quiet=True, metapaths=["~writes.writes", "paper <-writes- author -writes-> paper"])
        listing = HeterophilyGauge.from_path(str(toy_bundle), config).list_metapaths(materialize=True)
        assert [entry.compact for entry in listing.metapaths] == ["~writes.writes"]
        assert listing.metapaths[0].edges == 1.0
        assert listing.metapaths[0].non_isolated == 2

    def test_unlabeled_target(self, toy_bundle):
        gauge = HeterophilyGauge.from_path(str(toy_bundle), RunConfig(threads=1, quiet=True, target="author"))
        assert gauge.list_metapaths().target_type == "author"
        with pytest.raises(DataError):
            gauge.compute_metrics()

    def test_everything_empty(self):
        schema = Schema(node_types=["paper"], relations=[["paper", "cites", "paper"]])
        g = HeteroGraph.from_edge_lists(schema, {"paper": 3}, {})
        gauge = HeterophilyGauge(g, LabelMap("paper", 2, [0, 1, 0]), RunConfig(threads=1, quiet=True))
        with pytest.raises(AllMetapathsEmptyError):
            gauge.compute_metrics()

    def test_info(self, toy_bundle):
        gauge = HeterophilyGauge.from_path(str(toy_bundle), RunConfig(threads=1, quiet=True))
        assert [info["symbol"] for info in gauge.get_metric_info()] == ["H_edge", "H_node", "H_adj"]
        assert gauge.get_graph_info()["node_counts"] == {"paper": 3, "author": 2}


class TestRunConfig:
    def test_flags_override_config_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"agg": "max", "seed": 5, "threads": 2}))
        config = build_run_config({"seed": 9, "agg": None}, str(path))
        assert (config.agg, config.seed, config.threads) == ("max", 9, 2)

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("HGAUGE_THREADS", "3")
        assert build_run_config({}).threads == 3
        monkeypatch.setenv("HGAUGE_THREADS", "zero")
        with pytest.raises(UsageError):
            build_run_config({})

    @pytest.mark.parametrize(
        "overrides",
        [
            {"directed": True},
            {"ratios": [0.5, 0.5]},
            {"lengths": [0]},
            {"null_trials": 2, "count_multiplicity": True},
        ],
    )
    def test_invalid(self, overrides):
        with pytest.raises(UsageError):
            build_run_config({"threads": 1, **overrides})

    def test_directed_needs_custom_profile(self):
        assert not build_run_config({"threads": 1, "directed": True, "profile": "custom"}).symmetrize


class TestCommandLine:
    def test_full_pipeline(self, tmp_path, capsys):
        data = tmp_path / "planted"
        cache = tmp_path / "planted.hgb"
        args = ["--nodes-per-class", "60", "--mean-degree", "4", "--mixing", "0.3", "--hubs", "12"]
        assert main(["generate", "--output", str(data), "--timestamps", "--seed", "3", "--quiet", *args]) == 0
        assert main(["convert", "--graph", str(data / "bundle.json"), "--output", str(cache), "--quiet"]) == 0

        report_path = tmp_path / "report.json"
        assert main(["metrics", "--graph", str(cache), "--threads", "2", "--output", str(report_path), "--quiet"]) == 0
        out = capsys.readouterr().out
        assert "Metapath-based Label Heterophily (MLH)" in out
        assert "Configuration: " in out
        report = MetricReport.model_validate_json(report_path.read_text())
        assert 0.0 <= report.mlh <= 1.0
        assert report.config["threads"] == 2

        assert main(["metapaths", "--graph", str(cache), "--materialize", "--quiet"]) == 0
        assert "item -links-> item" in capsys.readouterr().out

        masks = tmp_path / "masks.json"
        assert main(["split", "--graph", str(cache), "--output", str(masks), "--csv-dir", str(tmp_path / "csv"), "--quiet"]) == 0
        document = json.loads(masks.read_text())
        assert sum(document["sizes"].values()) == 120
        assert (tmp_path / "csv" / "test.csv").exists()

        assert main(["stats", "--graph", str(cache), "--masks", str(masks), "--quiet"]) == 0
        assert "Split (temporal)" in capsys.readouterr().out

        assert main(["table", str(report_path), str(report_path)]) == 0
        assert "Heterogeneous Heterophily Index (H²)" in capsys.readouterr().out

    def test_generate_reads_config_file(self, tmp_path, capsys):
        def bundle_text(name):
            return [p.read_text() for p in sorted((tmp_path / name).glob("*.csv"))]

        run_config = tmp_path / "run.json"
        run_config.write_text('{"seed": 5}')
        args = ["--nodes-per-class", "20", "--mean-degree", "3", "--mixing", "0.4", "--quiet"]
        assert main(["generate", "--output", str(tmp_path / "from_file"), "--config", str(run_config), *args]) == 0
        out = capsys.readouterr().out
        assert "Configuration: " in out
        assert json.loads(out.split("Configuration: ", 1)[1])["seed"] == 5
        assert main(["generate", "--output", str(tmp_path / "from_flag"), "--seed", "5", *args]) == 0
        assert main(["generate", "--output", str(tmp_path / "default"), *args]) == 0
        assert bundle_text("from_file") == bundle_text("from_flag")
        assert bundle_text("from_file") != bundle_text("default")

    def test_generate_checks_thread_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv("HGAUGE_THREADS", "zero")
        assert main(["generate", "--output", str(tmp_path / "gen"), "--nodes-per-class", "5", "--quiet"]) == 1
        assert main(["generate", "--output", str(tmp_path / "gen"), "--nodes-per-class", "5", "--threads", "1", "--quiet"]) == 0

    def test_convert_is_byte_identical(self, toy_bundle, tmp_path):
        first, second = tmp_path / "a.hgb", tmp_path / "b.hgb"
        assert main(["convert", "--graph", str(toy_bundle), "--output", str(first), "--quiet"]) == 0
        assert main(["convert", "--graph", str(toy_bundle), "--output", str(second), "--quiet"]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_random_split_seed(self, toy_bundle, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            argv = ["split", "--graph", str(toy_bundle), "--strategy", "random", "--seed", "8", "--output", str(path), "--quiet"]
            assert main(argv) == 0
        assert paths[0].read_text() == paths[1].read_text()

    @pytest.mark.parametrize(
        "argv",
        [
            ["metrics"],
            ["metrics", "--no-such-flag"],
            ["frobnicate"],
            ["metrics", "--graph", "{bundle}", "--directed"],
            ["split", "--graph", "{bundle}", "--ratios", "0.5,0.6,0.1"],
            ["generate", "--output", "{dir}", "--classes", "1", "--mixing", "0.5"],
        ],
    )
    def test_usage_errors(self, argv, toy_bundle, tmp_path):
        argv = [a.format(bundle=toy_bundle, dir=tmp_path / "gen") for a in argv]
        assert main(argv + ["--quiet"]) == 1

    def test_malformed_csv(self, toy_bundle):
        (toy_bundle.parent / "writes.csv").write_text("src_local_id,dst_local_id\n0,0\n0,x\n")
        assert main(["metrics", "--graph", str(toy_bundle), "--quiet"]) == 2

    def test_missing_cache(self, tmp_path):
        assert main(["stats", "--graph", str(tmp_path / "absent.hgb"), "--quiet"]) == 2

    def test_missing_timestamps(self, toy_bundle):
        (toy_bundle.parent / "paper.csv").write_text("local_id,label\n0,0\n1,1\n2,0\n")
        assert main(["split", "--graph", str(toy_bundle), "--quiet"]) == 2
        assert main(["split", "--graph", str(toy_bundle), "--strategy", "random", "--quiet"]) == 0

    def test_single_class_is_degenerate(self, toy_bundle, capsys):
        assert main(["metrics", "--graph", str(single_class(toy_bundle)), "--quiet"]) == 3
        assert "single class" in capsys.readouterr().err


class TestApi:
    @pytest.fixture
    def client(self):
        return TestClient(app)

    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_metrics(self, client, toy_bundle):
        response = client.post("/metrics", json={"graph": str(toy_bundle), "threads": 1})
        assert response.status_code == 200
        body = response.json()
        assert body["mlh"] == pytest.approx(1.0)
        assert body["h2"] == pytest.approx(2.0)

    def test_stats_with_masks(self, client, toy_bundle, tmp_path):
        masks = tmp_path / "masks.json"
        split = client.post("/split", json={"graph": str(toy_bundle), "threads": 1})
        assert split.status_code == 200
        assert split.json()["sizes"] == {"train": 2, "val": 0, "test": 1}
        masks.write_text(json.dumps(split.json()))
        response = client.post("/stats", json={"graph": str(toy_bundle), "threads": 1, "masks": str(masks)})
        assert response.status_code == 200
        assert response.json()["node_counts"] == {"paper": 3, "author": 2}
        assert response.json()["split"]["sizes"]["train"] == 2

    def test_metapaths(self, client, toy_bundle):
        response = client.post("/metapaths", json={"graph": str(toy_bundle), "threads": 1, "lengths": [2]})
        assert response.status_code == 200
        assert len(response.json()["metapaths"]) == 4

    def test_metric_info(self, client, toy_bundle):
        response = client.post("/metric-info", json={"graph": str(toy_bundle), "threads": 1})
        assert response.status_code == 200
        assert response.json()["graph"]["target_type"] == "paper"

    def test_error_statuses(self, client, toy_bundle, tmp_path):
        assert client.post("/metrics", json={"graph": str(toy_bundle), "threads": 1, "directed": True}).status_code == 400
        assert client.post("/stats", json={"graph": str(tmp_path / "absent.hgb"), "threads": 1}).status_code == 422
        single_class(toy_bundle)
        assert client.post("/metrics", json={"graph": str(toy_bundle), "threads": 1}).status_code == 409


def three_type_graph(seed=0):
    """About a million edges over papers, authors and venues."""
    rng = np.random.default_rng(seed)
    papers, authors, venues = 200_000, 100_000, 20_000
    schema = Schema(
        node_types=["paper", "author", "venue"],
        relations=[["author", "writes", "paper"], ["paper", "cites", "paper"], ["paper", "published_in", "venue"]],
    )
    edges = {
        "author:writes:paper": (rng.integers(0, authors, 400_000), rng.integers(0, papers, 400_000)),
        "paper:cites:paper": (rng.integers(0, papers, 400_000), rng.integers(0, papers, 400_000)),
        "paper:published_in:venue": (np.arange(papers), rng.integers(0, venues, papers)),
    }
    g = HeteroGraph.from_edge_lists(schema, {"paper": papers, "author": authors, "venue": venues}, edges)
    return g, LabelMap("paper", 4, rng.integers(0, 4, papers))


@pytest.mark.slow
def test_desk_scale_report():
    g, labels = three_type_graph()
    config = RunConfig(
        quiet=True,
        metapaths=["cites", "~writes.writes", "published_in.~published_in"],
    )
    start = time.perf_counter()
    report = HeterophilyGauge(g, labels, config, dataset="synthetic").compute_metrics()
    assert time.perf_counter() - start < 60.0
    assert len(report.rows) == 3
    # Random labels over four classes
    assert report.mlh == pytest.approx(0.75, abs=0.01)
    assert report.h2 == pytest.approx(1.0, abs=0.02)


REAL_DATA = os.getenv("HGAUGE_REAL_DATA")


@pytest.mark.skipif(not REAL_DATA, reason="HGAUGE_REAL_DATA names no benchmark cache directory")
@pytest.mark.parametrize(
    "dataset, field, expected, tolerance",
    [
        ("ogbn-mag", "h_edge", 0.9205, 0.002),
        ("IEEE-CIS-G", "h_adj", 1.3151, 0.005),
        ("RCDD", "h2", 0.9776, 0.01),
    ],
)
def test_benchmark_values(dataset, field, expected, tolerance):
    path = Path(REAL_DATA) / f"{dataset}.hgb"
    if not path.exists():
        pytest.skip(f"{path} not present")
    report = HeterophilyGauge.from_path(str(path), RunConfig(quiet=True)).compute_metrics()
    value = report.h2 if field == "h2" else getattr(report.overall, field)
    assert value == pytest.approx(expected, abs=tolerance)
