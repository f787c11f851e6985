#!/usr/bin/env python3
"""
Core Heterophily Gauge orchestrator.

One object holds a loaded graph, its target-type labels and the effective
run configuration, and exposes every operation the command line and the
HTTP surface offer:

1. Metapath enumeration (optionally materialized)
2. The full metric report (H_edge, H_node, H_adj per metapath, MLH, H²)
3. Train / validation / test splits
4. Dataset statistics
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from ..config import RunConfig
from ..errors import DataError
from ..ingest.bundle import DatasetBundle
from ..ingest.cache import load_cache, save_cache
from ..ingest.csv_loader import load_csv_bundle
from ..metapath.paths import MetapathSet, enumerate_metapaths, parse_metapath
from ..metrics.adjusted_metric import AdjustedHeterophily
from ..metrics.aggregate import InductionOptions, induce_all
from ..metrics.edge_metric import EdgeHeterophily
from ..metrics.node_metric import NodeHeterophily
from ..metrics.report import MetricReport, build_metric_report
from ..splits import SplitMasks, random_split, temporal_split
from ..stats import GraphStats, graph_stats
from .graph import HeteroGraph
from .labels import LabelMap

logger = logging.getLogger(__name__)


class MetapathEntry(BaseModel):
    metapath: str
    compact: str
    edges: Optional[float] = None
    non_isolated: Optional[int] = None


class MetapathListing(BaseModel):
    target_type: str
    lengths: List[int]
    metapaths: List[MetapathEntry]


def load_graph(path: str, threads: int = 1):
    """
    Load a graph from a bundle manifest (``.json``) or a binary cache (anything else).

    Returns:
        (graph, labels)
    """
    if Path(path).suffix.lower() == ".json":
        return load_csv_bundle(DatasetBundle.from_manifest(path), threads=threads)
    return load_cache(path)


class HeterophilyGauge:
    """
    Main orchestrator tying a heterogeneous graph to a run configuration.
    """

    def __init__(self, graph: HeteroGraph, labels: LabelMap, config: Optional[RunConfig] = None, dataset: str = "dataset"):
        """
        Initialize the gauge.

        Args:
            graph: Loaded heterogeneous graph
            labels: Labels of the target type
            config: Effective run configuration (defaults when omitted)
            dataset: Name used as the column header of metric tables
        """
        self.graph = graph
        self.labels = labels
        self.config = config or RunConfig()
        self.dataset = dataset

    @classmethod
    def from_path(cls, path: str, config: Optional[RunConfig] = None) -> "HeterophilyGauge":
        """
        Load a bundle or a cache and wrap it.

        Args:
            path: Bundle manifest or cache file
            config: Effective run configuration
        """
        config = config or RunConfig()
        graph, labels = load_graph(path, threads=config.threads)
        return cls(graph, labels, config, dataset=Path(path).stem)

    @property
    def target_type(self) -> str:
        return self.config.target or self.labels.target_type

    def _require_labeled_target(self) -> None:
        if self.target_type != self.labels.target_type:
            raise DataError(f"type '{self.target_type}' carries no labels (labeled type: '{self.labels.target_type}')")

    def save(self, path: str) -> None:
        save_cache(self.graph, self.labels, path)

    def metapath_set(self) -> MetapathSet:
        """
        The metapath set this run measures.

        Explicit ``metapaths`` in the configuration win over enumeration up
        to the configured lengths; explicit paths are reduced to their
        canonical orientation and deduplicated.
        """
        schema = self.graph.schema
        if self.config.metapaths:
            paths = []
            for text in self.config.metapaths:
                path = parse_metapath(text, schema, self.target_type).canonicalized()
                if path not in paths:
                    paths.append(path)
            lengths = sorted({len(p) for p in paths})
            return MetapathSet(target_type=self.target_type, max_length=max(lengths), lengths=lengths, paths=paths)
        return enumerate_metapaths(schema, self.target_type, k=max(self.config.lengths), lengths=self.config.lengths)

    def list_metapaths(self, materialize: Optional[bool] = None) -> MetapathListing:
        """
        List the metapath set, optionally with induced edge and node counts.

        Args:
            materialize: Induce every metapath and count edges (defaults to the config flag)
        """
        ms = self.metapath_set()
        schema = self.graph.schema
        entries = [MetapathEntry(metapath=p.format(schema), compact=p.compact(schema)) for p in ms.paths]
        if materialize is None:
            materialize = self.config.materialize
        if materialize:
            self._require_labeled_target()
            options = InductionOptions.from_config(self.config)
            for entry, ig in zip(entries, induce_all(self.graph, self.labels, ms, options)):
                entry.edges = float(ig.m)
                entry.non_isolated = int((ig.degrees > 0).sum())
        return MetapathListing(target_type=ms.target_type, lengths=ms.lengths, metapaths=entries)

    def compute_metrics(self) -> MetricReport:
        """
        Build the full metric report for the configured metapath set.

        Raises:
            AllMetapathsEmptyError: If no metapath yields an edge
            DegenerateClassDistributionError: If H² has nothing left to aggregate
        """
        self._require_labeled_target()
        logger.info(f"🔧 Measuring '{self.dataset}' (target '{self.target_type}')")
        return build_metric_report(self.graph, self.labels, self.metapath_set(), self.config, dataset=self.dataset)

    def split(self) -> SplitMasks:
        """Split with the configured strategy, ratios, boundaries and seed."""
        self._require_labeled_target()
        if self.config.strategy == "random":
            return random_split(self.graph, self.labels, self.config.ratios, seed=self.config.seed)
        return temporal_split(self.graph, self.labels, self.config.ratios, boundaries=self.config.boundaries)

    def stats(self, masks: Optional[SplitMasks] = None) -> GraphStats:
        return graph_stats(self.graph, self.labels, masks)

    def get_metric_info(self) -> List[Dict[str, Any]]:
        """
        Describe the metrics this gauge computes, for debugging and monitoring.
        """
        threads = self.config.threads
        return [
            EdgeHeterophily(threads=threads).get_metric_info(),
            NodeHeterophily(threads=threads).get_metric_info(),
            AdjustedHeterophily(threads=threads, expectation=self.config.expectation).get_metric_info(),
        ]

    def get_graph_info(self) -> Dict[str, Any]:
        return {
            "dataset": self.dataset,
            "node_counts": dict(zip(self.graph.schema.node_types, self.graph.node_counts)),
            "relations": [rel.key for rel in self.graph.schema.relations],
            "target_type": self.labels.target_type,
            "num_classes": self.labels.num_classes,
        }
