"""
Metapath-level aggregates: MLH = Agg(H_edge(G_P)) and H² = Agg(H_adj(G_P))
over a metapath set.

Metapaths whose induced graph is empty (or, for H², has a single class
among endpoints) are skipped and reported; only when nothing survives is
the aggregate an error.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from tqdm.auto import tqdm

from ..core.graph import HeteroGraph
from ..core.labels import LabelMap
from ..errors import AllMetapathsEmptyError, DegenerateComputationError
from ..metapath.induce import DEFAULT_DENSE_FRACTION, InducedGraph, induce_subgraph
from ..metapath.paths import Metapath, MetapathSet
from .adjusted_metric import AdjustedHeterophily, Expectation
from .base_metric import BaseMetric
from .edge_metric import EdgeHeterophily

logger = logging.getLogger(__name__)


class AggregationKind(str, Enum):
    MEAN = "mean"
    MAX = "max"


class InductionOptions(BaseModel):
    """How metapath-induced graphs are materialized."""

    count_multiplicity: bool = False
    keep_self_loops: bool = False
    symmetrize: bool = True
    threads: int = 1
    dense_fraction: float = DEFAULT_DENSE_FRACTION
    progress: bool = False

    @classmethod
    def from_config(cls, config) -> "InductionOptions":
        return cls(
            count_multiplicity=config.count_multiplicity,
            keep_self_loops=config.keep_self_loops,
            symmetrize=config.symmetrize,
            threads=config.threads,
            progress=not config.quiet,
        )


class SkippedMetapath(BaseModel):
    metapath: str
    reason: str
    metrics: List[str]


def aggregate(values: Sequence[float], agg: AggregationKind = AggregationKind.MEAN) -> float:
    """
    Combine per-metapath values.

    Raises:
        AllMetapathsEmptyError: If there is nothing to combine
    """
    if not len(values):
        raise AllMetapathsEmptyError("no metapath value to aggregate")
    arr = np.asarray(values, dtype=np.float64)
    if AggregationKind(agg) is AggregationKind.MAX:
        return float(arr.max())
    return float(np.mean(arr))


def induce_all(g: HeteroGraph, labels: LabelMap, ms: MetapathSet, options: Optional[InductionOptions] = None) -> List[InducedGraph]:
    """
    Induce every metapath of a set, in set order.

    Metapaths run on a worker pool; the remaining threads go to the sparse
    products inside each induction.
    """
    options = options or InductionOptions()
    paths = ms.paths
    if not paths:
        return []
    outer = max(1, min(options.threads, len(paths)))
    inner = max(1, options.threads // outer)

    def run(path: Metapath) -> InducedGraph:
        return induce_subgraph(
            g,
            labels,
            path,
            count_multiplicity=options.count_multiplicity,
            keep_self_loops=options.keep_self_loops,
            symmetrize=options.symmetrize,
            threads=inner,
            dense_fraction=options.dense_fraction,
        )

    logger.info(f"🔧 Inducing {len(paths)} metapath graph(s) with {outer} worker(s)")
    with ThreadPoolExecutor(max_workers=outer) as pool:
        return list(tqdm(pool.map(run, paths), total=len(paths), desc="metapaths", disable=None if options.progress else True))


def per_metapath_values(
    g: HeteroGraph,
    labels: LabelMap,
    ms: MetapathSet,
    metric: BaseMetric,
    options: Optional[InductionOptions] = None,
) -> Tuple[List[Tuple[Metapath, float]], List[SkippedMetapath]]:
    """
    Evaluate one metric on every induced graph, separating skipped metapaths.

    Returns:
        (metapath, value) pairs for the survivors, and the skipped metapaths with reasons
    """
    values: List[Tuple[Metapath, float]] = []
    skipped: List[SkippedMetapath] = []
    for path, ig in zip(ms.paths, induce_all(g, labels, ms, options)):
        text = path.format(g.schema)
        try:
            values.append((path, metric.compute(ig, labels)))
        except DegenerateComputationError as e:
            logger.warning(f"⚠️ Skipping {text}: {e}")
            skipped.append(SkippedMetapath(metapath=text, reason=str(e), metrics=[metric.symbol]))
    return values, skipped


def _aggregate_metric(g, labels, ms, metric: BaseMetric, agg, options) -> float:
    if not ms.paths:
        raise AllMetapathsEmptyError(f"metapath set for '{ms.target_type}' is empty")
    values, skipped = per_metapath_values(g, labels, ms, metric, options)
    if not values:
        raise AllMetapathsEmptyError(
            f"all {len(skipped)} metapath(s) were skipped for {metric.symbol}: "
            + "; ".join(f"{s.metapath} ({s.reason})" for s in skipped)
        )
    return aggregate([v for _, v in values], agg)


def metapath_label_heterophily(
    g: HeteroGraph,
    labels: LabelMap,
    ms: MetapathSet,
    agg: AggregationKind = AggregationKind.MEAN,
    options: Optional[InductionOptions] = None,
) -> float:
    """
    MLH: aggregate of H_edge over the metapath-induced graphs.

    Args:
        g: Heterogeneous graph
        labels: Target-type labels
        ms: Metapath set
        agg: ``mean`` or ``max``
        options: Induction options

    Returns:
        The aggregate over non-empty metapaths

    Raises:
        AllMetapathsEmptyError: If the set is empty or every induced graph is empty
    """
    options = options or InductionOptions()
    return _aggregate_metric(g, labels, ms, EdgeHeterophily(threads=options.threads), agg, options)


def h2_index(
    g: HeteroGraph,
    labels: LabelMap,
    ms: MetapathSet,
    agg: AggregationKind = AggregationKind.MEAN,
    options: Optional[InductionOptions] = None,
    expectation: Expectation = "approximate",
) -> float:
    """
    H²: aggregate of H_adj over the metapath-induced graphs.

    Args:
        g: Heterogeneous graph
        labels: Target-type labels
        ms: Metapath set
        agg: ``mean`` (default) or ``max``
        options: Induction options
        expectation: Configuration-model expectation form

    Returns:
        The aggregate over metapaths that are neither empty nor single-class

    Raises:
        AllMetapathsEmptyError: If nothing survives
    """
    options = options or InductionOptions()
    metric = AdjustedHeterophily(threads=options.threads, expectation=expectation)
    return _aggregate_metric(g, labels, ms, metric, agg, options)
