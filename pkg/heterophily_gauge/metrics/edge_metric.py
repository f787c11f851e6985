"""
Edge heterophily: the fraction of edges whose endpoints carry different labels.
"""

import numpy as np

from ..core.labels import LabelMap
from ..metapath.induce import InducedGraph
from .base_metric import BaseMetric, reduce_chunks


def arc_mismatch(ig: InducedGraph, labels: LabelMap) -> np.ndarray:
    """Boolean per stored arc: do its endpoints have different labels?"""
    y = labels.labels
    return y[ig.row_ids()] != y[ig.indices]


class EdgeHeterophily(BaseMetric):
    """
    H_edge = |{(u,v) in E : y_u != y_v}| / |E|.

    Computed over stored arcs; on a symmetrized graph every edge is stored
    once per direction, so the arc fraction equals the edge fraction.
    """

    symbol = "H_edge"

    def _compute(self, ig: InducedGraph, labels: LabelMap) -> float:
        mismatch = arc_mismatch(ig, labels)
        weights = ig.arc_weights()

        def partial(start: int, end: int):
            w = weights[start:end]
            return (float(np.sum(w[mismatch[start:end]])), float(np.sum(w)))

        crossing, total = reduce_chunks(partial, ig.arcs, self.threads)
        return float(crossing / total)

    def _get_metric_description(self) -> str:
        return "Fraction of edges joining differently labeled nodes"


def edge_heterophily(ig: InducedGraph, labels: LabelMap, threads: int = 1) -> float:
    """
    Edge heterophily of an induced graph.

    Args:
        ig: Induced graph with at least one edge
        labels: Target-type labels
        threads: Worker count

    Returns:
        Value in [0, 1]

    Raises:
        EmptyInducedGraphError: If the graph has no edges
    """
    return EdgeHeterophily(threads=threads).compute(ig, labels)
