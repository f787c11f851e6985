"""
Node heterophily: the mean, over non-isolated nodes, of the fraction of
differently labeled neighbors.
"""

import numpy as np

from ..core.labels import LabelMap
from ..errors import EmptyInducedGraphError
from ..metapath.induce import InducedGraph
from .base_metric import BaseMetric, reduce_chunks
from .edge_metric import arc_mismatch


def isolated_labeled_count(ig: InducedGraph, labels: LabelMap) -> int:
    """Labeled nodes with no neighbor; they are left out of H_node."""
    return int(np.sum(labels.labeled_mask & (np.asarray(ig.degrees) == 0)))


class NodeHeterophily(BaseMetric):
    """
    H_node = mean over v with |N(v)| > 0 of |{u in N(v): y_u != y_v}| / |N(v)|.

    Isolated nodes are excluded because the ratio is undefined for them.
    """

    symbol = "H_node"

    def _compute(self, ig: InducedGraph, labels: LabelMap) -> float:
        mismatch = arc_mismatch(ig, labels).astype(np.float64)
        weights = ig.arc_weights()

        if ig.directed:
            # In-neighborhoods, matching d(v) as the in-degree
            crossing = np.bincount(ig.indices, weights=weights * mismatch, minlength=ig.n)
            mass = np.bincount(ig.indices, weights=weights, minlength=ig.n)
            present = mass > 0
            fractions = crossing[present] / mass[present]
            total, count = float(np.sum(fractions)), float(len(fractions))
        else:
            indptr = ig.indptr
            weighted_mismatch = weights * mismatch

            def partial(start: int, end: int):
                lo, hi = indptr[start], indptr[end]
                local_rows = np.repeat(np.arange(end - start), np.diff(indptr[start:end + 1]))
                crossing = np.bincount(local_rows, weights=weighted_mismatch[lo:hi], minlength=end - start)
                mass = np.bincount(local_rows, weights=weights[lo:hi], minlength=end - start)
                present = mass > 0
                return (float(np.sum(crossing[present] / mass[present])), float(np.sum(present)))

            total, count = reduce_chunks(partial, ig.n, self.threads)

        if count == 0:
            raise EmptyInducedGraphError("H_node is undefined: every node is isolated")
        return float(total / count)

    def _get_metric_description(self) -> str:
        return "Average share of differently labeled neighbors per node"


def node_heterophily(ig: InducedGraph, labels: LabelMap, threads: int = 1) -> float:
    """
    Node heterophily of an induced graph.

    Args:
        ig: Induced graph with at least one non-isolated node
        labels: Target-type labels
        threads: Worker count

    Returns:
        Value in [0, 1]

    Raises:
        EmptyInducedGraphError: If every node is isolated
    """
    return NodeHeterophily(threads=threads).compute(ig, labels)
