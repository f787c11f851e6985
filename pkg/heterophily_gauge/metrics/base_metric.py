"""
Base metric class for the Heterophily Gauge.
"""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..core.labels import LabelMap
from ..errors import DataError, EmptyInducedGraphError
from ..metapath.induce import InducedGraph

logger = logging.getLogger(__name__)

# Below this many items a scan runs in one chunk
PARALLEL_MIN_ITEMS = 1 << 20


def chunk_bounds(n_items: int, threads: int) -> List[Tuple[int, int]]:
    """Split ``[0, n_items)`` into at most ``threads`` contiguous ranges."""
    if threads <= 1 or n_items < PARALLEL_MIN_ITEMS:
        return [(0, n_items)]
    size = -(-n_items // threads)
    return [(start, min(start + size, n_items)) for start in range(0, n_items, size)]


def reduce_chunks(func: Callable[[int, int], Sequence[float]], n_items: int, threads: int) -> np.ndarray:
    """
    Evaluate ``func`` on each chunk and add the partial results in chunk order.

    The order of the final reduction is fixed, so the result only depends on
    the chunk layout, never on thread scheduling.
    """
    bounds = chunk_bounds(n_items, threads)
    if len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: func(*b), bounds))
    else:
        parts = [func(*b) for b in bounds]
    return np.sum(np.asarray(parts, dtype=np.float64), axis=0)


class BaseMetric(ABC):
    """
    Base class for all heterophily metrics on an induced graph.

    This class provides common functionality like:
    - label/graph alignment checks
    - the empty-graph guard
    - metric metadata for reports
    """

    symbol: str = ""

    def __init__(self, threads: int = 1):
        """
        Initialize the metric.

        Args:
            threads: Worker count for chunked scans inside one graph
        """
        self.threads = max(1, int(threads))
        self.name = self.__class__.__name__

    @abstractmethod
    def _compute(self, ig: InducedGraph, labels: LabelMap) -> float:
        """
        Compute the metric on a validated, nonempty graph.

        Returns:
            The metric value
        """
        pass

    def compute(self, ig: InducedGraph, labels: LabelMap) -> float:
        """
        Compute the metric.

        Args:
            ig: Induced graph
            labels: Labels aligned with the graph's nodes

        Returns:
            The metric value

        Raises:
            EmptyInducedGraphError: If the graph has no edges
        """
        if len(labels) != ig.n:
            raise DataError(f"{len(labels)} labels for an induced graph over {ig.n} nodes")
        if ig.arcs == 0:
            raise EmptyInducedGraphError(f"{self.symbol or self.name} is undefined on an induced graph with no edges")
        value = self._compute(ig, labels)
        logger.debug(f"✅ {self.name} = {value:.6f}")
        return value

    def _get_metric_description(self) -> str:
        """
        Return a brief description of this metric.

        Returns:
            A short description of what the metric measures
        """
        return "Label-mixing measure on a labeled homogeneous graph"

    def get_metric_info(self) -> Dict[str, Any]:
        """
        Get information about this metric.

        Returns:
            Dictionary with metric information
        """
        return {
            "name": self.name,
            "symbol": self.symbol,
            "description": self._get_metric_description(),
            "threads": self.threads,
        }
