"""
Adjusted heterophily: edge heterophily relative to what a configuration-model
random graph with the same degrees would show.

Under the configuration model an edge endpoint lands on a class-k node with
probability about D_k / (2|E|), so two endpoints differ in class with
probability 1 - p where p = sum_k D_k^2 / (2|E|)^2.
"""

from typing import List, Literal

import numpy as np
from pydantic import BaseModel

from ..core.labels import LabelMap
from ..errors import DegenerateClassDistributionError, EmptyInducedGraphError
from ..metapath.induce import InducedGraph
from .base_metric import BaseMetric
from .edge_metric import EdgeHeterophily

Expectation = Literal["approximate", "exact"]


class ClassDegreeTable(BaseModel):
    """
    Degree mass per class.

    Attributes:
        class_degrees: D_k for k in [0, C)
        endpoint_total: 2|E| (the sum of all degrees)
        collision_mass: p = sum D_k^2 / (2|E|)^2
        exact_collision_mass: sum D_k (D_k - 1) / (2|E| (2|E| - 1)), the finite-stub version
        classes_present: Number of classes with D_k > 0
    """

    class_degrees: List[float]
    endpoint_total: float
    collision_mass: float
    exact_collision_mass: float
    classes_present: int

    @property
    def expected_heterophily(self) -> float:
        return 1.0 - self.collision_mass


def class_degree_profile(ig: InducedGraph, labels: LabelMap) -> ClassDegreeTable:
    """
    Per-class degree totals of an induced graph.

    Args:
        ig: Induced graph with at least one edge
        labels: Target-type labels

    Returns:
        The class degree table; sum of D_k always equals 2|E|

    Raises:
        EmptyInducedGraphError: If the graph has no edges
    """
    if ig.arcs == 0:
        raise EmptyInducedGraphError("class degree profile is undefined on an induced graph with no edges")
    degrees = np.asarray(ig.degrees)
    mask = labels.labeled_mask & (degrees > 0)
    if np.issubdtype(degrees.dtype, np.integer):
        # Integer degrees: keep every sum exact
        per_class = np.zeros(labels.num_classes, dtype=np.int64)
        np.add.at(per_class, labels.labels[mask], degrees[mask])
        d = [int(x) for x in per_class]
        total = sum(d)
        p = sum(x * x for x in d) / (total * total)
        exact = sum(x * (x - 1) for x in d) / (total * (total - 1)) if total > 1 else 1.0
    else:
        per_class = np.bincount(labels.labels[mask], weights=degrees[mask], minlength=labels.num_classes)
        d = [float(x) for x in per_class]
        total = float(np.sum(per_class))
        p = float(np.sum(per_class ** 2) / total ** 2)
        exact = float(np.sum(per_class * (per_class - 1)) / (total * (total - 1))) if total > 1 else 1.0

    assert abs(sum(d) - ig.endpoint_total) <= 1e-9 * max(1.0, ig.endpoint_total)
    assert 0.0 < p <= 1.0
    return ClassDegreeTable(
        class_degrees=[float(x) for x in d],
        endpoint_total=float(total),
        collision_mass=p,
        exact_collision_mass=exact,
        classes_present=int(sum(1 for x in d if x > 0)),
    )


def adjusted_from_parts(h_edge: float, table: ClassDegreeTable, expectation: Expectation = "approximate") -> float:
    """
    Evaluate 1 - (1 - p - H_edge) / (1 - p).

    Raises:
        DegenerateClassDistributionError: If 1 - p is zero
    """
    p = table.collision_mass if expectation == "approximate" else table.exact_collision_mass
    if table.classes_present <= 1 or p >= 1.0:
        raise DegenerateClassDistributionError(
            "H_adj is undefined: only one class among edge endpoints, so the "
            "denominator 1 - sum D_k^2/(2|E|)^2 is zero"
        )
    return 1.0 - (1.0 - p - h_edge) / (1.0 - p)


class AdjustedHeterophily(BaseMetric):
    """
    H_adj = 1 - (1 - p - H_edge) / (1 - p), algebraically H_edge / (1 - p).

    1 means random-level mixing; values above 1 are more heterophilic than
    the configuration-model expectation and are reported as-is.
    """

    symbol = "H_adj"

    def __init__(self, threads: int = 1, expectation: Expectation = "approximate"):
        super().__init__(threads=threads)
        self.expectation = expectation

    def _compute(self, ig: InducedGraph, labels: LabelMap) -> float:
        h_edge = EdgeHeterophily(threads=self.threads).compute(ig, labels)
        return adjusted_from_parts(h_edge, class_degree_profile(ig, labels), self.expectation)

    def _get_metric_description(self) -> str:
        return "Edge heterophily normalized by the configuration-model expectation"

    def get_metric_info(self):
        info = super().get_metric_info()
        info["expectation"] = self.expectation
        return info


def adjusted_heterophily(
    ig: InducedGraph,
    labels: LabelMap,
    threads: int = 1,
    expectation: Expectation = "approximate",
) -> float:
    """
    Adjusted heterophily of an induced graph.

    Args:
        ig: Induced graph with at least one edge
        labels: Target-type labels
        threads: Worker count
        expectation: ``approximate`` (D_k^2 form) or ``exact`` (finite-stub form)

    Returns:
        Value >= 0, possibly above 1

    Raises:
        EmptyInducedGraphError: If the graph has no edges
        DegenerateClassDistributionError: If a single class holds all endpoints
    """
    return AdjustedHeterophily(threads=threads, expectation=expectation).compute(ig, labels)
