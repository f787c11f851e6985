"""
Heterophily metrics over metapath-induced graphs.
"""

from .base_metric import BaseMetric
from .edge_metric import EdgeHeterophily, edge_heterophily
from .node_metric import NodeHeterophily, node_heterophily
from .adjusted_metric import AdjustedHeterophily, ClassDegreeTable, adjusted_heterophily, class_degree_profile
from .aggregate import AggregationKind, InductionOptions, h2_index, metapath_label_heterophily
from .sampling import EdgeEstimate, estimate_edge_heterophily
from .null_model import NullModelEstimate, null_model_heterophily
from .report import MetricReport, build_metric_report, render_table

__all__ = [
    "BaseMetric",
    "EdgeHeterophily",
    "NodeHeterophily",
    "AdjustedHeterophily",
    "ClassDegreeTable",
    "edge_heterophily",
    "node_heterophily",
    "adjusted_heterophily",
    "class_degree_profile",
    "AggregationKind",
    "InductionOptions",
    "metapath_label_heterophily",
    "h2_index",
    "EdgeEstimate",
    "estimate_edge_heterophily",
    "NullModelEstimate",
    "null_model_heterophily",
    "MetricReport",
    "build_metric_report",
    "render_table",
]
