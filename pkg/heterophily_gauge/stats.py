"""
Dataset statistics: node and edge counts per type, label histogram,
timestamp range, degree summaries and optional split sizes.
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from .core.graph import MISSING_TIMESTAMP, HeteroGraph
from .core.labels import LabelMap
from .splits import SplitMasks


class TimestampRange(BaseModel):
    min: Optional[int] = None
    max: Optional[int] = None
    missing: int = 0


class DegreeSummary(BaseModel):
    min: int
    mean: float
    max: int


class RelationStats(BaseModel):
    relation: str
    edges: int
    out_degree: DegreeSummary
    in_degree: DegreeSummary


class SplitStats(BaseModel):
    strategy: str
    sizes: Dict[str, int]
    boundaries: Optional[List[Optional[int]]] = None


class GraphStats(BaseModel):
    node_counts: Dict[str, int]
    relations: List[RelationStats]
    target_type: str
    num_classes: int
    label_histogram: List[int]
    labeled: int
    labeled_fraction: float
    timestamps: Dict[str, TimestampRange]
    feature_widths: Dict[str, int]
    split: Optional[SplitStats] = None

    @property
    def edge_counts(self) -> Dict[str, int]:
        return {r.relation: r.edges for r in self.relations}


def _summary(lengths: np.ndarray) -> DegreeSummary:
    if len(lengths) == 0:
        return DegreeSummary(min=0, mean=0.0, max=0)
    return DegreeSummary(min=int(lengths.min()), mean=float(lengths.mean()), max=int(lengths.max()))


def graph_stats(g: HeteroGraph, labels: LabelMap, masks: Optional[SplitMasks] = None) -> GraphStats:
    """
    Summarize a graph.

    Every declared relation is listed, empty ones with a count of 0.

    Args:
        g: The graph
        labels: Target-type labels
        masks: Optional split whose sizes are added to the report

    Returns:
        The statistics
    """
    relations = [
        RelationStats(
            relation=rel.key,
            edges=g.forward[r].nnz,
            out_degree=_summary(g.forward[r].row_lengths()),
            in_degree=_summary(g.reverse[r].row_lengths()),
        )
        for r, rel in enumerate(g.schema.relations)
    ]

    stamps = {}
    for name, values in g.timestamps.items():
        present = values[values != MISSING_TIMESTAMP]
        stamps[name] = TimestampRange(
            min=int(present.min()) if len(present) else None,
            max=int(present.max()) if len(present) else None,
            missing=int(len(values) - len(present)),
        )

    split = None
    if masks is not None:
        split = SplitStats(strategy=masks.descriptor.strategy, sizes=masks.sizes(), boundaries=masks.descriptor.boundaries)

    n_target = len(labels)
    return GraphStats(
        node_counts=dict(zip(g.schema.node_types, g.node_counts)),
        relations=relations,
        target_type=labels.target_type,
        num_classes=labels.num_classes,
        label_histogram=labels.histogram().tolist(),
        labeled=labels.num_labeled,
        labeled_fraction=labels.num_labeled / n_target if n_target else 0.0,
        timestamps=stamps,
        feature_widths={name: int(np.asarray(block).reshape(len(block), -1).shape[1]) for name, block in g.features.items()},
        split=split,
    )


def render_stats(stats: GraphStats) -> str:
    lines = ["Node types:"]
    for name, count in stats.node_counts.items():
        width = stats.feature_widths.get(name)
        lines.append(f"  {name}: {count}" + (f" (features: {width})" if width is not None else ""))
    lines.append("Relations:")
    for rel in stats.relations:
        lines.append(
            f"  {rel.relation}: {rel.edges} edge(s); out-degree min/mean/max "
            f"{rel.out_degree.min}/{rel.out_degree.mean:.2f}/{rel.out_degree.max}; in-degree "
            f"{rel.in_degree.min}/{rel.in_degree.mean:.2f}/{rel.in_degree.max}"
        )
    lines.append(
        f"Labels ({stats.target_type}, {stats.num_classes} classes): {stats.labeled} labeled "
        f"({stats.labeled_fraction:.2%}), histogram {stats.label_histogram}"
    )
    for name, span in stats.timestamps.items():
        lines.append(f"Timestamps ({name}): {span.min} .. {span.max}, {span.missing} missing")
    if stats.split is not None:
        lines.append(f"Split ({stats.split.strategy}): {stats.split.sizes}, boundaries {stats.split.boundaries}")
    return "\n".join(lines)
