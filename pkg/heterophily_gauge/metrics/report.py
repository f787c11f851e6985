"""
MetricReport: per-metapath values, aggregates, skips and the configuration
that produced them, plus the human-readable table layout (metric rows ×
dataset columns).
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel

from ..core.graph import HeteroGraph
from ..core.labels import LabelMap
from ..errors import AllMetapathsEmptyError, DegenerateClassDistributionError, DegenerateComputationError
from ..metapath.induce import InducedGraph
from ..metapath.paths import MetapathSet
from .adjusted_metric import adjusted_from_parts, class_degree_profile
from .aggregate import AggregationKind, InductionOptions, SkippedMetapath, aggregate, induce_all
from .edge_metric import EdgeHeterophily
from .node_metric import NodeHeterophily, isolated_labeled_count
from .null_model import null_model_heterophily
from .sampling import estimate_edge_heterophily

logger = logging.getLogger(__name__)


class MetapathRow(BaseModel):
    metapath: str
    compact: str
    m: float
    h_edge: float
    h_node: float
    h_adj: Optional[float] = None
    p: float
    isolated: int
    h_edge_estimate: Optional[float] = None
    h_edge_half_width: Optional[float] = None
    null_h_edge: Optional[float] = None


class OverallRow(BaseModel):
    """Metrics on the union of all non-empty metapath-induced graphs."""

    m: float
    h_edge: float
    h_node: float
    h_adj: Optional[float] = None
    p: float


class MetricReport(BaseModel):
    dataset: str
    target_type: str
    metapath_lengths: List[int]
    agg: AggregationKind
    rows: List[MetapathRow]
    skipped: List[SkippedMetapath]
    overall: Optional[OverallRow] = None
    mlh: float
    h2: float
    config: Dict[str, Any]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def union_graph(graphs: Sequence[InducedGraph]) -> InducedGraph:
    """OR (or sum, for weighted graphs) of induced graphs over the same nodes."""
    first = graphs[0]
    total = sp.csr_matrix((first.n, first.n), dtype=np.int64)
    for ig in graphs:
        total = total + ig.to_scipy()
    total.sum_duplicates()
    total.sort_indices()
    weighted = first.weights is not None
    return InducedGraph(
        metapath=None,
        n=first.n,
        indptr=total.indptr.astype(np.int64),
        indices=total.indices.astype(np.int64),
        weights=total.data.astype(np.int64) if weighted else None,
        directed=first.directed,
    )


def _graph_values(ig: InducedGraph, labels: LabelMap, threads: int, expectation: str):
    h_edge = EdgeHeterophily(threads=threads).compute(ig, labels)
    h_node = NodeHeterophily(threads=threads).compute(ig, labels)
    table = class_degree_profile(ig, labels)
    try:
        h_adj = adjusted_from_parts(h_edge, table, expectation)
    except DegenerateClassDistributionError:
        h_adj = None
    return h_edge, h_node, h_adj, table


def build_metric_report(g: HeteroGraph, labels: LabelMap, ms: MetapathSet, config, dataset: str = "dataset") -> MetricReport:
    """
    Compute every metric for every metapath and aggregate MLH and H².

    Args:
        g: Heterogeneous graph
        labels: Target-type labels
        ms: Metapath set
        config: RunConfig (agg, expectation, sampling, null-model and induction flags)
        dataset: Column name for tables

    Returns:
        The complete report

    Raises:
        AllMetapathsEmptyError: If the set is empty or every induced graph is empty
        DegenerateClassDistributionError: If H² has no non-degenerate metapath left
    """
    if not ms.paths:
        raise AllMetapathsEmptyError(f"no metapath of length {ms.lengths} connects '{ms.target_type}' to itself")

    options = InductionOptions.from_config(config)
    graphs = induce_all(g, labels, ms, options)

    rows: List[MetapathRow] = []
    skipped: List[SkippedMetapath] = []
    kept: List[InducedGraph] = []
    for path, ig in zip(ms.paths, graphs):
        text = path.format(g.schema)
        if ig.arcs == 0:
            logger.warning(f"⚠️ Skipping {text}: empty induced graph")
            skipped.append(SkippedMetapath(metapath=text, reason="empty induced graph", metrics=["H_edge", "H_node", "H_adj"]))
            continue
        kept.append(ig)
        h_edge, h_node, h_adj, table = _graph_values(ig, labels, config.threads, config.expectation)
        if h_adj is None:
            logger.warning(f"⚠️ {text}: single class among endpoints, H_adj undefined")
            skipped.append(
                SkippedMetapath(metapath=text, reason="single class among endpoints (1 - p = 0)", metrics=["H_adj"])
            )
        row = MetapathRow(
            metapath=text,
            compact=path.compact(g.schema),
            m=float(ig.m),
            h_edge=h_edge,
            h_node=h_node,
            h_adj=h_adj,
            p=table.collision_mass,
            isolated=isolated_labeled_count(ig, labels),
        )
        if config.sample_size:
            estimate = estimate_edge_heterophily(ig, labels, config.sample_size, seed=config.seed)
            row.h_edge_estimate = estimate.estimate
            row.h_edge_half_width = estimate.half_width
        if config.null_trials:
            row.null_h_edge = null_model_heterophily(ig, labels, trials=config.null_trials, seed=config.seed).mean
        rows.append(row)

    if not rows:
        raise AllMetapathsEmptyError(
            f"all {len(skipped)} metapath(s) induce empty graphs: " + "; ".join(s.metapath for s in skipped)
        )

    agg = AggregationKind(config.agg)
    mlh = aggregate([r.h_edge for r in rows], agg)
    adjusted = [r.h_adj for r in rows if r.h_adj is not None]
    if not adjusted:
        raise DegenerateClassDistributionError(
            "H² is undefined: every non-empty metapath has a single class among its endpoints "
            "(H_adj denominator 1 - sum D_k^2/(2|E|)^2 is zero)"
        )
    h2 = aggregate(adjusted, agg)

    overall = None
    try:
        union = union_graph(kept)
        h_edge, h_node, h_adj, table = _graph_values(union, labels, config.threads, config.expectation)
        overall = OverallRow(m=float(union.m), h_edge=h_edge, h_node=h_node, h_adj=h_adj, p=table.collision_mass)
    except DegenerateComputationError as e:
        logger.warning(f"⚠️ Overall row unavailable: {e}")

    logger.info(f"✅ MLH = {mlh:.4f}, H² = {h2:.4f} over {len(rows)} metapath(s)")
    return MetricReport(
        dataset=dataset,
        target_type=labels.target_type,
        metapath_lengths=list(ms.lengths),
        agg=agg,
        rows=rows,
        skipped=skipped,
        overall=overall,
        mlh=mlh,
        h2=h2,
        config=config.echo(),
    )


TABLE_ROWS: List[Tuple[str, str]] = [
    ("Edge Heterophily", "H_edge"),
    ("Node Heterophily", "H_node"),
    ("Adjusted Heterophily", "H_adj"),
    ("Metapath-based Label Heterophily", "MLH"),
    ("Heterogeneous Heterophily Index", "H²"),
]


def _table_value(report: MetricReport, symbol: str) -> Optional[float]:
    if symbol == "MLH":
        return report.mlh
    if symbol == "H²":
        return report.h2
    if report.overall is None:
        return None
    return {"H_edge": report.overall.h_edge, "H_node": report.overall.h_node, "H_adj": report.overall.h_adj}[symbol]


def render_table(columns: Sequence[Tuple[str, MetricReport]]) -> str:
    """
    Metric rows × dataset columns.

    Args:
        columns: (dataset name, report) pairs, one per column

    Returns:
        Plain-text table
    """
    label_width = max(len(f"{name} ({symbol})") for name, symbol in TABLE_ROWS)
    widths = [max(8, len(name)) for name, _ in columns]
    header = "Metric".ljust(label_width) + "".join(f" | {name:>{w}}" for (name, _), w in zip(columns, widths))
    lines = [header, "-" * len(header)]
    for name, symbol in TABLE_ROWS:
        cells = []
        for (_, report), w in zip(columns, widths):
            value = _table_value(report, symbol)
            cells.append(f" | {('n/a' if value is None else f'{value:.4f}'):>{w}}")
        lines.append(f"{name} ({symbol})".ljust(label_width) + "".join(cells))
    return "\n".join(lines)


def render_metapath_rows(report: MetricReport) -> str:
    """Per-metapath detail block printed under the summary table."""
    lines = [f"Metapaths (target '{report.target_type}', lengths {report.metapath_lengths}, agg={report.agg.value}):"]
    for row in report.rows:
        h_adj = "n/a" if row.h_adj is None else f"{row.h_adj:.4f}"
        line = (
            f"  {row.metapath}: |E|={row.m:g} H_edge={row.h_edge:.4f} H_node={row.h_node:.4f} "
            f"H_adj={h_adj} p={row.p:.4f} isolated={row.isolated}"
        )
        if row.h_edge_estimate is not None:
            line += f" est={row.h_edge_estimate:.4f}±{row.h_edge_half_width:.4f}"
        if row.null_h_edge is not None:
            line += f" null={row.null_h_edge:.4f}"
        lines.append(line)
    for skip in report.skipped:
        lines.append(f"  skipped {skip.metapath} [{', '.join(skip.metrics)}]: {skip.reason}")
    return "\n".join(lines)
