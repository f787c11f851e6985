"""
Build a HeteroGraph and the target-type LabelMap from a CSV bundle.

Every row-level problem is raised as an IngestError whose message starts
with ``path:line:``; line numbers count the header as line 1.
"""

import csv
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..core.graph import MISSING_TIMESTAMP, HeteroGraph
from ..core.labels import UNLABELED, LabelMap
from ..core.schema import Schema
from ..errors import IngestError
from .bundle import EDGE_COLUMNS, FEATURE_PREFIX, LABEL_COLUMN, NODE_ID_COLUMN, TIMESTAMP_COLUMN, DatasetBundle

logger = logging.getLogger(__name__)

_PARSER_LINE = re.compile(r"line (\d+)")
_INTEGER = r"-?\d+"


@dataclass
class NodeTable:
    n: int
    labels: Optional[np.ndarray] = None
    timestamps: Optional[np.ndarray] = None
    features: Optional[np.ndarray] = None


def _line(df: pd.DataFrame, row: int) -> int:
    return int(df.attrs["lines"][row])


def _record_lines(path: Path) -> Tuple[int, np.ndarray, np.ndarray]:
    """
    Scan raw records for their starting line and field count.

    Blank and whitespace-only lines are skipped the way the table reader skips
    them, so record i of the result is data row i - 1 of the table.

    Returns:
        (header width, start line per data row, field count per data row)
    """
    starts, widths = [], []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        end = 0
        for record in reader:
            start, end = end + 1, reader.line_num
            if not record or (len(record) == 1 and not record[0].strip()):
                continue
            starts.append(start)
            widths.append(len(record))
    if not starts:
        raise IngestError(path, 1, "missing header")
    return widths[0], np.asarray(starts[1:], dtype=np.int64), np.asarray(widths[1:], dtype=np.int64)


def read_table(path: Path) -> pd.DataFrame:
    """
    Read a CSV as raw strings, surfacing tokenizer errors with their line.

    Every data row must carry exactly as many fields as the header. Blank
    lines are skipped, and ``df.attrs["lines"]`` maps each row to its line.

    Raises:
        IngestError: On unreadable files, ragged rows or a missing header
    """
    try:
        width, lines, fields = _record_lines(path)
        ragged = np.flatnonzero(fields != width)
        if len(ragged):
            row = int(ragged[0])
            raise IngestError(path, int(lines[row]), f"expected {width} columns, got {fields[row]}")
        df = pd.read_csv(
            path,
            dtype=str,
            index_col=False,
            keep_default_na=False,
            na_filter=False,
            encoding="utf-8",
        )
    except (pd.errors.ParserError, csv.Error) as e:
        match = _PARSER_LINE.search(str(e))
        raise IngestError(path, int(match.group(1)) if match else None, f"malformed row ({e})")
    except pd.errors.EmptyDataError:
        raise IngestError(path, 1, "missing header")
    except (OSError, UnicodeDecodeError) as e:
        raise IngestError(path, None, f"cannot read file: {e}")

    if len(df) != len(lines):
        raise IngestError(path, None, f"read {len(df)} row(s) but found {len(lines)} record(s)")
    df.columns = [str(c).strip() for c in df.columns]
    df.attrs["lines"] = lines
    return df


def int_column(df: pd.DataFrame, column: str, path: Path, missing: Optional[int] = None) -> np.ndarray:
    """
    Parse a column of integers.

    Args:
        df: Raw string table
        column: Column name
        path: File path for diagnostics
        missing: Value for empty cells; empty cells are errors when None

    Returns:
        int64 array

    Raises:
        IngestError: At the first cell that is not an integer
    """
    values = df[column].str.strip()
    empty = (values == "").to_numpy()
    valid = values.str.fullmatch(_INTEGER).to_numpy(dtype=bool)
    bad = ~valid & ~(empty & (missing is not None))
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise IngestError(path, _line(df, row), f"column '{column}': {values.iloc[row]!r} is not an integer")
    out = np.full(len(values), missing if missing is not None else 0, dtype=np.int64)
    try:
        out[~empty] = values[~empty].astype(np.int64).to_numpy()
    except (OverflowError, ValueError) as e:
        raise IngestError(path, None, f"column '{column}': {e}")
    return out


def load_node_table(path: Path, is_target: bool, num_classes: int) -> NodeTable:
    """
    Parse one node table.

    ``local_id`` must cover ``[0, n)`` exactly; rows may come in any order.
    Labels are only read for the target type; ``-1`` or an empty cell means
    unlabeled.
    """
    df = read_table(path)
    n = len(df)
    ids = int_column(df, NODE_ID_COLUMN, path)
    out_of_range = (ids < 0) | (ids >= n)
    if out_of_range.any():
        row = int(np.flatnonzero(out_of_range)[0])
        raise IngestError(path, _line(df, row), f"local_id {ids[row]} outside [0, {n})")
    order = np.argsort(ids, kind="stable")
    duplicate = np.flatnonzero(np.diff(ids[order]) == 0)
    if len(duplicate):
        row = int(order[duplicate[0] + 1])
        raise IngestError(path, _line(df, row), f"duplicate local_id {ids[row]}")

    table = NodeTable(n=n)
    if is_target and LABEL_COLUMN in df.columns:
        raw = int_column(df, LABEL_COLUMN, path, missing=UNLABELED)
        bad = (raw != UNLABELED) & ((raw < 0) | (raw >= num_classes))
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            raise IngestError(path, _line(df, row), f"label {raw[row]} outside [0, {num_classes})")
        table.labels = np.full(n, UNLABELED, dtype=np.int64)
        table.labels[ids] = raw
    elif is_target:
        table.labels = np.full(n, UNLABELED, dtype=np.int64)

    if TIMESTAMP_COLUMN in df.columns:
        raw = int_column(df, TIMESTAMP_COLUMN, path, missing=MISSING_TIMESTAMP)
        table.timestamps = np.empty(n, dtype=np.int64)
        table.timestamps[ids] = raw

    feature_columns = [c for c in df.columns if c.startswith(FEATURE_PREFIX)]
    if feature_columns:
        block = df[feature_columns].apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
        bad_rows = np.flatnonzero(np.isnan(block).any(axis=1))
        if len(bad_rows):
            raise IngestError(path, _line(df, int(bad_rows[0])), "feature cell is not a number")
        table.features = np.empty_like(block)
        table.features[ids] = block
    return table


def load_edge_table(path: Path, n_src: int, n_dst: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Parse one edge table into (src, dst) index arrays, duplicates kept.

    Raises:
        IngestError: On non-integer cells or endpoints outside their type's range
    """
    df = read_table(path)
    src = int_column(df, EDGE_COLUMNS[0], path)
    dst = int_column(df, EDGE_COLUMNS[1], path)
    for values, bound, column in ((src, n_src, EDGE_COLUMNS[0]), (dst, n_dst, EDGE_COLUMNS[1])):
        bad = (values < 0) | (values >= bound)
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            raise IngestError(path, _line(df, row), f"{column} {values[row]} outside [0, {bound})")
    return src, dst


def load_csv_bundle(bundle: DatasetBundle, threads: int = 1) -> Tuple[HeteroGraph, LabelMap]:
    """
    Load every table of a bundle.

    Args:
        bundle: A checked dataset bundle
        threads: Worker count for parsing relation tables

    Returns:
        (graph, labels of the target type)

    Raises:
        IngestError: On the first malformed row, with file and line
        DataError: If the target type has no labeled node
    """
    schema: Schema = bundle.check()
    logger.info(f"🔧 Loading bundle with {len(schema.node_types)} node type(s) and {len(schema.relations)} relation(s)")

    nodes: Dict[str, NodeTable] = {}
    for node_type in schema.node_types:
        nodes[node_type] = load_node_table(
            bundle.node_tables[node_type], node_type == bundle.target_type, bundle.num_classes
        )
    counts = {t: table.n for t, table in nodes.items()}

    jobs = []
    for rel in schema.relations:
        path = bundle.relation_tables.get(rel.key)
        if path is not None:
            jobs.append((rel.key, path, counts[rel.src], counts[rel.dst]))

    def run(job):
        key, path, n_src, n_dst = job
        return key, load_edge_table(path, n_src, n_dst)

    with ThreadPoolExecutor(max_workers=max(1, min(threads, len(jobs) or 1))) as pool:
        edges = dict(pool.map(run, jobs))

    graph = HeteroGraph.from_edge_lists(
        schema,
        counts,
        edges,
        timestamps={t: table.timestamps for t, table in nodes.items() if table.timestamps is not None},
        features={t: table.features for t, table in nodes.items() if table.features is not None},
    )
    labels = LabelMap(bundle.target_type, bundle.num_classes, nodes[bundle.target_type].labels)
    logger.info(
        f"✅ Loaded {sum(counts.values())} node(s), {sum(graph.edge_count(r) for r in range(len(schema.relations)))} edge(s), "
        f"{labels.num_labeled} labeled '{bundle.target_type}' node(s)"
    )
    return graph, labels
