"""
Write a graph back out as a CSV dataset bundle.
"""

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from ..core.graph import MISSING_TIMESTAMP, HeteroGraph
from ..core.labels import LabelMap
from .bundle import EDGE_COLUMNS, FEATURE_PREFIX, LABEL_COLUMN, NODE_ID_COLUMN, TIMESTAMP_COLUMN

logger = logging.getLogger(__name__)

MANIFEST_NAME = "bundle.json"
SCHEMA_NAME = "schema.json"


def write_bundle(g: HeteroGraph, labels: LabelMap, directory: str) -> Path:
    """
    Emit schema, node tables, edge tables and a manifest.

    Args:
        g: Graph to write
        labels: Target-type labels (written as the ``label`` column, ``-1`` for unlabeled)
        directory: Output directory, created if needed

    Returns:
        Path of the bundle manifest
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / SCHEMA_NAME).write_text(json.dumps(g.schema.to_file_dict(), indent=2) + "\n", encoding="utf-8")

    node_tables = {}
    for t, name in enumerate(g.schema.node_types):
        n = g.node_counts[t]
        columns = {NODE_ID_COLUMN: np.arange(n, dtype=np.int64)}
        if name == labels.target_type:
            columns[LABEL_COLUMN] = labels.labels
        if name in g.timestamps:
            stamps = g.timestamps[name]
            cells = stamps.astype(str).astype(object)
            cells[stamps == MISSING_TIMESTAMP] = ""
            columns[TIMESTAMP_COLUMN] = cells
        if name in g.features:
            block = np.asarray(g.features[name], dtype=np.float64).reshape(n, -1)
            for j in range(block.shape[1]):
                columns[f"{FEATURE_PREFIX}{j}"] = block[:, j]
        file_name = f"nodes_{name}.csv"
        pd.DataFrame(columns).to_csv(out / file_name, index=False)
        node_tables[name] = file_name

    relation_tables = {}
    for r, rel in enumerate(g.schema.relations):
        src, dst = g.forward[r].pairs()
        file_name = f"edges_{rel.src}_{rel.name}_{rel.dst}.csv"
        pd.DataFrame({EDGE_COLUMNS[0]: src, EDGE_COLUMNS[1]: dst}).to_csv(out / file_name, index=False)
        relation_tables[rel.key] = file_name

    manifest = {
        "schema": SCHEMA_NAME,
        "node_tables": node_tables,
        "relation_tables": relation_tables,
        "target_type": labels.target_type,
        "num_classes": labels.num_classes,
    }
    path = out / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    logger.info(f"✅ Wrote bundle {path}")
    return path
