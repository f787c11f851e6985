"""
Dataset bundle manifests.

A bundle is a JSON manifest next to a schema file and one CSV per node type
and per relation::

    {
      "schema": "schema.json",
      "node_tables": {"paper": "paper.csv", "author": "author.csv"},
      "relation_tables": {"author:writes:paper": "writes.csv"},
      "target_type": "paper",
      "num_classes": 3
    }

Relative paths resolve against the manifest's directory.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List

import pandas as pd
from pydantic import BaseModel, Field, ValidationError

from ..core.schema import Schema
from ..errors import BundleError, DataError

logger = logging.getLogger(__name__)

NODE_ID_COLUMN = "local_id"
LABEL_COLUMN = "label"
TIMESTAMP_COLUMN = "timestamp"
FEATURE_PREFIX = "feat_"
EDGE_COLUMNS = ["src_local_id", "dst_local_id"]


class DatasetBundle(BaseModel):
    """
    Resolved bundle: every path is absolute and has been checked.

    Attributes:
        schema_path: Schema JSON file
        node_tables: Node type -> node CSV
        relation_tables: ``src:name:dst`` key -> edge CSV
        target_type: The labeled node type
        num_classes: Number of label classes
    """

    schema_path: Path
    node_tables: Dict[str, Path]
    relation_tables: Dict[str, Path] = Field(default_factory=dict)
    target_type: str
    num_classes: int

    @classmethod
    def from_manifest(cls, path: str) -> "DatasetBundle":
        """
        Read and check a bundle manifest.

        Args:
            path: Manifest JSON file

        Returns:
            The bundle, with its invariants checked

        Raises:
            BundleError: If the manifest, a listed file or a header is wrong
        """
        manifest = Path(path)
        try:
            data = json.loads(manifest.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise BundleError(f"{manifest}: cannot read bundle manifest: {e}")
        if not isinstance(data, dict):
            raise BundleError(f"{manifest}: bundle manifest must be a JSON object")

        root = manifest.parent
        try:
            bundle = cls(
                schema_path=root / data.get("schema", "schema.json"),
                node_tables={k: root / v for k, v in data.get("node_tables", {}).items()},
                relation_tables={k: root / v for k, v in data.get("relation_tables", {}).items()},
                target_type=data.get("target_type"),
                num_classes=data.get("num_classes"),
            )
        except (ValidationError, TypeError, AttributeError) as e:
            raise BundleError(f"{manifest}: invalid bundle manifest: {e}")
        bundle.check()
        return bundle

    def load_schema(self) -> Schema:
        return Schema.from_file(str(self.schema_path))

    def check(self) -> Schema:
        """
        Verify that files exist, headers match and names resolve against the schema.

        Returns:
            The parsed schema

        Raises:
            BundleError: On the first violated invariant
        """
        if not self.schema_path.exists():
            raise BundleError(f"schema file not found: {self.schema_path}")
        try:
            schema = self.load_schema()
        except DataError as e:
            raise BundleError(str(e))

        if self.target_type not in schema.node_types:
            raise BundleError(f"target type '{self.target_type}' is not declared in {self.schema_path}")
        if self.num_classes < 1:
            raise BundleError(f"num_classes must be >= 1, got {self.num_classes}")

        for node_type in schema.node_types:
            if node_type not in self.node_tables:
                raise BundleError(f"no node table for type '{node_type}'")
        for node_type, table in self.node_tables.items():
            if node_type not in schema.node_types:
                raise BundleError(f"node table given for undeclared type '{node_type}'")
            check_node_header(table, read_header(table))

        for key, table in self.relation_tables.items():
            try:
                schema.relation_index(key)
            except DataError:
                raise BundleError(f"relation table given for undeclared relation '{key}'")
            check_edge_header(table, read_header(table))

        missing = [rel.key for rel in schema.relations if rel.key not in self.relation_tables]
        if missing:
            logger.warning(f"⚠️ No edge table for {', '.join(missing)}; those relations load empty")
        return schema


def read_header(path: Path) -> List[str]:
    if not path.exists():
        raise BundleError(f"table not found: {path}")
    try:
        return [str(c).strip() for c in pd.read_csv(path, nrows=0, dtype=str, encoding="utf-8").columns]
    except (pd.errors.EmptyDataError, pd.errors.ParserError, UnicodeDecodeError) as e:
        raise BundleError(f"{path}:1: cannot read header: {e}")


def check_node_header(path: Path, columns: List[str]) -> None:
    if not columns or columns[0] != NODE_ID_COLUMN:
        raise BundleError(f"{path}:1: node table must start with '{NODE_ID_COLUMN}', got {columns}")
    for column in columns[1:]:
        if column not in (LABEL_COLUMN, TIMESTAMP_COLUMN) and not column.startswith(FEATURE_PREFIX):
            raise BundleError(f"{path}:1: unexpected column '{column}' in node table")
    if len(set(columns)) != len(columns):
        raise BundleError(f"{path}:1: duplicate column names in {columns}")


def check_edge_header(path: Path, columns: List[str]) -> None:
    if columns != EDGE_COLUMNS:
        raise BundleError(f"{path}:1: edge table header must be {','.join(EDGE_COLUMNS)}, got {','.join(columns)}")
