"""
Heterogeneous graph storage: per-type local indexing and per-relation CSR.

Each relation keeps a forward CSR (rows are source nodes) and a transposed
CSR (rows are destination nodes). Multi-edges are preserved; column lists
are kept sorted so that two graphs built from the same edges in any order
compare equal.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import DataError, TypeMismatchError
from .schema import Schema

MISSING_TIMESTAMP = np.iinfo(np.int64).min

Direction = Literal["in", "out"]


@dataclass(frozen=True, eq=False)
class CSR:
    """Compressed sparse rows with int64 offsets and column indices."""

    indptr: np.ndarray
    indices: np.ndarray
    n_cols: int

    @property
    def n_rows(self) -> int:
        return len(self.indptr) - 1

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1]) if len(self.indptr) else 0

    @classmethod
    def from_pairs(cls, rows: np.ndarray, cols: np.ndarray, n_rows: int, n_cols: int) -> "CSR":
        """Build a canonical CSR (rows ascending, columns ascending within a row)."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        order = np.lexsort((cols, rows))
        counts = np.bincount(rows, minlength=n_rows) if len(rows) else np.zeros(n_rows, dtype=np.int64)
        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(indptr=indptr, indices=cols[order].copy(), n_cols=int(n_cols))

    @classmethod
    def empty(cls, n_rows: int, n_cols: int) -> "CSR":
        return cls(indptr=np.zeros(n_rows + 1, dtype=np.int64), indices=np.zeros(0, dtype=np.int64), n_cols=int(n_cols))

    def row_ids(self) -> np.ndarray:
        """Row index of every stored entry."""
        return np.repeat(np.arange(self.n_rows, dtype=np.int64), np.diff(self.indptr))

    def pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.row_ids(), self.indices

    def row(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def transpose(self) -> "CSR":
        rows, cols = self.pairs()
        return CSR.from_pairs(cols, rows, self.n_cols, self.n_rows)

    def row_lengths(self) -> np.ndarray:
        return np.diff(self.indptr)

    def to_scipy(self, binary: bool = True) -> sp.csr_matrix:
        """
        Convert to a scipy CSR matrix.

        Args:
            binary: Collapse multi-edges to a single 1 entry; otherwise entries count multiplicity
        """
        data = np.ones(self.nnz, dtype=np.int64)
        mat = sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n_rows, self.n_cols))
        mat.sum_duplicates()
        if binary:
            mat.data[:] = 1
        return mat

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CSR):
            return NotImplemented
        return (
            self.n_cols == other.n_cols
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )


@dataclass(frozen=True)
class TypedNodeRef:
    """A node addressed by its type index and its per-type local index."""

    type_id: int
    local_index: int


@dataclass(frozen=True, eq=False)
class HeteroGraph:
    """
    Immutable heterogeneous graph.

    Attributes:
        schema: Node types and relation triples
        node_counts: Node count per type, aligned with ``schema.node_types``
        forward: Per-relation CSR, rows = source local index
        reverse: Per-relation transposed CSR, rows = destination local index
        timestamps: Per-type int64 timestamps (``MISSING_TIMESTAMP`` when absent)
        features: Per-type opaque numeric blocks, carried but never interpreted
    """

    schema: Schema
    node_counts: Tuple[int, ...]
    forward: Tuple[CSR, ...]
    reverse: Tuple[CSR, ...]
    timestamps: Dict[str, np.ndarray] = field(default_factory=dict)
    features: Dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def from_edge_lists(
        cls,
        schema: Schema,
        node_counts: Mapping[str, int],
        edges: Mapping[Any, Tuple[Sequence[int], Sequence[int]]],
        timestamps: Optional[Mapping[str, Sequence[int]]] = None,
        features: Optional[Mapping[str, np.ndarray]] = None,
    ) -> "HeteroGraph":
        """
        Build a graph from raw (src, dst) edge lists.

        Args:
            schema: The type-level schema
            node_counts: Node count per type name (missing types count 0)
            edges: Relation reference -> (src indices, dst indices); missing relations are empty
            timestamps: Optional per-type timestamps
            features: Optional per-type feature blocks (first axis = nodes)

        Returns:
            The canonical graph

        Raises:
            DataError: On negative counts, out-of-range endpoints or misaligned arrays
        """
        counts = tuple(int(node_counts.get(t, 0)) for t in schema.node_types)
        if any(c < 0 for c in counts):
            raise DataError(f"node counts must be nonnegative: {dict(zip(schema.node_types, counts))}")

        by_index: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        for ref, (src, dst) in edges.items():
            by_index[schema.relation_index(ref)] = (
                np.asarray(src, dtype=np.int64),
                np.asarray(dst, dtype=np.int64),
            )

        forward, reverse = [], []
        for r, rel in enumerate(schema.relations):
            n_src = counts[schema.type_index(rel.src)]
            n_dst = counts[schema.type_index(rel.dst)]
            src, dst = by_index.get(r, (np.zeros(0, np.int64), np.zeros(0, np.int64)))
            if len(src) != len(dst):
                raise DataError(f"relation {rel.key}: {len(src)} sources but {len(dst)} destinations")
            if len(src) and (src.min() < 0 or src.max() >= n_src):
                raise DataError(f"relation {rel.key}: source index out of range [0, {n_src})")
            if len(dst) and (dst.min() < 0 or dst.max() >= n_dst):
                raise DataError(f"relation {rel.key}: destination index out of range [0, {n_dst})")
            forward.append(CSR.from_pairs(src, dst, n_src, n_dst))
            reverse.append(CSR.from_pairs(dst, src, n_dst, n_src))

        stamps: Dict[str, np.ndarray] = {}
        for name, values in (timestamps or {}).items():
            arr = np.asarray(values, dtype=np.int64)
            if len(arr) != counts[schema.type_index(name)]:
                raise DataError(f"timestamps for '{name}' have length {len(arr)}, expected {counts[schema.type_index(name)]}")
            stamps[name] = arr

        blocks: Dict[str, np.ndarray] = {}
        for name, block in (features or {}).items():
            arr = np.asarray(block)
            if arr.shape[0] != counts[schema.type_index(name)]:
                raise DataError(f"features for '{name}' have {arr.shape[0]} rows, expected {counts[schema.type_index(name)]}")
            blocks[name] = arr

        return cls(
            schema=schema,
            node_counts=counts,
            forward=tuple(forward),
            reverse=tuple(reverse),
            timestamps=stamps,
            features=blocks,
        )

    def num_nodes(self, node_type: str) -> int:
        return self.node_counts[self.schema.type_index(node_type)]

    def edge_count(self, relation: Any) -> int:
        return self.forward[self.schema.relation_index(relation)].nnz

    def edge_lists(self, relation: Any) -> Tuple[np.ndarray, np.ndarray]:
        """Raw (src, dst) arrays of a relation in canonical order, multi-edges included."""
        return self.forward[self.schema.relation_index(relation)].pairs()

    def node_ref(self, node_type: str, local_index: int) -> TypedNodeRef:
        """
        Build a validated node reference.

        Raises:
            DataError: If the index is outside the type's node range
        """
        type_id = self.schema.type_index(node_type)
        if not 0 <= local_index < self.node_counts[type_id]:
            raise DataError(f"node {node_type}[{local_index}] out of range [0, {self.node_counts[type_id]})")
        return TypedNodeRef(type_id=type_id, local_index=int(local_index))

    def degree(self, relation: Any, node: TypedNodeRef, direction: Direction) -> int:
        return degree(self, relation, node, direction)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeteroGraph):
            return NotImplemented
        if self.schema != other.schema or self.node_counts != other.node_counts:
            return False
        if self.forward != other.forward or self.reverse != other.reverse:
            return False
        if self.timestamps.keys() != other.timestamps.keys() or self.features.keys() != other.features.keys():
            return False
        return all(np.array_equal(v, other.timestamps[k]) for k, v in self.timestamps.items()) and all(
            np.array_equal(v, other.features[k]) for k, v in self.features.items()
        )


def degree(g: HeteroGraph, relation: Any, node: TypedNodeRef, direction: Direction) -> int:
    """
    Number of edges incident to a node under one relation, counting multiplicity.

    Args:
        g: The graph
        relation: Relation reference
        node: The node; its type must be the relation's source for ``out``
            and the relation's destination for ``in``
        direction: ``"in"`` or ``"out"``

    Returns:
        The degree

    Raises:
        TypeMismatchError: If the node type does not match the implied endpoint
        DataError: If the local index is outside the node type's range
    """
    r = g.schema.relation_index(relation)
    rel = g.schema.relations[r]
    if direction == "out":
        expected, csr = rel.src, g.forward[r]
    elif direction == "in":
        expected, csr = rel.dst, g.reverse[r]
    else:
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    node_type = g.schema.node_types[node.type_id]
    if node_type != expected:
        raise TypeMismatchError(
            f"{direction}-degree under {rel.key} needs a '{expected}' node, got '{node_type}'"
        )
    count = g.node_counts[node.type_id]
    if not 0 <= node.local_index < count:
        raise DataError(f"node {node_type}[{node.local_index}] out of range [0, {count})")
    return int(csr.indptr[node.local_index + 1] - csr.indptr[node.local_index])
