"""
Materialize metapath-induced homogeneous graphs over the labeled target type.

The walk relation of a metapath is the chain product of its step matrices
(forward CSR for forward steps, transposed CSR for reverse steps) over the
boolean semiring. The product is then restricted to labeled endpoints,
stripped of self-loops, symmetrized and deduplicated.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import numpy as np
import scipy.sparse as sp

from ..core.graph import CSR, HeteroGraph
from ..core.labels import LabelMap
from ..errors import DataError
from ._kernels import bool_spgemm_block
from .paths import Metapath

logger = logging.getLogger(__name__)

DEFAULT_DENSE_FRACTION = 0.05
MIN_BLOCK_ROWS = 1024


@dataclass(frozen=True, eq=False)
class InducedGraph:
    """
    Homogeneous graph G_P over all target-type nodes.

    Unlabeled nodes are present but isolated. By default the adjacency is
    symmetric and simple, so in-degree, out-degree and degree coincide.

    Attributes:
        metapath: The metapath that induced this graph (None for a union of several)
        n: Target-type node count
        indptr, indices: CSR adjacency (both directions stored for undirected graphs)
        weights: Walk multiplicities per stored arc, or None for binary edges
        directed: True only in the expert mode that skips symmetrization
    """

    metapath: Optional[Metapath]
    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: Optional[np.ndarray] = None
    directed: bool = False

    @property
    def arcs(self) -> int:
        return int(self.indptr[-1])

    def row_ids(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def arc_weights(self) -> np.ndarray:
        """
        Endpoint mass carried by each stored arc.

        A self-loop of an undirected graph is stored once but has two
        endpoints at the same node, so it counts twice.
        """
        w = np.ones(self.arcs, dtype=np.float64) if self.weights is None else self.weights.astype(np.float64)
        if not self.directed:
            w = np.where(self.row_ids() == self.indices, 2.0 * w, w)
        return w

    @property
    def degrees(self) -> np.ndarray:
        """d(v); the in-degree, which equals the degree when symmetrized."""
        if self.weights is None and not self.directed and not self.has_self_loops:
            return np.diff(self.indptr)
        return np.bincount(self.indices, weights=self.arc_weights(), minlength=self.n)

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(self.row_ids() == self.indices))

    @property
    def endpoint_total(self) -> float:
        """Sum of d(v): 2|E| when undirected, |E| when directed."""
        return float(self.arc_weights().sum())

    @property
    def m(self):
        """|E|, the undirected edge count (or arc count when directed)."""
        if self.weights is None and not self.directed and not self.has_self_loops:
            return self.arcs // 2
        total = self.arc_weights().sum()
        if self.directed:
            return total
        return total / 2.0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_set(self) -> Set[Tuple[int, int]]:
        """Unordered edges as (min, max) pairs."""
        rows = self.row_ids()
        return {(int(min(u, v)), int(max(u, v))) for u, v in zip(rows, self.indices)}

    def to_scipy(self) -> sp.csr_matrix:
        data = np.ones(self.arcs, dtype=np.int64) if self.weights is None else self.weights
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InducedGraph):
            return NotImplemented
        same_weights = (self.weights is None and other.weights is None) or (
            self.weights is not None and other.weights is not None and np.array_equal(self.weights, other.weights)
        )
        return (
            self.n == other.n
            and self.directed == other.directed
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and same_weights
        )


def _row_blocks(n_rows: int, threads: int) -> List[Tuple[int, int]]:
    size = max(MIN_BLOCK_ROWS, -(-n_rows // max(1, threads * 4)))
    return [(start, min(start + size, n_rows)) for start in range(0, n_rows, size)]


def bool_product(a: CSR, b: CSR, threads: int = 1, dense_fraction: float = DEFAULT_DENSE_FRACTION) -> CSR:
    """
    Boolean sparse product A·B with deduplicated, sorted rows.

    Row blocks are independent and run on a thread pool when ``threads > 1``.

    Args:
        a: Left operand (n × k)
        b: Right operand (k × m)
        threads: Worker count
        dense_fraction: Row density above which the bitset read-back is used

    Returns:
        The product as a CSR
    """
    if a.n_cols != b.n_rows:
        raise DataError(f"cannot compose {a.n_rows}x{a.n_cols} with {b.n_rows}x{b.n_cols}")
    blocks = _row_blocks(a.n_rows, threads)
    if not blocks:
        return CSR.empty(0, b.n_cols)

    def run(block: Tuple[int, int]):
        return bool_spgemm_block(a.indptr, a.indices, b.indptr, b.indices, b.n_cols, block[0], block[1], dense_fraction)

    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(block) for block in blocks]

    indptr = np.zeros(a.n_rows + 1, dtype=np.int64)
    offset = 0
    for (start, end), (block_indptr, _) in zip(blocks, parts):
        indptr[start + 1:end + 1] = block_indptr[1:] + offset
        offset += int(block_indptr[-1])
    indices = np.concatenate([block_indices for _, block_indices in parts]) if parts else np.zeros(0, np.int64)
    return CSR(indptr=indptr, indices=indices, n_cols=b.n_cols)


def _step_csr(g: HeteroGraph, metapath: Metapath, i: int) -> CSR:
    step = metapath.steps[i]
    return g.reverse[step.relation] if step.is_reverse else g.forward[step.relation]


def induce_subgraph(
    g: HeteroGraph,
    labels: LabelMap,
    p: Metapath,
    count_multiplicity: bool = False,
    keep_self_loops: bool = False,
    symmetrize: bool = True,
    threads: int = 1,
    dense_fraction: float = DEFAULT_DENSE_FRACTION,
) -> InducedGraph:
    """
    Build G_P: an edge u–v wherever a walk following p connects u to v.

    Args:
        g: The heterogeneous graph
        labels: Labels of the target type
        p: Metapath starting and ending at the target type
        count_multiplicity: Keep walk counts as arc weights instead of binary edges
        keep_self_loops: Keep u–u edges (removed by default)
        symmetrize: Make the graph undirected (disable only in the directed expert mode)
        threads: Worker count for the sparse products
        dense_fraction: Density threshold for the bitset row path

    Returns:
        The induced graph; unlabeled endpoints are dropped

    Raises:
        TypeMismatchError: If p does not run target -> target
    """
    p.type_check(g.schema, labels.target_type)
    n = g.num_nodes(labels.target_type)
    if len(labels) != n:
        raise DataError(f"{len(labels)} labels for {n} '{labels.target_type}' nodes")

    if count_multiplicity:
        walks = _step_csr(g, p, 0).to_scipy(binary=False)
        for i in range(1, len(p.steps)):
            walks = walks @ _step_csr(g, p, i).to_scipy(binary=False)
        walks = walks.tocoo()
        rows, cols, vals = walks.row.astype(np.int64), walks.col.astype(np.int64), walks.data.astype(np.int64)
    else:
        product = _step_csr(g, p, 0)
        for i in range(1, len(p.steps)):
            product = bool_product(product, _step_csr(g, p, i), threads=threads, dense_fraction=dense_fraction)
        rows, cols = product.pairs()
        vals = np.ones(len(rows), dtype=np.int64)

    labeled = labels.labeled_mask
    keep = labeled[rows] & labeled[cols]
    if not keep_self_loops:
        keep &= rows != cols
    rows, cols, vals = rows[keep], cols[keep], vals[keep]

    if symmetrize:
        loops = rows == cols
        adj = sp.coo_matrix(
            (np.concatenate([vals, vals[~loops]]), (np.concatenate([rows, cols[~loops]]), np.concatenate([cols, rows[~loops]]))),
            shape=(n, n),
        ).tocsr()
    else:
        adj = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    adj.sum_duplicates()
    adj.sort_indices()

    weights = None if not count_multiplicity else adj.data.astype(np.int64)
    ig = InducedGraph(
        metapath=p,
        n=n,
        indptr=adj.indptr.astype(np.int64),
        indices=adj.indices.astype(np.int64),
        weights=weights,
        directed=not symmetrize,
    )
    logger.debug(f"🔧 Induced graph has {ig.arcs} arcs over {n} nodes")
    return ig
