"""
Structural diagnosis of a HeteroGraph.

``validate_graph`` never raises on a broken graph; it lists every violated
invariant with the relation and row where it was found.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from .graph import CSR, HeteroGraph

logger = logging.getLogger(__name__)

INDEX_OUT_OF_RANGE = "index out of range"
TRANSPOSE_MISMATCH = "transpose mismatch"
UNSORTED_ROW = "unsorted row"
BAD_OFFSETS = "bad row offsets"
BAD_TIMESTAMPS = "bad timestamps"


class Finding(BaseModel):
    kind: str
    relation: Optional[str] = None
    row: Optional[int] = None
    message: str


class ValidationReport(BaseModel):
    findings: List[Finding] = []

    @property
    def ok(self) -> bool:
        return not self.findings

    def kinds(self) -> List[str]:
        return [f.kind for f in self.findings]


def _check_csr(csr: CSR, n_rows: int, n_cols: int, where: str, findings: List[Finding]) -> bool:
    """Check one CSR; returns True if it is structurally usable for comparison."""
    indptr, indices = csr.indptr, csr.indices
    if len(indptr) != n_rows + 1 or (len(indptr) and indptr[0] != 0) or np.any(np.diff(indptr) < 0) or (
        len(indptr) and indptr[-1] != len(indices)
    ):
        findings.append(Finding(kind=BAD_OFFSETS, relation=where, message=f"{where}: row offsets do not describe {n_rows} rows"))
        return False

    usable = True
    rows = csr.row_ids()
    bad = np.flatnonzero((indices < 0) | (indices >= n_cols))
    for pos in bad:
        row = int(rows[pos])
        findings.append(
            Finding(
                kind=INDEX_OUT_OF_RANGE,
                relation=where,
                row=row,
                message=f"{where} row {row}: index {int(indices[pos])} not in [0, {n_cols})",
            )
        )
        usable = False

    if len(indices) > 1:
        # A decrease inside a row (not across a row boundary) means unsorted columns
        decreasing = np.flatnonzero(np.diff(indices) < 0)
        same_row = rows[decreasing] == rows[decreasing + 1]
        for pos in decreasing[same_row]:
            row = int(rows[pos])
            findings.append(Finding(kind=UNSORTED_ROW, relation=where, row=row, message=f"{where} row {row}: columns not sorted"))
    return usable


def validate_graph(g: HeteroGraph) -> ValidationReport:
    """
    Check every HeteroGraph invariant.

    Args:
        g: Graph to diagnose

    Returns:
        Report with one finding per violation; ``report.ok`` when there are none
    """
    findings: List[Finding] = []
    schema = g.schema

    for r, rel in enumerate(schema.relations):
        n_src = g.node_counts[schema.type_index(rel.src)]
        n_dst = g.node_counts[schema.type_index(rel.dst)]
        fwd_ok = _check_csr(g.forward[r], n_src, n_dst, rel.key, findings)
        rev_ok = _check_csr(g.reverse[r], n_dst, n_src, f"{rel.key} (transposed)", findings)
        if not (fwd_ok and rev_ok):
            continue

        expected = g.forward[r].transpose()
        actual = g.reverse[r]
        if expected == actual:
            continue
        for row in range(n_dst):
            if not np.array_equal(expected.row(row), np.sort(actual.row(row))):
                findings.append(
                    Finding(
                        kind=TRANSPOSE_MISMATCH,
                        relation=rel.key,
                        row=row,
                        message=f"{rel.key}: transposed row {row} disagrees with the forward edges",
                    )
                )

    for name, stamps in g.timestamps.items():
        expected_len = g.node_counts[schema.type_index(name)]
        if len(stamps) != expected_len:
            findings.append(
                Finding(kind=BAD_TIMESTAMPS, message=f"timestamps of '{name}' have length {len(stamps)}, expected {expected_len}")
            )

    if findings:
        logger.debug(f"⚠️ Graph validation found {len(findings)} problem(s)")
    return ValidationReport(findings=findings)
