"""
Core data model for the Heterophily Gauge.
"""

from .schema import Relation, Schema
from .graph import CSR, MISSING_TIMESTAMP, HeteroGraph, TypedNodeRef, degree
from .labels import UNLABELED, LabelMap
from .validation import Finding, ValidationReport, validate_graph

__all__ = [
    "Relation",
    "Schema",
    "CSR",
    "MISSING_TIMESTAMP",
    "HeteroGraph",
    "TypedNodeRef",
    "degree",
    "UNLABELED",
    "LabelMap",
    "Finding",
    "ValidationReport",
    "validate_graph",
]
