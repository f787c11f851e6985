"""
Exception hierarchy for the Heterophily Gauge.

Every error carries the process exit code the CLI should return, so that
pipelines can branch on the failure class:

- 1: usage error (bad flags, inconsistent configuration)
- 2: data error (malformed input, corrupt cache, type mismatches)
- 3: degenerate computation (nothing left to measure)
"""

from typing import Optional


class HeterophilyGaugeError(Exception):
    """Base class for all errors raised by the package."""

    exit_code: int = 2


class UsageError(HeterophilyGaugeError):
    """Inconsistent or invalid run configuration."""

    exit_code = 1


class DataError(HeterophilyGaugeError):
    """The input data is malformed or does not match its declaration."""

    exit_code = 2


class SchemaError(DataError):
    """The type-level schema violates its invariants."""


class BundleError(DataError):
    """A dataset bundle manifest is incomplete or points at bad files."""


class IngestError(DataError):
    """
    A problem in one row of one CSV file.

    The message always starts with ``path:line:`` so it can be found by grep.
    """

    def __init__(self, path: str, line: Optional[int], reason: str):
        self.path = str(path)
        self.line = line
        self.reason = reason
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {reason}")


class CacheError(DataError):
    """Base class for binary cache failures."""


class BadMagicError(CacheError):
    pass


class UnsupportedVersionError(CacheError):
    pass


class TruncatedCacheError(CacheError):
    pass


class ChecksumMismatchError(CacheError):
    pass


class TypeMismatchError(DataError):
    """A node or metapath does not match the relation endpoints it is used with."""


class UnknownTypeError(DataError):
    """A node type name is not declared in the schema."""


class UnknownRelationError(DataError):
    """A relation reference cannot be resolved against the schema."""


class MetapathSyntaxError(DataError):
    """Metapath text could not be parsed."""


class MissingTimestampsError(DataError):
    """Labeled nodes lack the timestamps a temporal split needs."""

    def __init__(self, missing: int, target_type: str):
        self.missing = missing
        self.target_type = target_type
        super().__init__(
            f"{missing} labeled '{target_type}' node(s) have no timestamp; "
            f"use a random split for datasets without time information"
        )


class DegenerateComputationError(HeterophilyGaugeError):
    """The metric is undefined on this input."""

    exit_code = 3


class EmptyInducedGraphError(DegenerateComputationError):
    """The induced graph has no edges (or no non-isolated node)."""


class DegenerateClassDistributionError(DegenerateComputationError):
    """Only one class is present among edge endpoints, so 1 - p is zero."""


class AllMetapathsEmptyError(DegenerateComputationError):
    """Every metapath in the set was skipped."""
