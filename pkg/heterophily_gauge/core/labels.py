"""
Class labels for the target node type.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DataError

UNLABELED = -1


@dataclass(frozen=True, eq=False)
class LabelMap:
    """
    Per-node class ids in ``[0, num_classes)`` or ``UNLABELED``.

    Attributes:
        target_type: Name of the labeled node type
        num_classes: C, the number of classes
        labels: int64 array with one entry per target-type node
    """

    target_type: str
    num_classes: int
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        if self.num_classes < 1:
            raise DataError(f"num_classes must be >= 1, got {self.num_classes}")
        bad = (labels != UNLABELED) & ((labels < 0) | (labels >= self.num_classes))
        if bad.any():
            first = int(np.flatnonzero(bad)[0])
            raise DataError(
                f"label {int(labels[first])} of '{self.target_type}' node {first} is outside [0, {self.num_classes})"
            )
        if not (labels != UNLABELED).any():
            raise DataError(f"no '{self.target_type}' node carries a label")

    @property
    def labeled_mask(self) -> np.ndarray:
        return self.labels != UNLABELED

    @property
    def num_labeled(self) -> int:
        return int(self.labeled_mask.sum())

    def __len__(self) -> int:
        return len(self.labels)

    def histogram(self) -> np.ndarray:
        """Labeled-node count per class."""
        return np.bincount(self.labels[self.labeled_mask], minlength=self.num_classes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelMap):
            return NotImplemented
        return (
            self.target_type == other.target_type
            and self.num_classes == other.num_classes
            and np.array_equal(self.labels, other.labels)
        )
