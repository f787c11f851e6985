"""
Train / validation / test masks over the labeled target-type nodes.

Two strategies:

- temporal: labeled nodes ordered by (timestamp, node index) and cut by
  ratios, or cut at explicit timestamp boundaries;
- random: a seeded Fisher–Yates permutation driven by a Philox
  counter-based generator, cut by ratios.

Ratio cuts give train ``floor(r1 * n)`` nodes, val ``floor(r2 * n)`` and
test the remainder. Unlabeled nodes belong to no mask.
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from numba import njit
from pydantic import BaseModel

from .core.graph import MISSING_TIMESTAMP, HeteroGraph
from .core.labels import LabelMap
from .errors import DataError, MissingTimestampsError, UsageError

logger = logging.getLogger(__name__)

SPLIT_NAMES = ("train", "val", "test")
# Absorbs binary representation error in r * n (0.1 * 10 = 0.9999...)
ROUNDING_SLACK = 1e-9


class SplitDescriptor(BaseModel):
    strategy: Literal["temporal", "random"]
    ratios: Optional[List[float]] = None
    seed: Optional[int] = None
    boundaries: Optional[List[Optional[int]]] = None


@dataclass(frozen=True, eq=False)
class SplitMasks:
    """
    Three disjoint boolean masks over the target type whose union is the labeled set.

    Attributes:
        target_type: Labeled node type
        train, val, test: Boolean arrays with one entry per target-type node
        descriptor: Strategy, ratios, seed and timestamp boundaries
    """

    target_type: str
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray
    descriptor: SplitDescriptor

    def mask(self, name: str) -> np.ndarray:
        return {"train": self.train, "val": self.val, "test": self.test}[name]

    def indices(self, name: str) -> np.ndarray:
        return np.flatnonzero(self.mask(name))

    def sizes(self) -> Dict[str, int]:
        return {name: int(self.mask(name).sum()) for name in SPLIT_NAMES}

    def to_document(self, config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "target_type": self.target_type,
            "num_nodes": int(len(self.train)),
            "descriptor": self.descriptor.model_dump(),
            "sizes": self.sizes(),
        }
        if config is not None:
            doc["config"] = config
        for name in SPLIT_NAMES:
            doc[name] = self.indices(name).tolist()
        return doc

    def write_json(self, path: str, config: Optional[Dict[str, Any]] = None) -> None:
        Path(path).write_text(json.dumps(self.to_document(config), indent=2) + "\n", encoding="utf-8")

    def write_csvs(self, directory: str) -> List[Path]:
        """Export ``train.csv``, ``val.csv`` and ``test.csv`` with one ``local_id`` column each."""
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for name in SPLIT_NAMES:
            path = out / f"{name}.csv"
            pd.DataFrame({"local_id": self.indices(name)}).to_csv(path, index=False)
            paths.append(path)
        return paths

    @classmethod
    def from_file(cls, path: str) -> "SplitMasks":
        """
        Read a mask document written by ``write_json``.

        Raises:
            DataError: If the document is unreadable or its masks overlap
        """
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
            n = int(doc["num_nodes"])
            masks = {}
            for name in SPLIT_NAMES:
                mask = np.zeros(n, dtype=bool)
                mask[np.asarray(doc[name], dtype=np.int64)] = True
                masks[name] = mask
            descriptor = SplitDescriptor(**doc["descriptor"])
            target_type = doc["target_type"]
        except (OSError, ValueError, KeyError, IndexError, TypeError) as e:
            raise DataError(f"{path}: cannot read mask document: {e}")
        stacked = np.stack([masks[name] for name in SPLIT_NAMES])
        if (stacked.sum(axis=0) > 1).any():
            raise DataError(f"{path}: masks overlap")
        return cls(target_type=target_type, descriptor=descriptor, **masks)


def check_ratios(ratios: Sequence[float]) -> Tuple[float, float, float]:
    """
    Raises:
        UsageError: Unless there are three positive ratios summing to 1
    """
    if len(ratios) != 3 or any(r <= 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise UsageError(f"ratios must be three positive fractions summing to 1, got {list(ratios)}")
    return tuple(float(r) for r in ratios)


def ratio_sizes(n: int, ratios: Sequence[float]) -> Tuple[int, int, int]:
    """Floor for train and val, remainder to test."""
    r1, r2, _ = check_ratios(ratios)
    n_train = min(n, int(math.floor(r1 * n + ROUNDING_SLACK)))
    n_val = min(n - n_train, int(math.floor(r2 * n + ROUNDING_SLACK)))
    return n_train, n_val, n - n_train - n_val


def _cut(n: int, ordered: np.ndarray, sizes: Tuple[int, int, int]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    masks = []
    start = 0
    for size in sizes:
        mask = np.zeros(n, dtype=bool)
        mask[ordered[start:start + size]] = True
        masks.append(mask)
        start += size
    return tuple(masks)


def _labeled_timestamps(g: HeteroGraph, labels: LabelMap) -> Tuple[np.ndarray, np.ndarray]:
    nodes = np.flatnonzero(labels.labeled_mask)
    stamps = g.timestamps.get(labels.target_type)
    if stamps is None:
        raise MissingTimestampsError(len(nodes), labels.target_type)
    ts = stamps[nodes]
    missing = int((ts == MISSING_TIMESTAMP).sum())
    if missing:
        raise MissingTimestampsError(missing, labels.target_type)
    return nodes, ts


def temporal_split(
    g: HeteroGraph,
    labels: LabelMap,
    ratios: Sequence[float] = (0.8, 0.1, 0.1),
    boundaries: Optional[Sequence[int]] = None,
) -> SplitMasks:
    """
    Split labeled nodes so that training precedes validation precedes test in time.

    Args:
        g: Graph carrying target-type timestamps
        labels: Target-type labels
        ratios: Train/val/test fractions, used when no boundaries are given
        boundaries: Optional (t1, t2): train ``t < t1``, val ``t1 <= t < t2``, test ``t >= t2``

    Returns:
        The masks; the descriptor records the timestamps where val and test start

    Raises:
        MissingTimestampsError: If any labeled node lacks a timestamp
        UsageError: On bad ratios or boundaries
    """
    nodes, ts = _labeled_timestamps(g, labels)
    n = len(labels)

    if boundaries is not None:
        if len(boundaries) != 2 or boundaries[0] > boundaries[1]:
            raise UsageError(f"boundaries must be two non-decreasing timestamps, got {list(boundaries)}")
        t1, t2 = int(boundaries[0]), int(boundaries[1])
        train = np.zeros(n, dtype=bool)
        val = np.zeros(n, dtype=bool)
        test = np.zeros(n, dtype=bool)
        train[nodes[ts < t1]] = True
        val[nodes[(ts >= t1) & (ts < t2)]] = True
        test[nodes[ts >= t2]] = True
        descriptor = SplitDescriptor(strategy="temporal", boundaries=[t1, t2])
    else:
        order = np.lexsort((nodes, ts))
        ordered = nodes[order]
        sorted_ts = ts[order]
        sizes = ratio_sizes(len(nodes), ratios)
        train, val, test = _cut(n, ordered, sizes)
        val_start = int(sorted_ts[sizes[0]]) if sizes[1] else None
        test_start = int(sorted_ts[sizes[0] + sizes[1]]) if sizes[2] else None
        descriptor = SplitDescriptor(strategy="temporal", ratios=list(ratios), boundaries=[val_start, test_start])

    masks = SplitMasks(target_type=labels.target_type, train=train, val=val, test=test, descriptor=descriptor)
    logger.info(f"✅ Temporal split {masks.sizes()} (boundaries {descriptor.boundaries})")
    return masks


@njit(cache=True)
def _fisher_yates(values, draws):
    # draws[k] is uniform in [0, n - k) and pairs with position n - 1 - k
    n = values.shape[0]
    for k in range(n - 1):
        i = n - 1 - k
        j = draws[k]
        tmp = values[i]
        values[i] = values[j]
        values[j] = tmp
    return values


def seeded_permutation(values: np.ndarray, seed: int) -> np.ndarray:
    """
    Fisher–Yates shuffle with a Philox generator; platform independent for a given seed.
    """
    values = np.array(values, dtype=np.int64, copy=True)
    n = len(values)
    if n < 2:
        return values
    rng = np.random.Generator(np.random.Philox(seed))
    draws = rng.integers(0, np.arange(n, 1, -1, dtype=np.int64), dtype=np.int64)
    return _fisher_yates(values, draws)


def random_split(g: HeteroGraph, labels: LabelMap, ratios: Sequence[float] = (0.8, 0.1, 0.1), seed: int = 0) -> SplitMasks:
    """
    Split labeled nodes by a seeded uniform permutation.

    Args:
        g: The graph (only used to check the label length)
        labels: Target-type labels
        ratios: Train/val/test fractions
        seed: Generator seed; the same seed gives the same masks on any platform

    Returns:
        The masks
    """
    n = len(labels)
    if g.num_nodes(labels.target_type) != n:
        raise DataError(f"{n} labels for {g.num_nodes(labels.target_type)} '{labels.target_type}' nodes")
    nodes = np.flatnonzero(labels.labeled_mask)
    ordered = seeded_permutation(nodes, seed)
    train, val, test = _cut(n, ordered, ratio_sizes(len(nodes), ratios))
    masks = SplitMasks(
        target_type=labels.target_type,
        train=train,
        val=val,
        test=test,
        descriptor=SplitDescriptor(strategy="random", ratios=list(ratios), seed=seed),
    )
    logger.info(f"✅ Random split {masks.sizes()} (seed {seed})")
    return masks
