"""
Synthetic heterogeneous graphs with planted label mixing.

Target nodes (type ``item``) sit in C equal contiguous class blocks. Each
direct ``links`` edge starts at a uniform node and is cross-class with
probability q; the partner class is then uniform among the other classes,
and the partner node uniform within its class (never the start node).

With hubs enabled, a ``hub`` type is added. Every hub has a home class and
collects ``fan_in`` item -> hub edges (``to_hub``) and emits ``fan_out``
hub -> item edges (``from_hub``); each endpoint is drawn from the home class
with probability 1 - q and from another class otherwise. Two-hop metapaths
through hubs therefore carry the same planted mixing.

``independent_labels`` replaces the block labels with labels drawn
uniformly and independently of the structure.
"""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .core.graph import HeteroGraph
from .core.labels import LabelMap
from .core.schema import Schema

logger = logging.getLogger(__name__)

TARGET_TYPE = "item"
HUB_TYPE = "hub"
DIRECT_RELATION = (TARGET_TYPE, "links", TARGET_TYPE)
TO_HUB_RELATION = (TARGET_TYPE, "to_hub", HUB_TYPE)
FROM_HUB_RELATION = (HUB_TYPE, "from_hub", TARGET_TYPE)
TIMESTAMP_RANGE = (2000, 2024)


class PlantedConfig(BaseModel):
    """
    Parameters of the planted generator.

    Attributes:
        num_classes: C
        nodes_per_class: Block size
        mean_degree: Average degree of the direct relation (edges = nodes * mean_degree / 2)
        mixing: q, the probability that an edge endpoint pair is cross-class
        num_hubs: Hub count (0 disables the two-hop variant)
        fan_in: item -> hub edges per hub
        fan_out: hub -> item edges per hub
        independent_labels: Draw labels independently of the blocks
        with_timestamps: Give item nodes integer timestamps
        seed: Generator seed
    """

    num_classes: int = Field(default=2, ge=1)
    nodes_per_class: int = Field(default=1000, ge=2)
    mean_degree: float = Field(default=10.0, ge=0.0)
    mixing: float = Field(default=0.5, ge=0.0, le=1.0)
    num_hubs: int = Field(default=0, ge=0)
    fan_in: int = Field(default=5, ge=1)
    fan_out: int = Field(default=5, ge=1)
    independent_labels: bool = False
    with_timestamps: bool = False
    seed: int = 0

    @model_validator(mode="after")
    def _check_mixing(self) -> "PlantedConfig":
        if self.mixing > 0 and self.num_classes < 2:
            raise ValueError("cross-class mixing needs at least two classes")
        return self

    @property
    def num_items(self) -> int:
        return self.num_classes * self.nodes_per_class

    @property
    def num_direct_edges(self) -> int:
        return int(round(self.num_items * self.mean_degree / 2.0))

    def schema(self) -> Schema:
        if self.num_hubs:
            return Schema(node_types=[TARGET_TYPE, HUB_TYPE], relations=[DIRECT_RELATION, TO_HUB_RELATION, FROM_HUB_RELATION])
        return Schema(node_types=[TARGET_TYPE], relations=[DIRECT_RELATION])


def _partner_class(rng: np.random.Generator, home: np.ndarray, mixing: float, num_classes: int) -> np.ndarray:
    cross = rng.random(len(home)) < mixing
    shift = rng.integers(1, num_classes, size=len(home)) if num_classes > 1 else np.zeros(len(home), dtype=np.int64)
    return np.where(cross, (home + shift) % num_classes, home)


def _direct_edges(cfg: PlantedConfig, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    size = cfg.nodes_per_class
    m = cfg.num_direct_edges
    src = rng.integers(0, cfg.num_items, size=m)
    src_class, src_offset = src // size, src % size
    dst_class = _partner_class(rng, src_class, cfg.mixing, cfg.num_classes)
    # Same-class partners skip the start node
    same_offset = (src_offset + 1 + rng.integers(0, size - 1, size=m)) % size
    cross_offset = rng.integers(0, size, size=m)
    dst_offset = np.where(dst_class == src_class, same_offset, cross_offset)
    return src, dst_class * size + dst_offset


def _hub_endpoints(cfg: PlantedConfig, rng: np.random.Generator, per_hub: int) -> Tuple[np.ndarray, np.ndarray]:
    hubs = np.repeat(np.arange(cfg.num_hubs, dtype=np.int64), per_hub)
    home = hubs % cfg.num_classes
    item_class = _partner_class(rng, home, cfg.mixing, cfg.num_classes)
    items = item_class * cfg.nodes_per_class + rng.integers(0, cfg.nodes_per_class, size=len(hubs))
    return hubs, items


def generate_planted(cfg: PlantedConfig) -> Tuple[HeteroGraph, LabelMap]:
    """
    Generate a graph with planted mixing rate q.

    Args:
        cfg: Generator parameters

    Returns:
        (graph, labels of the ``item`` type); identical for identical configs
    """
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    schema = cfg.schema()
    blocks = np.repeat(np.arange(cfg.num_classes, dtype=np.int64), cfg.nodes_per_class)

    edges = {DIRECT_RELATION: _direct_edges(cfg, rng)}
    counts = {TARGET_TYPE: cfg.num_items}
    if cfg.num_hubs:
        hubs_in, items_in = _hub_endpoints(cfg, rng, cfg.fan_in)
        hubs_out, items_out = _hub_endpoints(cfg, rng, cfg.fan_out)
        edges[TO_HUB_RELATION] = (items_in, hubs_in)
        edges[FROM_HUB_RELATION] = (hubs_out, items_out)
        counts[HUB_TYPE] = cfg.num_hubs

    if cfg.independent_labels:
        labels = rng.integers(0, cfg.num_classes, size=cfg.num_items)
    else:
        labels = blocks
    timestamps = None
    if cfg.with_timestamps:
        timestamps = {TARGET_TYPE: rng.integers(TIMESTAMP_RANGE[0], TIMESTAMP_RANGE[1], size=cfg.num_items)}

    g = HeteroGraph.from_edge_lists(schema, counts, edges, timestamps=timestamps)
    logger.info(
        f"✅ Generated {cfg.num_items} item(s), {cfg.num_hubs} hub(s), {cfg.num_direct_edges} direct edge(s) "
        f"with mixing {cfg.mixing}"
    )
    return g, LabelMap(TARGET_TYPE, cfg.num_classes, labels)
