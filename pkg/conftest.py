"""
Shared graph builders and fixtures for the Heterophily Gauge tests.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import strategies as st

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from heterophily_gauge.core.graph import HeteroGraph
from heterophily_gauge.core.labels import LabelMap
from heterophily_gauge.core.schema import Schema
from heterophily_gauge.metapath.induce import induce_subgraph
from heterophily_gauge.metapath.paths import parse_metapath


def build_homogeneous(n, edges, labels, num_classes=None):
    """One node type ``node`` with one relation ``link``; returns (graph, labels)."""
    schema = Schema(node_types=["node"], relations=[("node", "link", "node")])
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    g = HeteroGraph.from_edge_lists(schema, {"node": n}, {("node", "link", "node"): (edges[:, 0], edges[:, 1])})
    labels = np.asarray(labels, dtype=np.int64)
    c = num_classes if num_classes is not None else int(labels.max()) + 1
    return g, LabelMap("node", max(c, 1), labels)


def induce_homogeneous(n, edges, labels, num_classes=None, **kwargs):
    """Induced graph of the single ``link`` relation: the symmetrized simple graph."""
    g, label_map = build_homogeneous(n, edges, labels, num_classes)
    path = parse_metapath("link", g.schema, "node")
    return induce_subgraph(g, label_map, path, **kwargs), label_map


def build_academic(num_papers=3, num_authors=2, writes=(), cites=(), labels=None, num_classes=2, timestamps=None):
    """``author -writes-> paper`` and ``paper -cites-> paper``, target type ``paper``."""
    schema = Schema(
        node_types=["paper", "author"],
        relations=[("author", "writes", "paper"), ("paper", "cites", "paper")],
    )
    writes = np.asarray(writes, dtype=np.int64).reshape(-1, 2)
    cites = np.asarray(cites, dtype=np.int64).reshape(-1, 2)
    g = HeteroGraph.from_edge_lists(
        schema,
        {"paper": num_papers, "author": num_authors},
        {
            ("author", "writes", "paper"): (writes[:, 0], writes[:, 1]),
            ("paper", "cites", "paper"): (cites[:, 0], cites[:, 1]),
        },
        timestamps={"paper": timestamps} if timestamps is not None else None,
    )
    if labels is None:
        labels = np.arange(num_papers) % num_classes
    return g, LabelMap("paper", num_classes, labels)


def brute_force_induced(g, labels, path):
    """Undirected simple edges found by walking the raw edge lists node by node."""
    edges = {}
    for step in path.steps:
        src, dst = g.edge_lists(step.relation)
        pairs = list(zip(dst.tolist(), src.tolist())) if step.is_reverse else list(zip(src.tolist(), dst.tolist()))
        edges.setdefault(step, pairs)
    labeled = labels.labeled_mask
    result = set()
    for u in range(len(labels)):
        if not labeled[u]:
            continue
        frontier = {u}
        for step in path.steps:
            frontier = {b for a, b in edges[step] if a in frontier}
        for v in frontier:
            if labeled[v] and v != u:
                result.add((min(u, v), max(u, v)))
    return result


@st.composite
def random_academic(draw, max_papers=7, max_authors=4, max_edges=15, num_classes=3):
    num_papers = draw(st.integers(2, max_papers))
    num_authors = draw(st.integers(1, max_authors))
    writes = draw(st.lists(st.tuples(st.integers(0, num_authors - 1), st.integers(0, num_papers - 1)), max_size=max_edges))
    cites = draw(st.lists(st.tuples(st.integers(0, num_papers - 1), st.integers(0, num_papers - 1)), max_size=max_edges))
    labels = draw(
        st.lists(st.integers(-1, num_classes - 1), min_size=num_papers, max_size=num_papers).filter(lambda ls: max(ls) >= 0)
    )
    return build_academic(num_papers, num_authors, writes, cites, labels=labels, num_classes=num_classes)


def build_publications(num_papers, num_authors, num_venues, writes=(), cites=(), appears=(), labels=None, num_classes=2):
    """``build_academic`` plus a ``venue`` type reached by ``paper -appears-> venue``."""
    schema = Schema(
        node_types=["paper", "author", "venue"],
        relations=[("author", "writes", "paper"), ("paper", "cites", "paper"), ("paper", "appears", "venue")],
    )
    tables = {}
    for rel, pairs in zip(schema.relations, (writes, cites, appears)):
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        tables[rel.triple] = (pairs[:, 0], pairs[:, 1])
    g = HeteroGraph.from_edge_lists(
        schema, {"paper": num_papers, "author": num_authors, "venue": num_venues}, tables
    )
    if labels is None:
        labels = np.arange(num_papers) % num_classes
    return g, LabelMap("paper", num_classes, labels)


@st.composite
def random_publications(draw, max_papers=8, max_authors=4, max_venues=3, max_edges=12, num_classes=3):
    num_papers = draw(st.integers(2, max_papers))
    num_authors = draw(st.integers(1, max_authors))
    num_venues = draw(st.integers(1, max_venues))

    def pairs(n_src, n_dst):
        return draw(st.lists(st.tuples(st.integers(0, n_src - 1), st.integers(0, n_dst - 1)), max_size=max_edges))

    writes = pairs(num_authors, num_papers)
    cites = pairs(num_papers, num_papers)
    appears = pairs(num_papers, num_venues)
    labels = draw(
        st.lists(st.integers(-1, num_classes - 1), min_size=num_papers, max_size=num_papers).filter(lambda ls: max(ls) >= 0)
    )
    return build_publications(
        num_papers, num_authors, num_venues, writes, cites, appears, labels=labels, num_classes=num_classes
    )


def permute_papers(g, labels, perm):
    """Rebuild an academic or publication graph with paper ``i`` renamed ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    counts = dict(zip(g.schema.node_types, g.node_counts))
    tables = {}
    for r, rel in enumerate(g.schema.relations):
        src, dst = g.edge_lists(r)
        tables[rel.triple] = (
            perm[src] if rel.src == "paper" else src,
            perm[dst] if rel.dst == "paper" else dst,
        )
    moved = np.empty_like(labels.labels)
    moved[perm] = labels.labels
    return HeteroGraph.from_edge_lists(g.schema, counts, tables), LabelMap("paper", labels.num_classes, moved)


@pytest.fixture
def toy_bundle(tmp_path):
    """
    The two-type bundle: papers labeled 0,1,0, two authors, writes (0,0),(0,1),(1,2).
    """
    (tmp_path / "schema.json").write_text(
        '{"node_types": ["paper", "author"], "relations": [["author", "writes", "paper"], ["paper", "cites", "paper"]]}'
    )
    (tmp_path / "paper.csv").write_text("local_id,label,timestamp\n0,0,2001\n1,1,2002\n2,0,2003\n")
    (tmp_path / "author.csv").write_text("local_id\n0\n1\n")
    (tmp_path / "writes.csv").write_text("src_local_id,dst_local_id\n0,0\n0,1\n1,2\n")
    (tmp_path / "cites.csv").write_text("src_local_id,dst_local_id\n")
    (tmp_path / "bundle.json").write_text(
        '{"schema": "schema.json",'
        ' "node_tables": {"paper": "paper.csv", "author": "author.csv"},'
        ' "relation_tables": {"author:writes:paper": "writes.csv", "paper:cites:paper": "cites.csv"},'
        ' "target_type": "paper", "num_classes": 2}'
    )
    return tmp_path / "bundle.json"
