"""
Metapath enumeration, text syntax and induced-graph materialization.
"""

from .paths import Metapath, MetapathSet, MetapathStep, enumerate_metapaths, parse_metapath
from .induce import InducedGraph, bool_product, induce_subgraph

__all__ = [
    "Metapath",
    "MetapathSet",
    "MetapathStep",
    "enumerate_metapaths",
    "parse_metapath",
    "InducedGraph",
    "bool_product",
    "induce_subgraph",
]
