"""
Dataset ingestion: CSV bundles in, binary caches in and out.
"""

from .bundle import DatasetBundle
from .csv_loader import load_csv_bundle
from .cache import load_cache, save_cache
from .writer import write_bundle

__all__ = ["DatasetBundle", "load_csv_bundle", "load_cache", "save_cache", "write_bundle"]
