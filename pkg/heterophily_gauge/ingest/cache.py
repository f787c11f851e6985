"""
Compact binary cache for a HeteroGraph and its target-type labels.

Layout (little-endian)::

    "HGB1" | u32 version | u64 total file length | u32 T | u32 R
    string table: T type names, then src, name, dst of each relation (u16 length + UTF-8)
    per type:     u64 n | u8 flags (bit 0 labels, bit 1 timestamps)
                  [u32 C | n x i32 labels] [n x i64 timestamps]
    per relation: u64 m | (n_src + 1) x u64 row offsets | m x u64 columns
    u64 FNV-1a checksum of everything before it

The length and the checksum are checked before any count is trusted: a
short file is truncation, a full-length file with a bad checksum is
corruption.

Transposed CSRs and feature blocks are not stored.
"""

import logging
import struct
from pathlib import Path
from typing import List, Tuple

import numpy as np
from numba import njit

from ..core.graph import CSR, HeteroGraph
from ..core.labels import LabelMap
from ..core.schema import Relation, Schema
from ..core.validation import validate_graph
from ..errors import (
    BadMagicError,
    CacheError,
    ChecksumMismatchError,
    DataError,
    TruncatedCacheError,
    UnsupportedVersionError,
)

logger = logging.getLogger(__name__)

MAGIC = b"HGB1"
FORMAT_VERSION = 1
FLAG_LABELS = 1
FLAG_TIMESTAMPS = 2
CHECKSUM_BYTES = 8
HEADER = struct.Struct("<4sIQ")

FNV_OFFSET = np.uint64(0xCBF29CE484222325)
FNV_PRIME = np.uint64(0x100000001B3)


@njit(cache=True)
def _fnv1a(data, offset, prime):
    h = offset
    for i in range(data.shape[0]):
        h ^= np.uint64(data[i])
        h *= prime
    return h


def fnv1a64(payload: bytes) -> int:
    """64-bit FNV-1a of a byte string."""
    return int(_fnv1a(np.frombuffer(payload, dtype=np.uint8), FNV_OFFSET, FNV_PRIME))


def _string(value: str) -> bytes:
    raw = value.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise DataError(f"name too long for the cache string table: {value[:40]}...")
    return struct.pack("<H", len(raw)) + raw


def encode_cache(g: HeteroGraph, labels: LabelMap) -> bytes:
    """
    Serialize a graph and its labels; equal inputs give identical bytes.

    Raises:
        DataError: If the graph does not validate or the labels do not fit it
    """
    report = validate_graph(g)
    if not report.ok:
        raise DataError(f"refusing to cache an invalid graph: {report.findings[0].message}")
    schema = g.schema
    if len(labels) != g.num_nodes(labels.target_type):
        raise DataError(f"{len(labels)} labels for {g.num_nodes(labels.target_type)} '{labels.target_type}' nodes")

    parts: List[bytes] = [struct.pack("<II", len(schema.node_types), len(schema.relations))]
    for name in schema.node_types:
        parts.append(_string(name))
    for rel in schema.relations:
        parts.extend(_string(s) for s in rel.triple)

    for t, name in enumerate(schema.node_types):
        flags = 0
        if name == labels.target_type:
            flags |= FLAG_LABELS
        if name in g.timestamps:
            flags |= FLAG_TIMESTAMPS
        parts.append(struct.pack("<QB", g.node_counts[t], flags))
        if flags & FLAG_LABELS:
            parts.append(struct.pack("<I", labels.num_classes))
            parts.append(labels.labels.astype("<i4").tobytes())
        if flags & FLAG_TIMESTAMPS:
            parts.append(g.timestamps[name].astype("<i8").tobytes())

    for csr in g.forward:
        parts.append(struct.pack("<Q", csr.nnz))
        parts.append(csr.indptr.astype("<u8").tobytes())
        parts.append(csr.indices.astype("<u8").tobytes())

    body = b"".join(parts)
    total = HEADER.size + len(body) + CHECKSUM_BYTES
    payload = HEADER.pack(MAGIC, FORMAT_VERSION, total) + body
    return payload + struct.pack("<Q", fnv1a64(payload))


def save_cache(g: HeteroGraph, labels: LabelMap, path: str) -> None:
    """
    Write the binary cache.

    Args:
        g: A graph that passes validation
        labels: Target-type labels
        path: Output file

    Raises:
        DataError: If the graph is invalid
        OSError: On I/O failure
    """
    data = encode_cache(g, labels)
    Path(path).write_bytes(data)
    logger.info(f"✅ Wrote cache {path} ({len(data)} bytes)")


class _Reader:
    """Sequential reader that fails closed at the end of the buffer."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, size: int) -> bytes:
        if size < 0 or self.pos + size > len(self.data):
            raise TruncatedCacheError(f"cache ends at byte {len(self.data)}, needed {self.pos + size}")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def array(self, dtype: str, count: int) -> np.ndarray:
        item = np.dtype(dtype).itemsize
        return np.frombuffer(self.take(count * item), dtype=dtype)

    def string(self) -> str:
        (length,) = self.unpack("<H")
        try:
            return self.take(length).decode("utf-8")
        except UnicodeDecodeError as e:
            raise CacheError(f"bad string in cache: {e}")

    @property
    def remaining(self) -> int:
        return len(self.data) - self.pos


def decode_cache(data: bytes) -> Tuple[HeteroGraph, LabelMap]:
    """
    Parse cache bytes.

    Checks run in order: magic, version, declared length (a shorter file is
    truncation), trailing checksum, structure, graph validation. No partial
    graph is ever returned.

    Raises:
        BadMagicError, UnsupportedVersionError, TruncatedCacheError,
        ChecksumMismatchError: For the matching corruption
        CacheError: For any other inconsistency
    """
    if len(data) < len(MAGIC):
        raise TruncatedCacheError(f"cache is only {len(data)} bytes long")
    if data[:len(MAGIC)] != MAGIC:
        raise BadMagicError(f"bad magic {data[:len(MAGIC)]!r}, expected {MAGIC!r}")
    reader = _Reader(data)
    reader.take(len(MAGIC))
    (version,) = reader.unpack("<I")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"cache format version {version} is not supported (expected {FORMAT_VERSION})")
    (total,) = reader.unpack("<Q")
    if len(data) < total:
        raise TruncatedCacheError(f"cache is {len(data)} bytes long, its header declares {total}")
    if len(data) > total:
        raise CacheError(f"{len(data) - total} unexpected trailing byte(s)")
    if total < HEADER.size + CHECKSUM_BYTES:
        raise CacheError(f"declared length {total} is shorter than header and checksum")
    (stored,) = struct.unpack("<Q", data[-CHECKSUM_BYTES:])
    actual = fnv1a64(data[:-CHECKSUM_BYTES])
    if stored != actual:
        raise ChecksumMismatchError(f"checksum mismatch: stored {stored:#018x}, computed {actual:#018x}")

    # Checksum holds from here on; an overrun means the writer was inconsistent
    reader = _Reader(data[:-CHECKSUM_BYTES], pos=HEADER.size)
    try:
        n_types, n_relations = reader.unpack("<II")
        type_names = [reader.string() for _ in range(n_types)]
        triples = [(reader.string(), reader.string(), reader.string()) for _ in range(n_relations)]
        try:
            schema = Schema(node_types=type_names, relations=[Relation(src=s, name=n, dst=d) for s, n, d in triples])
        except ValueError as e:
            raise CacheError(f"cache holds an invalid schema: {e}")

        counts: List[int] = []
        timestamps = {}
        target = None
        for name in type_names:
            n, flags = reader.unpack("<QB")
            counts.append(int(n))
            if flags & FLAG_LABELS:
                if target is not None:
                    raise CacheError(f"labels stored for both '{target[0]}' and '{name}'")
                (num_classes,) = reader.unpack("<I")
                target = (name, int(num_classes), reader.array("<i4", n).astype(np.int64))
            if flags & FLAG_TIMESTAMPS:
                timestamps[name] = reader.array("<i8", n).astype(np.int64)

        forward: List[CSR] = []
        for rel in schema.relations:
            n_src = counts[schema.type_index(rel.src)]
            n_dst = counts[schema.type_index(rel.dst)]
            (m,) = reader.unpack("<Q")
            indptr = reader.array("<u8", n_src + 1).astype(np.int64)
            indices = reader.array("<u8", m).astype(np.int64)
            forward.append(CSR(indptr=indptr, indices=indices, n_cols=n_dst))
    except TruncatedCacheError as e:
        raise CacheError(f"cache structure overruns its declared length: {e}")
    if reader.remaining:
        raise CacheError(f"{reader.remaining} unparsed byte(s) before the checksum")

    if target is None:
        raise CacheError("cache holds no labeled node type")
    try:
        reverse = tuple(csr.transpose() for csr in forward)
        g = HeteroGraph(
            schema=schema,
            node_counts=tuple(counts),
            forward=tuple(forward),
            reverse=reverse,
            timestamps=timestamps,
        )
        labels = LabelMap(*target)
    except (ValueError, IndexError, DataError) as e:
        raise CacheError(f"cache content is inconsistent: {e}")
    report = validate_graph(g)
    if not report.ok:
        raise CacheError(f"cached graph fails validation: {report.findings[0].message}")
    return g, labels


def load_cache(path: str) -> Tuple[HeteroGraph, LabelMap]:
    """
    Read a binary cache written by ``save_cache``.

    Args:
        path: Cache file

    Returns:
        (graph, labels)
    """
    cache_path = Path(path)
    try:
        data = cache_path.read_bytes()
    except OSError as e:
        raise CacheError(f"cannot read cache {cache_path}: {e}")
    g, labels = decode_cache(data)
    logger.info(f"✅ Loaded cache {cache_path}: {dict(zip(g.schema.node_types, g.node_counts))}")
    return g, labels
