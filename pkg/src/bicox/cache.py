"""Versioned binary serialization of group tables.

Layout: an 8-byte magic, a little-endian header (version, type string,
rank, order, the full Coxeter matrix, longest-element id, length width),
then flat arrays (lengths as 8-bit when the maximum length fits, id tables
as 32-bit, descent sets as n-bit masks padded to whole bytes), and a
trailing SHA-256 of everything before it.  Serialization is deterministic,
so a round trip is bit-identical.
"""

from __future__ import annotations

import hashlib
import struct
from pathlib import Path

import numpy as np

from .coxeter import CoxeterMatrix, GroupTable, classify
from .errors import CacheError

MAGIC = b"BICOXGT\x00"
VERSION = 1


def _mask_dtype(n: int) -> str:
    width = (n + 7) // 8
    if width == 1:
        return "<u1"
    if width == 2:
        return "<u2"
    raise CacheError(f"rank {n} masks not supported by the cache format")


def serialize(table: GroupTable) -> bytes:
    name = table.system.canonical_name.encode()
    n = table.rank
    order = table.order
    len_width = 1 if int(table.length.max()) < 256 else 4
    parts = [
        MAGIC,
        struct.pack("<I", VERSION),
        struct.pack("<H", len(name)),
        name,
        struct.pack("<IQ", n, order),
    ]
    for row in table.system.matrix.entries:
        parts.append(struct.pack(f"<{n}I", *row))
    parts.append(struct.pack("<IB", table.longest, len_width))
    parts.append(table.length.astype("<u1" if len_width == 1 else "<u4").tobytes())
    parts.append(table.left_mult.astype("<u4").tobytes())
    parts.append(table.right_mult.astype("<u4").tobytes())
    parts.append(table.inverse.astype("<u4").tobytes())
    mask_dtype = _mask_dtype(n)
    parts.append(table.des_left.astype(mask_dtype).tobytes())
    parts.append(table.des_right.astype(mask_dtype).tobytes())
    blob = b"".join(parts)
    return blob + hashlib.sha256(blob).digest()


def deserialize(blob: bytes) -> GroupTable:
    if len(blob) < len(MAGIC) + 38 or blob[: len(MAGIC)] != MAGIC:
        raise CacheError("not a group table cache file")
    body, digest = blob[:-32], blob[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheError("cache checksum mismatch")
    offset = len(MAGIC)

    def take(fmt):
        nonlocal offset
        size = struct.calcsize(fmt)
        values = struct.unpack_from(fmt, body, offset)
        offset += size
        return values

    (version,) = take("<I")
    if version != VERSION:
        raise CacheError(f"unsupported cache version {version}")
    (name_len,) = take("<H")
    offset += name_len  # the name is display metadata; the matrix is authoritative
    n, order = take("<IQ")
    rows = [take(f"<{n}I") for _ in range(n)]
    longest, len_width = take("<IB")

    def array(dtype, count, shape=None):
        nonlocal offset
        arr = np.frombuffer(
            body, dtype=dtype, count=count, offset=offset
        ).copy()
        offset += arr.nbytes
        return arr if shape is None else arr.reshape(shape)

    length = array("<u1" if len_width == 1 else "<u4", order).astype(np.int16)
    left = array("<u4", order * n, (order, n)).astype(np.int32)
    right = array("<u4", order * n, (order, n)).astype(np.int32)
    inverse = array("<u4", order).astype(np.int32)
    mask_dtype = _mask_dtype(n)
    des_left = array(mask_dtype, order).astype(np.uint16)
    des_right = array(mask_dtype, order).astype(np.uint16)
    if offset != len(body):
        raise CacheError("cache file has trailing or missing data")
    system = classify(CoxeterMatrix(rows))
    if system.order != order:
        raise CacheError("cached order disagrees with the stored matrix")
    return GroupTable(
        system=system,
        order=int(order),
        length=length,
        left_mult=left,
        right_mult=right,
        inverse=inverse,
        des_left=des_left,
        des_right=des_right,
        longest=int(longest),
    )


def cache_path(cache_dir: str | Path, canonical_name: str) -> Path:
    return Path(cache_dir) / f"{canonical_name}.gt"


def save_table(table: GroupTable, cache_dir: str | Path) -> Path:
    path = cache_path(cache_dir, table.system.canonical_name)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(serialize(table))
    return path


def load_table(path: str | Path) -> GroupTable:
    path = Path(path)
    if not path.exists():
        raise CacheError(f"no cache file at {path}")
    return deserialize(path.read_bytes())
